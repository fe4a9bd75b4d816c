"""Holding-force sizing: motor torque through the drivetrain to pull-out capacity.

The holding gripper's grip force comes from a torque-limited motor through
the worm stage and the parallelogram linkage.  The pull-out capacity is the
friction limit of that grip, and the emulated pull curve mirrors a bench
pull test: force ramps to the capacity, the part starts sliding and the
measured force drops to a sliding plateau.

Units: N, N*mm, mm, radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SingularGripError, ValidationError
from .mechkin import KinematicState, ParallelogramSpec, WormSpec


@dataclass(frozen=True)
class MotorSpec:
    """A torque-limited gripper motor."""

    stall_torque: float  # N*mm
    name: str = ""

    def __post_init__(self) -> None:
        if not self.stall_torque > 0.0:
            raise ValidationError("MotorSpec.stall_torque: must be positive (N*mm)")


@dataclass(frozen=True)
class PullTestConfig:
    """One emulated pull test of the holding grip."""

    torque_fraction: float  # commanded fraction of stall torque, in (0, 1]
    grip_state: KinematicState  # linkage posture while gripping
    mu_fingers: float  # friction coefficient at the grip pads
    pull_speed: float = 5.0  # mm/s, reporting only

    def __post_init__(self) -> None:
        bad = []
        if not 0.0 < self.torque_fraction <= 1.0:
            bad.append("PullTestConfig.torque_fraction: must be in (0, 1]")
        if self.mu_fingers < 0.0:
            bad.append("PullTestConfig.mu_fingers: must be >= 0")
        if not self.pull_speed > 0.0:
            bad.append("PullTestConfig.pull_speed: must be positive (mm/s)")
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True)
class PullCurve:
    """Force-over-displacement series of one emulated pull test."""

    torque_fraction: float
    displacement_mm: tuple[float, ...]
    force_N: tuple[float, ...]
    peak_N: float  # equals the pull-out capacity exactly
    slide_N: float  # plateau after the grip starts sliding
    pull_speed: float  # mm/s, reporting only


# Nominal drivetrain the hand was sized around.  The stall torque is the
# 12 V datasheet figure of the gripper servo, not a measured value.
NOMINAL_MOTOR = MotorSpec(stall_torque=4100.0, name="XM430-W350")
NOMINAL_WORM = WormSpec(ratio=50.0, efficiency=0.4, self_locking=True)
NOMINAL_PARA = ParallelogramSpec(R=20.0, L=50.0)
NOMINAL_GRIP_STATE = KinematicState(alpha=math.radians(30.0), beta=0.0)
NOMINAL_MU_FINGERS = 0.35
NOMINAL_CONTACT_COUNT = 2

# Fraction of the peak the measured force drops to once the part slides.
DEFAULT_SLIDE_RATIO = 0.8


def finger_normal_force(
    motor: MotorSpec,
    worm: WormSpec,
    para: ParallelogramSpec,
    torque_fraction: float,
    grip_state: KinematicState,
) -> float:
    """Normal force each holding pad presses on the part with.

    The commanded motor torque is amplified by the worm stage and converted
    through the parallelogram lever:

        F = fraction * stall * ratio * efficiency / (L*cos(beta) - R*sin(alpha))

    Raises:
        SingularGripError: if the lever L*cos(beta) - R*sin(alpha) is zero
            or negative (the linkage has no mechanical advantage there).
    """
    lever = para.L * math.cos(grip_state.beta) - para.R * math.sin(grip_state.alpha)
    if lever <= 0.0:
        raise SingularGripError(
            f"grip lever L*cos(beta) - R*sin(alpha) = {lever:.6g} mm is not positive"
        )
    return torque_fraction * motor.stall_torque * worm.ratio * worm.efficiency / lever


def pull_out_capacity(
    normal_force: float, mu_fingers: float, contact_count: int = NOMINAL_CONTACT_COUNT
) -> float:
    """Axial force the grip resists before the part pulls out.

    capacity = contact_count * mu * normal_force.
    """
    bad = []
    if normal_force < 0.0:
        bad.append("normal_force: must be >= 0")
    if mu_fingers < 0.0:
        bad.append("mu_fingers: must be >= 0")
    if contact_count < 1:
        bad.append("contact_count: must be >= 1")
    if bad:
        raise ValidationError(bad)
    return contact_count * mu_fingers * normal_force


def emulate_pull_curve(
    motor: MotorSpec,
    worm: WormSpec,
    para: ParallelogramSpec,
    cfg: PullTestConfig,
    samples: int = 120,
    contact_count: int = NOMINAL_CONTACT_COUNT,
    slide_ratio: float = DEFAULT_SLIDE_RATIO,
    travel_mm: float = 10.0,
) -> PullCurve:
    """Synthesize the force-displacement record of one pull test.

    The force ramps linearly from zero to the pull-out capacity over the
    first part of the travel, then drops to the sliding plateau
    slide_ratio * capacity for the rest.  The peak sample equals the
    capacity exactly.

    Args:
        cfg: test setup; the commanded torque fraction sets the capacity.
        samples: number of points in the series, >= 2.
        slide_ratio: plateau level as a fraction of the peak, in [0, 1].
        travel_mm: total pull displacement covered by the series.

    Returns:
        A PullCurve with ``samples`` points.
    """
    if samples < 2:
        raise ValidationError("samples: must be >= 2")
    if not 0.0 <= slide_ratio <= 1.0:
        raise ValidationError("slide_ratio: must be in [0, 1]")
    if not travel_mm > 0.0:
        raise ValidationError("travel_mm: must be positive (mm)")

    normal = finger_normal_force(motor, worm, para, cfg.torque_fraction, cfg.grip_state)
    peak = pull_out_capacity(normal, cfg.mu_fingers, contact_count)
    slide = slide_ratio * peak

    peak_index = max(1, round(0.4 * (samples - 1)))
    displacement = []
    force = []
    for i in range(samples):
        displacement.append(travel_mm * i / (samples - 1))
        if i <= peak_index:
            force.append(peak * (i / peak_index))
        else:
            force.append(slide)
    return PullCurve(
        torque_fraction=cfg.torque_fraction,
        displacement_mm=tuple(displacement),
        force_N=tuple(force),
        peak_N=peak,
        slide_N=slide,
        pull_speed=cfg.pull_speed,
    )
