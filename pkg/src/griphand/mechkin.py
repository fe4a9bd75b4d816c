"""Transmission kinematics and statics for the two gripper drivetrains.

The hand drives both grippers through worm stages feeding linkages:

* the positioning (tweezer-like) gripper through a slider-crank, and
* the holding gripper through a parallelogram linkage.

All lengths are millimetres, forces Newtons, torques Newton-millimetres,
angles radians.  Crank angles live on [0, pi/2]: 0 is the fully retracted
(closed) position, pi/2 the fully advanced one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import DomainError, GeometryError, RangeError, ValidationError

HALF_PI = math.pi / 2.0

# Root-finding tolerance for invert_travel, in radians of crank angle.
# Tight enough that the recovered travel matches the target to < 1e-9 mm
# for any linkage with links under a metre.
_INVERT_XTOL = 1e-13


@dataclass(frozen=True)
class CrankSpec:
    """Slider-crank linkage of the positioning gripper.

    The connecting rod must satisfy L >= R for the slider to close over the
    whole stroke; scenario loading enforces that, direct construction only
    requires positive lengths so partial-stroke studies stay possible.
    """

    R: float  # crank radius (mm)
    L: float  # connecting rod length (mm)

    def __post_init__(self) -> None:
        bad = []
        if not (self.R > 0.0 and math.isfinite(self.R)):
            bad.append("CrankSpec.R: must be a positive length (mm)")
        if not (self.L > 0.0 and math.isfinite(self.L)):
            bad.append("CrankSpec.L: must be a positive length (mm)")
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True)
class ParallelogramSpec:
    """Parallelogram linkage of the holding gripper."""

    R: float  # driven link length (mm)
    L: float  # coupler link length (mm)

    def __post_init__(self) -> None:
        bad = []
        if not (self.R > 0.0 and math.isfinite(self.R)):
            bad.append("ParallelogramSpec.R: must be a positive length (mm)")
        if not (self.L > 0.0 and math.isfinite(self.L)):
            bad.append("ParallelogramSpec.L: must be a positive length (mm)")
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True)
class WormSpec:
    """Worm gear stage between the motor and a linkage.

    A single-start worm on a common wheel is self-locking in practice, so
    that is the default; efficiency defaults to a conservative 0.4 typical
    of small self-locking worm sets.  Both are configurable.
    """

    ratio: float  # reduction ratio (output turns = input turns / ratio)
    efficiency: float = 0.4  # forward driving efficiency, in (0, 1]
    self_locking: bool = True

    def __post_init__(self) -> None:
        bad = []
        if not (self.ratio >= 1.0 and math.isfinite(self.ratio)):
            bad.append("WormSpec.ratio: must be >= 1")
        if not (0.0 < self.efficiency <= 1.0):
            bad.append("WormSpec.efficiency: must be in (0, 1]")
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True)
class KinematicState:
    """A (crank angle, link angle) pair describing one gripper posture."""

    alpha: float  # crank angle (rad), in [0, pi/2]
    beta: float  # link angle (rad), in [0, pi/2]

    def __post_init__(self) -> None:
        bad = []
        if not (0.0 <= self.alpha <= HALF_PI):
            bad.append("KinematicState.alpha: must be in [0, pi/2] rad")
        if not (0.0 <= self.beta <= HALF_PI):
            bad.append("KinematicState.beta: must be in [0, pi/2] rad")
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True)
class TransmissionResult:
    """Travel, torque and force of one linkage evaluated at one posture."""

    travel_S: float  # fingertip travel (mm)
    torque_M: float  # crank torque demand (N*mm)
    force_F: float  # fingertip force (N)

    def __post_init__(self) -> None:
        if self.travel_S < 0.0:
            raise ValidationError("TransmissionResult.travel_S: must be >= 0")


@dataclass(frozen=True)
class MechanismSpec:
    """Both linkages plus the worm stage, bundled for scenario files."""

    crank: CrankSpec
    parallelogram: ParallelogramSpec
    worm: WormSpec


def crank_beta(spec: CrankSpec, alpha: float) -> float:
    """Rod angle of the slider-crank closing the loop at crank angle alpha.

    The closure constraint is sin(beta) = (R / L) * sin(alpha).

    Args:
        spec: linkage lengths.
        alpha: crank angle (rad), expected in [0, pi/2].

    Returns:
        Rod angle beta (rad) in [0, pi/2].

    Raises:
        GeometryError: if R * sin(alpha) > L, where the loop cannot close.
    """
    if spec.R == spec.L:
        # Equal links force beta = alpha; returning alpha directly avoids
        # the asin(sin(alpha)) roundtrip, which loses ~sqrt(eps) near pi/2.
        return alpha
    x = spec.R * math.sin(alpha) / spec.L
    if x > 1.0:
        raise GeometryError(
            f"slider-crank cannot close: R*sin(alpha) = {spec.R * math.sin(alpha):.6g} "
            f"exceeds L = {spec.L:.6g}"
        )
    return math.asin(x)


def crank_travel(spec: CrankSpec, alpha: float) -> float:
    """Slider travel of the positioning gripper from the closed posture.

    S = R + L - R*cos(alpha) - L*cos(beta), with beta from the closure
    constraint.  Monotone nondecreasing on [0, pi/2].
    """
    beta = crank_beta(spec, alpha)
    return spec.R + spec.L - spec.R * math.cos(alpha) - spec.L * math.cos(beta)


def crank_travel_approx(spec: CrankSpec, alpha: float) -> float:
    """Small-obliquity approximation of the slider travel: 2R(1 - cos(alpha)).

    Exact when R = L.
    """
    return 2.0 * spec.R * (1.0 - math.cos(alpha))


def crank_torque(spec: CrankSpec, alpha: float, force_F: float) -> float:
    """Crank torque demanded to hold fingertip force F at crank angle alpha.

    M = (F / cos(alpha)) * R * sin(2*alpha), which simplifies to
    2*F*R*sin(alpha) and is the virtual-work conjugate of the approximate
    travel 2R(1 - cos(alpha)).

    Args:
        spec: linkage lengths.
        alpha: crank angle (rad), in [0, pi/2).
        force_F: fingertip force (N).

    Returns:
        Torque (N*mm).

    Raises:
        DomainError: at alpha >= pi/2, where cos(alpha) vanishes in the
            quotient form; the 2*F*R*sin(alpha) limit is reported in the
            error message.
    """
    if alpha >= HALF_PI:
        limit = 2.0 * force_F * spec.R * math.sin(alpha)
        raise DomainError(
            f"crank torque is written as a quotient over cos(alpha) and is "
            f"undefined at alpha >= pi/2; the limiting value is "
            f"2*F*R*sin(alpha) = {limit:.9g} N*mm"
        )
    return (force_F / math.cos(alpha)) * spec.R * math.sin(2.0 * alpha)


def para_travel(spec: ParallelogramSpec, alpha: float) -> float:
    """Jaw travel of the holding gripper: S = R(1 - cos(alpha))."""
    return spec.R * (1.0 - math.cos(alpha))


def para_torque(spec: ParallelogramSpec, state: KinematicState, force_F: float) -> float:
    """Crank torque of the parallelogram gripper at a given posture.

    M = F * (L*cos(beta) - R*sin(alpha)).  The expression changes sign when
    R*sin(alpha) outgrows L*cos(beta); the sign is returned as-is so callers
    can see the crossover.  Compare against para_torque_virtual_work, which
    derives the torque from the travel map instead.
    """
    return force_F * (spec.L * math.cos(state.beta) - spec.R * math.sin(state.alpha))


def para_torque_virtual_work(spec: ParallelogramSpec, alpha: float, force_F: float) -> float:
    """Torque from the travel map by virtual work: F * dS/dalpha = F*R*sin(alpha).

    Diagnostic companion to para_torque; the two disagree wherever the
    posture's beta is not kinematically consistent with alpha.
    """
    return force_F * spec.R * math.sin(alpha)


def worm_output(spec: WormSpec, motor_torque: float) -> float:
    """Torque on the worm wheel when the motor drives forward.

    output = motor_torque * ratio * efficiency.
    """
    return motor_torque * spec.ratio * spec.efficiency


def worm_back_drive(spec: WormSpec, output_torque: float) -> float:
    """Motor-side torque demanded to back-drive a load on the wheel.

    Self-locking stages cannot be back-driven: the demand is infinite and
    the stage holds position with zero motor torque.
    """
    if spec.self_locking:
        return math.inf
    return output_torque / (spec.ratio * spec.efficiency)


def invert_travel(mechanism: CrankSpec | ParallelogramSpec, target_S: float) -> float:
    """Crank angle that produces a requested travel.

    Solves travel(alpha) = target_S on [0, pi/2] by bracketed root-finding
    on the monotone travel map.

    Args:
        mechanism: a CrankSpec or ParallelogramSpec.
        target_S: requested travel (mm).

    Returns:
        Crank angle alpha (rad) with travel(alpha) within 1e-9 mm of the
        target.  The travel map is quadratic near alpha = 0, so for targets
        in the first few nanometres the returned angle is only as sharp as
        the travel resolution allows (about 1e-8 rad), not 1e-9.

    Raises:
        RangeError: if target_S is outside [0, travel(pi/2)].
    """
    if isinstance(mechanism, CrankSpec):
        travel = lambda a: crank_travel(mechanism, a)  # noqa: E731
    elif isinstance(mechanism, ParallelogramSpec):
        travel = lambda a: para_travel(mechanism, a)  # noqa: E731
    else:
        raise TypeError(f"unsupported mechanism type: {type(mechanism).__name__}")

    s_max = travel(HALF_PI)
    if not (0.0 <= target_S <= s_max):
        raise RangeError(
            f"travel {target_S:.9g} mm is outside the achievable range "
            f"[0, {s_max:.9g}] mm"
        )
    if target_S == 0.0:
        return 0.0
    if target_S == s_max:
        return HALF_PI
    return float(brentq(lambda a: travel(a) - target_S, 0.0, HALF_PI, xtol=_INVERT_XTOL))


def crank_transmission(spec: CrankSpec, alpha: float, force_F: float) -> TransmissionResult:
    """Travel and torque of the slider-crank at one posture, bundled."""
    return TransmissionResult(
        travel_S=crank_travel(spec, alpha),
        torque_M=crank_torque(spec, alpha, force_F),
        force_F=force_F,
    )


def para_transmission(
    spec: ParallelogramSpec, state: KinematicState, force_F: float
) -> TransmissionResult:
    """Travel and torque of the parallelogram gripper at one posture, bundled."""
    return TransmissionResult(
        travel_S=para_travel(spec, state.alpha),
        torque_M=para_torque(spec, state, force_F),
        force_F=force_F,
    )
