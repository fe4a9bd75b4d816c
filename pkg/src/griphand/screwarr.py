"""Screw arrangement: tilt planning and fingertip spring-back compensation.

A gripped Allen screw is stood upright by tilting the hand, opening the
fingers just enough for the screw to slide down its own axis to the finger
end corner, then tilting back.  Two effects bound the plan:

* the hand tilt must beat friction so the screw actually slides, and
* the commanded opening must exceed the fingertips' elastic spring-back
  (they were deflected by the grip force) without releasing the head.

Units: mm, N, MPa, radians, kg.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .alignment import MaterialSpec
from .errors import DomainError, NoValidOpeningError, ValidationError
from .trace import (
    VERDICT_LOST,
    VERDICT_PINCHED,
    VERDICT_STUCK,
    VERDICT_SUCCESS,
    PhaseRecord,
    PlanarPose,
    StrategyTrace,
)

ARRANGE = "arrange"

PHASE_HELD = "Held"
PHASE_TILTED = "Tilted"
PHASE_DROPPED_SLIDING = "DroppedSliding"
PHASE_AT_END_CORNER = "AtEndCorner"
PHASE_VERTICAL = "Vertical"

ARRANGE_PHASES = (
    PHASE_HELD,
    PHASE_TILTED,
    PHASE_DROPPED_SLIDING,
    PHASE_AT_END_CORNER,
    PHASE_VERTICAL,
)

# Lateral grip load the spring-back is evaluated at unless a caller
# overrides it (matches the load case the fingers were sized against).
DEFAULT_GRIP_FORCE = 3.0  # N


@dataclass(frozen=True)
class FingerGeometry:
    """Segment layout of one positioning finger.

    The finger runs from its mount through an offset cross segment to a
    long straight beam ending in the V-grooved tip.  A lateral tip load
    twists the cross segment (length l2) and bends the distal segments
    (l3 + l4); l1 only sets where the finger is mounted.
    """

    l1: float  # mount segment (mm); carries no load in this model
    l2: float  # cross segment, the torsion lever (mm)
    l3: float  # proximal beam segment (mm)
    l4: float  # distal beam segment (mm)
    beam_D: float  # beam diameter (mm)
    theta_f: float  # full V-groove angle of the fingertip faces (rad)

    def __post_init__(self) -> None:
        bad = []
        for name in ("l1", "l2", "l3", "l4", "beam_D"):
            if not getattr(self, name) > 0.0:
                bad.append(f"FingerGeometry.{name}: must be positive (mm)")
        if not 0.0 < self.theta_f < math.pi:
            bad.append("FingerGeometry.theta_f: must be in (0, pi) rad")
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True)
class ScrewSpec:
    """A socket head cap screw."""

    nominal: str  # label, e.g. "M3x8"
    mass: float  # kg
    head_D: float  # head diameter (mm)
    shank_d: float  # shank diameter (mm)
    length: float  # shank length under the head (mm)

    def __post_init__(self) -> None:
        bad = []
        if not self.mass > 0.0:
            bad.append("ScrewSpec.mass: must be positive (kg)")
        if not self.shank_d > 0.0:
            bad.append("ScrewSpec.shank_d: must be positive (mm)")
        if not self.head_D > self.shank_d:
            bad.append("ScrewSpec.head_D: must exceed shank_d")
        if not self.length > 0.0:
            bad.append("ScrewSpec.length: must be positive (mm)")
        if bad:
            raise ValidationError(bad)


# ISO 4762 socket head diameters.
M3X8 = ScrewSpec(nominal="M3x8", mass=0.0011, head_D=5.5, shank_d=3.0, length=8.0)
M6X12 = ScrewSpec(nominal="M6x12", mass=0.0095, head_D=10.0, shank_d=6.0, length=12.0)


@dataclass(frozen=True)
class TiltPlan:
    """Commanded hand tilt and finger opening for one arrangement run."""

    theta_gri: float  # hand tilt from vertical (rad), in (0, pi/2)
    opening_d: float  # additional finger opening commanded for the drop (mm)

    def __post_init__(self) -> None:
        bad = []
        if not 0.0 < self.theta_gri < math.pi / 2.0:
            bad.append("TiltPlan.theta_gri: must be in (0, pi/2) rad")
        if not self.opening_d > 0.0:
            bad.append("TiltPlan.opening_d: must be positive (mm)")
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True)
class DeflectionResult:
    """Elastic tip deflection of one finger under a lateral load.

    d_E always equals d_Et + d_Eb.
    """

    d_E: float  # total lateral tip deflection (mm)
    d_Et: float  # torsion share (mm)
    d_Eb: float  # bending share (mm)
    theta_B: float  # twist of the cross segment (rad)
    phi_C: float  # beam rotation at the cross joint (rad)
    phi_D: float  # beam rotation at the distal joint (rad)


def min_tilt_angle(theta_f: float, mu0: float) -> float:
    """Smallest hand tilt that lets a gripped screw slide along the V-groove.

    The screw slides once gravity along the groove beats friction across
    it: tan(theta_gri - theta_f/2) > mu0, so the threshold is
    atan(mu0) + theta_f/2.  The screw mass cancels.

    Args:
        theta_f: full V-groove angle (rad).
        mu0: finger-screw friction coefficient.

    Returns:
        Threshold tilt (rad); sliding requires strictly more.

    Raises:
        DomainError: if the threshold reaches pi/2 (no physical tilt works).
    """
    if mu0 < 0.0:
        raise ValidationError("mu0: must be >= 0")
    if not 0.0 < theta_f < math.pi:
        raise ValidationError("theta_f: must be in (0, pi) rad")
    threshold = math.atan(mu0) + theta_f / 2.0
    if threshold >= math.pi / 2.0:
        raise DomainError(
            f"sliding needs a tilt of {math.degrees(threshold):.4g} deg or more, "
            "which no upright hand posture reaches"
        )
    return threshold


def fingertip_deflection(
    geom: FingerGeometry,
    mat: MaterialSpec,
    force_F: float,
    corrected_moment_arm: bool = False,
) -> DeflectionResult:
    """Lateral tip deflection of one finger under tip load F.

    Torsion of the cross segment (polar moment pi*D^4/32) plus cantilever
    bending of the beam segments (area moment I = pi*D^4/64):

        theta_B = 32*F*(l3+l4)*l2 / (G*pi*D^4)
        d_Et    = theta_B * (l3+l4)
        phi_C   = F*l2^2 / (2*E*I)
        phi_D   = F*l4^2 / (2*E*I)
        d_Eb    = F*(l3+l4)^3/(3*E*I) + F*l4^3/(3*E*I) + phi_C*l2 + phi_D*l4

    The phi_C carry-over term uses the l2 arm.  Setting
    ``corrected_moment_arm`` projects it over the full beam (l3+l4) instead;
    that variant is off by default so results stay comparable with the
    as-built sizing.

    Args:
        geom: finger segment lengths and beam diameter.
        mat: elastic constants (E, G in MPa).
        force_F: lateral tip load (N), >= 0.

    Returns:
        DeflectionResult with all shares; d_E = d_Et + d_Eb exactly.
    """
    if force_F < 0.0:
        raise ValidationError("force_F: must be >= 0 (N)")
    reach = geom.l3 + geom.l4
    d4 = geom.beam_D**4

    theta_B = 32.0 * force_F * reach * geom.l2 / (mat.G * math.pi * d4)
    d_Et = theta_B * reach

    inertia = math.pi * d4 / 64.0
    phi_C = force_F * geom.l2**2 / (2.0 * mat.E * inertia)
    phi_D = force_F * geom.l4**2 / (2.0 * mat.E * inertia)
    carry_arm = reach if corrected_moment_arm else geom.l2
    d_Eb = (
        force_F * reach**3 / (3.0 * mat.E * inertia)
        + force_F * geom.l4**3 / (3.0 * mat.E * inertia)
        + phi_C * carry_arm
        + phi_D * geom.l4
    )
    return DeflectionResult(
        d_E=d_Et + d_Eb,
        d_Et=d_Et,
        d_Eb=d_Eb,
        theta_B=theta_B,
        phi_C=phi_C,
        phi_D=phi_D,
    )


def valid_opening_range(defl: DeflectionResult, screw: ScrewSpec) -> tuple[float, float]:
    """Open interval of workable drop openings for one screw.

    The commanded opening must exceed the spring-back d_E (otherwise the
    fingers never release the shank) and stay below the head diameter
    (otherwise the screw falls out entirely).

    Returns:
        (d_E, head_D) as an open interval.

    Raises:
        NoValidOpeningError: if d_E >= head_D.
    """
    if defl.d_E >= screw.head_D:
        raise NoValidOpeningError(
            f"spring-back {defl.d_E:.6g} mm leaves no opening below the "
            f"{screw.head_D:.6g} mm head of {screw.nominal}"
        )
    return (defl.d_E, screw.head_D)


def simulate_arrange(
    screw: ScrewSpec,
    plan: TiltPlan,
    geom: FingerGeometry,
    mat: MaterialSpec,
    force_F: float = DEFAULT_GRIP_FORCE,
) -> StrategyTrace:
    """Quasi-static run of the stand-a-screw-upright routine.

    Held -> Tilted -> DroppedSliding -> AtEndCorner -> Vertical.  The drop
    transition carries all the guards; failures are verdicts on the trace:

    * Pinched: opening_d <= d_E, the fingers never release the shank;
    * Lost: opening_d >= head_D, the screw falls out of the grasp;
    * Stuck: the tilt does not exceed min_tilt_angle, the screw stays put.

    A pinched grasp is reported even when the opening would also lose the
    head: fingers that never release cannot drop the screw.

    Args:
        screw: the screw being arranged.
        plan: commanded tilt and opening.
        geom: finger geometry (V-groove angle and beam dimensions).
        mat: finger material (friction and elastic constants).
        force_F: lateral grip load the spring-back is evaluated at (N).

    Returns:
        A StrategyTrace ending in Vertical on success.
    """
    origin = PlanarPose(0.0, 0.0)
    grip_width = screw.shank_d
    phases = [
        PhaseRecord(PHASE_HELD, origin, grip_width, force_F, ok=True, tilt=0.0),
        PhaseRecord(PHASE_TILTED, origin, grip_width, force_F, ok=True,
                    tilt=plan.theta_gri),
    ]
    drop_width = grip_width + plan.opening_d

    defl = fingertip_deflection(geom, mat, force_F)
    threshold = min_tilt_angle(geom.theta_f, mat.mu_fingers)

    verdict: str | None = None
    if plan.opening_d <= defl.d_E:
        verdict = VERDICT_PINCHED
    elif plan.opening_d >= screw.head_D:
        verdict = VERDICT_LOST
    elif plan.theta_gri <= threshold:
        verdict = VERDICT_STUCK

    if verdict is not None:
        phases.append(
            PhaseRecord(PHASE_DROPPED_SLIDING, origin, drop_width, 0.0, ok=False,
                        tilt=plan.theta_gri)
        )
        return StrategyTrace(ARRANGE, tuple(phases), verdict,
                             failed_phase=PHASE_DROPPED_SLIDING)

    phases.extend([
        PhaseRecord(PHASE_DROPPED_SLIDING, origin, drop_width, 0.0, ok=True,
                    tilt=plan.theta_gri),
        PhaseRecord(PHASE_AT_END_CORNER, origin, drop_width, 0.0, ok=True,
                    tilt=plan.theta_gri),
        PhaseRecord(PHASE_VERTICAL, origin, drop_width, 0.0, ok=True, tilt=0.0),
    ])
    return StrategyTrace(ARRANGE, tuple(phases), VERDICT_SUCCESS)
