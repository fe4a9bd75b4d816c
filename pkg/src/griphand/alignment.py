"""Friction-based alignment feasibility and the planar capture model.

Two alignment strategies are modelled for circular parts on a flat surface:

* stretch: the positioning fingertips enter the part's hole and stretch
  outward; sliding friction drags the part until it is centred.
* squeeze: the holding jaws close softly along one axis, the positioning
  fingers close along the perpendicular axis, then the jaws close firmly.

The pose convention is a planar error (x, y) in mm between the part centre
and the gripper axis.  The holding jaws sweep along x, the positioning
fingers along y.  Angles are radians, forces Newtons, masses kg.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CaptureError, InfeasibleError, ValidationError
from .trace import (
    VERDICT_FAILURE,
    VERDICT_SUCCESS,
    PhaseRecord,
    PlanarPose,
    StrategyTrace,
)

GRAVITY = 9.81  # m/s^2

# Strategy names accepted by the simulator and scenario files.
STRETCH = "stretch"
SQUEEZE = "squeeze"

# Stretch phases, in order; the holder close is skipped for light parts and
# the release push is only appended for parts flagged may_stick.
PHASE_INSERT_TIPS = "InsertTips"
PHASE_STRETCH = "Stretch"
PHASE_HOLDERS_CLOSE = "HoldersClose"
PHASE_PUSH_OUT = "PushOut"

# Squeeze phases, in order.
PHASE_OUTER_SOFT_CLOSE = "OuterSoftClose"
PHASE_INNER_CLOSE = "InnerClose"
PHASE_OUTER_FIRM_CLOSE = "OuterFirmClose"

# Parts lighter than this are centred by the stretch alone and the holding
# jaws stay out of the way.
LIGHT_MASS_THRESHOLD = 0.1  # kg

# Absorbs floating-point representation error when a pose sits exactly on a
# capture boundary (a point constructed at ring radius r can round 1 ulp
# outside r).
CAPTURE_TOL = 1e-9  # mm


@dataclass(frozen=True)
class MaterialSpec:
    """Finger material and finger-part friction.

    The elastic defaults are printed ABS.
    """

    mu_fingers: float  # friction coefficient between fingertips and part
    E: float = 2200.0  # Young's modulus (MPa)
    G: float = 800.0  # shear modulus (MPa)

    def __post_init__(self) -> None:
        bad = []
        if self.mu_fingers < 0.0:
            bad.append("MaterialSpec.mu_fingers: must be >= 0")
        if not self.E > 0.0:
            bad.append("MaterialSpec.E: must be positive (MPa)")
        if not self.G > 0.0:
            bad.append("MaterialSpec.G: must be positive (MPa)")
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True)
class ObjectSpec:
    """A circular part resting on the work surface."""

    outer_D: float  # outer diameter (mm)
    hole_d: float  # centre hole diameter (mm), 0 for solid parts
    height_H: float  # part height (mm)
    mass: float  # part mass (kg)
    mu_ground: float  # friction coefficient between part and surface
    may_stick: bool = False  # part tends to jam on release and needs a push

    def __post_init__(self) -> None:
        bad = []
        if not self.outer_D > 0.0:
            bad.append("ObjectSpec.outer_D: must be positive (mm)")
        if not 0.0 <= self.hole_d < self.outer_D:
            bad.append("ObjectSpec.hole_d: must satisfy 0 <= hole_d < outer_D")
        if not self.height_H > 0.0:
            bad.append("ObjectSpec.height_H: must be positive (mm)")
        if self.mass < 0.0:
            bad.append("ObjectSpec.mass: must be >= 0 (kg)")
        if self.mu_ground < 0.0:
            bad.append("ObjectSpec.mu_ground: must be >= 0")
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True)
class StretchContact:
    """Fingertip-hole contact during the stretch phase.

    ``theta`` is the angle between a fingertip surface and the vertical;
    ``force_F`` is the outward force applied by each fingertip.
    """

    theta: float  # contact angle (rad), in (0, pi/2]
    force_F: float  # per-finger stretch force (N)
    gravity_g: float = GRAVITY  # m/s^2

    def __post_init__(self) -> None:
        bad = []
        if not 0.0 < self.theta <= math.pi / 2.0:
            bad.append("StretchContact.theta: must be in (0, pi/2] rad")
        if self.force_F < 0.0:
            bad.append("StretchContact.force_F: must be >= 0 (N)")
        if not self.gravity_g > 0.0:
            bad.append("StretchContact.gravity_g: must be positive")
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True)
class GripperAperture:
    """Opening limits of both grippers."""

    inner_closed_width: float  # positioning fingertips, fully closed (mm)
    inner_max_stretch: float  # positioning fingertips, fully stretched (mm)
    outer_max_open: float  # holding jaws, fully open (mm)

    def __post_init__(self) -> None:
        bad = []
        if self.inner_closed_width < 0.0:
            bad.append("GripperAperture.inner_closed_width: must be >= 0 (mm)")
        if not self.inner_max_stretch > self.inner_closed_width:
            bad.append(
                "GripperAperture.inner_max_stretch: must exceed inner_closed_width"
            )
        if not self.outer_max_open > 0.0:
            bad.append("GripperAperture.outer_max_open: must be positive (mm)")
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True)
class GridPoint:
    """One probed start pose of a grid experiment."""

    ring_index: int
    ring_diameter: float  # mm
    point_index: int
    angle_deg: float  # position angle on the ring (deg)
    x: float  # start pose (mm)
    y: float  # start pose (mm)
    verdict: str
    failed_phase: str | None

    @property
    def success(self) -> bool:
        return self.verdict == VERDICT_SUCCESS


@dataclass(frozen=True)
class GridReport:
    """All verdicts of a position-error grid experiment."""

    strategy: str
    points: tuple[GridPoint, ...]
    points_per_ring: int
    ring_diameters: tuple[float, ...]

    def __post_init__(self) -> None:
        expected = len(self.ring_diameters) * self.points_per_ring
        if len(self.points) != expected:
            raise ValidationError(
                f"GridReport.points: expected {expected} points "
                f"({len(self.ring_diameters)} rings x {self.points_per_ring}), "
                f"got {len(self.points)}"
            )

    @property
    def success_count(self) -> int:
        return sum(1 for p in self.points if p.success)

    @property
    def total(self) -> int:
        return len(self.points)

    def ring_successes(self) -> tuple[int, ...]:
        """Successes per ring, in ring order."""
        counts = [0] * len(self.ring_diameters)
        for p in self.points:
            if p.success:
                counts[p.ring_index] += 1
        return tuple(counts)


def stretch_feasible(contact: StretchContact, obj: ObjectSpec, mat: MaterialSpec) -> bool:
    """Whether stretching drags the part along the surface.

    The stretch aligns iff the tangential friction drive beats the fingertip
    friction loss plus the ground friction, strictly:

        2*F*sin(theta)*cos(theta) > 2*mu_f*F*cos(theta) + mu_g*m*g

    with F per finger and g in m/s^2 (the mm/N convention cancels out: both
    sides are Newtons).
    """
    drive = 2.0 * contact.force_F * math.sin(contact.theta) * math.cos(contact.theta)
    resist = (
        2.0 * mat.mu_fingers * contact.force_F * math.cos(contact.theta)
        + obj.mu_ground * obj.mass * contact.gravity_g
    )
    return drive > resist


def min_stretch_force(
    theta: float, obj: ObjectSpec, mat: MaterialSpec, gravity: float = GRAVITY
) -> float:
    """Smallest per-finger force that makes the stretch drag the part.

    F* = mu_g * m * g / (2*cos(theta)*(sin(theta) - mu_f)).  Feasibility is
    a strict inequality, so stretch_feasible is false below F* and true
    above it.

    Args:
        theta: fingertip contact angle (rad).
        obj: the part; only mass and mu_ground enter.
        mat: finger material; only mu_fingers enters.
        gravity: m/s^2.

    Returns:
        Threshold force (N); 0 when there is no ground friction to defeat.

    Raises:
        InfeasibleError: if sin(theta) <= mu_fingers (no force can win), or
            theta = pi/2 with ground friction present (cos(theta) = 0).
    """
    sin_t = math.sin(theta)
    cos_t = math.cos(theta)
    if sin_t <= mat.mu_fingers:
        raise InfeasibleError(
            f"stretch cannot align at theta = {math.degrees(theta):.4g} deg: "
            f"sin(theta) = {sin_t:.6g} does not exceed mu_fingers = {mat.mu_fingers:.6g}"
        )
    ground = obj.mu_ground * obj.mass * gravity
    if ground == 0.0:
        return 0.0
    # cos(pi/2) rounds to ~6e-17, never exactly 0, so gate on the angle.
    if theta >= math.pi / 2.0 or cos_t <= 0.0:
        raise InfeasibleError(
            "stretch cannot align at theta = 90 deg: the fingertip force has "
            "no horizontal component left to defeat ground friction"
        )
    return ground / (2.0 * cos_t * (sin_t - mat.mu_fingers))


def stretch_capture_radius(obj: ObjectSpec, aperture: GripperAperture) -> float:
    """Largest centre offset from which the closed fingertips still enter the hole.

    r_c = (hole_d - inner_closed_width) / 2.

    Raises:
        CaptureError: if the closed fingertips do not fit the hole at all
            (hole_d <= inner_closed_width, including solid parts).
    """
    if obj.hole_d <= aperture.inner_closed_width:
        raise CaptureError(
            f"closed fingertips ({aperture.inner_closed_width:.6g} mm) do not fit "
            f"the {obj.hole_d:.6g} mm hole"
        )
    return (obj.hole_d - aperture.inner_closed_width) / 2.0


def squeeze_step(
    pose: PlanarPose, axis: tuple[float, float], half_range: float = math.inf
) -> PlanarPose:
    """Pose after one jaw pair closes along ``axis``.

    Closing jaws cancel the pose component along their axis and leave the
    perpendicular component untouched.

    Args:
        pose: pose before the close (mm).
        axis: closing direction; any nonzero vector, normalised internally.
        half_range: half of the jaw sweep beyond the part diameter (mm);
            poses farther out than this along the axis are not captured.

    Returns:
        The projected pose.

    Raises:
        CaptureError: if the part lies outside the jaw sweep.
        ValidationError: if axis is the zero vector.
    """
    norm = math.hypot(axis[0], axis[1])
    if norm == 0.0:
        raise ValidationError("squeeze_step axis: must be a nonzero vector")
    ux, uy = axis[0] / norm, axis[1] / norm
    component = pose.x * ux + pose.y * uy
    if abs(component) > half_range + CAPTURE_TOL:
        raise CaptureError(
            f"part offset {component:.6g} mm along the closing axis exceeds the "
            f"{half_range:.6g} mm jaw sweep"
        )
    return PlanarPose(pose.x - component * ux, pose.y - component * uy)


def _stretch_trace(
    obj: ObjectSpec,
    aperture: GripperAperture,
    initial: PlanarPose,
    contact: StretchContact,
    mat: MaterialSpec | None,
    light_mass_threshold: float,
) -> StrategyTrace:
    phases: list[PhaseRecord] = []

    def fail(phase: str, pose: PlanarPose, cmd: float, force: float) -> StrategyTrace:
        phases.append(PhaseRecord(phase, pose, cmd, force, ok=False))
        return StrategyTrace(STRETCH, tuple(phases), VERDICT_FAILURE, failed_phase=phase)

    # InsertTips: the closed fingertips must enter the hole despite the
    # initial offset, which caps the offset at the capture radius.
    try:
        r_c = stretch_capture_radius(obj, aperture)
    except CaptureError:
        return fail(PHASE_INSERT_TIPS, initial, aperture.inner_closed_width, 0.0)
    if initial.error > r_c + CAPTURE_TOL:
        return fail(PHASE_INSERT_TIPS, initial, aperture.inner_closed_width, 0.0)
    phases.append(
        PhaseRecord(PHASE_INSERT_TIPS, initial, aperture.inner_closed_width, 0.0, ok=True)
    )

    # Stretch: the fingertips press the hole wall and friction drags the
    # part onto the gripper axis.  They must be able to reach the wall, and
    # the friction balance must come out in favour of sliding.
    if aperture.inner_max_stretch < obj.hole_d:
        return fail(PHASE_STRETCH, initial, aperture.inner_max_stretch, contact.force_F)
    if mat is not None and not stretch_feasible(contact, obj, mat):
        return fail(PHASE_STRETCH, initial, obj.hole_d, contact.force_F)
    centred = PlanarPose(0.0, 0.0)
    phases.append(PhaseRecord(PHASE_STRETCH, centred, obj.hole_d, contact.force_F, ok=True))

    # HoldersClose: parts heavy enough to slip off the stretched fingertips
    # get wrapped by the holding jaws as well.
    if obj.mass >= light_mass_threshold:
        if aperture.outer_max_open < obj.outer_D:
            return fail(PHASE_HOLDERS_CLOSE, centred, aperture.outer_max_open, 0.0)
        phases.append(PhaseRecord(PHASE_HOLDERS_CLOSE, centred, obj.outer_D, 0.0, ok=True))

    if obj.may_stick:
        phases.append(
            PhaseRecord(PHASE_PUSH_OUT, centred, obj.hole_d, contact.force_F, ok=True)
        )

    return StrategyTrace(STRETCH, tuple(phases), VERDICT_SUCCESS)


def _squeeze_trace(
    obj: ObjectSpec,
    aperture: GripperAperture,
    initial: PlanarPose,
    contact: StretchContact,
) -> StrategyTrace:
    phases: list[PhaseRecord] = []
    half_x = (aperture.outer_max_open - obj.outer_D) / 2.0
    half_y = (aperture.inner_max_stretch - obj.outer_D) / 2.0

    def close(phase: str, pose: PlanarPose, axis: tuple[float, float], half: float,
              force: float) -> PlanarPose | None:
        try:
            after = squeeze_step(pose, axis, half)
        except CaptureError:
            phases.append(PhaseRecord(phase, pose, obj.outer_D, force, ok=False))
            return None
        phases.append(PhaseRecord(phase, after, obj.outer_D, force, ok=True))
        return after

    pose = close(PHASE_OUTER_SOFT_CLOSE, initial, (1.0, 0.0), half_x, 0.0)
    if pose is None:
        return StrategyTrace(SQUEEZE, tuple(phases), VERDICT_FAILURE,
                             failed_phase=PHASE_OUTER_SOFT_CLOSE)

    pose = close(PHASE_INNER_CLOSE, pose, (0.0, 1.0), half_y, contact.force_F)
    if pose is None:
        return StrategyTrace(SQUEEZE, tuple(phases), VERDICT_FAILURE,
                             failed_phase=PHASE_INNER_CLOSE)

    # Both axes are cancelled; the firm close just secures the part.
    phases.append(
        PhaseRecord(PHASE_OUTER_FIRM_CLOSE, pose, obj.outer_D, contact.force_F, ok=True)
    )
    if obj.may_stick:
        phases.append(
            PhaseRecord(PHASE_PUSH_OUT, pose, obj.outer_D, contact.force_F, ok=True)
        )
    return StrategyTrace(SQUEEZE, tuple(phases), VERDICT_SUCCESS)


def simulate_alignment(
    strategy: str,
    obj: ObjectSpec,
    aperture: GripperAperture,
    initial: PlanarPose,
    contact: StretchContact,
    *,
    mat: MaterialSpec | None = None,
    light_mass_threshold: float = LIGHT_MASS_THRESHOLD,
) -> StrategyTrace:
    """Quasi-static run of one alignment strategy from one start pose.

    Failures are verdicts on the returned trace, not exceptions; the trace
    stops at the failing phase.  When ``mat`` is given the stretch phase
    additionally requires the friction balance to be feasible; without it
    the simulation is purely geometric.

    Args:
        strategy: ``"stretch"`` or ``"squeeze"``.
        obj: the part to centre.
        aperture: gripper opening limits.
        initial: start pose error (mm).
        contact: fingertip contact parameters.
        mat: finger material for the friction gate (optional).
        light_mass_threshold: parts lighter than this skip HoldersClose (kg).

    Returns:
        A StrategyTrace; on success the residual pose error is 0.
    """
    if strategy == STRETCH:
        return _stretch_trace(obj, aperture, initial, contact, mat, light_mass_threshold)
    if strategy == SQUEEZE:
        return _squeeze_trace(obj, aperture, initial, contact)
    raise ValidationError(
        f"strategy: {strategy!r} is not one of ({STRETCH!r}, {SQUEEZE!r})"
    )


def run_grid_experiment(
    strategy: str,
    obj: ObjectSpec,
    aperture: GripperAperture,
    contact: StretchContact,
    ring_diameters: tuple[float, ...] | list[float],
    points_per_ring: int,
    *,
    mat: MaterialSpec | None = None,
    light_mass_threshold: float = LIGHT_MASS_THRESHOLD,
) -> GridReport:
    """Probe the strategy from evenly spaced start poses on concentric rings.

    Points sit at angles 2*pi*k/points_per_ring on each ring; ring k of
    diameter d contributes poses at radius d/2.

    Args:
        strategy: ``"stretch"`` or ``"squeeze"``.
        ring_diameters: ring diameters (mm); a 0 entry probes the centre.
        points_per_ring: points on every ring, >= 1.

    Returns:
        A GridReport with one verdict per probed point, in ring-then-angle
        order.
    """
    if not ring_diameters:
        raise ValidationError("ring_diameters: must not be empty")
    if points_per_ring < 1:
        raise ValidationError("points_per_ring: must be >= 1")

    points: list[GridPoint] = []
    for ring_index, diameter in enumerate(ring_diameters):
        if diameter < 0.0:
            raise ValidationError("ring_diameters: must be >= 0 (mm)")
        radius = diameter / 2.0
        for k in range(points_per_ring):
            phi = 2.0 * math.pi * k / points_per_ring
            pose = PlanarPose(radius * math.cos(phi), radius * math.sin(phi))
            trace = simulate_alignment(
                strategy, obj, aperture, pose, contact,
                mat=mat, light_mass_threshold=light_mass_threshold,
            )
            points.append(
                GridPoint(
                    ring_index=ring_index,
                    ring_diameter=diameter,
                    point_index=k,
                    angle_deg=math.degrees(phi),
                    x=pose.x,
                    y=pose.y,
                    verdict=trace.verdict,
                    failed_phase=trace.failed_phase,
                )
            )
    return GridReport(
        strategy=strategy,
        points=tuple(points),
        points_per_ring=points_per_ring,
        ring_diameters=tuple(ring_diameters),
    )
