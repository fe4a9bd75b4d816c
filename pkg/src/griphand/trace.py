"""Phase-by-phase traces produced by the quasi-static strategy simulators."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ValidationError

VERDICT_SUCCESS = "Success"
VERDICT_FAILURE = "Failure"
# Screw-arrangement failure verdicts.
VERDICT_STUCK = "Stuck"
VERDICT_LOST = "Lost"
VERDICT_PINCHED = "Pinched"

FAILURE_VERDICTS = (VERDICT_FAILURE, VERDICT_STUCK, VERDICT_LOST, VERDICT_PINCHED)
ALL_VERDICTS = (VERDICT_SUCCESS,) + FAILURE_VERDICTS


@dataclass(frozen=True)
class PlanarPose:
    """Planar position error of an object relative to the gripper axis (mm)."""

    x: float
    y: float

    @property
    def error(self) -> float:
        """Distance from the gripper axis (mm)."""
        return math.hypot(self.x, self.y)


@dataclass(frozen=True)
class PhaseRecord:
    """One executed strategy phase.

    ``tilt`` is only meaningful for the screw-arrangement phases; planar
    alignment phases leave it at zero.
    """

    phase: str  # phase label, strategy-defined
    pose: PlanarPose  # object pose after the phase (mm)
    aperture: float  # commanded finger opening (mm)
    force: float  # applied fingertip force (N)
    ok: bool  # whether the phase achieved its goal
    tilt: float = 0.0  # hand tilt during the phase (rad)


@dataclass(frozen=True)
class StrategyTrace:
    """Ordered phase records plus exactly one terminal verdict.

    ``failed_phase`` names the phase that stalled whenever the verdict is
    not Success; the trace stops at that phase.
    """

    strategy: str
    phases: tuple[PhaseRecord, ...]
    verdict: str
    failed_phase: str | None = field(default=None)

    def __post_init__(self) -> None:
        if self.verdict not in ALL_VERDICTS:
            raise ValidationError(
                f"StrategyTrace.verdict: {self.verdict!r} is not one of {ALL_VERDICTS}"
            )
        if (self.verdict == VERDICT_SUCCESS) != (self.failed_phase is None):
            raise ValidationError(
                "StrategyTrace.failed_phase: must be set exactly when the verdict "
                "is a failure"
            )

    @property
    def success(self) -> bool:
        return self.verdict == VERDICT_SUCCESS

    @property
    def residual_error(self) -> float:
        """Planar error left after the last executed phase (mm)."""
        if not self.phases:
            return math.nan
        return self.phases[-1].pose.error
