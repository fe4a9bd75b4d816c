"""Exception types shared across the griphand modules."""

from __future__ import annotations


class GriphandError(Exception):
    """Base class for every error raised by this package."""


class GeometryError(GriphandError):
    """A linkage cannot reach the requested configuration."""


class DomainError(GriphandError):
    """An input angle or parameter lies outside the model's domain."""


class RangeError(GriphandError):
    """A requested output value is outside the achievable range."""


class InfeasibleError(GriphandError):
    """No finite input satisfies the requested condition."""


class CaptureError(GriphandError):
    """The object lies outside what the gripper geometry can capture."""


class NoValidOpeningError(GriphandError):
    """Fingertip spring-back leaves no release opening below the screw head."""


class SingularGripError(GriphandError):
    """The grip configuration has no mechanical advantage (zero or negative lever)."""


class ParseError(GriphandError):
    """A scenario file is structurally malformed."""


class UnitError(GriphandError):
    """A scenario file declares units this package does not accept."""


class ValidationError(GriphandError, ValueError):
    """One or more declared parameters violate a documented invariant.

    The ``violations`` attribute lists each violated invariant as a string.
    """

    def __init__(self, violations: list[str] | str):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
