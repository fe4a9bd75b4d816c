"""Mechanism analysis and quasi-static planning for a dual-gripper robotic hand.

The hand pairs an outer holding gripper (parallelogram linkage) with inner
positioning fingertips (slider-crank), both worm-driven.  This package
models the transmissions, the friction conditions under which the
fingertips can align parts, the tilt-and-drop routine that stands screws
upright, and the holding-force budget; the bench subpackage runs scenario
files and writes CSV/SVG reports.
"""

from .alignment import (
    GRAVITY,
    LIGHT_MASS_THRESHOLD,
    PHASE_HOLDERS_CLOSE,
    PHASE_INNER_CLOSE,
    PHASE_INSERT_TIPS,
    PHASE_OUTER_FIRM_CLOSE,
    PHASE_OUTER_SOFT_CLOSE,
    PHASE_PUSH_OUT,
    PHASE_STRETCH,
    SQUEEZE,
    STRETCH,
    GridPoint,
    GridReport,
    GripperAperture,
    MaterialSpec,
    ObjectSpec,
    StretchContact,
    min_stretch_force,
    run_grid_experiment,
    simulate_alignment,
    squeeze_step,
    stretch_capture_radius,
    stretch_feasible,
)
from .bench import ScenarioSpec, bundled_scenario_path, load_scenario, run
from .errors import (
    CaptureError,
    DomainError,
    GeometryError,
    GriphandError,
    InfeasibleError,
    NoValidOpeningError,
    ParseError,
    RangeError,
    SingularGripError,
    UnitError,
    ValidationError,
)
from .mechkin import (
    CrankSpec,
    KinematicState,
    MechanismSpec,
    ParallelogramSpec,
    TransmissionResult,
    WormSpec,
    crank_beta,
    crank_torque,
    crank_transmission,
    crank_travel,
    crank_travel_approx,
    invert_travel,
    para_torque,
    para_torque_virtual_work,
    para_transmission,
    para_travel,
    worm_back_drive,
    worm_output,
)
from .screwarr import (
    ARRANGE,
    ARRANGE_PHASES,
    DEFAULT_GRIP_FORCE,
    M3X8,
    M6X12,
    PHASE_AT_END_CORNER,
    PHASE_DROPPED_SLIDING,
    PHASE_HELD,
    PHASE_TILTED,
    PHASE_VERTICAL,
    DeflectionResult,
    FingerGeometry,
    ScrewSpec,
    TiltPlan,
    fingertip_deflection,
    min_tilt_angle,
    simulate_arrange,
    valid_opening_range,
)
from .sizing import (
    NOMINAL_GRIP_STATE,
    NOMINAL_MOTOR,
    NOMINAL_MU_FINGERS,
    NOMINAL_PARA,
    NOMINAL_WORM,
    MotorSpec,
    PullCurve,
    PullTestConfig,
    emulate_pull_curve,
    finger_normal_force,
    pull_out_capacity,
)
from .trace import (
    ALL_VERDICTS,
    FAILURE_VERDICTS,
    VERDICT_FAILURE,
    VERDICT_LOST,
    VERDICT_PINCHED,
    VERDICT_STUCK,
    VERDICT_SUCCESS,
    PhaseRecord,
    PlanarPose,
    StrategyTrace,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_VERDICTS",
    "ARRANGE",
    "ARRANGE_PHASES",
    "CaptureError",
    "CrankSpec",
    "DEFAULT_GRIP_FORCE",
    "DeflectionResult",
    "DomainError",
    "FAILURE_VERDICTS",
    "FingerGeometry",
    "GRAVITY",
    "GeometryError",
    "GridPoint",
    "GridReport",
    "GriphandError",
    "GripperAperture",
    "InfeasibleError",
    "KinematicState",
    "LIGHT_MASS_THRESHOLD",
    "M3X8",
    "M6X12",
    "MaterialSpec",
    "MechanismSpec",
    "MotorSpec",
    "NOMINAL_GRIP_STATE",
    "NOMINAL_MOTOR",
    "NOMINAL_MU_FINGERS",
    "NOMINAL_PARA",
    "NOMINAL_WORM",
    "NoValidOpeningError",
    "ObjectSpec",
    "PHASE_AT_END_CORNER",
    "PHASE_DROPPED_SLIDING",
    "PHASE_HELD",
    "PHASE_HOLDERS_CLOSE",
    "PHASE_INNER_CLOSE",
    "PHASE_INSERT_TIPS",
    "PHASE_OUTER_FIRM_CLOSE",
    "PHASE_OUTER_SOFT_CLOSE",
    "PHASE_PUSH_OUT",
    "PHASE_STRETCH",
    "PHASE_TILTED",
    "PHASE_VERTICAL",
    "ParallelogramSpec",
    "ParseError",
    "PhaseRecord",
    "PlanarPose",
    "PullCurve",
    "PullTestConfig",
    "RangeError",
    "SQUEEZE",
    "STRETCH",
    "ScenarioSpec",
    "ScrewSpec",
    "SingularGripError",
    "StrategyTrace",
    "StretchContact",
    "TiltPlan",
    "TransmissionResult",
    "UnitError",
    "VERDICT_FAILURE",
    "VERDICT_LOST",
    "VERDICT_PINCHED",
    "VERDICT_STUCK",
    "VERDICT_SUCCESS",
    "ValidationError",
    "WormSpec",
    "bundled_scenario_path",
    "crank_beta",
    "crank_torque",
    "crank_transmission",
    "crank_travel",
    "crank_travel_approx",
    "emulate_pull_curve",
    "finger_normal_force",
    "fingertip_deflection",
    "invert_travel",
    "load_scenario",
    "min_stretch_force",
    "min_tilt_angle",
    "para_torque",
    "para_torque_virtual_work",
    "para_transmission",
    "para_travel",
    "pull_out_capacity",
    "run",
    "run_grid_experiment",
    "simulate_alignment",
    "simulate_arrange",
    "squeeze_step",
    "stretch_capture_radius",
    "stretch_feasible",
    "valid_opening_range",
    "worm_back_drive",
    "worm_output",
]
