"""Scenario files: the JSON schema the bench runs from.

A scenario bundles the hand's mechanism parameters, a material, the gripper
apertures, the parts on the bench and a list of named experiments.  Files
carry mm / N / kg / degrees and must say so in a ``units`` header; angles
are converted to radians on load.  The full schema is documented in
``docs/scenario_schema.md``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..alignment import (
    SQUEEZE,
    STRETCH,
    GripperAperture,
    MaterialSpec,
    ObjectSpec,
    StretchContact,
)
from ..errors import ParseError, UnitError, ValidationError
from ..mechkin import (
    CrankSpec,
    KinematicState,
    MechanismSpec,
    ParallelogramSpec,
    WormSpec,
)
from ..screwarr import FingerGeometry, ScrewSpec, TiltPlan
from ..sizing import MotorSpec
from ..trace import PlanarPose

REQUIRED_UNITS = {"length": "mm", "force": "N", "mass": "kg", "angle": "deg"}

EXPERIMENT_KINDS = ("grid", "align", "pull_curve", "arrange")


@dataclass(frozen=True)
class GridExperiment:
    name: str
    strategy: str  # "stretch" or "squeeze"
    object_name: str
    contact: StretchContact
    ring_diameters: tuple[float, ...]
    points_per_ring: int

    kind = "grid"


@dataclass(frozen=True)
class AlignExperiment:
    name: str
    strategy: str
    object_name: str
    contact: StretchContact
    initial: PlanarPose

    kind = "align"


@dataclass(frozen=True)
class PullCurveExperiment:
    name: str
    fractions: tuple[float, ...]  # of stall torque
    samples: int
    mu_fingers: float
    contact_count: int
    grip_state: KinematicState
    pull_speed: float  # mm/s

    kind = "pull_curve"


@dataclass(frozen=True)
class ArrangeExperiment:
    name: str
    screw_name: str
    plan: TiltPlan
    force: float  # lateral grip load for the spring-back (N)

    kind = "arrange"


Experiment = GridExperiment | AlignExperiment | PullCurveExperiment | ArrangeExperiment


@dataclass(frozen=True)
class ScenarioSpec:
    """A fully resolved scenario, radians inside."""

    mechanisms: MechanismSpec
    material: MaterialSpec
    aperture: GripperAperture
    objects: dict[str, ObjectSpec]
    screws: dict[str, ScrewSpec]
    experiments: tuple[Experiment, ...]
    motor: MotorSpec | None = None
    finger: FingerGeometry | None = None

    def experiment(self, name: str) -> Experiment:
        for exp in self.experiments:
            if exp.name == name:
                return exp
        known = ", ".join(e.name for e in self.experiments)
        raise KeyError(f"no experiment named {name!r}; scenario has: {known}")

    @property
    def experiment_names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.experiments)


def bundled_scenario_path(name: str = "taskboard") -> Path:
    """Filesystem path of a scenario shipped inside the package."""
    res = resources.files("griphand.scenarios").joinpath(f"{name}.json")
    with resources.as_file(res) as path:
        if not path.exists():
            raise FileNotFoundError(f"no bundled scenario named {name!r}")
        return Path(path)


def _require(mapping: dict, key: str, kind: type | tuple, where: str):
    if key not in mapping:
        raise ParseError(f"missing field '{where}.{key}'")
    value = mapping[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"field '{where}.{key}': expected a number")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError(f"field '{where}.{key}': expected an integer")
        return value
    if not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ParseError(f"field '{where}.{key}': expected {names}")
    return value


def _optional(mapping: dict, key: str, kind: type | tuple, where: str, default):
    if key not in mapping:
        return default
    return _require(mapping, key, kind, where)


def _angle(mapping: dict, key: str, where: str) -> float:
    """A required angle field, degrees in the file, radians out."""
    return math.radians(_require(mapping, key, float, where))


def _check_units(data: dict) -> None:
    if "units" not in data:
        raise UnitError(
            "scenario file has no units header; declare "
            '{"length": "mm", "force": "N", "mass": "kg", "angle": "deg"}'
        )
    units = _require(data, "units", dict, "scenario")
    for quantity, expected in REQUIRED_UNITS.items():
        declared = units.get(quantity)
        if declared is None:
            raise UnitError(f"units header is missing '{quantity}' (must be '{expected}')")
        if declared != expected:
            raise UnitError(
                f"unsupported unit {declared!r} for {quantity}: scenario files "
                f"carry {expected!r}"
            )
    unknown = set(units) - set(REQUIRED_UNITS)
    if unknown:
        raise UnitError(f"unknown quantities in units header: {sorted(unknown)}")


def _contact(mapping: dict, where: str) -> StretchContact:
    block = _require(mapping, "contact", dict, where)
    return StretchContact(
        theta=_angle(block, "theta", f"{where}.contact"),
        force_F=_require(block, "force", float, f"{where}.contact"),
        gravity_g=_optional(block, "gravity", float, f"{where}.contact", 9.81),
    )


def _parse_experiment(block: dict, index: int) -> Experiment:
    where = f"experiments[{index}]"
    name = _require(block, "name", str, where)
    kind = _require(block, "type", str, where)
    where = f"experiments[{index}]({name})"

    if kind == "grid":
        strategy = _require(block, "strategy", str, where)
        _check_strategy(strategy, where)
        rings = _require(block, "ring_diameters", list, where)
        return GridExperiment(
            name=name,
            strategy=strategy,
            object_name=_require(block, "object", str, where),
            contact=_contact(block, where),
            ring_diameters=tuple(_number_list(rings, f"{where}.ring_diameters")),
            points_per_ring=_require(block, "points_per_ring", int, where),
        )
    if kind == "align":
        strategy = _require(block, "strategy", str, where)
        _check_strategy(strategy, where)
        initial = _require(block, "initial", list, where)
        xy = _number_list(initial, f"{where}.initial")
        if len(xy) != 2:
            raise ParseError(f"field '{where}.initial': expected [x, y]")
        return AlignExperiment(
            name=name,
            strategy=strategy,
            object_name=_require(block, "object", str, where),
            contact=_contact(block, where),
            initial=PlanarPose(xy[0], xy[1]),
        )
    if kind == "pull_curve":
        fractions = _number_list(_require(block, "fractions", list, where),
                                 f"{where}.fractions")
        grip = _require(block, "grip_state", dict, where)
        return PullCurveExperiment(
            name=name,
            fractions=tuple(fractions),
            samples=_optional(block, "samples", int, where, 120),
            mu_fingers=_require(block, "mu_fingers", float, where),
            contact_count=_optional(block, "contacts", int, where, 2),
            grip_state=KinematicState(
                alpha=_angle(grip, "alpha", f"{where}.grip_state"),
                beta=_angle(grip, "beta", f"{where}.grip_state"),
            ),
            pull_speed=_optional(block, "pull_speed", float, where, 5.0),
        )
    if kind == "arrange":
        return ArrangeExperiment(
            name=name,
            screw_name=_require(block, "screw", str, where),
            plan=TiltPlan(
                theta_gri=_angle(block, "tilt", where),
                opening_d=_require(block, "opening", float, where),
            ),
            force=_optional(block, "force", float, where, 3.0),
        )
    raise ParseError(
        f"field '{where}.type': {kind!r} is not one of {EXPERIMENT_KINDS}"
    )


def _check_strategy(strategy: str, where: str) -> None:
    if strategy not in (STRETCH, SQUEEZE):
        raise ParseError(
            f"field '{where}.strategy': {strategy!r} is not one of "
            f"({STRETCH!r}, {SQUEEZE!r})"
        )


def _number_list(values: list, where: str) -> list[float]:
    out = []
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"field '{where}[{i}]': expected a number")
        out.append(float(v))
    return out


def load_scenario(path: str | Path) -> ScenarioSpec:
    """Parse and validate one scenario file.

    Raises:
        ParseError: on malformed JSON (with line/column) or missing/mistyped
            fields (with the field path).
        UnitError: when the units header is absent or declares anything but
            mm / N / kg / deg.
        ValidationError: listing every violated parameter invariant.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read scenario {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path.name}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path.name}: top level must be a JSON object")

    _check_units(data)

    violations: list[str] = []

    def build(factory):
        try:
            return factory()
        except ValidationError as exc:
            violations.extend(exc.violations)
            return None

    mech_block = _require(data, "mechanisms", dict, "scenario")
    crank_block = _require(mech_block, "crank", dict, "mechanisms")
    para_block = _require(mech_block, "parallelogram", dict, "mechanisms")
    worm_block = _require(mech_block, "worm", dict, "mechanisms")

    crank = build(lambda: CrankSpec(
        R=_require(crank_block, "R", float, "mechanisms.crank"),
        L=_require(crank_block, "L", float, "mechanisms.crank"),
    ))
    if crank is not None and crank.L < crank.R:
        violations.append(
            "CrankSpec.L: must be >= CrankSpec.R so the slider closes over the "
            "full stroke"
        )
    para = build(lambda: ParallelogramSpec(
        R=_require(para_block, "R", float, "mechanisms.parallelogram"),
        L=_require(para_block, "L", float, "mechanisms.parallelogram"),
    ))
    worm = build(lambda: WormSpec(
        ratio=_require(worm_block, "ratio", float, "mechanisms.worm"),
        efficiency=_optional(worm_block, "efficiency", float, "mechanisms.worm", 0.4),
        self_locking=_optional(worm_block, "self_locking", bool, "mechanisms.worm", True),
    ))

    mat_block = _require(data, "material", dict, "scenario")
    material = build(lambda: MaterialSpec(
        mu_fingers=_require(mat_block, "mu_fingers", float, "material"),
        E=_optional(mat_block, "E", float, "material", 2200.0),
        G=_optional(mat_block, "G", float, "material", 800.0),
    ))

    ap_block = _require(data, "aperture", dict, "scenario")
    aperture = build(lambda: GripperAperture(
        inner_closed_width=_require(ap_block, "inner_closed_width", float, "aperture"),
        inner_max_stretch=_require(ap_block, "inner_max_stretch", float, "aperture"),
        outer_max_open=_require(ap_block, "outer_max_open", float, "aperture"),
    ))

    motor = None
    if "motor" in data:
        motor_block = _require(data, "motor", dict, "scenario")
        motor = build(lambda: MotorSpec(
            stall_torque=_require(motor_block, "stall_torque", float, "motor"),
            name=_optional(motor_block, "name", str, "motor", ""),
        ))

    finger = None
    if "finger" in data:
        fin_block = _require(data, "finger", dict, "scenario")
        finger = build(lambda: FingerGeometry(
            l1=_require(fin_block, "l1", float, "finger"),
            l2=_require(fin_block, "l2", float, "finger"),
            l3=_require(fin_block, "l3", float, "finger"),
            l4=_require(fin_block, "l4", float, "finger"),
            beam_D=_require(fin_block, "beam_D", float, "finger"),
            theta_f=_angle(fin_block, "theta_f", "finger"),
        ))

    objects: dict[str, ObjectSpec] = {}
    for i, block in enumerate(_require(data, "objects", list, "scenario")):
        if not isinstance(block, dict):
            raise ParseError(f"field 'objects[{i}]': expected an object")
        obj_name = _require(block, "name", str, f"objects[{i}]")
        if obj_name in objects:
            violations.append(f"objects: duplicate name {obj_name!r}")
            continue
        obj = build(lambda b=block, w=f"objects[{i}]({obj_name})": ObjectSpec(
            outer_D=_require(b, "outer_D", float, w),
            hole_d=_optional(b, "hole_d", float, w, 0.0),
            height_H=_require(b, "height_H", float, w),
            mass=_require(b, "mass", float, w),
            mu_ground=_require(b, "mu_ground", float, w),
            may_stick=_optional(b, "may_stick", bool, w, False),
        ))
        if obj is not None:
            objects[obj_name] = obj

    screws: dict[str, ScrewSpec] = {}
    for i, block in enumerate(_optional(data, "screws", list, "scenario", [])):
        if not isinstance(block, dict):
            raise ParseError(f"field 'screws[{i}]': expected an object")
        nominal = _require(block, "nominal", str, f"screws[{i}]")
        if nominal in screws:
            violations.append(f"screws: duplicate nominal {nominal!r}")
            continue
        screw = build(lambda b=block, w=f"screws[{i}]({nominal})": ScrewSpec(
            nominal=nominal,
            mass=_require(b, "mass", float, w),
            head_D=_require(b, "head_D", float, w),
            shank_d=_require(b, "shank_d", float, w),
            length=_require(b, "length", float, w),
        ))
        if screw is not None:
            screws[nominal] = screw

    experiments: list[Experiment] = []
    seen_names: set[str] = set()
    for i, block in enumerate(_require(data, "experiments", list, "scenario")):
        if not isinstance(block, dict):
            raise ParseError(f"field 'experiments[{i}]': expected an object")
        exp = build(lambda b=block, j=i: _parse_experiment(b, j))
        if exp is None:
            continue
        if exp.name in seen_names:
            violations.append(f"experiments: duplicate name {exp.name!r}")
            continue
        seen_names.add(exp.name)
        experiments.append(exp)

    # Cross references and cross-section requirements.
    for exp in experiments:
        if isinstance(exp, (GridExperiment, AlignExperiment)):
            if exp.object_name not in objects:
                violations.append(
                    f"experiments({exp.name}).object: no object named {exp.object_name!r}"
                )
        elif isinstance(exp, ArrangeExperiment):
            if exp.screw_name not in screws:
                violations.append(
                    f"experiments({exp.name}).screw: no screw named {exp.screw_name!r}"
                )
            if finger is None:
                violations.append(
                    f"experiments({exp.name}): an arrange experiment needs a "
                    "'finger' section"
                )
        elif isinstance(exp, PullCurveExperiment) and motor is None:
            violations.append(
                f"experiments({exp.name}): a pull_curve experiment needs a "
                "'motor' section"
            )

    if violations:
        raise ValidationError(violations)
    assert crank is not None and para is not None and worm is not None
    assert material is not None and aperture is not None
    return ScenarioSpec(
        mechanisms=MechanismSpec(crank=crank, parallelogram=para, worm=worm),
        material=material,
        aperture=aperture,
        objects=objects,
        screws=screws,
        experiments=tuple(experiments),
        motor=motor,
        finger=finger,
    )
