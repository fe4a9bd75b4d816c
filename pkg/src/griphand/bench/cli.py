"""Command-line interface.

Angles cross this surface in degrees and are converted to radians at the
boundary; lengths are mm, forces N, torques N*mm, masses kg.  Set the
GRIPHAND_LOG environment variable (DEBUG, INFO, ...) for progress logging.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from pathlib import Path

from .. import alignment, mechkin, screwarr, sizing
from ..errors import GriphandError, InfeasibleError
from . import figures, reports
from .experiments import FORMAT_CSV, FORMAT_SVG, grid_experiments, run
from .scenario import bundled_scenario_path, load_scenario

log = logging.getLogger("griphand.cli")

_FORMATS = {
    "csv": (FORMAT_CSV,),
    "svg": (FORMAT_SVG,),
    "both": (FORMAT_CSV, FORMAT_SVG),
}


def _configure_logging() -> None:
    name = os.environ.get("GRIPHAND_LOG", "WARNING").upper()
    level = getattr(logging, name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _resolve_scenario(arg: str) -> Path:
    path = Path(arg)
    if path.exists():
        return path
    if os.sep not in arg and "/" not in arg and not arg.endswith(".json"):
        try:
            return bundled_scenario_path(arg)
        except FileNotFoundError:
            pass
    raise FileNotFoundError(
        f"scenario not found: {arg} (give a JSON file path or a bundled name "
        "such as 'taskboard')"
    )


def _report_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, default=Path("reports"),
                        help="output directory (default: reports)")
    parser.add_argument("--format", choices=sorted(_FORMATS), default="both",
                        help="which report files to write (default: both)")


def _alpha_sweep(samples: int, alpha_max_deg: float) -> list[float]:
    if samples < 2:
        raise GriphandError("--samples must be >= 2")
    return [alpha_max_deg * i / (samples - 1) for i in range(samples)]


def _write_sweep(args, name: str, rows, travel_series, torque_series, alpha_deg) -> int:
    out: Path = args.out
    formats = _FORMATS[args.format]
    out.mkdir(parents=True, exist_ok=True)
    if FORMAT_CSV in formats:
        path = out / f"{name}.csv"
        reports.write_csv(path, reports.SWEEP_HEADER, rows)
        print(path)
    if FORMAT_SVG in formats:
        path = out / f"{name}.svg"
        figures.save_svg(
            figures.analyze_figure(alpha_deg, travel_series, torque_series, name), path
        )
        print(path)
    return 0


def cmd_analyze_crank(args) -> int:
    spec = mechkin.CrankSpec(R=args.R, L=args.L)
    alpha_deg = _alpha_sweep(args.samples, args.alpha_max)
    rows = []
    travels, approxes, torques = [], [], []
    for a_deg in alpha_deg:
        a = math.radians(a_deg)
        beta = mechkin.crank_beta(spec, a)
        travel = mechkin.crank_travel(spec, a)
        approx = mechkin.crank_travel_approx(spec, a)
        torque = (
            mechkin.crank_torque(spec, a, args.force) if a < mechkin.HALF_PI else None
        )
        travels.append(travel)
        approxes.append(approx)
        torques.append(torque)
        rows.append([a_deg, math.degrees(beta), travel, approx, torque, None])
    return _write_sweep(
        args, "analyze-crank", rows,
        [("travel", travels), ("travel approx", approxes)],
        [("torque", torques)],
        alpha_deg,
    )


def cmd_analyze_para(args) -> int:
    spec = mechkin.ParallelogramSpec(R=args.R, L=args.L)
    beta = math.radians(args.beta)
    alpha_deg = _alpha_sweep(args.samples, args.alpha_max)
    rows = []
    travels, torques, vw = [], [], []
    for a_deg in alpha_deg:
        a = math.radians(a_deg)
        state = mechkin.KinematicState(alpha=a, beta=beta)
        travel = mechkin.para_travel(spec, a)
        torque = mechkin.para_torque(spec, state, args.force)
        virtual = mechkin.para_torque_virtual_work(spec, a, args.force)
        travels.append(travel)
        torques.append(torque)
        vw.append(virtual)
        rows.append([a_deg, args.beta, travel, None, torque, virtual])
    return _write_sweep(
        args, "analyze-para", rows,
        [("travel", travels)],
        [("torque (posture)", torques), ("torque (virtual work)", vw)],
        alpha_deg,
    )


def cmd_analyze_worm(args) -> int:
    spec = mechkin.WormSpec(
        ratio=args.ratio, efficiency=args.efficiency,
        self_locking=not args.back_drivable,
    )
    output = mechkin.worm_output(spec, args.torque)
    demand = mechkin.worm_back_drive(spec, output)
    print(f"output torque: {reports.fmt_float(output)} N*mm")
    if math.isinf(demand):
        print("back-drive demand: infinite (self-locking; holds with zero motor torque)")
    else:
        print(f"back-drive demand: {reports.fmt_float(demand)} N*mm at the motor")
    return 0


def _cli_object(mass: float, mu_ground: float) -> alignment.ObjectSpec:
    # Feasibility only reads mass and ground friction; the rest is filler.
    return alignment.ObjectSpec(
        outer_D=1.0, hole_d=0.0, height_H=1.0, mass=mass, mu_ground=mu_ground
    )


def cmd_check_stretch(args) -> int:
    contact = alignment.StretchContact(
        theta=math.radians(args.theta), force_F=args.force, gravity_g=args.gravity
    )
    obj = _cli_object(args.mass, args.mu_ground)
    mat = alignment.MaterialSpec(mu_fingers=args.mu_fingers)
    feasible = alignment.stretch_feasible(contact, obj, mat)
    print(f"feasible: {'true' if feasible else 'false'}")
    try:
        threshold = alignment.min_stretch_force(
            math.radians(args.theta), obj, mat, gravity=args.gravity
        )
        print(f"min force: {reports.fmt_float(threshold)} N per finger")
    except InfeasibleError as exc:
        print(f"min force: none ({exc})")
    return 0


def cmd_check_tilt(args) -> int:
    threshold = screwarr.min_tilt_angle(math.radians(args.theta_f), args.mu_fingers)
    slides = math.radians(args.tilt) > threshold
    print(f"slides: {'true' if slides else 'false'}")
    print(f"min tilt: {reports.fmt_float(math.degrees(threshold))} deg")
    return 0


def _finger_from_args(args) -> screwarr.FingerGeometry:
    return screwarr.FingerGeometry(
        l1=args.l1, l2=args.l2, l3=args.l3, l4=args.l4,
        beam_D=args.beam_D, theta_f=math.radians(args.theta_f),
    )


def _material_from_args(args) -> alignment.MaterialSpec:
    # Deflection-only commands carry no friction flag; the value is inert there.
    return alignment.MaterialSpec(
        mu_fingers=getattr(args, "mu_fingers", 0.0), E=args.E, G=args.G
    )


def cmd_check_deflection(args) -> int:
    defl = screwarr.fingertip_deflection(
        _finger_from_args(args), _material_from_args(args), args.force,
        corrected_moment_arm=args.corrected_moment_arm,
    )
    print(f"d_E: {reports.fmt_float(defl.d_E)} mm")
    print(f"  torsion share d_Et: {reports.fmt_float(defl.d_Et)} mm")
    print(f"  bending share d_Eb: {reports.fmt_float(defl.d_Eb)} mm")
    print(f"  twist theta_B: {reports.fmt_float(math.degrees(defl.theta_B))} deg")
    return 0


def cmd_solve_min_force(args) -> int:
    obj = _cli_object(args.mass, args.mu_ground)
    mat = alignment.MaterialSpec(mu_fingers=args.mu_fingers)
    threshold = alignment.min_stretch_force(
        math.radians(args.theta), obj, mat, gravity=args.gravity
    )
    print(f"{reports.fmt_float(threshold)} N per finger")
    return 0


def cmd_solve_min_tilt(args) -> int:
    threshold = screwarr.min_tilt_angle(math.radians(args.theta_f), args.mu_fingers)
    print(f"{reports.fmt_float(math.degrees(threshold))} deg")
    return 0


def cmd_solve_opening_range(args) -> int:
    defl = screwarr.fingertip_deflection(
        _finger_from_args(args), _material_from_args(args), args.force
    )
    screw = screwarr.ScrewSpec(
        nominal="cli", mass=0.001, head_D=args.head_D,
        shank_d=args.shank_d if args.shank_d is not None else args.head_D / 2.0,
        length=1.0,
    )
    lo, hi = screwarr.valid_opening_range(defl, screw)
    print(
        f"valid opening: ({reports.fmt_float(lo)}, {reports.fmt_float(hi)}) mm "
        "(open interval)"
    )
    return 0


def cmd_simulate(args) -> int:
    scenario = load_scenario(_resolve_scenario(args.scenario))
    written, summary = run(scenario, args.experiment, args.out, _FORMATS[args.format])
    for path in written:
        print(path)
    print(summary)
    return 0


def cmd_grid(args) -> int:
    scenario = load_scenario(_resolve_scenario(args.scenario))
    if args.experiment is not None:
        names = [args.experiment]
    else:
        names = [e.name for e in grid_experiments(scenario)]
        if not names:
            raise GriphandError("scenario has no grid experiments")
    for name in names:
        written, summary = run(scenario, name, args.out, _FORMATS[args.format])
        for path in written:
            print(path)
        print(summary)
    return 0


def cmd_validate(args) -> int:
    path = _resolve_scenario(args.scenario)
    scenario = load_scenario(path)
    print(
        f"{path.name}: OK ({len(scenario.objects)} objects, "
        f"{len(scenario.screws)} screws, {len(scenario.experiments)} experiments)"
    )
    for exp in scenario.experiments:
        print(f"  {exp.name} ({exp.kind})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="griphand",
        description="Mechanism analysis and quasi-static planning for a "
                    "dual-gripper robotic hand.",
    )
    parser.add_argument("--seed", type=int, default=None,
                        help="fix stochastic emulation (reserved; current "
                             "models are deterministic)")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="sweep a transmission over its stroke")
    analyze_sub = analyze.add_subparsers(dest="mechanism", required=True)

    crank = analyze_sub.add_parser("crank", help="slider-crank of the positioning gripper")
    crank.add_argument("--R", type=float, required=True, help="crank radius (mm)")
    crank.add_argument("--L", type=float, required=True, help="rod length (mm)")
    crank.add_argument("--force", type=float, default=1.0, help="fingertip force (N)")
    crank.add_argument("--samples", type=int, default=91)
    crank.add_argument("--alpha-max", type=float, default=90.0,
                       help="sweep end angle (deg)")
    _report_args(crank)
    crank.set_defaults(func=cmd_analyze_crank)

    para = analyze_sub.add_parser("para", help="parallelogram of the holding gripper")
    para.add_argument("--R", type=float, required=True, help="driven link (mm)")
    para.add_argument("--L", type=float, required=True, help="coupler link (mm)")
    para.add_argument("--force", type=float, default=1.0, help="jaw force (N)")
    para.add_argument("--beta", type=float, default=0.0,
                      help="coupler angle held over the sweep (deg)")
    para.add_argument("--samples", type=int, default=91)
    para.add_argument("--alpha-max", type=float, default=90.0)
    _report_args(para)
    para.set_defaults(func=cmd_analyze_para)

    worm = analyze_sub.add_parser("worm", help="worm stage between motor and linkage")
    worm.add_argument("--ratio", type=float, required=True)
    worm.add_argument("--efficiency", type=float, default=0.4)
    worm.add_argument("--back-drivable", action="store_true",
                      help="treat the stage as back-drivable (default: self-locking)")
    worm.add_argument("--torque", type=float, required=True, help="motor torque (N*mm)")
    worm.set_defaults(func=cmd_analyze_worm)

    check = sub.add_parser("check", help="yes/no feasibility checks")
    check_sub = check.add_subparsers(dest="what", required=True)

    stretch = check_sub.add_parser("stretch", help="does stretching align the part?")
    stretch.add_argument("--theta", type=float, required=True,
                         help="fingertip contact angle (deg)")
    stretch.add_argument("--force", type=float, required=True,
                         help="per-finger stretch force (N)")
    stretch.add_argument("--mu-fingers", type=float, required=True)
    stretch.add_argument("--mu-ground", type=float, required=True)
    stretch.add_argument("--mass", type=float, required=True, help="part mass (kg)")
    stretch.add_argument("--gravity", type=float, default=alignment.GRAVITY)
    stretch.set_defaults(func=cmd_check_stretch)

    tilt = check_sub.add_parser("tilt", help="does a gripped screw slide at this tilt?")
    tilt.add_argument("--theta-f", type=float, required=True,
                      help="full V-groove angle (deg)")
    tilt.add_argument("--mu-fingers", type=float, required=True)
    tilt.add_argument("--tilt", type=float, required=True, help="hand tilt (deg)")
    tilt.set_defaults(func=cmd_check_tilt)

    defl = check_sub.add_parser("deflection", help="fingertip spring-back under load")
    _deflection_args(defl)
    defl.add_argument("--corrected-moment-arm", action="store_true",
                      help="carry the cross-joint rotation over the full beam")
    defl.set_defaults(func=cmd_check_deflection)

    solve = sub.add_parser("solve", help="solve for thresholds and ranges")
    solve_sub = solve.add_subparsers(dest="what", required=True)

    min_force = solve_sub.add_parser("min-force",
                                     help="smallest stretch force that aligns")
    min_force.add_argument("--theta", type=float, required=True)
    min_force.add_argument("--mu-fingers", type=float, required=True)
    min_force.add_argument("--mu-ground", type=float, required=True)
    min_force.add_argument("--mass", type=float, required=True)
    min_force.add_argument("--gravity", type=float, default=alignment.GRAVITY)
    min_force.set_defaults(func=cmd_solve_min_force)

    min_tilt = solve_sub.add_parser("min-tilt",
                                    help="smallest tilt that slides a gripped screw")
    min_tilt.add_argument("--theta-f", type=float, required=True)
    min_tilt.add_argument("--mu-fingers", type=float, required=True)
    min_tilt.set_defaults(func=cmd_solve_min_tilt)

    opening = solve_sub.add_parser("opening-range",
                                   help="workable drop openings for a screw")
    _deflection_args(opening)
    opening.add_argument("--head-D", type=float, required=True,
                         help="screw head diameter (mm)")
    opening.add_argument("--shank-d", type=float, default=None,
                         help="screw shank diameter (mm, default head_D/2)")
    opening.set_defaults(func=cmd_solve_opening_range)

    simulate = sub.add_parser("simulate", help="run one scenario experiment")
    simulate.add_argument("scenario", help="scenario file or bundled name")
    simulate.add_argument("--experiment", required=True)
    _report_args(simulate)
    simulate.set_defaults(func=cmd_simulate)

    grid = sub.add_parser("grid", help="run the scenario's capture-grid experiments")
    grid.add_argument("scenario", help="scenario file or bundled name")
    grid.add_argument("--experiment", default=None,
                      help="a single grid experiment (default: all of them)")
    _report_args(grid)
    grid.set_defaults(func=cmd_grid)

    validate = sub.add_parser("validate", help="check a scenario file")
    validate.add_argument("scenario", help="scenario file or bundled name")
    validate.set_defaults(func=cmd_validate)

    return parser


def _deflection_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--l1", type=float, default=30.0,
                        help="mount segment (mm; not load-bearing)")
    parser.add_argument("--l2", type=float, required=True, help="cross segment (mm)")
    parser.add_argument("--l3", type=float, required=True, help="proximal beam (mm)")
    parser.add_argument("--l4", type=float, required=True, help="distal beam (mm)")
    parser.add_argument("--beam-D", type=float, required=True, help="beam diameter (mm)")
    parser.add_argument("--E", type=float, default=2200.0, help="Young's modulus (MPa)")
    parser.add_argument("--G", type=float, default=800.0, help="shear modulus (MPa)")
    parser.add_argument("--force", type=float, required=True, help="lateral tip load (N)")
    parser.add_argument("--theta-f", type=float, default=20.0,
                        help="V-groove angle (deg; not load-bearing)")


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None:
        log.debug("seed %d accepted (reserved; models are deterministic)", args.seed)
    try:
        return args.func(args)
    except (GriphandError, OSError, KeyError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
