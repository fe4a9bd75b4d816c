"""Run named scenario experiments and write their reports.

Each experiment produces one CSV table and one SVG figure in the output
directory, named after the experiment.  When a run fails partway, files it
already wrote are removed so the directory never holds partial results.
"""

from __future__ import annotations

import logging
from pathlib import Path

from ..alignment import run_grid_experiment, simulate_alignment
from ..screwarr import simulate_arrange
from ..sizing import PullTestConfig, emulate_pull_curve
from . import figures, reports
from .scenario import (
    AlignExperiment,
    ArrangeExperiment,
    Experiment,
    GridExperiment,
    PullCurveExperiment,
    ScenarioSpec,
)

log = logging.getLogger("griphand.bench")

FORMAT_CSV = "csv"
FORMAT_SVG = "svg"


class _ReportSink:
    """Tracks written files so a failed run can clean up after itself."""

    def __init__(self, out_dir: Path, name: str, formats: tuple[str, ...]):
        self.out_dir = out_dir
        self.name = name
        self.formats = formats
        self.written: list[Path] = []

    def csv(self, header, rows) -> None:
        if FORMAT_CSV not in self.formats:
            return
        path = self.out_dir / f"{self.name}.csv"
        reports.write_csv(path, header, rows)
        self.written.append(path)
        log.info("wrote %s", path)

    def svg(self, fig_factory) -> None:
        if FORMAT_SVG not in self.formats:
            return
        path = self.out_dir / f"{self.name}.svg"
        figures.save_svg(fig_factory(), path)
        self.written.append(path)
        log.info("wrote %s", path)

    def discard(self) -> None:
        for path in self.written:
            path.unlink(missing_ok=True)


def _run_grid(scenario: ScenarioSpec, exp: GridExperiment, sink: _ReportSink) -> str:
    report = run_grid_experiment(
        exp.strategy,
        scenario.objects[exp.object_name],
        scenario.aperture,
        exp.contact,
        exp.ring_diameters,
        exp.points_per_ring,
        mat=scenario.material,
    )
    sink.csv(reports.GRID_HEADER, reports.grid_rows(report))
    sink.svg(lambda: figures.grid_figure(report, f"{exp.name} ({exp.strategy})"))
    rings = ", ".join(
        f"ring {d:g} mm: {n}/{report.points_per_ring}"
        for d, n in zip(report.ring_diameters, report.ring_successes())
    )
    return (
        f"{exp.name}: {report.success_count}/{report.total} captured ({rings})"
    )


def _run_align(scenario: ScenarioSpec, exp: AlignExperiment, sink: _ReportSink) -> str:
    trace = simulate_alignment(
        exp.strategy,
        scenario.objects[exp.object_name],
        scenario.aperture,
        exp.initial,
        exp.contact,
        mat=scenario.material,
    )
    sink.csv(reports.TRACE_HEADER, reports.trace_rows(trace))
    sink.svg(lambda: figures.trace_figure(trace, f"{exp.name} ({exp.strategy})"))
    tail = "" if trace.success else f" at {trace.failed_phase}"
    return f"{exp.name}: {trace.verdict}{tail}, residual {trace.residual_error:g} mm"


def _run_pull(scenario: ScenarioSpec, exp: PullCurveExperiment, sink: _ReportSink) -> str:
    assert scenario.motor is not None  # enforced at load time
    curves = [
        emulate_pull_curve(
            scenario.motor,
            scenario.mechanisms.worm,
            scenario.mechanisms.parallelogram,
            PullTestConfig(
                torque_fraction=fraction,
                grip_state=exp.grip_state,
                mu_fingers=exp.mu_fingers,
                pull_speed=exp.pull_speed,
            ),
            samples=exp.samples,
            contact_count=exp.contact_count,
        )
        for fraction in exp.fractions
    ]
    sink.csv(reports.PULL_HEADER, reports.pull_rows(curves))
    sink.svg(lambda: figures.pull_figure(curves, exp.name))
    peaks = ", ".join(
        f"{c.torque_fraction:.4g} of stall -> {c.peak_N:.4g} N" for c in curves
    )
    return f"{exp.name}: pull-out capacity {peaks}"


def _run_arrange(scenario: ScenarioSpec, exp: ArrangeExperiment, sink: _ReportSink) -> str:
    assert scenario.finger is not None  # enforced at load time
    trace = simulate_arrange(
        scenario.screws[exp.screw_name],
        exp.plan,
        scenario.finger,
        scenario.material,
        force_F=exp.force,
    )
    sink.csv(reports.TRACE_HEADER, reports.trace_rows(trace))
    sink.svg(lambda: figures.trace_figure(trace, f"{exp.name} ({exp.screw_name})"))
    tail = "" if trace.success else f" at {trace.failed_phase}"
    return f"{exp.name}: {trace.verdict}{tail}"


def run(
    scenario: ScenarioSpec,
    experiment_name: str,
    out_dir: str | Path,
    formats: tuple[str, ...] = (FORMAT_CSV, FORMAT_SVG),
) -> tuple[list[Path], str]:
    """Run one named experiment and write its reports.

    Args:
        scenario: a loaded scenario.
        experiment_name: which experiment to run.
        out_dir: directory for the reports; created if missing.
        formats: subset of ("csv", "svg").

    Returns:
        (written file paths, one-line summary).

    Raises:
        KeyError: if the scenario has no experiment with that name.  Errors
            from the underlying modules propagate; partially written files
            are removed first.
    """
    exp = scenario.experiment(experiment_name)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sink = _ReportSink(out, exp.name, tuple(formats))
    try:
        summary = _RUNNERS[type(exp)](scenario, exp, sink)
    except Exception:
        sink.discard()
        raise
    return sink.written, summary


_RUNNERS = {
    GridExperiment: _run_grid,
    AlignExperiment: _run_align,
    PullCurveExperiment: _run_pull,
    ArrangeExperiment: _run_arrange,
}


def grid_experiments(scenario: ScenarioSpec) -> list[Experiment]:
    """The grid-type experiments of a scenario, in file order."""
    return [e for e in scenario.experiments if isinstance(e, GridExperiment)]
