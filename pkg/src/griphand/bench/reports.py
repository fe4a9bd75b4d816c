"""Deterministic CSV serialization of experiment results.

Floats are written with 9 significant digits so repeated runs of the same
scenario produce byte-identical files.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable, Sequence

from ..alignment import GridReport
from ..sizing import PullCurve
from ..trace import StrategyTrace

SIGNIFICANT_DIGITS = 9

GRID_HEADER = [
    "ring_index", "ring_diameter_mm", "point_index", "angle_deg",
    "x_mm", "y_mm", "verdict", "failed_phase",
]
TRACE_HEADER = [
    "step", "phase", "x_mm", "y_mm", "aperture_mm", "force_N",
    "tilt_deg", "phase_ok", "verdict",
]
PULL_HEADER = ["torque_fraction", "sample", "displacement_mm", "force_N"]
SWEEP_HEADER = [
    "alpha_deg", "beta_deg", "travel_mm", "travel_approx_mm",
    "torque_Nmm", "torque_virtual_work_Nmm",
]


def fmt_float(value: float) -> str:
    return format(float(value), f".{SIGNIFICANT_DIGITS}g")


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def grid_rows(report: GridReport) -> list[list[object]]:
    return [
        [p.ring_index, p.ring_diameter, p.point_index, p.angle_deg,
         p.x, p.y, p.verdict, p.failed_phase]
        for p in report.points
    ]


def trace_rows(trace: StrategyTrace) -> list[list[object]]:
    """One row per executed phase; the terminal verdict rides the last row."""
    rows: list[list[object]] = []
    last = len(trace.phases) - 1
    for i, rec in enumerate(trace.phases):
        rows.append([
            i, rec.phase, rec.pose.x, rec.pose.y, rec.aperture, rec.force,
            math.degrees(rec.tilt), rec.ok,
            trace.verdict if i == last else None,
        ])
    return rows


def pull_rows(curves: Sequence[PullCurve]) -> list[list[object]]:
    rows: list[list[object]] = []
    for curve in curves:
        for i, (d, f) in enumerate(zip(curve.displacement_mm, curve.force_N)):
            rows.append([curve.torque_fraction, i, d, f])
    return rows
