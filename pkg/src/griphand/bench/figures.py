"""SVG figures for experiment reports.

Figures are rendered with matplotlib's vector backend; no raster formats
and no external services.  Every data element (grid dot, pull curve, trace
phase marker, sweep series) carries a gid, which matplotlib writes as the
SVG element id, so reports are auditable: an SVG contains exactly as many
``<g id="...">`` data elements as the experiment declared data items.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "griphand"  # deterministic internal ids

import matplotlib.pyplot as plt  # noqa: E402

from ..alignment import GridReport  # noqa: E402
from ..sizing import PullCurve  # noqa: E402
from ..trace import StrategyTrace  # noqa: E402

GRID_POINT_GID = "grid-point"
PULL_CURVE_GID = "pull-curve"
TRACE_PHASE_GID = "trace-phase"
SWEEP_SERIES_GID = "sweep-series"

_OK_COLOR = "#2e7d32"
_FAIL_COLOR = "#c62828"


def save_svg(fig, path: Path) -> None:
    try:
        fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)


def grid_figure(report: GridReport, title: str):
    """Start poses on their rings, coloured by verdict; one gid per point."""
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    limit = 1.0
    for diameter in report.ring_diameters:
        radius = diameter / 2.0
        limit = max(limit, radius)
        angles = [i * math.pi / 90.0 for i in range(181)]
        ax.plot(
            [radius * math.cos(a) for a in angles],
            [radius * math.sin(a) for a in angles],
            color="0.75", linewidth=0.8, linestyle="--", zorder=1,
        )
    for i, point in enumerate(report.points):
        color = _OK_COLOR if point.success else _FAIL_COLOR
        ax.plot(
            [point.x], [point.y], marker="o", markersize=9,
            color=color, linestyle="none", zorder=2,
            gid=f"{GRID_POINT_GID}-{i:02d}",
        )
    pad = 1.3 * limit
    ax.set_xlim(-pad, pad)
    ax.set_ylim(-pad, pad)
    ax.set_aspect("equal")
    ax.set_xlabel("x offset (mm)")
    ax.set_ylabel("y offset (mm)")
    ax.set_title(f"{title}: {report.success_count}/{report.total} captured")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return fig


def pull_figure(curves: Sequence[PullCurve], title: str):
    """Force over displacement, one gid'd line per torque fraction."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for i, curve in enumerate(curves):
        ax.plot(
            curve.displacement_mm, curve.force_N,
            gid=f"{PULL_CURVE_GID}-{i}",
            label=f"{curve.torque_fraction:.4g} of stall",
        )
    ax.set_xlabel("pull displacement (mm)")
    ax.set_ylabel("holding force (N)")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return fig


def trace_figure(trace: StrategyTrace, title: str):
    """Commanded aperture over the phase sequence, one gid'd marker per phase."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    steps = list(range(len(trace.phases)))
    apertures = [rec.aperture for rec in trace.phases]
    ax.step(steps, apertures, where="mid", color="0.6", linewidth=1.0, zorder=1)
    for i, rec in enumerate(trace.phases):
        color = _OK_COLOR if rec.ok else _FAIL_COLOR
        ax.plot(
            [i], [rec.aperture], marker="o", markersize=9, color=color,
            linestyle="none", zorder=2, gid=f"{TRACE_PHASE_GID}-{i}",
        )
    ax.set_xticks(steps)
    ax.set_xticklabels([rec.phase for rec in trace.phases], rotation=30, ha="right")
    ax.set_ylabel("commanded aperture (mm)")
    ax.set_title(f"{title}: {trace.verdict}")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return fig


def analyze_figure(
    alpha_deg: Sequence[float],
    travel_series: Sequence[tuple[str, Sequence[float]]],
    torque_series: Sequence[tuple[str, Sequence[float | None]]],
    title: str,
):
    """Travel and torque over a crank-angle sweep, one gid per series.

    Torque samples may be None where the posture form is undefined; those
    points are simply dropped from the curve.
    """
    fig, (ax_travel, ax_torque) = plt.subplots(
        2, 1, figsize=(6.0, 6.0), sharex=True
    )
    gid_index = 0
    for label, values in travel_series:
        ax_travel.plot(alpha_deg, values, gid=f"{SWEEP_SERIES_GID}-{gid_index}",
                       label=label)
        gid_index += 1
    for label, values in torque_series:
        pairs = [(a, v) for a, v in zip(alpha_deg, values) if v is not None]
        ax_torque.plot([a for a, _ in pairs], [v for _, v in pairs],
                       gid=f"{SWEEP_SERIES_GID}-{gid_index}", label=label)
        gid_index += 1
    ax_travel.set_ylabel("travel (mm)")
    ax_travel.grid(True, alpha=0.3)
    ax_travel.legend()
    ax_travel.set_title(title)
    ax_torque.set_xlabel("crank angle (deg)")
    ax_torque.set_ylabel("torque (N*mm)")
    ax_torque.grid(True, alpha=0.3)
    ax_torque.legend()
    fig.tight_layout()
    return fig
