"""Scenario loading, report writing, and figure output."""

import csv
import json
import math
import xml.etree.ElementTree as ET

import pytest

from griphand import ScenarioSpec, bundled_scenario_path, load_scenario
from griphand.bench import experiments, figures, reports
from griphand.errors import GriphandError, ParseError, UnitError, ValidationError

UNITS = {"length": "mm", "force": "N", "mass": "kg", "angle": "deg"}


@pytest.fixture(scope="module")
def taskboard() -> ScenarioSpec:
    return load_scenario(bundled_scenario_path())


def minimal_scenario() -> dict:
    """Smallest valid scenario document, mutated by the loader tests."""
    return {
        "units": dict(UNITS),
        "mechanisms": {
            "crank": {"R": 10.0, "L": 10.0},
            "parallelogram": {"R": 20.0, "L": 50.0},
            "worm": {"ratio": 50.0, "efficiency": 0.4, "self_locking": True},
        },
        "material": {"mu_fingers": 0.3, "E": 2200.0, "G": 800.0},
        "aperture": {
            "inner_closed_width": 5.2,
            "inner_max_stretch": 32.0,
            "outer_max_open": 80.0,
        },
        "objects": [
            {
                "name": "peg", "outer_D": 24.0, "hole_d": 10.0,
                "height_H": 25.0, "mass": 0.12, "mu_ground": 0.2,
            },
        ],
        "screws": [],
        "experiments": [
            {
                "name": "grid", "type": "grid", "strategy": "stretch",
                "object": "peg", "ring_diameters": [4.8, 2.4],
                "points_per_ring": 8, "contact": {"theta": 60.0, "force": 2.0},
            },
        ],
    }


def write_scenario(tmp_path, doc, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


# -------------------------------------------------------------------- loader

def test_taskboard_loads(taskboard):
    assert len(taskboard.experiments) == 6
    assert set(taskboard.objects) >= {"washer", "pulley", "peg_with_hole", "solid_peg"}
    assert set(taskboard.screws) == {"M3x8", "M6x12"}
    assert taskboard.mechanisms.worm.self_locking
    assert taskboard.motor is not None and taskboard.finger is not None


def test_scenario_lookup_by_name(taskboard):
    exp = taskboard.experiment("grid-stretch")
    assert exp.kind == "grid"
    with pytest.raises(KeyError) as err:
        taskboard.experiment("no-such-thing")
    assert "grid-stretch" in str(err.value)


def test_bundled_scenario_path_rejects_unknown_name():
    with pytest.raises(FileNotFoundError):
        bundled_scenario_path("not-a-scenario")


def test_loader_minimal_scenario(tmp_path):
    spec = load_scenario(write_scenario(tmp_path, minimal_scenario()))
    assert spec.motor is None
    assert spec.experiments[0].name == "grid"


def test_loader_reports_json_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "units": {,}\n}')
    with pytest.raises(ParseError) as err:
        load_scenario(path)
    assert "line 2" in str(err.value)


def test_loader_requires_units_header(tmp_path):
    doc = minimal_scenario()
    del doc["units"]
    with pytest.raises(UnitError):
        load_scenario(write_scenario(tmp_path, doc))


def test_loader_rejects_wrong_units(tmp_path):
    doc = minimal_scenario()
    doc["units"]["length"] = "m"
    with pytest.raises(UnitError) as err:
        load_scenario(write_scenario(tmp_path, doc))
    assert "length" in str(err.value)


def test_loader_rejects_short_rod(tmp_path):
    doc = minimal_scenario()
    doc["mechanisms"]["crank"] = {"R": 10.0, "L": 5.0}
    with pytest.raises(ValidationError) as err:
        load_scenario(write_scenario(tmp_path, doc))
    assert "CrankSpec.L" in str(err.value)


def test_loader_collects_all_violations(tmp_path):
    doc = minimal_scenario()
    doc["mechanisms"]["crank"] = {"R": -1.0, "L": 5.0}
    doc["objects"][0]["mass"] = -0.5
    with pytest.raises(ValidationError) as err:
        load_scenario(write_scenario(tmp_path, doc))
    message = str(err.value)
    assert "CrankSpec.R" in message and "ObjectSpec.mass" in message
    assert len(err.value.violations) >= 2


def test_loader_rejects_unresolved_object_reference(tmp_path):
    doc = minimal_scenario()
    doc["experiments"][0]["object"] = "ghost"
    with pytest.raises(ValidationError) as err:
        load_scenario(write_scenario(tmp_path, doc))
    assert "ghost" in str(err.value)


def test_loader_rejects_duplicate_experiment_names(tmp_path):
    doc = minimal_scenario()
    doc["experiments"].append(dict(doc["experiments"][0]))
    with pytest.raises(ValidationError) as err:
        load_scenario(write_scenario(tmp_path, doc))
    assert "duplicate" in str(err.value).lower()


def test_loader_rejects_unknown_experiment_type(tmp_path):
    doc = minimal_scenario()
    doc["experiments"][0]["type"] = "teleport"
    with pytest.raises((ParseError, ValidationError)) as err:
        load_scenario(write_scenario(tmp_path, doc))
    assert "teleport" in str(err.value)


def test_loader_requires_finger_for_arrange(tmp_path):
    doc = minimal_scenario()
    doc["screws"] = [
        {"nominal": "M3x8", "mass": 0.0011, "head_D": 5.5,
         "shank_d": 3.0, "length": 8.0}
    ]
    doc["experiments"] = [
        {
            "name": "arr", "type": "arrange", "screw": "M3x8",
            "tilt": 40.0, "opening": 3.0, "force": 3.0,
        }
    ]
    with pytest.raises(ValidationError) as err:
        load_scenario(write_scenario(tmp_path, doc))
    assert "finger" in str(err.value)


def test_loader_missing_field_names_its_path(tmp_path):
    doc = minimal_scenario()
    del doc["aperture"]["outer_max_open"]
    with pytest.raises((ParseError, ValidationError)) as err:
        load_scenario(write_scenario(tmp_path, doc))
    assert "outer_max_open" in str(err.value)


# ------------------------------------------------------------------- reports

def test_fmt_float_nine_significant_digits():
    assert reports.fmt_float(math.pi) == "3.14159265"
    assert reports.fmt_float(2.0) == "2"
    assert reports.fmt_float(-0.5) == "-0.5"


def test_write_csv_round_trip(tmp_path):
    path = tmp_path / "out.csv"
    reports.write_csv(path, ["a", "b", "c"], [[1.5, None, True], [0.25, "x", False]])
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows == [["a", "b", "c"], ["1.5", "", "true"], ["0.25", "x", "false"]]


def test_write_csv_uses_unix_line_endings(tmp_path):
    path = tmp_path / "out.csv"
    reports.write_csv(path, ["a"], [[1.0]])
    assert b"\r" not in path.read_bytes()


# --------------------------------------------------------------- experiments

def run_to(tmp_path, taskboard, name, **kwargs):
    out = tmp_path / name
    return experiments.run(taskboard, name, out, **kwargs)


def test_run_unknown_experiment(tmp_path, taskboard):
    with pytest.raises(KeyError):
        experiments.run(taskboard, "ghost", tmp_path)


def test_run_grid_writes_csv_and_svg(tmp_path, taskboard):
    paths, summary = run_to(tmp_path, taskboard, "grid-stretch")
    names = sorted(p.name for p in paths)
    assert names == ["grid-stretch.csv", "grid-stretch.svg"]
    assert "16/16" in summary
    for path in paths:
        assert path.exists() and path.stat().st_size > 0


def test_run_csv_only_format(tmp_path, taskboard):
    paths, _ = run_to(tmp_path, taskboard, "grid-stretch", formats=("csv",))
    assert [p.suffix for p in paths] == [".csv"]


def test_grid_csv_contents(tmp_path, taskboard):
    paths, _ = run_to(tmp_path, taskboard, "grid-stretch")
    with open(paths[0], newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 16
    for row in rows:
        radius = math.hypot(float(row["x_mm"]), float(row["y_mm"]))
        assert radius == pytest.approx(float(row["ring_diameter_mm"]) / 2.0,
                                       rel=1e-6)
        assert row["verdict"] in ("Success", "Failure")
        if row["verdict"] == "Success":
            assert row["failed_phase"] == ""


def test_trace_csv_contents(tmp_path, taskboard):
    paths, summary = run_to(tmp_path, taskboard, "align-pulley")
    assert "Success" in summary
    with open(paths[0], newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [r["phase"] for r in rows] == ["InsertTips", "Stretch", "HoldersClose",
                                          "PushOut"]
    # Verdict appears once, on the final row.
    assert [r["verdict"] for r in rows[:-1]] == ["", "", ""]
    assert rows[-1]["verdict"] == "Success"
    assert float(rows[-1]["x_mm"]) == 0.0 and float(rows[-1]["y_mm"]) == 0.0


def test_pull_csv_contents(tmp_path, taskboard):
    paths, _ = run_to(tmp_path, taskboard, "pull-curve")
    with open(paths[0], newline="") as fh:
        rows = list(csv.DictReader(fh))
    fractions = sorted({float(r["torque_fraction"]) for r in rows})
    assert fractions == [0.0167, 0.0334]
    assert len(rows) == 2 * 120
    by_fraction = {
        f: [float(r["force_N"]) for r in rows if float(r["torque_fraction"]) == f]
        for f in fractions
    }
    assert max(by_fraction[0.0334]) == pytest.approx(47.929, abs=5e-3)
    assert max(by_fraction[0.0167]) == pytest.approx(23.9645, abs=5e-3)


def test_arrange_trace_rows(tmp_path, taskboard):
    paths, summary = run_to(tmp_path, taskboard, "arrange-m3")
    assert "Success" in summary
    with open(paths[0], newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [r["phase"] for r in rows] == [
        "Held", "Tilted", "DroppedSliding", "AtEndCorner", "Vertical"
    ]


def test_run_is_deterministic(tmp_path, taskboard):
    for name in ("grid-stretch", "pull-curve", "align-pulley", "arrange-m3"):
        first, _ = experiments.run(taskboard, name, tmp_path / "a")
        second, _ = experiments.run(taskboard, name, tmp_path / "b")
        for p1, p2 in zip(first, second):
            assert p1.read_bytes() == p2.read_bytes(), p1.name


def test_run_cleans_up_partial_output(tmp_path, taskboard, monkeypatch):
    def explode(*args, **kwargs):
        raise RuntimeError("figure backend down")

    monkeypatch.setattr(figures, "grid_figure", explode)
    out = tmp_path / "partial"
    with pytest.raises(RuntimeError):
        experiments.run(taskboard, "grid-stretch", out)
    assert not list(out.glob("*")) if out.exists() else True


def test_grid_experiments_selector(taskboard):
    grids = experiments.grid_experiments(taskboard)
    assert [e.name for e in grids] == ["grid-stretch", "grid-squeeze"]


# ------------------------------------------------------------------- figures

def svg_ids_with_prefix(path, prefix):
    tree = ET.parse(path)
    return [
        el.get("id") for el in tree.iter()
        if el.get("id", "").startswith(prefix)
    ]


def test_grid_svg_has_one_marker_per_point(tmp_path, taskboard):
    paths, _ = run_to(tmp_path, taskboard, "grid-stretch")
    svg = [p for p in paths if p.suffix == ".svg"][0]
    assert len(svg_ids_with_prefix(svg, "grid-point")) == 16


def test_pull_svg_has_one_curve_per_fraction(tmp_path, taskboard):
    paths, _ = run_to(tmp_path, taskboard, "pull-curve")
    svg = [p for p in paths if p.suffix == ".svg"][0]
    assert len(svg_ids_with_prefix(svg, "pull-curve")) == 2


def test_trace_svg_has_one_marker_per_phase(tmp_path, taskboard):
    paths, _ = run_to(tmp_path, taskboard, "align-pulley")
    svg = [p for p in paths if p.suffix == ".svg"][0]
    with open([p for p in paths if p.suffix == ".csv"][0], newline="") as fh:
        n_phases = len(list(csv.DictReader(fh)))
    assert len(svg_ids_with_prefix(svg, "trace-phase")) == n_phases


def test_svg_is_well_formed_xml(tmp_path, taskboard):
    for name in ("grid-stretch", "pull-curve", "arrange-m3"):
        paths, _ = experiments.run(taskboard, name, tmp_path / name)
        svg = [p for p in paths if p.suffix == ".svg"][0]
        root = ET.parse(svg).getroot()
        assert root.tag.endswith("svg")
