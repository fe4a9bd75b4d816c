"""Scenario-driven experiment bench: JSON in, CSV tables and SVG plots out."""

from .scenario import ScenarioSpec, bundled_scenario_path, load_scenario
from .experiments import run

__all__ = ["ScenarioSpec", "bundled_scenario_path", "load_scenario", "run"]
