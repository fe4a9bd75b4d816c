"""Bundled scenario files (see griphand.bench.bundled_scenario_path)."""
