"""
File: __init__.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from .checks import run_oracle_gates, scenario_gates
from .scenario_runner import (
    RunResult,
    ScenarioRunner,
    Snapshot,
    bundled_scenarios,
    load_scenario,
    parse_scenario,
    write_outputs,
)

__all__ = [
    "RunResult",
    "ScenarioRunner",
    "Snapshot",
    "bundled_scenarios",
    "load_scenario",
    "parse_scenario",
    "run_oracle_gates",
    "scenario_gates",
    "write_outputs",
]
