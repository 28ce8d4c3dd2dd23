"""
File: dependencies.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from typing import Annotated

from fastapi import Depends

from mirrorsim.config import SettingsDep
from mirrorsim.services.scenario_runner import ScenarioRunner


def get_scenario_runner(settings: SettingsDep) -> ScenarioRunner:
    """Provides a ScenarioRunner bound to the request settings."""
    return ScenarioRunner(settings)


ScenarioRunnerDep = Annotated[ScenarioRunner, Depends(get_scenario_runner)]
