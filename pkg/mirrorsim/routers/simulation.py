"""
File: simulation.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from fastapi import APIRouter
import numpy as np

from mirrorsim.dependencies import ScenarioRunnerDep
from mirrorsim.physics.grid import make_grid
from mirrorsim.physics.mirror import separable_kernel, xi_spectrum
from mirrorsim.schemas.api import (
    ERROR_RESPONSES,
    CheckResponse,
    RunSummary,
    ScenarioListResponse,
    SpectrumRequest,
    SpectrumResponse,
    SpectrumRow,
    SuccessResponse,
)
from mirrorsim.schemas.scenario import Scenario
from mirrorsim.services.checks import run_oracle_gates
from mirrorsim.services.scenario_runner import bundled_scenarios

router = APIRouter(tags=["simulation"], responses=ERROR_RESPONSES)


@router.get("/scenarios", response_model=SuccessResponse[ScenarioListResponse])
def list_scenarios() -> SuccessResponse[ScenarioListResponse]:
    """
    List the bundled scenarios.

    Returns:
        SuccessResponse with the scenario names.
    """
    return SuccessResponse(
        message="Bundled scenarios",
        data=ScenarioListResponse(names=bundled_scenarios()),
    )


@router.post("/scenarios/run", response_model=SuccessResponse[RunSummary])
def run_scenario(
    scenario: Scenario, runner: ScenarioRunnerDep
) -> SuccessResponse[RunSummary]:
    """
    Run a scenario document and return its energy ledger.

    Args:
        scenario: Scenario with the same schema as the TOML files.
        runner: Injected scenario runner.

    Returns:
        SuccessResponse with the ledger and the equivalence reports.

    Raises:
        SimulationError: Propagated to the simulation exception handler.
    """
    result = runner.run(scenario)
    return SuccessResponse(
        message=f"Scenario {scenario.name} completed",
        data=RunSummary(
            name=scenario.name,
            ledger=result.ledger,
            checks={
                label: dict(report.rows())
                for label, report in result.reports.items()
            },
        ),
    )


@router.post("/spectrum", response_model=SuccessResponse[SpectrumResponse])
def spectrum(request: SpectrumRequest) -> SuccessResponse[SpectrumResponse]:
    """
    Scattering spectrum of a separable mirror.

    Args:
        request: Lattice, Omega samples and unit system.

    Returns:
        SuccessResponse with one row per lattice wavenumber.
    """
    grid = make_grid(request.n_points, request.dx)
    kernel = separable_kernel(grid, np.asarray(request.omega, dtype=float))
    columns = xi_spectrum(kernel, grid, request.units).as_columns()
    rows = [
        SpectrumRow(
            k=k, re=re, im=im, abs=mag, reflectance=r, transmittance=t
        )
        for k, re, im, mag, r, t in columns.tolist()
    ]
    return SuccessResponse(
        message="Scattering spectrum", data=SpectrumResponse(rows=rows)
    )


@router.post("/check", response_model=SuccessResponse[CheckResponse])
def check() -> SuccessResponse[CheckResponse]:
    """
    Run the oracle gates.

    Returns:
        SuccessResponse with the pass/fail table.
    """
    gates = run_oracle_gates()
    passed = all(gate.passed for gate in gates)
    return SuccessResponse(
        message="All gates passed" if passed else "Some gates failed",
        data=CheckResponse(passed=passed, gates=gates),
    )
