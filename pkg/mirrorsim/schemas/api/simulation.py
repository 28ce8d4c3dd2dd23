"""
File: simulation.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from pydantic import BaseModel, Field, PositiveFloat

from mirrorsim.physics.grid import UnitSystem
from mirrorsim.schemas.records import GateResult, LedgerRow


class ScenarioListResponse(BaseModel):
    """Names of the bundled scenarios."""

    names: list[str]


class RunSummary(BaseModel):
    """
    Result of a scenario run.

    Attributes:
        name: Scenario name.
        ledger: Energy ledger, one row per schedule step.
        checks: Equivalence reports keyed by check label.
    """

    name: str
    ledger: list[LedgerRow]
    checks: dict[str, dict[str, float]] = Field(default_factory=dict)


class SpectrumRequest(BaseModel):
    """Separable mirror samples Omega(x_j) on a centred lattice."""

    n_points: int = Field(..., ge=4)
    dx: PositiveFloat
    omega: list[float]
    units: UnitSystem = Field(default_factory=UnitSystem)


class SpectrumRow(BaseModel):
    """One wavenumber of the scattering spectrum."""

    k: float
    re: float
    im: float
    abs: float
    reflectance: float
    transmittance: float


class SpectrumResponse(BaseModel):
    """Scattering spectrum rows in lattice order."""

    rows: list[SpectrumRow]


class CheckResponse(BaseModel):
    """Oracle gate table."""

    passed: bool
    gates: list[GateResult]
