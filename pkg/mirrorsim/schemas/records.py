"""
File: records.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, TypeAdapter

from mirrorsim.physics.field_state import Basis, Interpretation, Representation
from mirrorsim.physics.kernels import KernelKind


class HeaderRecord(BaseModel):
    """First NDJSON line of a state file."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["header"] = "header"
    n_points: int = Field(..., ge=4)
    dx: float = Field(..., gt=0.0)
    representation: Representation
    kernel: KernelKind | None = None
    phase: float = 0.0
    basis: Basis = Basis.LINEAR
    interpretation: Interpretation = Interpretation.COHERENT_AMPLITUDE


class AmplitudeRecord(BaseModel):
    """One complex amplitude of a state file."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["amplitude"] = "amplitude"
    channel: str = Field(..., pattern=r"^[+-]1[HV+-]$")
    index: NonNegativeInt
    re: float
    im: float


StateRecord = Annotated[
    HeaderRecord | AmplitudeRecord, Field(discriminator="kind")
]
state_record_adapter: TypeAdapter[HeaderRecord | AmplitudeRecord] = (
    TypeAdapter(StateRecord)
)


class LedgerRow(BaseModel):
    """Energy bookkeeping after one schedule step."""

    step: int
    action: str
    time: float
    energy_total: float
    energy_right: float
    energy_left: float
    right_fraction: float
    left_fraction: float


class GateResult(BaseModel):
    """One line of the `check` pass/fail table."""

    name: str
    passed: bool
    value: float
    tolerance: float | None = None
    detail: str = ""
