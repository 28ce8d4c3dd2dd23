"""
File: scenario.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from pathlib import Path
from typing import Annotated, Literal, Self

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveFloat,
    PositiveInt,
    field_validator,
    model_validator,
)

from mirrorsim.physics.grid import Grid, UnitSystem, make_grid
from mirrorsim.physics.kernels import KernelKind, KernelSpec
from mirrorsim.physics.mirror import Solver


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class GridSpec(_Strict):
    """[grid] section."""

    n_points: int = Field(..., ge=4)
    dx: PositiveFloat

    @field_validator("n_points")
    @classmethod
    def _even(cls, value: int) -> int:
        if value % 2:
            raise ValueError("n_points must be even")
        return value

    def build(self) -> Grid:
        """Lattice described by this section."""
        return make_grid(self.n_points, self.dx)


class RepresentationSpec(_Strict):
    """[representation] section: kernel used for energies and profiles."""

    kind: KernelKind = KernelKind.SQRT_ABS_K
    phase: float = 0.0

    @model_validator(mode="after")
    def _positive_only_phase(self) -> Self:
        if self.kind is KernelKind.STANDARD_POSITIVE_ONLY and self.phase:
            raise ValueError("standard_positive_only fixes the phase to pi/2")
        return self

    def kernel(self) -> KernelSpec:
        """Kernel described by this section."""
        if self.kind is KernelKind.STANDARD_POSITIVE_ONLY:
            return KernelSpec.standard_positive_only()
        return KernelSpec(self.kind, self.phase)


class _PacketBase(_Strict):
    direction: Literal[1, -1]
    polarization: Literal["H", "V", "+", "-"] = "H"
    center_x: float
    amplitude_re: float = 1.0
    amplitude_im: float = 0.0

    @property
    def amplitude(self) -> complex:
        """Complex packet amplitude."""
        return complex(self.amplitude_re, self.amplitude_im)


class GaussianPacketSpec(_PacketBase):
    """[[packets]] entry with type = "gaussian"."""

    type: Literal["gaussian"]
    width: PositiveFloat
    carrier_k: float = 0.0


class BandFlatPacketSpec(_PacketBase):
    """[[packets]] entry with type = "band_flat"."""

    type: Literal["band_flat"]


PacketSpec = Annotated[
    GaussianPacketSpec | BandFlatPacketSpec, Field(discriminator="type")
]


class SeparableMirrorSpec(_Strict):
    """[mirror] with type = "separable"."""

    type: Literal["separable"]
    profile: Literal["gaussian", "box", "csv"]
    total_angle: float | None = None
    width: PositiveFloat | None = None
    cells: PositiveInt = 1
    file: Path | None = None

    @model_validator(mode="after")
    def _profile_parameters(self) -> Self:
        if self.profile == "csv" and self.file is None:
            raise ValueError("profile 'csv' needs file")
        if self.profile != "csv" and self.total_angle is None:
            raise ValueError(f"profile {self.profile!r} needs total_angle")
        if self.profile == "gaussian" and self.width is None:
            raise ValueError("profile 'gaussian' needs width")
        return self


class DenseMirrorSpec(_Strict):
    """[mirror] with type = "dense"."""

    type: Literal["dense"]
    profile: Literal["gaussian_blob", "binary"]
    strength: float | None = None
    width: PositiveFloat | None = None
    file: Path | None = None

    @model_validator(mode="after")
    def _profile_parameters(self) -> Self:
        if self.profile == "binary" and self.file is None:
            raise ValueError("profile 'binary' needs file")
        if self.profile == "gaussian_blob" and (
            self.strength is None or self.width is None
        ):
            raise ValueError("profile 'gaussian_blob' needs strength and width")
        return self


MirrorSpec = Annotated[
    SeparableMirrorSpec | DenseMirrorSpec, Field(discriminator="type")
]


class SnapshotStep(_Strict):
    """Record profiles and state under `label`."""

    action: Literal["snapshot"]
    label: str = Field(..., pattern=r"^[A-Za-z0-9_.-]+$")


class FreeStep(_Strict):
    """Free flight for `duration`."""

    action: Literal["free"]
    duration: PositiveFloat


class ScatterStep(_Strict):
    """Closed-form scattering, then free flight for `duration`."""

    action: Literal["scatter"]
    duration: PositiveFloat


class MirrorStep(_Strict):
    """Time-resolved mirror dynamics for `duration`."""

    action: Literal["mirror"]
    duration: PositiveFloat
    steps: PositiveInt | None = None
    solver: Solver = Solver.AUTO


class CheckStep(_Strict):
    """Equivalence report of both engines on the current state."""

    action: Literal["check"]
    horizon: PositiveFloat
    steps: PositiveInt | None = None
    label: str = Field(default="check", pattern=r"^[A-Za-z0-9_.-]+$")


ScheduleStep = Annotated[
    SnapshotStep | FreeStep | ScatterStep | MirrorStep | CheckStep,
    Field(discriminator="action"),
]

MIRROR_ACTIONS = frozenset({"scatter", "mirror", "check"})
# check reports are written to <label>.csv next to these
RESERVED_LABELS = frozenset({"ledger", "spectrum"})


class OutputSpec(_Strict):
    """[output] section."""

    profiles: bool = True
    states: Literal["ndjson", "binary", "none"] = "ndjson"
    spectrum: bool = True
    ledger: bool = True


class Scenario(_Strict):
    """
    A batch run: lattice, units, representation, initial packets, an
    optional mirror and the schedule of actions.
    """

    name: str = Field(..., pattern=r"^[A-Za-z0-9_.-]+$")
    description: str = ""
    grid: GridSpec
    units: UnitSystem = Field(default_factory=UnitSystem)
    representation: RepresentationSpec = Field(
        default_factory=RepresentationSpec
    )
    packets: list[PacketSpec] = Field(default_factory=list)
    mirror: MirrorSpec | None = None
    schedule: list[ScheduleStep] = Field(default_factory=list)
    output: OutputSpec = Field(default_factory=OutputSpec)

    def reference_errors(self) -> list[tuple[tuple[str | int, ...], str]]:
        """
        Cross-reference problems that field validation cannot see.

        Returns:
            list: (location, message) pairs, empty when consistent.
        """
        errors: list[tuple[tuple[str | int, ...], str]] = []
        seen: set[str] = set()
        for i, step in enumerate(self.schedule):
            if step.action in MIRROR_ACTIONS and self.mirror is None:
                errors.append(
                    (
                        ("schedule", i, "action"),
                        f"action {step.action!r} needs a [mirror] section",
                    )
                )
            label = getattr(step, "label", None)
            if isinstance(step, CheckStep) and label in RESERVED_LABELS:
                errors.append(
                    (
                        ("schedule", i, "label"),
                        f"label {label!r} collides with an output file",
                    )
                )
            if label is not None:
                if label in seen:
                    errors.append(
                        (
                            ("schedule", i, "label"),
                            f"duplicate label {label!r}",
                        )
                    )
                seen.add(label)
        return errors
