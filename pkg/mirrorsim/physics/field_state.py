"""
File: field_state.py
Project: mirrorsim
Created: Tuesday, 13th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from dataclasses import dataclass, replace
from enum import StrEnum
import math
from typing import Any

import numpy as np

from mirrorsim.core.events import emit_warning
from mirrorsim.core.exceptions import PacketError, RepresentationError
from mirrorsim.core.logger import get_logger
from mirrorsim.physics.grid import Grid
from mirrorsim.physics.kernels import TWO_PI, KernelSpec

logger = get_logger(__name__)

DIRECTIONS = (1, -1)
SQRT_HALF = 1.0 / math.sqrt(2.0)


class Representation(StrEnum):
    """Which lattice the amplitudes live on."""

    POSITION = "position"
    MOMENTUM = "momentum"


class Basis(StrEnum):
    """Polarisation basis of the lambda index."""

    LINEAR = "linear"  # (H, V)
    CIRCULAR = "circular"  # (+, -)


class Interpretation(StrEnum):
    """Physical reading of the amplitudes."""

    COHERENT_AMPLITUDE = "coherent_amplitude"
    SINGLE_EXCITATION = "single_excitation"


POLARIZATION_LABELS = {Basis.LINEAR: ("H", "V"), Basis.CIRCULAR: ("+", "-")}


def direction_index(s: int) -> int:
    """Axis-0 index of direction s (+1 -> 0, -1 -> 1)."""
    if s not in DIRECTIONS:
        raise PacketError(f"direction must be +1 or -1, got {s!r}")
    return 0 if s == 1 else 1


def polarization_index(label: str) -> tuple[int, Basis]:
    """Axis-1 index and basis of a polarisation label."""
    for basis, labels in POLARIZATION_LABELS.items():
        if label in labels:
            return labels.index(label), basis
    raise PacketError(f"unknown polarisation {label!r}")


def channel_label(s: int, lam: int, basis: Basis) -> str:
    """Record label such as '+1H' or '-1-'."""
    return f"{s:+d}{POLARIZATION_LABELS[basis][lam]}"


@dataclass(frozen=True, eq=False)
class AmplitudeField:
    """
    Complex amplitudes per direction s, polarisation lambda and site.

    `data` has shape (2, 2, n): axis 0 is s in (+1, -1), axis 1 is the
    polarisation in (H, V) or (+, -). Momentum data are the kernel
    agnostic alpha(k); position data record the kernel that made them.
    The array is read-only; operations return new fields.
    """

    grid: Grid
    data: np.ndarray
    representation: Representation = Representation.MOMENTUM
    kernel: KernelSpec | None = None
    basis: Basis = Basis.LINEAR
    interpretation: Interpretation = Interpretation.COHERENT_AMPLITUDE
    snapped: bool = False

    def __post_init__(self) -> None:
        """Validate shape, finiteness and representation tags."""
        data = np.array(self.data, dtype=np.complex128)
        shape = (2, 2, self.grid.n_points)
        if data.shape != shape:
            raise RepresentationError(
                f"amplitude data must have shape {shape}, got {data.shape}"
            )
        if not np.all(np.isfinite(data)):
            raise RepresentationError("amplitude data must be finite")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)
        representation = Representation(self.representation)
        object.__setattr__(self, "representation", representation)
        object.__setattr__(self, "basis", Basis(self.basis))
        object.__setattr__(
            self, "interpretation", Interpretation(self.interpretation)
        )
        if representation is Representation.POSITION and self.kernel is None:
            raise RepresentationError("position amplitudes need a kernel")
        if (
            representation is Representation.MOMENTUM
            and self.kernel is not None
        ):
            raise RepresentationError("momentum amplitudes are kernel-free")

    @property
    def weight(self) -> float:
        """Quadrature weight of the current lattice (dk or dx)."""
        if self.representation is Representation.MOMENTUM:
            return self.grid.dk
        return self.grid.dx

    def channel(self, s: int, lam: int | str) -> np.ndarray:
        """Read-only view of one (s, lambda) channel."""
        if isinstance(lam, str):
            lam, basis = polarization_index(lam)
            if basis is not self.basis:
                raise RepresentationError(
                    f"field is in the {self.basis} basis, asked for {lam!r}"
                )
        return self.data[direction_index(s), lam]

    def with_data(self, data: np.ndarray, **changes: Any) -> "AmplitudeField":
        """Copy with new amplitudes and optionally new tags."""
        return replace(self, data=data, **changes)

    def scaled(self, factor: complex) -> "AmplitudeField":
        """Multiply every amplitude by a constant."""
        return self.with_data(self.data * factor)

    def norm(self) -> float:
        """sqrt(sum |a|^2 w) with the lattice quadrature weight."""
        return math.sqrt(float(np.sum(np.abs(self.data) ** 2)) * self.weight)

    def direction_norms(self) -> dict[int, float]:
        """Squared norm carried by each direction channel."""
        return {
            s: float(np.sum(np.abs(self.data[i]) ** 2)) * self.weight
            for i, s in enumerate(DIRECTIONS)
        }

    def require(
        self,
        representation: Representation,
        kernel_kind: str | None = None,
    ) -> None:
        """Raise RepresentationError unless the tags match."""
        if self.representation is not representation:
            raise RepresentationError(
                f"expected {representation} representation, field is "
                f"{self.representation}"
            )
        if kernel_kind is not None and (
            self.kernel is None or self.kernel.kind != kernel_kind
        ):
            raise RepresentationError(
                f"expected a {kernel_kind} position representation, field "
                f"uses {self.kernel}; convert with to_momentum/to_position"
            )

    def compatible_with(self, other: "AmplitudeField") -> bool:
        """Same lattice and same tags."""
        return (
            self.grid.same_as(other.grid)
            and self.representation is other.representation
            and self.kernel == other.kernel
            and self.basis is other.basis
            and self.interpretation is other.interpretation
        )


def vacuum(
    grid: Grid,
    representation: Representation = Representation.MOMENTUM,
    kernel: KernelSpec | None = None,
    basis: Basis = Basis.LINEAR,
) -> AmplitudeField:
    """All amplitudes zero."""
    return AmplitudeField(
        grid=grid,
        data=np.zeros((2, 2, grid.n_points), dtype=np.complex128),
        representation=representation,
        kernel=kernel,
        basis=basis,
    )


def superpose(*fields: AmplitudeField) -> AmplitudeField:
    """Sum of compatible fields (linearity of every engine)."""
    if not fields:
        raise PacketError("superpose needs at least one field")
    first = fields[0]
    for other in fields[1:]:
        if not first.compatible_with(other):
            raise RepresentationError("cannot superpose incompatible fields")
    data = np.sum([f.data for f in fields], axis=0)
    return first.with_data(data, snapped=any(f.snapped for f in fields))


def _single_channel(
    grid: Grid,
    s: int,
    polarization: str,
    spectrum: np.ndarray,
    snapped: bool = False,
) -> AmplitudeField:
    lam, basis = polarization_index(polarization)
    data = np.zeros((2, 2, grid.n_points), dtype=np.complex128)
    data[direction_index(s), lam] = spectrum
    return AmplitudeField(grid=grid, data=data, basis=basis, snapped=snapped)


def gaussian_packet(
    grid: Grid,
    s: int,
    polarization: str,
    center_x: float,
    width: float,
    carrier_k: float,
    amplitude: complex,
) -> AmplitudeField:
    """
    Gaussian wave packet in the momentum representation.

    alpha(k) = amplitude N exp(-width^2 (k - carrier_k)^2 / 2)
    exp(-i s k center_x), with N fixed numerically so that
    sum |alpha|^2 dk = |amplitude|^2.

    Args:
        grid: Lattice.
        s: Direction +1 (right-moving) or -1 (left-moving).
        polarization: "H", "V", "+" or "-".
        center_x: Packet centre.
        width: Spatial standard deviation sigma (at least 3 dx).
        carrier_k: Carrier wavenumber.
        amplitude: Complex amplitude.

    Returns:
        AmplitudeField: Momentum-representation field.

    Raises:
        PacketError: If the packet is unresolved or leaves the band.
    """
    if width < 3.0 * grid.dx:
        raise PacketError(
            f"width {width!r} below the resolution limit 3 dx={3 * grid.dx!r}"
        )
    if abs(carrier_k) + 4.0 / width > grid.k_max:
        raise PacketError(
            f"|carrier_k| + 4/width exceeds the band limit {grid.k_max!r}"
        )
    k = grid.k_values
    envelope = np.exp(-0.5 * width**2 * (k - carrier_k) ** 2)
    spectrum = envelope * np.exp(-1j * s * k * center_x)
    scale = math.sqrt(float(np.sum(np.abs(spectrum) ** 2)) * grid.dk)
    return _single_channel(
        grid, s, polarization, complex(amplitude) * spectrum / scale
    )


def _snap_center(grid: Grid, center_x: float) -> tuple[float, bool]:
    snapped_x = grid.position(grid.index_of(center_x))
    if grid.is_on_lattice(center_x):
        return snapped_x, False
    emit_warning(
        logger,
        "OFF_LATTICE_CENTER",
        f"packet centre {center_x!r} snapped to lattice point {snapped_x!r}",
        requested=center_x,
        snapped=snapped_x,
    )
    return snapped_x, True


def band_flat_packet(
    grid: Grid,
    s: int,
    polarization: str,
    center_x: float,
    amplitude: complex,
) -> AmplitudeField:
    """
    Flat full-band spectrum: a lattice delta in the Flat representation.

    alpha(k) = amplitude sqrt(dx / 2 pi) exp(-i s k x_c), so the Flat
    (phase 0) position amplitude is amplitude / sqrt(dx) at x_c and zero
    elsewhere. Off-lattice centres snap to the nearest site; the returned
    field then has `snapped=True`.
    """
    x_c, snapped = _snap_center(grid, center_x)
    k = grid.k_values
    spectrum = (
        complex(amplitude)
        * math.sqrt(grid.dx / TWO_PI)
        * np.exp(-1j * s * k * x_c)
    )
    return _single_channel(grid, s, polarization, spectrum, snapped)


def restrict_to_positive_k(field: AmplitudeField) -> AmplitudeField:
    """Zero every k <= 0 amplitude of a momentum field."""
    field.require(Representation.MOMENTUM)
    mask = field.grid.k_values > 0.0
    return field.with_data(field.data * mask)


def positive_frequency_packet(
    grid: Grid,
    s: int,
    polarization: str,
    center_x: float,
    amplitude: complex,
) -> AmplitudeField:
    """Band-flat packet built from k > 0 modes only."""
    return restrict_to_positive_k(
        band_flat_packet(grid, s, polarization, center_x, amplitude)
    )


def to_circular(field: AmplitudeField) -> AmplitudeField:
    """A_{s,+-} = (A_{sH} +- i A_{sV}) / sqrt(2); no-op if circular."""
    if field.basis is Basis.CIRCULAR:
        return field
    h, v = field.data[:, 0], field.data[:, 1]
    data = np.stack([(h + 1j * v) * SQRT_HALF, (h - 1j * v) * SQRT_HALF], 1)
    return field.with_data(data, basis=Basis.CIRCULAR)


def to_linear(field: AmplitudeField) -> AmplitudeField:
    """Inverse of to_circular; no-op if already linear."""
    if field.basis is Basis.LINEAR:
        return field
    p, m = field.data[:, 0], field.data[:, 1]
    data = np.stack([(p + m) * SQRT_HALF, -1j * (p - m) * SQRT_HALF], 1)
    return field.with_data(data, basis=Basis.LINEAR)
