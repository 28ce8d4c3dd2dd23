"""
File: observables.py
Project: mirrorsim
Created: Wednesday, 14th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from dataclasses import dataclass
import math

import numpy as np

from mirrorsim.config import settings
from mirrorsim.core.events import emit_warning
from mirrorsim.core.exceptions import RepresentationError
from mirrorsim.core.logger import get_logger
from mirrorsim.physics.field_state import (
    DIRECTIONS,
    AmplitudeField,
    Interpretation,
    Representation,
    to_linear,
)
from mirrorsim.physics.grid import Grid, UnitSystem, natural_units
from mirrorsim.physics.kernels import TWO_PI, KernelKind, KernelSpec
from mirrorsim.physics.propagation import evolve_free
from mirrorsim.physics.transforms import kernel_values, to_momentum, to_position

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class FieldProfiles:
    """Expectation values of E, B and the energy density over x."""

    x: np.ndarray
    E_y: np.ndarray
    E_z: np.ndarray
    B_y: np.ndarray
    B_z: np.ndarray
    energy_density: np.ndarray
    units: UnitSystem
    kernel: KernelSpec

    def as_columns(self) -> np.ndarray:
        """Columns x, E_y, E_z, B_y, B_z, u for CSV output."""
        return np.column_stack(
            [
                self.x,
                self.E_y,
                self.E_z,
                self.B_y,
                self.B_z,
                self.energy_density,
            ]
        )


def _require_profile_input(field: AmplitudeField) -> AmplitudeField:
    field.require(Representation.POSITION, KernelKind.SQRT_ABS_K)
    if field.interpretation is not Interpretation.COHERENT_AMPLITUDE:
        raise RepresentationError(
            "field profiles need coherent amplitudes; single-excitation "
            "states have vanishing <E> and <B>"
        )
    return to_linear(field)


def field_profiles(
    field: AmplitudeField, units: UnitSystem | None = None
) -> FieldProfiles:
    """
    E and B expectation values from SqrtAbsK position amplitudes.

    <xi_{s lambda}> = sqrt(2) Re a_{s lambda}; with p = sqrt(hbar c / eps A)
    E = sum_s p (xi_sH y + xi_sV z) and
    B = sum_s (s/c) p (-xi_sV y + xi_sH z).

    Raises:
        RepresentationError: Unless the field is a coherent SqrtAbsK
            position field.
    """
    units = units or natural_units()
    field = _require_profile_input(field)
    xi = math.sqrt(2.0) * field.data.real
    pref = math.sqrt(units.hbar * units.c / (units.epsilon * units.area))
    sgn = np.array(DIRECTIONS, dtype=float)[:, None]
    E_y = pref * xi[:, 0].sum(axis=0)
    E_z = pref * xi[:, 1].sum(axis=0)
    B_y = -(pref / units.c) * (sgn * xi[:, 1]).sum(axis=0)
    B_z = (pref / units.c) * (sgn * xi[:, 0]).sum(axis=0)
    density = units.hbar * units.c * np.sum(xi**2, axis=(0, 1))
    assert field.kernel is not None
    return FieldProfiles(
        x=field.grid.x_values,
        E_y=E_y,
        E_z=E_z,
        B_y=B_y,
        B_z=B_z,
        energy_density=density,
        units=units,
        kernel=field.kernel,
    )


def energy_density(
    field: AmplitudeField, units: UnitSystem | None = None
) -> np.ndarray:
    """Normal-ordered density hbar c sum_{s,lambda} 2 (Re a)^2."""
    return field_profiles(field, units).energy_density


def energy_density_from_profiles(profiles: FieldProfiles) -> np.ndarray:
    """(A/2)(eps E^2 + B^2 / mu), the classical field-energy density."""
    u = profiles.units
    e2 = profiles.E_y**2 + profiles.E_z**2
    b2 = profiles.B_y**2 + profiles.B_z**2
    return 0.5 * u.area * (u.epsilon * e2 + b2 / u.mu)


def _energy_per_direction(
    field: AmplitudeField, kernel: KernelSpec, units: UnitSystem
) -> np.ndarray:
    field.require(Representation.MOMENTUM)
    field = to_linear(field)
    grid = field.grid
    n = grid.n_points
    f = kernel_values(kernel, grid.k_values)
    alpha = field.data
    integrand = np.abs(f) ** 2 * np.abs(alpha) ** 2
    if field.interpretation is Interpretation.COHERENT_AMPLITUDE:
        partner = (-np.arange(n)) % n
        anomalous = np.real(f * f[partner] * alpha * alpha[..., partner])
        # the Nyquist mode k = -pi/dx has no -k partner
        anomalous[..., grid.nyquist_index] = 0.0
        integrand = integrand + anomalous
    scale = grid.dk * TWO_PI * units.hbar * units.c
    return scale * integrand.sum(axis=(1, 2))


def energy_total(
    field: AmplitudeField,
    kernel: KernelSpec,
    units: UnitSystem | None = None,
) -> float:
    """
    Normal-ordered energy expectation.

    sum_{s,lambda} sum_k dk 2 pi hbar c [|f|^2 |alpha|^2
    + Re(f(k) f(-k) alpha(k) alpha(-k))]; the anomalous term is dropped
    for single-excitation fields, whose <a a> vanishes.
    """
    units = units or natural_units()
    return float(_energy_per_direction(field, kernel, units).sum())


def energy_by_direction(
    field: AmplitudeField,
    kernel: KernelSpec,
    units: UnitSystem | None = None,
) -> dict[int, float]:
    """energy_total split into the s = +1 and s = -1 channels."""
    units = units or natural_units()
    per_direction = _energy_per_direction(field, kernel, units)
    return {s: float(e) for s, e in zip(DIRECTIONS, per_direction, strict=True)}


def band_edge_fraction(field: AmplitudeField, fraction: float = 0.8) -> float:
    """Share of sum |alpha|^2 dk carried by |k| > fraction k_max."""
    field.require(Representation.MOMENTUM)
    weight = np.sum(np.abs(field.data) ** 2, axis=(0, 1))
    total = float(weight.sum())
    if total == 0.0:
        return 0.0
    edge = np.abs(field.grid.k_values) > fraction * field.grid.k_max
    return float(weight[edge].sum()) / total


def _spectral_derivative(profile: np.ndarray, grid: Grid) -> np.ndarray:
    kappa = TWO_PI * np.fft.fftfreq(grid.n_points, d=grid.dx)
    kappa[grid.n_points // 2] = 0.0  # Nyquist
    return np.fft.ifft(1j * kappa * np.fft.fft(profile)).real


def maxwell_residual(
    field: AmplitudeField,
    units: UnitSystem | None = None,
    dt_probe: float = 1e-2,
    kernel: KernelSpec | None = None,
) -> float:
    """
    Max-norm residual of the 1D curl equations.

    dB_y/dt = dE_z/dx, dB_z/dt = -dE_y/dx, eps mu dE_y/dt = -dB_z/dx and
    eps mu dE_z/dt = dB_y/dx, with central differences over
    evolve_free(+-dt_probe) in time and spectral derivatives in space.
    A BAND_EDGE warning is emitted when the spectrum reaches the band
    edge, where the lattice derivatives stop being trustworthy.

    Args:
        field: Momentum field, or a SqrtAbsK position field.
        units: Unit system.
        dt_probe: Half-width of the time stencil.
        kernel: SqrtAbsK kernel used for the profiles.

    Returns:
        float: Largest absolute residual over x and the four equations.
    """
    units = units or natural_units()
    if field.representation is Representation.POSITION:
        kernel = kernel or field.kernel
        field = to_momentum(field)
    kernel = kernel or KernelSpec.sqrt_abs_k()
    if kernel.kind is not KernelKind.SQRT_ABS_K:
        raise RepresentationError("Maxwell residual needs the SqrtAbsK kernel")

    edge = band_edge_fraction(field, settings.BAND_EDGE_FRACTION)
    if edge > settings.BAND_EDGE_TOLERANCE:
        emit_warning(
            logger,
            "BAND_EDGE",
            f"{edge:.3e} of the spectral weight sits above "
            f"{settings.BAND_EDGE_FRACTION} k_max",
            fraction=edge,
        )

    def at(t: float) -> FieldProfiles:
        return field_profiles(
            to_position(evolve_free(field, t, units), kernel), units
        )

    now, later, earlier = at(0.0), at(dt_probe), at(-dt_probe)
    grid = field.grid

    def d_dt(name: str) -> np.ndarray:
        return (getattr(later, name) - getattr(earlier, name)) / (2 * dt_probe)

    def d_dx(name: str) -> np.ndarray:
        return _spectral_derivative(getattr(now, name), grid)

    eps_mu = units.epsilon * units.mu
    residuals = (
        d_dt("B_y") - d_dx("E_z"),
        d_dt("B_z") + d_dx("E_y"),
        eps_mu * d_dt("E_y") + d_dx("B_z"),
        eps_mu * d_dt("E_z") - d_dx("B_y"),
    )
    return float(max(np.max(np.abs(r)) for r in residuals))


def support_mask(
    field: AmplitudeField, threshold: float | None = None
) -> np.ndarray:
    """
    Occupied sites of the Flat (phase 0) position amplitudes.

    Args:
        field: Any field.
        threshold: Relative amplitude below which a site counts as empty.

    Returns:
        np.ndarray: Boolean mask of shape (2, 2, n).
    """
    threshold = settings.SUPPORT_THRESHOLD if threshold is None else threshold
    flat = KernelSpec.flat()
    if field.representation is Representation.POSITION:
        if field.kernel != flat:
            field = to_position(to_momentum(field), flat)
    else:
        field = to_position(field, flat)
    magnitude = np.abs(field.data)
    peak = float(magnitude.max())
    if peak == 0.0:
        return np.zeros(magnitude.shape, dtype=bool)
    return magnitude > threshold * peak


def touches_boundary(
    field: AmplitudeField,
    guard_cells: int | None = None,
    threshold: float | None = None,
) -> bool:
    """True if occupied sites come within guard_cells of the box edge."""
    guard = settings.WRAP_GUARD_CELLS if guard_cells is None else guard_cells
    occupied = support_mask(field, threshold).any(axis=(0, 1))
    n = field.grid.n_points
    return bool(occupied[:guard].any() or occupied[n - guard :].any())
