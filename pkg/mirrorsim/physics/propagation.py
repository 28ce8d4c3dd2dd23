"""
File: propagation.py
Project: mirrorsim
Created: Wednesday, 14th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

import numpy as np

from mirrorsim.core.exceptions import GridError
from mirrorsim.physics.field_state import (
    DIRECTIONS,
    AmplitudeField,
    Representation,
    direction_index,
)
from mirrorsim.physics.grid import Grid, UnitSystem, natural_units
from mirrorsim.physics.kernels import KernelKind


def dynamical_spectrum(
    grid: Grid, units: UnitSystem | None = None
) -> np.ndarray:
    """Signed eigenvalues hbar c k_m of the dynamical Hamiltonian."""
    units = units or natural_units()
    return units.hbar * units.c * grid.k_values


def evolve_free(
    field: AmplitudeField, t: float, units: UnitSystem | None = None
) -> AmplitudeField:
    """
    Exact free evolution: alpha_s(k) -> e^{-i k c t} alpha_s(k).

    The direction index cancels, so both channels share one phase and
    negative k rotates with negative frequency.

    Args:
        field: Momentum-representation field.
        t: Duration (any sign).
        units: Unit system (natural units by default).

    Returns:
        AmplitudeField: Evolved field.
    """
    field.require(Representation.MOMENTUM)
    units = units or natural_units()
    phase = np.exp(-1j * field.grid.k_values * units.c * t)
    return field.with_data(field.data * phase)


def to_interaction_picture(
    field: AmplitudeField, t: float, units: UnitSystem | None = None
) -> AmplitudeField:
    """psi_I(t) = U_dyn(t)^dagger psi_S(t)."""
    return evolve_free(field, -t, units)


def to_schrodinger_picture(
    field: AmplitudeField, t: float, units: UnitSystem | None = None
) -> AmplitudeField:
    """psi_S(t) = U_dyn(t) psi_I(t)."""
    return evolve_free(field, t, units)


def shift_position(
    field: AmplitudeField, cells: int, s_channel: int | None = None
) -> AmplitudeField:
    """
    Whole-cell translation of Flat position amplitudes.

    Channel s moves by s * cells sites (periodic), matching evolve_free
    at t = cells dx / c exactly.

    Args:
        field: Flat-kernel position field.
        cells: Number of cells; must be integral.
        s_channel: Direction to shift, or None for both.

    Raises:
        GridError: For non-integer shifts.
        RepresentationError: For non-Flat or momentum fields.
    """
    field.require(Representation.POSITION, KernelKind.FLAT)
    if isinstance(cells, bool) or not float(cells).is_integer():
        raise GridError(f"shift must be a whole number of cells: {cells!r}")
    steps = int(cells)
    directions = DIRECTIONS if s_channel is None else (s_channel,)
    data = np.array(field.data)
    for s in directions:
        i = direction_index(s)
        data[i] = np.roll(field.data[i], s * steps, axis=-1)
    return field.with_data(data)
