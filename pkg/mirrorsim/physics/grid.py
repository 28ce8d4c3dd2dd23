"""
File: grid.py
Project: mirrorsim
Created: Tuesday, 13th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from dataclasses import dataclass
from functools import cached_property
import math
from typing import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from mirrorsim.core.exceptions import GridError

# Relative tolerance of the c = 1/sqrt(epsilon*mu) constraint.
SPEED_OF_LIGHT_RTOL = 1e-12


class UnitSystem(BaseModel):
    """
    Physical constants carried through every prefactor.

    Attributes:
        hbar: Reduced Planck constant.
        c: Speed of light in the medium.
        epsilon: Permittivity.
        mu: Permeability.
        area: Transverse area A of the 1D waveguide.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    hbar: float = Field(default=1.0, gt=0.0)
    c: float = Field(default=1.0, gt=0.0)
    epsilon: float = Field(default=1.0, gt=0.0)
    mu: float = Field(default=1.0, gt=0.0)
    area: float = Field(default=1.0, gt=0.0)

    @model_validator(mode="after")
    def _check_speed_of_light(self) -> Self:
        expected = 1.0 / math.sqrt(self.epsilon * self.mu)
        if abs(self.c - expected) > SPEED_OF_LIGHT_RTOL * expected:
            raise ValueError(
                f"c={self.c!r} inconsistent with 1/sqrt(epsilon*mu)"
                f"={expected!r}"
            )
        return self


def natural_units() -> UnitSystem:
    """Return hbar = c = epsilon = mu = A = 1."""
    return UnitSystem()


def make_units(
    hbar: float = 1.0,
    c: float | None = None,
    epsilon: float = 1.0,
    mu: float = 1.0,
    area: float = 1.0,
) -> UnitSystem:
    """
    Build a unit system, deriving c from epsilon and mu when omitted.

    Raises:
        pydantic.ValidationError: If a field is non-positive or c is
            inconsistent with epsilon and mu.
    """
    if c is None:
        c = 1.0 / math.sqrt(epsilon * mu)
    return UnitSystem(hbar=hbar, c=c, epsilon=epsilon, mu=mu, area=area)


@dataclass(frozen=True)
class Grid:
    """
    Centred position and wavenumber lattices.

    x_j = (j - n/2) dx and k_m = (m - n/2) dk with dk = 2 pi / (n dx), so
    both x = 0 and k = 0 are lattice points and index 0 holds the
    unpaired Nyquist wavenumber -pi/dx and the position -L/2.
    """

    n_points: int
    dx: float

    def __post_init__(self) -> None:
        """Validate lattice parameters."""
        if isinstance(self.n_points, bool) or not isinstance(
            self.n_points, int | np.integer
        ):
            raise GridError(f"n_points must be an integer: {self.n_points!r}")
        if self.n_points < 4 or self.n_points % 2:
            raise GridError(
                f"n_points must be even and >= 4, got {self.n_points}"
            )
        if not math.isfinite(self.dx) or self.dx <= 0.0:
            raise GridError(f"dx must be positive, got {self.dx!r}")

    @property
    def length(self) -> float:
        """Box length L = n dx."""
        return self.n_points * self.dx

    @property
    def dk(self) -> float:
        """Wavenumber spacing 2 pi / L."""
        return 2.0 * math.pi / self.length

    @property
    def k_max(self) -> float:
        """Band limit pi / dx."""
        return math.pi / self.dx

    @property
    def center_index(self) -> int:
        """Index of x = 0 and of k = 0."""
        return self.n_points // 2

    @property
    def nyquist_index(self) -> int:
        """Index of k = -pi/dx, the wavenumber without a -k partner."""
        return 0

    @cached_property
    def x_values(self) -> np.ndarray:
        """Positions x_j."""
        return (np.arange(self.n_points) - self.center_index) * self.dx

    @cached_property
    def k_values(self) -> np.ndarray:
        """Wavenumbers k_m."""
        return (np.arange(self.n_points) - self.center_index) * self.dk

    def position(self, j: int) -> float:
        """Coordinate of lattice index j."""
        if not 0 <= j < self.n_points:
            raise GridError(f"index {j} outside [0, {self.n_points})")
        return float((j - self.center_index) * self.dx)

    def index_of(self, x: float) -> int:
        """
        Nearest lattice index of a coordinate.

        Args:
            x: Position inside [-L/2, L/2).

        Returns:
            int: Index j minimising |x_j - x|.
        """
        j = int(np.rint(x / self.dx)) + self.center_index
        if not 0 <= j < self.n_points:
            raise GridError(f"x={x!r} outside the box [-L/2, L/2)")
        return j

    def is_on_lattice(self, x: float, rtol: float = 1e-9) -> bool:
        """True if x coincides with a lattice point."""
        cells = x / self.dx
        return abs(cells - round(cells)) <= rtol * max(1.0, abs(cells))

    def partner_index(self, j: int) -> int | None:
        """Index of -x_j, or None for j = 0 (L/2 is not on the lattice)."""
        if not 0 <= j < self.n_points:
            raise GridError(f"index {j} outside [0, {self.n_points})")
        return None if j == 0 else self.n_points - j

    def same_as(self, other: "Grid") -> bool:
        """Lattices agree in size and spacing."""
        return self.n_points == other.n_points and math.isclose(
            self.dx, other.dx, rel_tol=1e-12
        )


def make_grid(n_points: int, dx: float) -> Grid:
    """
    Build a centred lattice.

    Args:
        n_points: Even count, at least 4.
        dx: Positive spacing.

    Returns:
        Grid: The lattice pair.

    Raises:
        GridError: On odd, tiny or non-integer n_points or non-positive dx.
    """
    return Grid(n_points=n_points, dx=float(dx))
