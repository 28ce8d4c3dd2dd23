"""
File: mirror.py
Project: mirrorsim
Created: Thursday, 15th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.

Two-sided semi-transparent mirror.

The coupling Omega_{xx'} converts right-movers at x into left-movers at
x' and back. Two engines are provided:

* the closed-form scattering operator S_I, diagonal in k, built from the
  spectrum Xi_k = (i/c) sum Omega_{jj'} e^{i k (x_j + x_j')} dx^2;
* time-resolved interaction-picture dynamics, either by classical RK4 or,
  for separable kernels, by the exact pairwise rotation.

Lattice delta: Omega(x) delta(x + x') is stored densely as
Omega_{j, n-j} = Omega_j / dx. Site 0 (x = -L/2) has no mirror partner
and never couples.
"""

from dataclasses import dataclass
from enum import StrEnum
import math

import numpy as np
from scipy.integrate import cumulative_trapezoid

from mirrorsim.core.events import emit_warning
from mirrorsim.core.exceptions import (
    KernelError,
    ScatteringWindowError,
    StepCountError,
)
from mirrorsim.core.logger import get_logger
from mirrorsim.physics.field_state import (
    DIRECTIONS,
    AmplitudeField,
    Basis,
    Representation,
    channel_label,
    to_circular,
    to_linear,
)
from mirrorsim.physics.grid import Grid, UnitSystem, natural_units
from mirrorsim.physics.kernels import KernelKind, KernelSpec
from mirrorsim.physics.observables import energy_by_direction, support_mask
from mirrorsim.physics.transforms import to_momentum, to_position

logger = get_logger(__name__)

# Substeps needed per unit of rotation angle and per crossed cell.
STEPS_PER_RADIAN = 10.0
STEPS_PER_CELL = 4.0
# Agreement demanded from the two engines on separable kernels.
SEPARABLE_EQUIVALENCE_TOL = 1e-6


class Solver(StrEnum):
    """Integrator choice for evolve_mirror."""

    AUTO = "auto"
    RK4 = "rk4"
    ROTATION = "rotation"


def _support(nonzero: np.ndarray) -> tuple[int, int]:
    idx = np.flatnonzero(nonzero)
    if idx.size == 0:
        return (0, 0)
    return (int(idx[0]), int(idx[-1]) + 1)


def _readonly(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=float)
    values.flags.writeable = False
    return values


@dataclass(frozen=True, eq=False)
class SeparableKernel:
    """
    Omega_{xx'} = Omega(x) delta(x + x').

    Attributes:
        grid: Lattice the samples live on.
        omega: Real rates Omega(x_j).
        support: Half-open index range holding every non-zero sample.
    """

    grid: Grid
    omega: np.ndarray
    support: tuple[int, int] = (0, 0)

    def __post_init__(self) -> None:
        """Validate samples and derive the support."""
        raw = np.asarray(self.omega)
        if np.iscomplexobj(raw):
            raise KernelError("mirror couplings must be real")
        omega = _readonly(raw)
        if omega.shape != (self.grid.n_points,):
            raise KernelError(
                f"expected {self.grid.n_points} samples, got {omega.shape}"
            )
        if not np.all(np.isfinite(omega)):
            raise KernelError("mirror couplings must be finite")
        if omega[0] != 0.0:
            raise KernelError(
                "site 0 (x = -L/2) has no mirror partner; its coupling "
                "must be zero"
            )
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "support", _support(omega != 0.0))

    @property
    def is_zero(self) -> bool:
        """No coupling at all."""
        return self.support[0] == self.support[1]

    @property
    def outer_extent(self) -> float:
        """Largest |x| reached by the interpolated coupling."""
        return _extent(self.grid, self.support)

    def total_angle(self, units: UnitSystem | None = None) -> float:
        """(1/c) sum Omega_j dx."""
        units = units or natural_units()
        return float(np.sum(self.omega)) * self.grid.dx / units.c

    def to_dense(self) -> "DenseKernel":
        """Dense form with Omega_{j, n-j} = Omega_j / dx."""
        n = self.grid.n_points
        j = np.arange(1, n)
        matrix = np.zeros((n, n))
        matrix[j, n - j] = self.omega[j] / self.grid.dx
        return DenseKernel(self.grid, matrix)


@dataclass(frozen=True, eq=False)
class DenseKernel:
    """
    General real coupling Omega_{jj'} between right-movers at x_j and
    left-movers at x_j'.
    """

    grid: Grid
    omega_matrix: np.ndarray
    support: tuple[int, int] = (0, 0)

    def __post_init__(self) -> None:
        """Validate samples and derive the support."""
        raw = np.asarray(self.omega_matrix)
        if np.iscomplexobj(raw):
            raise KernelError("mirror couplings must be real")
        matrix = _readonly(raw)
        n = self.grid.n_points
        if matrix.shape != (n, n):
            raise KernelError(f"expected an {n}x{n} matrix, got {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise KernelError("mirror couplings must be finite")
        object.__setattr__(self, "omega_matrix", matrix)
        nonzero = (matrix != 0.0).any(axis=0) | (matrix != 0.0).any(axis=1)
        object.__setattr__(self, "support", _support(nonzero))

    @property
    def is_zero(self) -> bool:
        """No coupling at all."""
        return self.support[0] == self.support[1]

    @property
    def outer_extent(self) -> float:
        """Largest |x| reached by the interpolated coupling."""
        return _extent(self.grid, self.support)

    def to_dense_matrix(self) -> np.ndarray:
        """The n x n coupling samples."""
        return self.omega_matrix


type MirrorKernel = SeparableKernel | DenseKernel


def _extent(grid: Grid, support: tuple[int, int]) -> float:
    lo, hi = support
    if lo == hi:
        return 0.0
    x = grid.x_values
    return float(max(abs(x[lo]), abs(x[hi - 1]))) + grid.dx


@dataclass(frozen=True, eq=False)
class ScatteringSpectrum:
    """Complex scattering angle Xi_k per lattice wavenumber."""

    grid: Grid
    xi: np.ndarray

    def __post_init__(self) -> None:
        """Validate length and finiteness."""
        xi = np.array(np.broadcast_to(self.xi, (self.grid.n_points,)))
        xi = xi.astype(np.complex128)
        if not np.all(np.isfinite(xi)):
            raise KernelError("scattering spectrum must be finite")
        xi.flags.writeable = False
        object.__setattr__(self, "xi", xi)

    @property
    def reflectance(self) -> np.ndarray:
        """sin^2 |Xi_k|."""
        return np.sin(np.abs(self.xi)) ** 2

    @property
    def transmittance(self) -> np.ndarray:
        """cos^2 |Xi_k|."""
        return np.cos(np.abs(self.xi)) ** 2

    def as_columns(self) -> np.ndarray:
        """Columns k, Re Xi, Im Xi, |Xi|, sin^2|Xi|, cos^2|Xi|."""
        return np.column_stack(
            [
                self.grid.k_values,
                self.xi.real,
                self.xi.imag,
                np.abs(self.xi),
                self.reflectance,
                self.transmittance,
            ]
        )


# Kernel builders


def _truncated_gaussian(x: np.ndarray, width: float) -> np.ndarray:
    inside = np.abs(x) <= 4.0 * width
    return np.where(inside, np.exp(-0.5 * (x / width) ** 2), 0.0)


def separable_kernel(grid: Grid, omega: np.ndarray) -> SeparableKernel:
    """Wrap lattice samples Omega(x_j)."""
    return SeparableKernel(grid, np.asarray(omega))


def gaussian_separable_kernel(
    grid: Grid,
    total_angle: float,
    width: float,
    units: UnitSystem | None = None,
) -> SeparableKernel:
    """
    Gaussian Omega(x) centred on the mirror, cut at 4 widths and scaled
    so that (1/c) sum Omega dx = total_angle.
    """
    units = units or natural_units()
    if width <= 0.0:
        raise KernelError(f"mirror width must be positive, got {width!r}")
    x = grid.x_values
    shape = _truncated_gaussian(x, width)
    return separable_kernel(
        grid, shape * total_angle * units.c / (shape.sum() * grid.dx)
    )


def box_separable_kernel(
    grid: Grid,
    total_angle: float,
    cells: int = 1,
    units: UnitSystem | None = None,
) -> SeparableKernel:
    """Constant Omega over `cells` sites around x = 0."""
    units = units or natural_units()
    if cells < 1 or cells > grid.n_points - 1:
        raise KernelError(f"box mirror needs 1..n-1 cells, got {cells}")
    lo = grid.center_index - cells // 2
    omega = np.zeros(grid.n_points)
    omega[lo : lo + cells] = total_angle * units.c / (cells * grid.dx)
    return separable_kernel(grid, omega)


def dense_kernel(grid: Grid, matrix: np.ndarray) -> DenseKernel:
    """Wrap an n x n matrix of samples Omega_{jj'}."""
    return DenseKernel(grid, np.asarray(matrix))


def gaussian_blob_kernel(
    grid: Grid, strength: float, width: float
) -> DenseKernel:
    """Omega_{jj'} = strength exp(-(x_j^2 + x_j'^2) / 2 width^2), cut at 4 w."""
    if width <= 0.0:
        raise KernelError(f"mirror width must be positive, got {width!r}")
    x = grid.x_values
    profile = _truncated_gaussian(x, width)
    return dense_kernel(grid, strength * np.outer(profile, profile))


def _require_grid(kernel: MirrorKernel, grid: Grid) -> None:
    if not kernel.grid.same_as(grid):
        raise KernelError(
            f"kernel lattice (n={kernel.grid.n_points}, dx={kernel.grid.dx}) "
            f"differs from field lattice (n={grid.n_points}, dx={grid.dx})"
        )


# Scattering operator


def xi_spectrum(
    kernel: MirrorKernel,
    grid: Grid | None = None,
    units: UnitSystem | None = None,
) -> ScatteringSpectrum:
    """
    Xi_k = (i/c) sum_{j,j'} Omega_{jj'} e^{i k (x_j + x_j')} dx^2.

    Separable kernels collapse to the k-independent (i/c) sum Omega_j dx.
    Dense kernels are reduced to anti-diagonal sums g_q (q = j + j'),
    folded modulo n and transformed once by FFT.
    """
    units = units or natural_units()
    grid = grid or kernel.grid
    _require_grid(kernel, grid)
    n = grid.n_points
    if isinstance(kernel, SeparableKernel):
        value = 1j * float(np.sum(kernel.omega)) * grid.dx / units.c
        return ScatteringSpectrum(grid, np.full(n, value))
    j = np.arange(n)
    q = (j[:, None] + j[None, :]).ravel()
    g = np.bincount(q, weights=kernel.omega_matrix.ravel(), minlength=2 * n)
    h = g[:n] + g[n:]
    alternating = np.where(j % 2, -1.0, 1.0)
    xi = 1j * grid.dx**2 / units.c * n * np.fft.ifft(h * alternating)
    return ScatteringSpectrum(grid, xi)


def scattering_unitary(xi: np.ndarray | complex) -> np.ndarray:
    """
    U(Xi) = exp(-i [[0, Xi*], [Xi, 0]]) in (s = +1, s = -1) order.

    Returns:
        np.ndarray: Shape (..., 2, 2).
    """
    xi = np.asarray(xi, dtype=np.complex128)
    magnitude = np.abs(xi)
    unit = np.divide(xi, magnitude, out=np.zeros_like(xi), where=magnitude > 0)
    cos, sin = np.cos(magnitude), np.sin(magnitude)
    u = np.empty((*xi.shape, 2, 2), dtype=np.complex128)
    u[..., 0, 0] = cos
    u[..., 0, 1] = -1j * np.conj(unit) * sin
    u[..., 1, 0] = -1j * unit * sin
    u[..., 1, 1] = cos
    return u


def apply_scattering(
    field: AmplitudeField, spectrum: ScatteringSpectrum
) -> AmplitudeField:
    """
    Closed-form S_I: each (k, lambda) pair (alpha_+1, alpha_-1) is mapped
    by U(Xi_k). Distinct k and distinct circular polarisations never mix.
    """
    field.require(Representation.MOMENTUM)
    _require_grid_match(field.grid, spectrum.grid)
    circular = to_circular(field)
    u = scattering_unitary(spectrum.xi)
    a_plus, a_minus = circular.data[0], circular.data[1]
    data = np.stack(
        [
            u[:, 0, 0] * a_plus + u[:, 0, 1] * a_minus,
            u[:, 1, 0] * a_plus + u[:, 1, 1] * a_minus,
        ]
    )
    out = circular.with_data(data)
    return to_linear(out) if field.basis is Basis.LINEAR else out


def _require_grid_match(a: Grid, b: Grid) -> None:
    if not a.same_as(b):
        raise KernelError("spectrum and field live on different lattices")


def positive_frequency_effective_evolution(
    field: AmplitudeField,
    omega_k: np.ndarray | complex,
    duration: float,
) -> AmplitudeField:
    """
    Time-local effective interaction restricted to k > 0 modes.

    Applies U(Omega_k duration) to every k > 0 mode regardless of where
    the packet is, which is why it cannot tell incoming from outgoing
    light.
    """
    field.require(Representation.MOMENTUM)
    grid = field.grid
    xi = np.broadcast_to(np.asarray(omega_k) * duration, (grid.n_points,))
    xi = np.where(grid.k_values > 0.0, xi, 0.0)
    return apply_scattering(field, ScatteringSpectrum(grid, xi))


# Interaction-picture dynamics


def _cell_offset(t: float, grid: Grid, units: UnitSystem) -> tuple[int, float]:
    cells = units.c * t / grid.dx
    p = math.floor(cells)
    return p, cells - p


def _take(values: np.ndarray, idx: np.ndarray) -> np.ndarray:
    out = np.zeros(idx.shape)
    valid = (idx >= 0) & (idx < values.shape[0])
    out[valid] = values[idx[valid]]
    return out


def _separable_rates(
    kernel: SeparableKernel, t: float, units: UnitSystem
) -> np.ndarray:
    """Omega(x_j + c t), linearly interpolated, zero off the lattice."""
    p, r = _cell_offset(t, kernel.grid, units)
    j = np.arange(kernel.grid.n_points)
    return (1.0 - r) * _take(kernel.omega, j + p) + r * _take(
        kernel.omega, j + p + 1
    )


def _shifted(matrix: np.ndarray, p: int) -> np.ndarray:
    """S[j, j'] = M[j + p, j' - p], zero out of range."""
    n = matrix.shape[0]
    out = np.zeros_like(matrix)
    if abs(p) >= n:
        return out
    r0, r1 = max(0, -p), min(n, n - p)
    c0, c1 = max(0, p), min(n, n + p)
    out[r0:r1, c0:c1] = matrix[r0 + p : r1 + p, c0 - p : c1 - p]
    return out


def _dense_coupling(
    kernel: DenseKernel, t: float, units: UnitSystem
) -> np.ndarray:
    """Omega_{(x_j + ct)(x_j' - ct)} interpolated along anti-diagonals."""
    p, r = _cell_offset(t, kernel.grid, units)
    matrix = kernel.omega_matrix
    coupling = (1.0 - r) * _shifted(matrix, p)
    if r > 0.0:
        coupling += r * _shifted(matrix, p + 1)
    return coupling


def _characteristic_integral(
    kernel: SeparableKernel, u: np.ndarray
) -> np.ndarray:
    """Integral of the interpolated Omega from -infinity to u."""
    grid = kernel.grid
    n = grid.n_points
    padded = np.concatenate([[0.0], kernel.omega, [0.0]])
    cumulative = cumulative_trapezoid(padded, dx=grid.dx, initial=0.0)
    pos = np.clip((np.asarray(u) - grid.x_values[0]) / grid.dx + 1.0, 0, n + 1)
    q = np.minimum(np.floor(pos).astype(int), n)
    r = pos - q
    partial = r * padded[q] + 0.5 * r**2 * (padded[q + 1] - padded[q])
    return cumulative[q] + grid.dx * partial


def xi_profile(
    kernel: SeparableKernel,
    x: float | np.ndarray,
    t: float,
    units: UnitSystem | None = None,
) -> float | np.ndarray:
    """
    Xi(x, t) = int_0^t Omega(x + c t') dt' along the characteristic.

    Returns:
        Rotation angle seen by a right-mover starting at x, as a float
        for scalar x.
    """
    units = units or natural_units()
    x_arr = np.asarray(x, dtype=float)
    value = (
        _characteristic_integral(kernel, x_arr + units.c * t)
        - _characteristic_integral(kernel, x_arr)
    ) / units.c
    return float(value) if value.ndim == 0 else value


def coupling_rate(kernel: MirrorKernel) -> float:
    """Largest rotation rate a site can see."""
    if isinstance(kernel, SeparableKernel):
        return float(np.max(np.abs(kernel.omega), initial=0.0))
    weights = np.abs(kernel.omega_matrix) * kernel.grid.dx
    return float(
        max(weights.sum(axis=1).max(initial=0.0), weights.sum(axis=0).max())
    )


def minimum_steps(
    kernel: MirrorKernel,
    t_start: float,
    t_end: float,
    units: UnitSystem | None = None,
) -> int:
    """Smallest RK4 step count accepted by the stability heuristic."""
    units = units or natural_units()
    duration = abs(t_end - t_start)
    cells = units.c * duration / kernel.grid.dx
    need = max(
        STEPS_PER_RADIAN * coupling_rate(kernel) * duration,
        STEPS_PER_CELL * cells,
    )
    return max(1, math.ceil(need - 1e-9))


def suggest_steps(
    kernel: MirrorKernel,
    t_start: float,
    t_end: float,
    units: UnitSystem | None = None,
) -> int:
    """Minimum step count, rounded up to whole substeps per cell."""
    units = units or natural_units()
    need = minimum_steps(kernel, t_start, t_end, units)
    cells = units.c * abs(t_end - t_start) / kernel.grid.dx
    if cells > 0 and abs(cells - round(cells)) < 1e-9 and round(cells) > 0:
        whole = round(cells)
        return whole * math.ceil(need / whole)
    return need


def _check_alignment(
    grid: Grid, t_start: float, h: float, units: UnitSystem
) -> None:
    per_cell = grid.dx / (units.c * abs(h))
    m = round(per_cell)
    start = units.c * t_start / grid.dx * m
    aligned = (
        m >= 1
        and abs(per_cell - m) <= 1e-9 * per_cell
        and abs(start - round(start)) <= 1e-6
    )
    if not aligned:
        emit_warning(
            logger,
            "MISALIGNED_SUBSTEPS",
            "RK4 substeps do not align with cell crossings; expect "
            "reduced convergence order",
            substeps_per_cell=per_cell,
        )


def _rotate(
    a_plus: np.ndarray, a_minus: np.ndarray, theta: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    n = a_plus.shape[-1]
    j = np.arange(1, n)
    partner = n - j
    cos, sin = np.cos(theta[j]), np.sin(theta[j])
    plus, minus = a_plus.copy(), a_minus.copy()
    plus[..., j] = cos * a_plus[..., j] - sin * a_minus[..., partner]
    minus[..., partner] = sin * a_plus[..., j] + cos * a_minus[..., partner]
    return plus, minus


def rotation_angles(
    kernel: SeparableKernel,
    t_start: float,
    t_end: float,
    units: UnitSystem | None = None,
) -> np.ndarray:
    """Theta_j = (1/c)[F(x_j + c t_end) - F(x_j + c t_start)]."""
    units = units or natural_units()
    x = kernel.grid.x_values
    start = _characteristic_integral(kernel, x + units.c * t_start)
    end = _characteristic_integral(kernel, x + units.c * t_end)
    return (end - start) / units.c


def _rk4(
    kernel: MirrorKernel,
    a_plus: np.ndarray,
    a_minus: np.ndarray,
    t_start: float,
    t_end: float,
    steps: int,
    units: UnitSystem,
) -> tuple[np.ndarray, np.ndarray]:
    n = kernel.grid.n_points
    j = np.arange(1, n)
    partner = n - j
    dx = kernel.grid.dx

    def rhs(
        t: float, y_plus: np.ndarray, y_minus: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        if isinstance(kernel, SeparableKernel):
            rates = _separable_rates(kernel, t, units)[j]
            d_plus = np.zeros_like(y_plus)
            d_minus = np.zeros_like(y_minus)
            d_plus[..., j] = -rates * y_minus[..., partner]
            d_minus[..., partner] = rates * y_plus[..., j]
            return d_plus, d_minus
        w = _dense_coupling(kernel, t, units) * dx
        return -(y_minus @ w.T), y_plus @ w

    h = (t_end - t_start) / steps
    y_plus, y_minus = a_plus.copy(), a_minus.copy()
    for i in range(steps):
        t = t_start + i * h
        k1p, k1m = rhs(t, y_plus, y_minus)
        k2p, k2m = rhs(
            t + h / 2, y_plus + h / 2 * k1p, y_minus + h / 2 * k1m
        )
        k3p, k3m = rhs(
            t + h / 2, y_plus + h / 2 * k2p, y_minus + h / 2 * k2m
        )
        k4p, k4m = rhs(t + h, y_plus + h * k3p, y_minus + h * k3m)
        y_plus = y_plus + h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p)
        y_minus = y_minus + h / 6 * (k1m + 2 * k2m + 2 * k3m + k4m)
    return y_plus, y_minus


def evolve_mirror(
    field: AmplitudeField,
    kernel: MirrorKernel,
    t_start: float,
    t_end: float,
    steps: int | None = None,
    units: UnitSystem | None = None,
    solver: Solver | str = Solver.AUTO,
) -> AmplitudeField:
    """
    Interaction-picture mirror dynamics over [t_start, t_end].

    Per circular channel:
    dA_1(x)/dt = -sum_x' Omega_{(x+ct)(x'-ct)} A_-1(x') dx and
    dA_-1(x')/dt = +sum_x Omega_{(x+ct)(x'-ct)} A_1(x) dx.

    Args:
        field: Flat-kernel position field in the interaction picture.
        kernel: Mirror coupling on the same lattice.
        t_start: Start of the window.
        t_end: End of the window.
        steps: RK4 substeps (suggested from the heuristic when None).
        units: Unit system.
        solver: "auto" (rotation for separable kernels, RK4 otherwise),
            "rk4" or "rotation".

    Returns:
        AmplitudeField: Evolved field in the input basis.

    Raises:
        StepCountError: If steps is below the stability heuristic.
        KernelError: Rotation requested for a dense kernel, or lattices
            differ.
    """
    units = units or natural_units()
    field.require(Representation.POSITION, KernelKind.FLAT)
    _require_grid(kernel, field.grid)
    solver = Solver(solver)
    if solver is Solver.AUTO:
        solver = (
            Solver.ROTATION
            if isinstance(kernel, SeparableKernel)
            else Solver.RK4
        )
    if t_end == t_start or kernel.is_zero:
        return field

    circular = to_circular(field)
    a_plus, a_minus = circular.data[0], circular.data[1]
    if solver is Solver.ROTATION:
        if not isinstance(kernel, SeparableKernel):
            raise KernelError(
                "the closed-form rotation needs a separable kernel"
            )
        theta = rotation_angles(kernel, t_start, t_end, units)
        plus, minus = _rotate(a_plus, a_minus, theta)
    else:
        need = minimum_steps(kernel, t_start, t_end, units)
        if steps is None:
            steps = suggest_steps(kernel, t_start, t_end, units)
        if steps < need:
            raise StepCountError(
                f"{steps} RK4 steps requested, at least {need} needed for "
                f"this kernel and window"
            )
        _check_alignment(
            kernel.grid, t_start, (t_end - t_start) / steps, units
        )
        logger.debug(f"RK4 mirror evolution with {steps} steps")
        plus, minus = _rk4(
            kernel, a_plus, a_minus, t_start, t_end, steps, units
        )
    out = circular.with_data(np.stack([plus, minus]))
    return to_linear(out) if field.basis is Basis.LINEAR else out


# Windows and reports


def _occupied_positions(field: AmplitudeField) -> dict[int, np.ndarray]:
    mask = support_mask(field)
    x = field.grid.x_values
    return {s: x[mask[i].any(axis=0)] for i, s in enumerate(DIRECTIONS)}


def require_clear_window(
    field: AmplitudeField,
    kernel: MirrorKernel,
    horizon: float,
    units: UnitSystem | None = None,
) -> None:
    """
    Every occupied site must satisfy |x| <= c horizon - w, so that the
    interaction anchored at t = 0 is complete within [-horizon, horizon].
    """
    units = units or natural_units()
    limit = units.c * horizon - kernel.outer_extent
    for s, x in _occupied_positions(field).items():
        if x.size and float(np.max(np.abs(x))) > limit:
            raise ScatteringWindowError(
                f"direction {s:+d} occupies |x| = {np.max(np.abs(x)):.6g} "
                f"beyond c*horizon - w = {limit:.6g}"
            )


def require_incoming(
    field: AmplitudeField,
    kernel: MirrorKernel,
    duration: float,
    units: UnitSystem | None = None,
) -> None:
    """
    Closed-form scattering over `duration` needs light that has not met
    the mirror yet and will have left it by the end.
    """
    units = units or natural_units()
    w = kernel.outer_extent
    reach = units.c * duration - w
    occupied = _occupied_positions(field)
    right, left = occupied[1], occupied[-1]
    if right.size and (right.max() > -w or right.min() < -reach):
        raise ScatteringWindowError(
            "right-moving light must start in [-(c T - w), -w] to scatter "
            f"completely; found x in [{right.min():.6g}, {right.max():.6g}]"
        )
    if left.size and (left.min() < w or left.max() > reach):
        raise ScatteringWindowError(
            "left-moving light must start in [w, c T - w] to scatter "
            f"completely; found x in [{left.min():.6g}, {left.max():.6g}]"
        )


def reflected_fraction(
    before: AmplitudeField,
    after: AmplitudeField,
    kernel: KernelSpec | None = None,
    units: UnitSystem | None = None,
) -> float:
    """Share of the energy that ends up moving against the incident light."""
    kernel = kernel or KernelSpec.sqrt_abs_k()
    incident = energy_by_direction(before, kernel, units)
    total = incident[1] + incident[-1]
    if total == 0.0:
        return 0.0
    s = 1 if incident[1] >= incident[-1] else -1
    if incident[-s] > 1e-12 * total:
        raise ScatteringWindowError(
            "reflected fraction needs light incident from one side only"
        )
    outgoing = energy_by_direction(after, kernel, units)
    return outgoing[-s] / (outgoing[1] + outgoing[-1])


@dataclass(frozen=True, eq=False)
class EquivalenceReport:
    """Closed-form scattering versus time-resolved mirror dynamics."""

    discrepancy: dict[str, float]
    left_fraction_scattering: float
    left_fraction_mirror: float
    reflected_phase: float
    tolerance: float | None
    scattered: AmplitudeField
    evolved: AmplitudeField

    @property
    def max_discrepancy(self) -> float:
        """Largest per-channel discrepancy."""
        return max(self.discrepancy.values())

    @property
    def passed(self) -> bool:
        """Within tolerance (always True for diagnostic reports)."""
        return self.tolerance is None or self.max_discrepancy <= self.tolerance

    def rows(self) -> list[tuple[str, float]]:
        """Metric / value rows for CSV output."""
        rows = [(f"discrepancy_{k}", v) for k, v in self.discrepancy.items()]
        rows += [
            ("max_discrepancy", self.max_discrepancy),
            ("left_fraction_scattering", self.left_fraction_scattering),
            ("left_fraction_mirror", self.left_fraction_mirror),
            ("reflected_phase", self.reflected_phase),
            ("passed", float(self.passed)),
        ]
        return rows


def _left_fraction(field: AmplitudeField, kernel: KernelSpec) -> float:
    energies = energy_by_direction(field, kernel)
    total = energies[1] + energies[-1]
    return energies[-1] / total if total else 0.0


def scattering_equivalence_check(
    field: AmplitudeField,
    kernel: MirrorKernel,
    horizon: float,
    units: UnitSystem | None = None,
    steps: int | None = None,
    solver: Solver | str = Solver.AUTO,
    energy_kernel: KernelSpec | None = None,
) -> EquivalenceReport:
    """
    Compare S_I with evolve_mirror over [-horizon, horizon].

    Args:
        field: Momentum field; the interaction-picture state anchored at
            t = 0.
        kernel: Mirror coupling.
        horizon: Half-width of the time window.
        units: Unit system.
        steps: RK4 substeps for dense kernels.
        solver: evolve_mirror solver.
        energy_kernel: Kernel used for the energy fractions.

    Returns:
        EquivalenceReport: Per-channel max-norm discrepancy in the Flat
        position representation plus fractions from both engines.

    Raises:
        ScatteringWindowError: If occupied sites are too close to the
            mirror for the horizon.
    """
    units = units or natural_units()
    field.require(Representation.MOMENTUM)
    energy_kernel = energy_kernel or KernelSpec.sqrt_abs_k()
    flat = KernelSpec.flat()
    require_clear_window(field, kernel, horizon, units)

    spectrum = xi_spectrum(kernel, field.grid, units)
    scattered = apply_scattering(field, spectrum)
    evolved = to_momentum(
        evolve_mirror(
            to_position(field, flat),
            kernel,
            -horizon,
            horizon,
            steps=steps,
            units=units,
            solver=solver,
        )
    )
    diff = np.abs(
        to_position(evolved, flat).data - to_position(scattered, flat).data
    ).max(axis=-1)
    discrepancy = {
        channel_label(s, lam, field.basis): float(diff[i, lam])
        for i, s in enumerate(DIRECTIONS)
        for lam in (0, 1)
    }
    weight = np.sum(np.abs(field.data) ** 2, axis=(0, 1))
    peak = int(np.argmax(weight))
    xi_peak = spectrum.xi[peak]
    phase = float(np.angle(-1j * xi_peak)) if abs(xi_peak) > 0 else 0.0
    tolerance = (
        SEPARABLE_EQUIVALENCE_TOL
        if isinstance(kernel, SeparableKernel)
        else None
    )
    return EquivalenceReport(
        discrepancy=discrepancy,
        left_fraction_scattering=_left_fraction(scattered, energy_kernel),
        left_fraction_mirror=_left_fraction(evolved, energy_kernel),
        reflected_phase=phase,
        tolerance=tolerance,
        scattered=scattered,
        evolved=evolved,
    )
