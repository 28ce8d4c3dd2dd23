"""
File: transforms.py
Project: mirrorsim
Created: Tuesday, 13th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

import numpy as np
from numpy import fft

from mirrorsim.core.exceptions import (
    NonInvertibleKernelError,
    RepresentationError,
)
from mirrorsim.physics.field_state import AmplitudeField, Representation
from mirrorsim.physics.grid import Grid
from mirrorsim.physics.kernels import (
    TWO_PI,
    KernelKind,
    KernelSpec,
    kernel_values,
    sign,
)

__all__ = [
    "KernelKind",
    "KernelSpec",
    "commutator_sine_integrand",
    "kernel_values",
    "overlap_kernel",
    "sign",
    "to_momentum",
    "to_position",
]


def _sum_plus(c: np.ndarray) -> np.ndarray:
    """sum_m c_m e^{+i k_m x_j} on centred lattices."""
    n = c.shape[-1]
    return n * fft.fftshift(
        fft.ifft(fft.ifftshift(c, axes=-1), axis=-1), axes=-1
    )


def _sum_minus(c: np.ndarray) -> np.ndarray:
    """sum_m c_m e^{-i k_m x_j} on centred lattices."""
    return fft.fftshift(fft.fft(fft.ifftshift(c, axes=-1), axis=-1), axes=-1)


def to_position(field: AmplitudeField, kernel: KernelSpec) -> AmplitudeField:
    """
    Momentum -> position with kernel f(k).

    a_s(x_j) = sum_m f(k_m) e^{i s k_m x_j} alpha_s(k_m) dk; the s = -1
    channels use the conjugate FFT direction.

    Raises:
        RepresentationError: If the field is not in momentum form.
    """
    field.require(Representation.MOMENTUM)
    grid = field.grid
    c = field.data * kernel_values(kernel, grid.k_values) * grid.dk
    data = np.stack([_sum_plus(c[0]), _sum_minus(c[1])])
    return field.with_data(
        data, representation=Representation.POSITION, kernel=kernel
    )


def _inverse_kernel(kernel: KernelSpec, grid: Grid) -> np.ndarray:
    f = kernel_values(kernel, grid.k_values)
    nonzero = np.abs(f) > 0.0
    # 1/f(0) = 0: the k = 0 mode of SqrtAbsK is a null space.
    return np.divide(1.0, f, out=np.zeros_like(f), where=nonzero)


def to_momentum(
    field: AmplitudeField, kernel: KernelSpec | None = None
) -> AmplitudeField:
    """
    Position -> momentum, the exact lattice inverse of to_position.

    alpha_s(k_m) = (1 / (2 pi f(k_m))) sum_j e^{-i s k_m x_j} a_s(x_j) dx

    Raises:
        RepresentationError: If the field is not in position form
            or was produced by a different kernel than `kernel`.
        NonInvertibleKernelError: For the positive-only kernel, whose
            inverse needs the missing negative frequencies.
    """
    field.require(Representation.POSITION)
    kernel = kernel or field.kernel
    assert kernel is not None
    if not kernel.invertible:
        raise NonInvertibleKernelError(
            "the positive-only kernel has no inverse transform: negative "
            "frequencies are required"
        )
    if kernel != field.kernel:
        raise RepresentationError(
            f"field was built with {field.kernel}, not {kernel}"
        )
    grid = field.grid
    sums = np.stack([_sum_minus(field.data[0]), _sum_plus(field.data[1])])
    data = sums * grid.dx * _inverse_kernel(kernel, grid) / TWO_PI
    return field.with_data(
        data, representation=Representation.MOMENTUM, kernel=None
    )


def overlap_kernel(
    kernel: KernelSpec, grid: Grid, s: int, separation: float
) -> complex:
    """
    Band-limited overlap / commutator kernel.

    sum_m |f(k_m)|^2 e^{i s k_m separation} dk. Flat gives the lattice
    delta (1/dx at zero separation), SqrtAbsK the spread
    (1/2 pi) int |k| e^{i s k d} dk.
    """
    k = grid.k_values
    weight = np.abs(kernel_values(kernel, k)) ** 2
    return complex(np.sum(weight * np.exp(1j * s * k * separation)) * grid.dk)


def commutator_sine_integrand(
    kernel: KernelSpec, grid: Grid, s: int, separation: float
) -> float:
    """
    sum_m |f(k_m)|^2 sin(s k_m separation) dk.

    For kernels with |f| even in k the +-k terms cancel and only the
    unpaired Nyquist mode k = -pi/dx remains.
    """
    return overlap_kernel(kernel, grid, s, separation).imag
