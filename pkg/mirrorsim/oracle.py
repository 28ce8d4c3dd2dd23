"""
File: oracle.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.

Independent references for the engines. Only numpy and scipy are used
here; nothing is shared with mirrorsim.physics.
"""

from typing import Literal

import numpy as np
from scipy.linalg import expm


def dense_unitary_oracle(
    xi: complex, method: Literal["expm", "eigh"] = "expm"
) -> np.ndarray:
    """
    exp(-i G) for G = [[0, Xi*], [Xi, 0]].

    Args:
        xi: Complex scattering angle.
        method: "expm" (scaling and squaring with Pade) or "eigh"
            (eigen-decomposition of the Hermitian generator).

    Returns:
        np.ndarray: 2 x 2 unitary.
    """
    generator = np.array(
        [[0.0, np.conj(xi)], [xi, 0.0]], dtype=np.complex128
    )
    if method == "expm":
        return expm(-1j * generator)
    if method == "eigh":
        w, v = np.linalg.eigh(generator)
        return (v * np.exp(-1j * w)) @ v.conj().T
    raise ValueError(f"unknown method {method!r}")


def gaussian_translation_oracle(
    x: np.ndarray,
    length: float,
    x0: float,
    sigma: float,
    k0: float,
    amplitude: complex,
    t: float,
    s: int = 1,
    c: float = 1.0,
) -> np.ndarray:
    """
    Analytic Flat-kernel (phase 0) profile of a translated Gaussian.

    a(x, t) = amplitude (sigma^2/pi)^(1/4) / sigma e^{i s k0 d}
    e^{-d^2 / 2 sigma^2} with d = x - x0 - s c t folded onto the
    periodic box [-L/2, L/2).
    """
    d = np.asarray(x, dtype=float) - x0 - s * c * t
    d = np.mod(d + 0.5 * length, length) - 0.5 * length
    norm = (sigma**2 / np.pi) ** 0.25 / sigma
    return (
        amplitude
        * norm
        * np.exp(1j * s * k0 * d)
        * np.exp(-0.5 * (d / sigma) ** 2)
    )


def rotation_solution_oracle(
    a_plus_0: complex | np.ndarray,
    a_minus_0: complex | np.ndarray,
    theta: float | np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """[[cos, -sin], [sin, cos]] applied to (A_1(x), A_-1(-x))."""
    cos, sin = np.cos(theta), np.sin(theta)
    return (
        cos * np.asarray(a_plus_0) - sin * np.asarray(a_minus_0),
        sin * np.asarray(a_plus_0) + cos * np.asarray(a_minus_0),
    )


def brute_force_xi(
    omega_matrix: np.ndarray,
    x: np.ndarray,
    k: np.ndarray,
    dx: float,
    c: float = 1.0,
) -> np.ndarray:
    """O(n^3) double sum (i/c) sum Omega_{jj'} e^{i k (x_j + x_j')} dx^2."""
    u = x[:, None] + x[None, :]
    return np.array(
        [
            1j / c * np.sum(omega_matrix * np.exp(1j * km * u)) * dx**2
            for km in k
        ]
    )
