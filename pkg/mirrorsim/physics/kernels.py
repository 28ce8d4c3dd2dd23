"""
File: kernels.py
Project: mirrorsim
Created: Tuesday, 13th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from dataclasses import dataclass
from enum import StrEnum
import math

import numpy as np

from mirrorsim.core.exceptions import RepresentationError

TWO_PI = 2.0 * math.pi


class KernelKind(StrEnum):
    """Representation kernels f(k)."""

    FLAT = "flat"
    SQRT_ABS_K = "sqrt_abs_k"
    STANDARD_POSITIVE_ONLY = "standard_positive_only"


@dataclass(frozen=True)
class KernelSpec:
    """
    Kernel f(k) of the position/momentum transform plus its phase.

    Flat gives the truly-local operators, SqrtAbsK the field-coupled
    ones, and StandardPositiveOnly the textbook positive-frequency
    limit (phase fixed to pi/2).
    """

    kind: KernelKind
    phase: float = 0.0

    def __post_init__(self) -> None:
        """Normalise the phase into [0, 2 pi)."""
        object.__setattr__(self, "kind", KernelKind(self.kind))
        if not math.isfinite(self.phase):
            raise RepresentationError(f"kernel phase must be finite: {self}")
        phase = math.fmod(self.phase, TWO_PI)
        if phase < 0.0:
            phase += TWO_PI
        if self.kind is KernelKind.STANDARD_POSITIVE_ONLY and not math.isclose(
            phase, math.pi / 2, abs_tol=1e-12
        ):
            raise RepresentationError(
                "standard_positive_only kernel has its phase fixed to pi/2"
            )
        object.__setattr__(self, "phase", phase)

    @classmethod
    def flat(cls, phase: float = 0.0) -> "KernelSpec":
        """Truly-local kernel 1/sqrt(2 pi) e^{i sgn(k) phase}."""
        return cls(KernelKind.FLAT, phase)

    @classmethod
    def sqrt_abs_k(cls, phase: float = 0.0) -> "KernelSpec":
        """Kernel sqrt(|k|/2 pi) e^{i sgn(k) phase}."""
        return cls(KernelKind.SQRT_ABS_K, phase)

    @classmethod
    def standard_positive_only(cls) -> "KernelSpec":
        """Positive-frequency kernel i sqrt(k/2 pi) for k > 0, else 0."""
        return cls(KernelKind.STANDARD_POSITIVE_ONLY, math.pi / 2)

    @property
    def invertible(self) -> bool:
        """Whether the inverse transform exists."""
        return self.kind is not KernelKind.STANDARD_POSITIVE_ONLY

    def describe(self) -> str:
        """Short tag used in file headers."""
        return f"{self.kind.value}(phase={self.phase:.17g})"


def sign(k: np.ndarray) -> np.ndarray:
    """sgn(k) with sgn(0) = 0."""
    return np.sign(k)


def kernel_values(kernel: KernelSpec, k: np.ndarray) -> np.ndarray:
    """
    Sample f(k) pointwise.

    Args:
        kernel: Kernel choice.
        k: Wavenumbers (usually Grid.k_values).

    Returns:
        np.ndarray: Complex samples f(k).
    """
    k = np.asarray(k, dtype=float)
    if kernel.kind is KernelKind.FLAT:
        return np.exp(1j * sign(k) * kernel.phase) / math.sqrt(TWO_PI)
    if kernel.kind is KernelKind.SQRT_ABS_K:
        return np.sqrt(np.abs(k) / TWO_PI) * np.exp(
            1j * sign(k) * kernel.phase
        )
    return np.where(k > 0.0, 1j * np.sqrt(np.clip(k, 0.0, None) / TWO_PI), 0)
