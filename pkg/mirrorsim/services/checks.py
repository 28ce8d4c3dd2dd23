"""
File: checks.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.

Pass/fail gates run by `mirrorsim check` and POST /check: engines against
the independent oracles, plus the equivalence reports of a scenario run.
"""

import math

import numpy as np

from mirrorsim.core.logger import get_logger
from mirrorsim.oracle import (
    dense_unitary_oracle,
    gaussian_translation_oracle,
    rotation_solution_oracle,
)
from mirrorsim.physics.field_state import band_flat_packet, gaussian_packet
from mirrorsim.physics.grid import make_grid, natural_units
from mirrorsim.physics.kernels import KernelSpec
from mirrorsim.physics.mirror import (
    Solver,
    box_separable_kernel,
    evolve_mirror,
    gaussian_separable_kernel,
    scattering_equivalence_check,
    scattering_unitary,
)
from mirrorsim.physics.propagation import evolve_free
from mirrorsim.physics.transforms import to_position
from mirrorsim.schemas.records import GateResult
from mirrorsim.services.scenario_runner import RunResult

logger = get_logger(__name__)

UNITARY_EIGH_TOL = 1e-14
UNITARY_EXPM_TOL = 1e-13
ORACLE_EIGH_UNITARITY_TOL = 1e-14
ORACLE_EXPM_UNITARITY_TOL = 1e-12
ROTATION_TOL = 1e-14
TRANSLATION_TOL = 1e-10
RK4_TOL = 1e-8
FRACTION_TOL = 1e-8


def _gate(
    name: str, value: float, tolerance: float, detail: str = ""
) -> GateResult:
    return GateResult(
        name=name,
        passed=bool(value <= tolerance),
        value=value,
        tolerance=tolerance,
        detail=detail,
    )


def _random_xi(samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    magnitude = rng.uniform(0.0, math.pi, samples)
    phase = rng.uniform(0.0, 2.0 * math.pi, samples)
    return magnitude * np.exp(1j * phase)


def unitary_gates(samples: int = 1000, seed: int = 0) -> list[GateResult]:
    """U(Xi) against eigh and expm, plus unitarity of both oracles."""
    xi = _random_xi(samples, seed)
    ours = scattering_unitary(xi)
    eigh = np.stack([dense_unitary_oracle(z, "eigh") for z in xi])
    expm = np.stack([dense_unitary_oracle(z, "expm") for z in xi])
    identity = np.eye(2)

    def unitarity(u: np.ndarray) -> float:
        product = u @ np.conj(np.swapaxes(u, -1, -2))
        return float(np.max(np.abs(product - identity)))

    detail = f"{samples} random Xi"
    return [
        _gate(
            "unitary_vs_eigh",
            float(np.max(np.abs(ours - eigh))),
            UNITARY_EIGH_TOL,
            detail,
        ),
        _gate(
            "unitary_vs_expm",
            float(np.max(np.abs(ours - expm))),
            UNITARY_EXPM_TOL,
            detail,
        ),
        _gate(
            "oracle_unitarity_eigh", unitarity(eigh), ORACLE_EIGH_UNITARITY_TOL
        ),
        _gate(
            "oracle_unitarity_expm", unitarity(expm), ORACLE_EXPM_UNITARITY_TOL
        ),
    ]


def rotation_gate(samples: int = 1000, seed: int = 1) -> GateResult:
    """Purely imaginary Xi = i theta is the pairwise rotation."""
    rng = np.random.default_rng(seed)
    theta = rng.uniform(-math.pi, math.pi, samples)
    a_plus = rng.normal(size=samples) + 1j * rng.normal(size=samples)
    a_minus = rng.normal(size=samples) + 1j * rng.normal(size=samples)
    u = scattering_unitary(1j * theta)
    ours_plus = u[:, 0, 0] * a_plus + u[:, 0, 1] * a_minus
    ours_minus = u[:, 1, 0] * a_plus + u[:, 1, 1] * a_minus
    ref_plus, ref_minus = rotation_solution_oracle(a_plus, a_minus, theta)
    value = max(
        float(np.max(np.abs(ours_plus - ref_plus))),
        float(np.max(np.abs(ours_minus - ref_minus))),
    )
    return _gate("rotation_vs_oracle", value, ROTATION_TOL)


def translation_gate() -> GateResult:
    """Free flight of a Gaussian against the analytic translation."""
    grid = make_grid(512, 1.0)
    x0, sigma, k0, amplitude, t = -50.0, 10.0, 0.3, 1.0 + 0.5j, 37.25
    field = gaussian_packet(grid, 1, "H", x0, sigma, k0, amplitude)
    evolved = to_position(evolve_free(field, t), KernelSpec.flat())
    expected = gaussian_translation_oracle(
        grid.x_values, grid.length, x0, sigma, k0, amplitude, t
    )
    value = float(np.max(np.abs(evolved.channel(1, "H") - expected)))
    return _gate("gaussian_translation", value, TRANSLATION_TOL)


def rk4_gate(substeps_per_cell: int = 128) -> GateResult:
    """RK4 mirror dynamics against the exact rotation for a point mirror."""
    grid = make_grid(256, 1.0)
    units = natural_units()
    kernel = box_separable_kernel(grid, math.pi / 3, 1, units)
    field = to_position(
        band_flat_packet(grid, 1, "H", -5.0, 1.0), KernelSpec.flat()
    )
    duration = 10.0
    steps = int(duration) * substeps_per_cell
    rk4 = evolve_mirror(
        field, kernel, 0.0, duration, steps, units, solver=Solver.RK4
    )
    exact = evolve_mirror(
        field, kernel, 0.0, duration, units=units, solver=Solver.ROTATION
    )
    value = float(np.max(np.abs(rk4.data - exact.data)))
    return _gate(
        "rk4_vs_rotation", value, RK4_TOL, f"{steps} steps, theta = pi/3"
    )


def beamsplitter_gates() -> list[GateResult]:
    """Both engines on a pi/4 mirror: agreement and a 50/50 split."""
    grid = make_grid(512, 0.5)
    units = natural_units()
    kernel = gaussian_separable_kernel(grid, math.pi / 4, 1.0, units)
    field = gaussian_packet(grid, 1, "H", -40.0, 4.0, 0.0, 1.0)
    report = scattering_equivalence_check(field, kernel, 80.0, units)
    return [
        GateResult(
            name="equivalence_pi_over_4",
            passed=report.passed,
            value=report.max_discrepancy,
            tolerance=report.tolerance,
        ),
        _gate(
            "split_scattering_pi_over_4",
            abs(report.left_fraction_scattering - 0.5),
            FRACTION_TOL,
        ),
        _gate(
            "split_mirror_pi_over_4",
            abs(report.left_fraction_mirror - 0.5),
            FRACTION_TOL,
        ),
    ]


def run_oracle_gates() -> list[GateResult]:
    """All built-in gates, in a fixed order."""
    gates = [
        *unitary_gates(),
        rotation_gate(),
        translation_gate(),
        rk4_gate(),
        *beamsplitter_gates(),
    ]
    failed = [gate.name for gate in gates if not gate.passed]
    if failed:
        logger.warning(f"Gates failed: {', '.join(failed)}")
    else:
        logger.info(f"All {len(gates)} oracle gates passed")
    return gates


def scenario_gates(result: RunResult) -> list[GateResult]:
    """One gate per equivalence report of a scenario run."""
    return [
        GateResult(
            name=f"{result.scenario.name}:{label}",
            passed=report.passed,
            value=report.max_discrepancy,
            tolerance=report.tolerance,
            detail="" if report.tolerance is not None else "dense kernel",
        )
        for label, report in result.reports.items()
    ]
