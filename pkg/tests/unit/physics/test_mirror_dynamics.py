"""
File: test_mirror_dynamics.py
Project: mirrorsim
Created: Thursday, 15th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

import logging
import math

import numpy as np
import pytest

from mirrorsim.core import (
    KernelError,
    RepresentationError,
    StepCountError,
    StrictModeError,
    strict_warnings,
)
from mirrorsim.oracle import rotation_solution_oracle
from mirrorsim.physics import (
    AmplitudeField,
    Grid,
    KernelSpec,
    SeparableKernel,
    Solver,
    band_flat_packet,
    box_separable_kernel,
    energy_by_direction,
    evolve_mirror,
    gaussian_blob_kernel,
    gaussian_packet,
    gaussian_separable_kernel,
    make_grid,
    make_units,
    superpose,
    to_circular,
    to_momentum,
    to_position,
    xi_profile,
)
from mirrorsim.physics.mirror import (
    minimum_steps,
    rotation_angles,
    suggest_steps,
)

FLAT = KernelSpec.flat()


def _point_mirror(theta: float) -> tuple[AmplitudeField, SeparableKernel]:
    grid = make_grid(64, 1.0)
    field = to_position(band_flat_packet(grid, 1, "H", -5.0, 1.0), FLAT)
    return field, box_separable_kernel(grid, theta, 1)


@pytest.mark.unit
def test_rotation_angles_follow_characteristics() -> None:
    """Sites whose characteristic misses the mirror get exactly zero."""
    grid = make_grid(256, 0.5)
    kernel = gaussian_separable_kernel(grid, 1.1, 2.0)
    theta = rotation_angles(kernel, 0.0, 40.0)
    x = grid.x_values
    assert np.all(theta[x > kernel.outer_extent] == 0.0)
    assert np.all(theta[x < -40.0 - kernel.outer_extent] == 0.0)
    swept = (x < -kernel.outer_extent) & (x > -40.0 + kernel.outer_extent)
    np.testing.assert_allclose(theta[swept], 1.1, rtol=1e-12)
    np.testing.assert_allclose(
        xi_profile(kernel, x, 40.0), theta, atol=1e-15
    )
    assert isinstance(xi_profile(kernel, -20.0, 40.0), float)


@pytest.mark.unit
def test_rotation_angles_scale_with_c() -> None:
    """A slower light speed stretches the crossing time, not the angle."""
    grid = make_grid(256, 0.5)
    units = make_units(epsilon=4.0)
    kernel = gaussian_separable_kernel(grid, 0.8, 2.0, units)
    theta = rotation_angles(kernel, 0.0, 80.0, units)
    assert theta[grid.index_of(-20.0)] == pytest.approx(0.8, rel=1e-12)


@pytest.mark.unit
def test_rotation_solver_matches_oracle() -> None:
    """Each right-mover rotates into its mirror-partner left-mover."""
    grid = make_grid(128, 1.0)
    kernel = gaussian_separable_kernel(grid, 0.6, 3.0)
    field = to_position(
        superpose(
            gaussian_packet(grid, 1, "H", -30.0, 4.0, 0.5, 1.0),
            gaussian_packet(grid, -1, "V", 25.0, 4.0, -0.3, 0.5j),
        ),
        FLAT,
    )
    out = to_circular(evolve_mirror(field, kernel, 0.0, 50.0))
    circ = to_circular(field)
    theta = rotation_angles(kernel, 0.0, 50.0)
    j = np.arange(1, grid.n_points)
    ref_plus, ref_minus = rotation_solution_oracle(
        circ.data[0][..., j], circ.data[1][..., grid.n_points - j], theta[j]
    )
    np.testing.assert_allclose(out.data[0][..., j], ref_plus, atol=1e-14)
    np.testing.assert_allclose(
        out.data[1][..., grid.n_points - j], ref_minus, atol=1e-14
    )


@pytest.mark.unit
def test_rk4_agrees_with_rotation() -> None:
    """RK4 converges onto the exact pairwise rotation."""
    grid = make_grid(256, 1.0)
    kernel = box_separable_kernel(grid, math.pi / 3, 1)
    field = to_position(band_flat_packet(grid, 1, "H", -5.0, 1.0), FLAT)
    rk4 = evolve_mirror(field, kernel, 0.0, 10.0, 1280, solver=Solver.RK4)
    exact = evolve_mirror(field, kernel, 0.0, 10.0, solver="rotation")
    np.testing.assert_allclose(rk4.data, exact.data, atol=1e-8)


@pytest.mark.unit
def test_rk4_is_fourth_order() -> None:
    """The RK4 error falls as h^4 with cell-aligned substeps."""
    field, kernel = _point_mirror(math.pi / 2)
    exact = evolve_mirror(field, kernel, 0.0, 10.0, solver=Solver.ROTATION)
    per_cell = np.array([16, 32, 64, 128])
    errors = []
    for m in per_cell:
        rk4 = evolve_mirror(
            field, kernel, 0.0, 10.0, int(10 * m), solver=Solver.RK4
        )
        errors.append(float(np.max(np.abs(rk4.data - exact.data))))
    slope = np.polyfit(np.log(1.0 / per_cell), np.log(errors), 1)[0]
    assert slope == pytest.approx(4.0, abs=0.2)


@pytest.mark.unit
def test_step_count_heuristic() -> None:
    """Steps scale with the coupling rate and with crossed cells."""
    _, kernel = _point_mirror(math.pi / 2)
    assert minimum_steps(kernel, 0.0, 10.0) == 158
    assert suggest_steps(kernel, 0.0, 10.0) == 160
    _, weak = _point_mirror(0.01)
    assert minimum_steps(weak, 0.0, 10.0) == 40


@pytest.mark.unit
def test_too_few_steps_raise() -> None:
    """RK4 refuses step counts below the heuristic."""
    field, kernel = _point_mirror(math.pi / 2)
    with pytest.raises(StepCountError):
        evolve_mirror(field, kernel, 0.0, 10.0, 100, solver=Solver.RK4)


@pytest.mark.unit
def test_misaligned_substeps_warn(caplog: pytest.LogCaptureFixture) -> None:
    """Substeps that straddle cell crossings are reported."""
    field, kernel = _point_mirror(math.pi / 2)
    with caplog.at_level(logging.WARNING):
        evolve_mirror(field, kernel, 0.0, 10.0, 163, solver=Solver.RK4)
    codes = [getattr(r, "event", {}).get("code") for r in caplog.records]
    assert "MISALIGNED_SUBSTEPS" in codes
    caplog.clear()
    with caplog.at_level(logging.WARNING):
        evolve_mirror(field, kernel, 0.0, 10.0, 160, solver=Solver.RK4)
    assert not caplog.records
    with strict_warnings(), pytest.raises(StrictModeError):
        evolve_mirror(field, kernel, 0.0, 10.0, 163, solver=Solver.RK4)


@pytest.mark.unit
@pytest.mark.parametrize("solver", [Solver.ROTATION, Solver.RK4])
def test_outgoing_light_is_untouched(solver: Solver) -> None:
    """Light already past the mirror never meets it again."""
    grid = make_grid(512, 0.5)
    kernel = gaussian_separable_kernel(grid, math.pi / 2, 2.0)
    field = to_position(
        superpose(
            gaussian_packet(grid, 1, "H", 40.0, 4.0, 1.0, 1.0),
            gaussian_packet(grid, -1, "V", -40.0, 4.0, 1.0, 1.0),
        ),
        FLAT,
    )
    out = evolve_mirror(field, kernel, 0.0, 100.0, solver=solver)
    np.testing.assert_allclose(out.data, field.data, atol=1e-12)


@pytest.mark.unit
def test_incoming_light_is_reflected() -> None:
    """A pi/2 mirror sends all incoming right-moving energy back."""
    grid = make_grid(512, 0.5)
    kernel = gaussian_separable_kernel(grid, math.pi / 2, 2.0)
    packet = gaussian_packet(grid, 1, "H", -40.0, 4.0, 1.0, 1.0)
    out = evolve_mirror(to_position(packet, FLAT), kernel, 0.0, 100.0)
    energies = energy_by_direction(to_momentum(out), KernelSpec.sqrt_abs_k())
    total = energies[1] + energies[-1]
    assert energies[-1] / total == pytest.approx(1.0, abs=1e-8)


@pytest.mark.unit
def test_dense_kernel_runs_rk4_only(grid: Grid) -> None:
    """The closed-form rotation needs a separable kernel."""
    kernel = gaussian_blob_kernel(grid, 0.2, 1.0)
    field = to_position(band_flat_packet(grid, 1, "H", -3.0, 1.0), FLAT)
    with pytest.raises(KernelError):
        evolve_mirror(field, kernel, 0.0, 5.0, solver=Solver.ROTATION)
    out = evolve_mirror(field, kernel, 0.0, 5.0)
    assert out.norm() == pytest.approx(field.norm(), rel=1e-6)
    assert out.direction_norms()[-1] > 0.0


@pytest.mark.unit
def test_dense_form_matches_separable_dynamics() -> None:
    """RK4 on Omega_j delta(x + x') stored densely equals the rotation."""
    grid = make_grid(64, 1.0)
    kernel = box_separable_kernel(grid, math.pi / 3, 1)
    field = to_position(band_flat_packet(grid, 1, "V", -5.0, 1.0), FLAT)
    exact = evolve_mirror(field, kernel, 0.0, 10.0)
    dense = evolve_mirror(
        field, kernel.to_dense(), 0.0, 10.0, 1280, solver=Solver.RK4
    )
    np.testing.assert_allclose(dense.data, exact.data, atol=1e-8)


@pytest.mark.unit
def test_trivial_windows_return_input(grid: Grid) -> None:
    """Empty windows and zero kernels are identities."""
    kernel = box_separable_kernel(grid, 1.0, 1)
    field = to_position(band_flat_packet(grid, 1, "H", -5.0, 1.0), FLAT)
    assert evolve_mirror(field, kernel, 3.0, 3.0) is field
    zero = box_separable_kernel(grid, 0.0, 1)
    assert evolve_mirror(field, zero, 0.0, 10.0) is field


@pytest.mark.unit
def test_mirror_dynamics_need_flat_position_input(grid: Grid) -> None:
    """Momentum or SqrtAbsK inputs are refused."""
    kernel = box_separable_kernel(grid, 1.0, 1)
    packet = band_flat_packet(grid, 1, "H", -5.0, 1.0)
    with pytest.raises(RepresentationError):
        evolve_mirror(packet, kernel, 0.0, 10.0)
    with pytest.raises(RepresentationError):
        evolve_mirror(
            to_position(packet, KernelSpec.sqrt_abs_k()), kernel, 0.0, 10.0
        )
    other = band_flat_packet(make_grid(64, 1.0), 1, "H", 0.0, 1.0)
    with pytest.raises(KernelError):
        evolve_mirror(to_position(other, FLAT), kernel, 0.0, 10.0)
