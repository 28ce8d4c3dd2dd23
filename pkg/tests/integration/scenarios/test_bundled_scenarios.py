"""
File: test_bundled_scenarios.py
Project: mirrorsim
Created: Saturday, 17th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

import math
from pathlib import Path

import numpy as np
import pytest

from mirrorsim.config import Settings
from mirrorsim.services import ScenarioRunner, load_scenario, write_outputs


def _runner() -> ScenarioRunner:
    return ScenarioRunner(settings=Settings(), threads=2, strict=True)


@pytest.mark.integration
def test_reflect_pi_over_2() -> None:
    """All the energy ends up left-moving and is conserved."""
    scenario, base_dir = load_scenario("reflect_pi_over_2")
    result = _runner().run(scenario, base_dir)
    first, last = result.ledger[0], result.ledger[-1]
    assert first.right_fraction == pytest.approx(1.0)
    assert last.left_fraction == pytest.approx(1.0, abs=1e-8)
    assert last.energy_total == pytest.approx(first.energy_total, rel=1e-12)
    assert result.time == 120.0
    assert [s.label for s in result.snapshots] == ["incident", "reflected"]


@pytest.mark.integration
def test_beamsplitter_pi_over_4(tmp_path: Path) -> None:
    """Half of the energy is reflected and both engines agree."""
    scenario, base_dir = load_scenario("beamsplitter_pi_over_4")
    result = _runner().run(scenario, base_dir)
    assert result.ledger[-1].left_fraction == pytest.approx(
        math.sin(math.pi / 4) ** 2, abs=1e-8
    )
    report = result.reports["check"]
    assert report.passed
    assert report.left_fraction_scattering == pytest.approx(0.5, abs=1e-8)
    written = write_outputs(result, tmp_path)
    assert tmp_path / "check.csv" in written
    assert tmp_path / "profiles_split.csv" in written


@pytest.mark.integration
def test_two_sided_incidence_is_linear() -> None:
    """Packets from both sides scatter independently."""
    scenario, base_dir = load_scenario("two_sided_incidence")
    runner = _runner()
    both = runner.run(scenario, base_dir)
    singles = [
        runner.run(scenario.model_copy(update={"packets": [p]}), base_dir)
        for p in scenario.packets
    ]
    np.testing.assert_allclose(
        both.final_state.data,
        singles[0].final_state.data + singles[1].final_state.data,
        atol=1e-10,
    )
    for name in ("energy_total", "energy_left", "energy_right"):
        assert getattr(both.ledger[-1], name) == pytest.approx(
            sum(getattr(r.ledger[-1], name) for r in singles), rel=1e-10
        )
    assert both.ledger[-1].left_fraction == pytest.approx(0.5, abs=1e-8)


@pytest.mark.integration
def test_two_sided_same_polarisation_superposes_amplitudes() -> None:
    """Co-polarised packets share output channels and still add linearly."""
    scenario, base_dir = load_scenario("two_sided_incidence")
    left, right = scenario.packets
    packets = [left, right.model_copy(update={"polarization": "H"})]
    runner = _runner()
    variant = scenario.model_copy(update={"packets": packets})
    both = runner.run(variant, base_dir)
    singles = [
        runner.run(scenario.model_copy(update={"packets": [p]}), base_dir)
        for p in packets
    ]
    first, second = (r.final_state.data[0, 0] for r in singles)
    overlap = abs(np.vdot(first, second))
    assert overlap > 0.1 * np.linalg.norm(first) * np.linalg.norm(second)
    np.testing.assert_allclose(
        both.final_state.data,
        singles[0].final_state.data + singles[1].final_state.data,
        atol=1e-10,
    )
    assert both.ledger[-1].energy_total == pytest.approx(
        both.ledger[0].energy_total, rel=1e-10
    )
