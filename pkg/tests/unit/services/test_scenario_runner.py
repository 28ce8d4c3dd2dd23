"""
File: test_scenario_runner.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

import logging
import math
from pathlib import Path

import numpy as np
import pytest

from mirrorsim.config import Settings
from mirrorsim.core import (
    ScatteringWindowError,
    ScenarioError,
    StrictModeError,
)
from mirrorsim.physics import KernelSpec, box_separable_kernel, make_grid
from mirrorsim.physics.transforms import to_position
from mirrorsim.services import (
    ScenarioRunner,
    bundled_scenarios,
    load_scenario,
    parse_scenario,
    write_outputs,
)
from mirrorsim.services.serialization import write_separable_kernel_csv

SMALL = """\
name = "small"

[grid]
n_points = 256
dx = 0.5

[[packets]]
type = "gaussian"
direction = 1
center_x = -30.0
width = 3.0
carrier_k = 2.0

[mirror]
type = "separable"
profile = "gaussian"
total_angle = 0.5
width = 1.0
"""


def _with_schedule(*steps: str, base: str = SMALL) -> str:
    return base + "".join(f"\n[[schedule]]\n{step}\n" for step in steps)


def _runner(strict: bool = False, threads: int = 1) -> ScenarioRunner:
    return ScenarioRunner(settings=Settings(), threads=threads, strict=strict)


# Loading


@pytest.mark.unit
def test_error_points_at_offending_line() -> None:
    """A bad value inside the second schedule entry names its line."""
    text = "\n".join(
        [
            'name = "bad"',
            "",
            "[grid]",
            "n_points = 64",
            "dx = 1.0",
            "",
            "[[schedule]]",
            'action = "snapshot"',
            'label = "a"',
            "",
            "[[schedule]]",
            'action = "free"',
            "duration = -1.0",
        ]
    )
    with pytest.raises(ScenarioError) as exc_info:
        parse_scenario(text, "bad.toml")
    assert "bad.toml:13:" in exc_info.value.detail
    assert exc_info.value.exit_code == 2
    assert exc_info.value.error_code == "SCENARIO_SCHEMA"


@pytest.mark.unit
def test_scatter_without_mirror_names_the_action_line() -> None:
    """Schedule steps that need a mirror fail when none is declared."""
    text = "\n".join(
        [
            'name = "nomirror"',
            "[grid]",
            "n_points = 64",
            "dx = 1.0",
            "[[schedule]]",
            'action = "scatter"',
            "duration = 10.0",
        ]
    )
    with pytest.raises(ScenarioError) as exc_info:
        parse_scenario(text, "nomirror.toml")
    assert exc_info.value.detail.startswith("nomirror.toml:6:")
    assert "needs a [mirror] section" in exc_info.value.detail


@pytest.mark.unit
def test_unknown_key_and_odd_grid_are_both_reported() -> None:
    """Every problem gets its own line-anchored message."""
    text = '[grid]\nn_points = 63\ndx = 1.0\ncolour = "red"\n'
    with pytest.raises(ScenarioError) as exc_info:
        parse_scenario(text, "two.toml")
    detail = exc_info.value.detail
    assert "two.toml:2: grid.n_points" in detail
    assert "two.toml:4: grid.colour" in detail
    assert "name" in detail
    assert len(detail.splitlines()) == 3


@pytest.mark.unit
def test_toml_syntax_error() -> None:
    """Malformed TOML is a scenario error too."""
    with pytest.raises(ScenarioError, match="broken.toml"):
        parse_scenario("[grid\nn_points = 4", "broken.toml")


@pytest.mark.unit
def test_duplicate_and_reserved_labels() -> None:
    """Labels name output files and must be unique."""
    text = _with_schedule(
        'action = "snapshot"\nlabel = "a"',
        'action = "snapshot"\nlabel = "a"',
        'action = "check"\nhorizon = 60.0\nlabel = "ledger"',
    )
    with pytest.raises(ScenarioError) as exc_info:
        parse_scenario(text)
    detail = exc_info.value.detail
    assert "duplicate label 'a'" in detail
    assert "collides with an output file" in detail


@pytest.mark.unit
def test_bundled_scenarios_are_listed_and_valid() -> None:
    """Every shipped scenario parses."""
    names = bundled_scenarios()
    assert names == [
        "beamsplitter_pi_over_4",
        "reflect_pi_over_2",
        "two_sided_incidence",
    ]
    for name in names:
        scenario, _ = load_scenario(name)
        assert scenario.name == name


@pytest.mark.unit
def test_unknown_scenario_name() -> None:
    """Names that are neither files nor bundled raise."""
    with pytest.raises(ScenarioError, match="no such file or bundled"):
        load_scenario("does_not_exist")


@pytest.mark.unit
def test_load_scenario_from_path(tmp_path: Path) -> None:
    """Scenario files resolve relative paths against their directory."""
    path = tmp_path / "small.toml"
    path.write_text(SMALL)
    scenario, base_dir = load_scenario(path)
    assert scenario.grid.n_points == 256
    assert base_dir == tmp_path


# Running


@pytest.mark.unit
def test_empty_schedule_snapshots_initial_state() -> None:
    """Without a schedule the initial state is recorded once."""
    result = _runner().run(parse_scenario(SMALL))
    assert [s.label for s in result.snapshots] == ["initial"]
    assert result.snapshots[0].profiles is not None
    assert [row.action for row in result.ledger] == ["initial", "snapshot"]
    assert result.time == 0.0
    assert result.spectrum is not None


@pytest.mark.unit
def test_vacuum_scenario() -> None:
    """No packets means zero energy and zero fractions."""
    text = 'name = "empty"\n[grid]\nn_points = 64\ndx = 1.0\n'
    result = _runner().run(parse_scenario(text))
    row = result.ledger[-1]
    assert row.energy_total == 0.0
    assert row.left_fraction == 0.0


@pytest.mark.unit
def test_scatter_step_reflects_sin_squared() -> None:
    """The ledger records sin^2 theta moving left after a scatter step."""
    text = _with_schedule('action = "scatter"\nduration = 60.0')
    result = _runner().run(parse_scenario(text))
    first, last = result.ledger[0], result.ledger[-1]
    assert first.right_fraction == pytest.approx(1.0)
    assert last.left_fraction == pytest.approx(math.sin(0.5) ** 2, abs=1e-10)
    assert last.energy_total == pytest.approx(first.energy_total, rel=1e-12)
    assert last.time == 60.0


@pytest.mark.unit
def test_mirror_step_matches_scatter_step() -> None:
    """Time-resolved and closed-form steps land on the same state."""
    runner = _runner()
    scatter = runner.run(
        parse_scenario(_with_schedule('action = "scatter"\nduration = 60.0'))
    )
    mirror = runner.run(
        parse_scenario(_with_schedule('action = "mirror"\nduration = 60.0'))
    )
    flat = KernelSpec.flat()
    np.testing.assert_allclose(
        to_position(mirror.final_state, flat).data,
        to_position(scatter.final_state, flat).data,
        atol=1e-10,
    )


@pytest.mark.unit
def test_scatter_needs_incoming_light() -> None:
    """Light that has already passed the mirror cannot be scattered."""
    text = _with_schedule(
        'action = "free"\nduration = 60.0',
        'action = "scatter"\nduration = 60.0',
    )
    with pytest.raises(ScatteringWindowError):
        _runner().run(parse_scenario(text))


@pytest.mark.unit
def test_check_step_reports_equivalence() -> None:
    """Check steps compare both engines without changing the state."""
    text = _with_schedule('action = "check"\nhorizon = 60.0\nlabel = "cmp"')
    result = _runner().run(parse_scenario(text))
    report = result.reports["cmp"]
    assert report.passed
    assert report.left_fraction_scattering == pytest.approx(
        math.sin(0.5) ** 2, abs=1e-10
    )
    assert result.ledger[-1].right_fraction == pytest.approx(1.0)


@pytest.mark.unit
def test_thread_count_does_not_change_results() -> None:
    """Snapshot profiles are identical for any worker count."""
    steps: list[str] = []
    for i in range(4):
        steps.append(f'action = "snapshot"\nlabel = "s{i}"')
        steps.append('action = "free"\nduration = 3.0')
    scenario = parse_scenario(_with_schedule(*steps))
    one = _runner(threads=1).run(scenario)
    four = _runner(threads=4).run(scenario)
    assert [s.label for s in four.snapshots] == ["s0", "s1", "s2", "s3"]
    for a, b in zip(one.snapshots, four.snapshots, strict=True):
        assert a.profiles is not None and b.profiles is not None
        np.testing.assert_array_equal(a.profiles.E_y, b.profiles.E_y)


@pytest.mark.unit
def test_band_edge_warning_and_strict_mode(
    caplog: pytest.LogCaptureFixture,
) -> None:
    """A band-flat packet fills the band edge."""
    text = "\n".join(
        [
            'name = "edge"',
            "[grid]",
            "n_points = 64",
            "dx = 1.0",
            "[[packets]]",
            'type = "band_flat"',
            "direction = 1",
            "center_x = 0.0",
        ]
    )
    scenario = parse_scenario(text)
    with caplog.at_level(logging.WARNING):
        _runner().run(scenario)
    codes = {getattr(r, "event", {}).get("code") for r in caplog.records}
    assert "BAND_EDGE" in codes
    assert "WRAP_AROUND" not in codes
    with pytest.raises(StrictModeError, match="BAND_EDGE"):
        _runner(strict=True).run(scenario)


@pytest.mark.unit
def test_wrap_around_warning(caplog: pytest.LogCaptureFixture) -> None:
    """Fields near the periodic boundary are reported."""
    text = _with_schedule('action = "free"\nduration = 40.0')
    with caplog.at_level(logging.WARNING):
        _runner().run(parse_scenario(text.replace("-30.0", "30.0")))
    events = [getattr(r, "event", {}) for r in caplog.records]
    assert {"code": "WRAP_AROUND", "action": "free"} in events


@pytest.mark.unit
def test_csv_mirror_relative_to_scenario(tmp_path: Path) -> None:
    """Mirror files are read relative to the scenario directory."""
    grid = make_grid(256, 0.5)
    write_separable_kernel_csv(
        box_separable_kernel(grid, 0.5, 2), tmp_path / "mirror.csv"
    )
    text = SMALL.replace(
        'profile = "gaussian"\ntotal_angle = 0.5\nwidth = 1.0',
        'profile = "csv"\nfile = "mirror.csv"',
    )
    path = tmp_path / "csv.toml"
    scatter = 'action = "scatter"\nduration = 60.0'
    path.write_text(_with_schedule(scatter, base=text))
    scenario, base_dir = load_scenario(path)
    result = _runner().run(scenario, base_dir)
    assert result.ledger[-1].left_fraction == pytest.approx(
        math.sin(0.5) ** 2, abs=1e-10
    )


@pytest.mark.unit
def test_mirror_file_on_other_lattice(tmp_path: Path) -> None:
    """The mirror file must share the [grid] lattice."""
    write_separable_kernel_csv(
        box_separable_kernel(make_grid(128, 0.5), 0.5, 2),
        tmp_path / "mirror.csv",
    )
    text = SMALL.replace(
        'profile = "gaussian"\ntotal_angle = 0.5\nwidth = 1.0',
        'profile = "csv"\nfile = "mirror.csv"',
    )
    with pytest.raises(ScenarioError, match="differs from"):
        _runner().run(parse_scenario(text), tmp_path)


@pytest.mark.unit
def test_write_outputs(tmp_path: Path) -> None:
    """Ledger, profiles, states, spectrum and reports are written."""
    text = _with_schedule(
        'action = "snapshot"\nlabel = "before"',
        'action = "check"\nhorizon = 60.0\nlabel = "cmp"',
        'action = "scatter"\nduration = 60.0',
    )
    result = _runner().run(parse_scenario(text))
    written = write_outputs(result, tmp_path / "out")
    assert [p.name for p in written] == [
        "ledger.csv",
        "profiles_before.csv",
        "state_before.ndjson",
        "spectrum.csv",
        "cmp.csv",
    ]
    assert all(p.is_file() for p in written)


@pytest.mark.unit
def test_output_section_switches_files_off(tmp_path: Path) -> None:
    """[output] controls which files appear."""
    text = _with_schedule(
        'action = "snapshot"\nlabel = "only"',
        base=SMALL
        + "\n[output]\nprofiles = false\nstates = \"binary\"\n"
        + "spectrum = false\nledger = false\n",
    )
    result = _runner().run(parse_scenario(text))
    written = write_outputs(result, tmp_path)
    assert [p.name for p in written] == ["state_only.bin"]
