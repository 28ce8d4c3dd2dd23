"""
File: test_scenario.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

import math

from pydantic import ValidationError
import pytest

from mirrorsim.physics import KernelSpec, Solver
from mirrorsim.schemas import Scenario
from mirrorsim.schemas.scenario import (
    DenseMirrorSpec,
    GaussianPacketSpec,
    MirrorStep,
    RepresentationSpec,
    SeparableMirrorSpec,
)

GRID = {"n_points": 64, "dx": 1.0}


@pytest.mark.unit
def test_minimal_scenario_defaults() -> None:
    """Units, representation, packets, schedule and output default."""
    scenario = Scenario.model_validate({"name": "minimal", "grid": GRID})
    assert scenario.units.hbar == 1.0
    assert scenario.representation.kernel() == KernelSpec.sqrt_abs_k()
    assert scenario.packets == []
    assert scenario.mirror is None
    assert scenario.output.states == "ndjson"
    assert scenario.grid.build().n_points == 64


@pytest.mark.unit
def test_packets_are_discriminated_by_type() -> None:
    """type selects the packet model."""
    scenario = Scenario.model_validate(
        {
            "name": "packets",
            "grid": GRID,
            "packets": [
                {
                    "type": "gaussian",
                    "direction": -1,
                    "polarization": "V",
                    "center_x": 10.0,
                    "width": 4.0,
                    "amplitude_im": 2.0,
                },
                {"type": "band_flat", "direction": 1, "center_x": 0.0},
            ],
        }
    )
    first, second = scenario.packets
    assert isinstance(first, GaussianPacketSpec)
    assert first.amplitude == complex(1.0, 2.0)
    assert second.type == "band_flat"
    assert second.polarization == "H"


@pytest.mark.unit
@pytest.mark.parametrize(
    "packet",
    [
        {"type": "gaussian", "direction": 0, "center_x": 0.0, "width": 4.0},
        {"type": "gaussian", "direction": 1, "center_x": 0.0, "width": -4.0},
        {"type": "gaussian", "direction": 1, "center_x": 0.0},
        {"type": "sinc", "direction": 1, "center_x": 0.0},
        {"type": "band_flat", "direction": 1, "center_x": 0.0, "pol": "H"},
    ],
)
def test_invalid_packets(packet: dict) -> None:
    """Directions, widths, types and unknown keys are checked."""
    with pytest.raises(ValidationError):
        Scenario.model_validate(
            {"name": "bad", "grid": GRID, "packets": [packet]}
        )


@pytest.mark.unit
@pytest.mark.parametrize(
    "section",
    [
        {"n_points": 63, "dx": 1.0},
        {"n_points": 2, "dx": 1.0},
        {"n_points": 64, "dx": 0.0},
    ],
)
def test_invalid_grid(section: dict) -> None:
    """Odd or tiny lattices and non-positive spacings are refused."""
    with pytest.raises(ValidationError):
        Scenario.model_validate({"name": "bad", "grid": section})


@pytest.mark.unit
def test_scenario_names_are_file_safe() -> None:
    """Names end up in output paths."""
    with pytest.raises(ValidationError):
        Scenario.model_validate({"name": "../escape", "grid": GRID})


@pytest.mark.unit
def test_separable_mirror_profiles_need_parameters() -> None:
    """Each profile requires its own fields."""
    with pytest.raises(ValidationError):
        SeparableMirrorSpec(type="separable", profile="gaussian", total_angle=1)
    with pytest.raises(ValidationError):
        SeparableMirrorSpec(type="separable", profile="box")
    with pytest.raises(ValidationError):
        SeparableMirrorSpec(type="separable", profile="csv")
    box = SeparableMirrorSpec(type="separable", profile="box", total_angle=1)
    assert box.cells == 1


@pytest.mark.unit
def test_dense_mirror_profiles_need_parameters() -> None:
    """Blob mirrors need strength and width; binary ones a file."""
    with pytest.raises(ValidationError):
        DenseMirrorSpec(type="dense", profile="gaussian_blob", strength=1.0)
    with pytest.raises(ValidationError):
        DenseMirrorSpec(type="dense", profile="binary")


@pytest.mark.unit
def test_representation_section() -> None:
    """The positive-only kernel keeps its fixed phase."""
    spec = RepresentationSpec(kind="standard_positive_only")
    assert spec.kernel().phase == pytest.approx(math.pi / 2)
    with pytest.raises(ValidationError):
        RepresentationSpec(kind="standard_positive_only", phase=1.0)
    assert RepresentationSpec(kind="flat", phase=0.3).kernel() == (
        KernelSpec.flat(0.3)
    )


@pytest.mark.unit
def test_schedule_steps_are_discriminated_by_action() -> None:
    """action selects the step model; mirror steps default to auto."""
    scenario = Scenario.model_validate(
        {
            "name": "steps",
            "grid": GRID,
            "mirror": {
                "type": "separable",
                "profile": "box",
                "total_angle": 1.0,
            },
            "schedule": [
                {"action": "free", "duration": 1.0},
                {"action": "mirror", "duration": 2.0, "steps": 40},
                {"action": "check", "horizon": 5.0},
            ],
        }
    )
    step = scenario.schedule[1]
    assert isinstance(step, MirrorStep)
    assert step.solver is Solver.AUTO
    assert scenario.schedule[2].label == "check"  # type: ignore[union-attr]
    assert scenario.reference_errors() == []


@pytest.mark.unit
def test_reference_errors_locate_problems() -> None:
    """Missing mirrors and duplicate labels are located by index."""
    scenario = Scenario.model_validate(
        {
            "name": "refs",
            "grid": GRID,
            "schedule": [
                {"action": "snapshot", "label": "a"},
                {"action": "scatter", "duration": 1.0},
                {"action": "snapshot", "label": "a"},
            ],
        }
    )
    locations = [loc for loc, _ in scenario.reference_errors()]
    assert locations == [("schedule", 1, "action"), ("schedule", 2, "label")]


@pytest.mark.unit
def test_scenario_is_immutable() -> None:
    """Scenario documents are frozen."""
    scenario = Scenario.model_validate({"name": "frozen", "grid": GRID})
    with pytest.raises(ValidationError):
        scenario.name = "other"  # type: ignore[misc]
