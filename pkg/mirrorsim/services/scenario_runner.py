"""
File: scenario_runner.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from importlib import resources
from pathlib import Path
import re
import tomllib
from typing import Any

from pydantic import ValidationError

from mirrorsim.config import Settings, get_settings
from mirrorsim.core.events import emit_warning, strict_warnings
from mirrorsim.core.exceptions import ScenarioError
from mirrorsim.core.logger import get_logger
from mirrorsim.physics.field_state import (
    AmplitudeField,
    band_flat_packet,
    gaussian_packet,
    superpose,
    to_linear,
    vacuum,
)
from mirrorsim.physics.grid import Grid, UnitSystem
from mirrorsim.physics.kernels import KernelKind, KernelSpec
from mirrorsim.physics.mirror import (
    EquivalenceReport,
    MirrorKernel,
    ScatteringSpectrum,
    apply_scattering,
    box_separable_kernel,
    evolve_mirror,
    gaussian_blob_kernel,
    gaussian_separable_kernel,
    require_incoming,
    scattering_equivalence_check,
    xi_spectrum,
)
from mirrorsim.physics.observables import (
    FieldProfiles,
    band_edge_fraction,
    energy_by_direction,
    field_profiles,
    touches_boundary,
)
from mirrorsim.physics.propagation import evolve_free
from mirrorsim.physics.transforms import to_momentum, to_position
from mirrorsim.schemas.records import LedgerRow
from mirrorsim.schemas.scenario import (
    BandFlatPacketSpec,
    CheckStep,
    DenseMirrorSpec,
    FreeStep,
    MirrorSpec,
    MirrorStep,
    PacketSpec,
    Scenario,
    ScatterStep,
    SnapshotStep,
)
from mirrorsim.services import serialization

logger = get_logger(__name__)

_HEADER = re.compile(r"^\s*\[(\[)?\s*([A-Za-z0-9_.-]+)\s*\]")
BUNDLED_PACKAGE = "mirrorsim.scenarios"


# Loading


def _locate(text: str, loc: Sequence[str | int]) -> int:
    """
    Best-effort 1-based line of a validation error location.

    `loc` follows pydantic: a table name, an optional array-of-tables
    index, then keys (discriminator tags included).
    """
    lines = text.splitlines()
    headers = [
        (i, match)
        for i, line in enumerate(lines)
        if (match := _HEADER.match(line))
    ]
    start, end = 0, headers[0][0] if headers else len(lines)
    keys = [part for part in loc if isinstance(part, str)]
    if loc and isinstance(loc[0], str):
        index = loc[1] if len(loc) > 1 and isinstance(loc[1], int) else None
        tables = [
            i
            for i, match in headers
            if match.group(2) == loc[0]
            and (match.group(1) is not None) == (index is not None)
        ]
        position = index or 0
        if position < len(tables):
            start = tables[position]
            end = next((i for i, _ in headers if i > start), len(lines))
            keys = keys[1:]
    for key in reversed(keys):
        pattern = re.compile(rf"^\s*{re.escape(key)}\s*=")
        for i in range(start, end):
            if pattern.match(lines[i]):
                return i + 1
    return start + 1


def _format_loc(loc: Sequence[str | int]) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    """
    Validate TOML text against the scenario schema.

    Raises:
        ScenarioError: One `source:line: location: message` entry per
            problem.
    """
    try:
        document: dict[str, Any] = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioError(f"{source}: {exc}") from exc
    try:
        scenario = Scenario.model_validate(document)
    except ValidationError as exc:
        problems = [
            f"{source}:{_locate(text, err['loc'])}: "
            f"{_format_loc(err['loc'])}: {err['msg']}"
            for err in exc.errors()
        ]
        raise ScenarioError("\n".join(problems)) from exc
    problems = [
        f"{source}:{_locate(text, loc)}: {_format_loc(loc)}: {message}"
        for loc, message in scenario.reference_errors()
    ]
    if problems:
        raise ScenarioError("\n".join(problems))
    return scenario


def bundled_scenarios() -> list[str]:
    """Names of the scenarios shipped with the package."""
    root = resources.files(BUNDLED_PACKAGE)
    return sorted(
        entry.name.removesuffix(".toml")
        for entry in root.iterdir()
        if entry.name.endswith(".toml")
    )


def resolve_scenario_path(name_or_path: str | Path) -> Path:
    """A file path as is, or a bundled scenario name."""
    path = Path(name_or_path)
    if path.exists():
        return path
    candidate = resources.files(BUNDLED_PACKAGE) / f"{name_or_path}.toml"
    if candidate.is_file():
        return Path(str(candidate))
    raise ScenarioError(
        f"{name_or_path}: no such file or bundled scenario "
        f"(bundled: {', '.join(bundled_scenarios())})"
    )


def load_scenario(name_or_path: str | Path) -> tuple[Scenario, Path]:
    """
    Read and validate a scenario file or bundled scenario.

    Returns:
        tuple: The scenario and the directory its relative paths resolve
        against.
    """
    path = resolve_scenario_path(name_or_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"{path!s}: {exc}") from exc
    return parse_scenario(text, str(path)), path.parent


# Running


@dataclass(frozen=True, eq=False)
class Snapshot:
    """State recorded by a snapshot step."""

    label: str
    time: float
    state: AmplitudeField
    profiles: FieldProfiles | None = None


@dataclass(frozen=True, eq=False)
class RunResult:
    """Everything a scenario run produced."""

    scenario: Scenario
    final_state: AmplitudeField
    time: float
    ledger: list[LedgerRow]
    snapshots: list[Snapshot] = dataclass_field(default_factory=list)
    reports: dict[str, EquivalenceReport] = dataclass_field(
        default_factory=dict
    )
    spectrum: ScatteringSpectrum | None = None


class ScenarioRunner:
    """
    Executes scenario schedules.

    The runner keeps the state in the Schrodinger picture on its own
    clock. Mirror-bearing steps are anchored at their start time: the
    state is handed to the interaction-picture engines as is and the
    free flight over the step is applied afterwards.
    """

    def __init__(
        self,
        settings: Settings | None = None,
        threads: int | None = None,
        strict: bool | None = None,
    ) -> None:
        """
        Args:
            settings: Configuration (the cached settings by default).
            threads: Workers for snapshot post-processing.
            strict: Promote numerical warnings to errors.
        """
        self._settings = settings or get_settings()
        self.threads = threads or self._settings.THREADS
        self.strict = self._settings.STRICT if strict is None else strict

    @staticmethod
    def build_packet(grid: Grid, spec: PacketSpec) -> AmplitudeField:
        """Momentum field of one [[packets]] entry."""
        if isinstance(spec, BandFlatPacketSpec):
            packet = band_flat_packet(
                grid,
                spec.direction,
                spec.polarization,
                spec.center_x,
                spec.amplitude,
            )
        else:
            packet = gaussian_packet(
                grid,
                spec.direction,
                spec.polarization,
                spec.center_x,
                spec.width,
                spec.carrier_k,
                spec.amplitude,
            )
        return to_linear(packet)

    def build_initial_state(self, scenario: Scenario) -> AmplitudeField:
        """Superposition of all packets (vacuum when there are none)."""
        grid = scenario.grid.build()
        packets = [self.build_packet(grid, spec) for spec in scenario.packets]
        return superpose(*packets) if packets else vacuum(grid)

    @staticmethod
    def build_mirror(
        spec: MirrorSpec,
        grid: Grid,
        units: UnitSystem,
        base_dir: Path | None = None,
    ) -> MirrorKernel:
        """Mirror coupling of the [mirror] section."""
        base_dir = base_dir or Path.cwd()
        if isinstance(spec, DenseMirrorSpec):
            if spec.profile == "binary":
                assert spec.file is not None
                kernel: MirrorKernel = serialization.read_dense_kernel_binary(
                    base_dir / spec.file
                )
            else:
                assert spec.strength is not None and spec.width is not None
                kernel = gaussian_blob_kernel(grid, spec.strength, spec.width)
        elif spec.profile == "csv":
            assert spec.file is not None
            kernel = serialization.read_separable_kernel_csv(
                base_dir / spec.file
            )
        elif spec.profile == "box":
            assert spec.total_angle is not None
            kernel = box_separable_kernel(
                grid, spec.total_angle, spec.cells, units
            )
        else:
            assert spec.total_angle is not None and spec.width is not None
            kernel = gaussian_separable_kernel(
                grid, spec.total_angle, spec.width, units
            )
        if not kernel.grid.same_as(grid):
            raise ScenarioError(
                f"mirror file lattice (n={kernel.grid.n_points}, "
                f"dx={kernel.grid.dx}) differs from [grid]"
            )
        return kernel

    @staticmethod
    def profile_kernel(scenario: Scenario) -> KernelSpec:
        """SqrtAbsK kernel for field profiles (phase from [representation])."""
        spec = scenario.representation
        if spec.kind is KernelKind.SQRT_ABS_K:
            return spec.kernel()
        return KernelSpec.sqrt_abs_k()

    def run(
        self, scenario: Scenario, base_dir: Path | None = None
    ) -> RunResult:
        """
        Execute the schedule.

        An empty schedule records a single snapshot of the initial state.

        Args:
            scenario: Validated scenario.
            base_dir: Directory relative mirror files resolve against.

        Returns:
            RunResult: Final state, ledger, snapshots and reports.

        Raises:
            ScenarioError: Schedule references a missing mirror.
            SimulationError: Any numerical precondition failure.
        """
        problems = scenario.reference_errors()
        if problems:
            raise ScenarioError(
                "; ".join(
                    f"{'.'.join(map(str, loc))}: {msg}" for loc, msg in problems
                )
            )
        with strict_warnings(self.strict):
            return self._run(scenario, base_dir)

    def _run(self, scenario: Scenario, base_dir: Path | None) -> RunResult:
        units = scenario.units
        energy_kernel = scenario.representation.kernel()
        state = self.build_initial_state(scenario)
        grid = state.grid
        mirror = (
            self.build_mirror(scenario.mirror, grid, units, base_dir)
            if scenario.mirror is not None
            else None
        )
        spectrum = xi_spectrum(mirror, grid, units) if mirror else None
        logger.info(
            f"Running scenario {scenario.name!r}: n={grid.n_points}, "
            f"dx={grid.dx}, {len(scenario.schedule)} steps"
        )

        clock = 0.0
        ledger = [
            self._ledger_row(0, "initial", clock, state, energy_kernel, units)
        ]
        snapshots: list[Snapshot] = []
        reports: dict[str, EquivalenceReport] = {}
        self._diagnose(state, "initial")

        schedule = scenario.schedule or [
            SnapshotStep(action="snapshot", label="initial")
        ]
        flat = KernelSpec.flat()
        for number, step in enumerate(schedule, start=1):
            match step:
                case SnapshotStep():
                    snapshots.append(Snapshot(step.label, clock, state))
                case FreeStep():
                    state = evolve_free(state, step.duration, units)
                    clock += step.duration
                case ScatterStep():
                    assert mirror is not None and spectrum is not None
                    require_incoming(state, mirror, step.duration, units)
                    state = evolve_free(
                        apply_scattering(state, spectrum), step.duration, units
                    )
                    clock += step.duration
                case MirrorStep():
                    assert mirror is not None
                    evolved = evolve_mirror(
                        to_position(state, flat),
                        mirror,
                        0.0,
                        step.duration,
                        steps=step.steps,
                        units=units,
                        solver=step.solver,
                    )
                    state = evolve_free(
                        to_momentum(evolved), step.duration, units
                    )
                    clock += step.duration
                case CheckStep():
                    assert mirror is not None
                    report = scattering_equivalence_check(
                        state,
                        mirror,
                        step.horizon,
                        units,
                        steps=step.steps,
                        energy_kernel=energy_kernel,
                    )
                    reports[step.label] = report
                    logger.info(
                        f"Check {step.label!r}: max discrepancy "
                        f"{report.max_discrepancy:.3e}, "
                        f"{'passed' if report.passed else 'FAILED'}"
                    )
            self._diagnose(state, step.action)
            ledger.append(
                self._ledger_row(
                    number, step.action, clock, state, energy_kernel, units
                )
            )

        profile_kernel = self.profile_kernel(scenario)

        def with_profiles(snapshot: Snapshot) -> Snapshot:
            profiles = field_profiles(
                to_position(snapshot.state, profile_kernel), units
            )
            return Snapshot(
                snapshot.label, snapshot.time, snapshot.state, profiles
            )

        # map keeps snapshot order whatever the completion order
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            snapshots = list(pool.map(with_profiles, snapshots))

        return RunResult(
            scenario=scenario,
            final_state=state,
            time=clock,
            ledger=ledger,
            snapshots=snapshots,
            reports=reports,
            spectrum=spectrum,
        )

    @staticmethod
    def _ledger_row(
        number: int,
        action: str,
        clock: float,
        state: AmplitudeField,
        kernel: KernelSpec,
        units: UnitSystem,
    ) -> LedgerRow:
        energies = energy_by_direction(state, kernel, units)
        total = energies[1] + energies[-1]
        return LedgerRow(
            step=number,
            action=action,
            time=clock,
            energy_total=total,
            energy_right=energies[1],
            energy_left=energies[-1],
            right_fraction=energies[1] / total if total else 0.0,
            left_fraction=energies[-1] / total if total else 0.0,
        )

    def _diagnose(self, state: AmplitudeField, action: str) -> None:
        if touches_boundary(state, self._settings.WRAP_GUARD_CELLS):
            emit_warning(
                logger,
                "WRAP_AROUND",
                f"field within {self._settings.WRAP_GUARD_CELLS} cells of "
                f"the periodic boundary after {action!r}",
                action=action,
            )
        edge = band_edge_fraction(state, self._settings.BAND_EDGE_FRACTION)
        if edge > self._settings.BAND_EDGE_TOLERANCE:
            emit_warning(
                logger,
                "BAND_EDGE",
                f"{edge:.3e} of the spectral weight sits above "
                f"{self._settings.BAND_EDGE_FRACTION} k_max after {action!r}",
                action=action,
                fraction=edge,
            )


def write_outputs(result: RunResult, out_dir: Path) -> list[Path]:
    """
    Write the requested outputs of a run into `out_dir`.

    Returns:
        list[Path]: Files written, in a deterministic order.
    """
    output = result.scenario.output
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    if output.ledger:
        path = out_dir / "ledger.csv"
        serialization.write_ledger_csv(result.ledger, path)
        written.append(path)
    for snapshot in result.snapshots:
        if output.profiles and snapshot.profiles is not None:
            path = out_dir / f"profiles_{snapshot.label}.csv"
            serialization.write_profiles_csv(snapshot.profiles, path)
            written.append(path)
        if output.states != "none":
            suffix = "ndjson" if output.states == "ndjson" else "bin"
            path = out_dir / f"state_{snapshot.label}.{suffix}"
            serialization.write_state(snapshot.state, path)
            written.append(path)
    if output.spectrum and result.spectrum is not None:
        path = out_dir / "spectrum.csv"
        serialization.write_spectrum_csv(result.spectrum, path)
        written.append(path)
    for label, report in result.reports.items():
        path = out_dir / f"{label}.csv"
        serialization.write_metrics_csv(report.rows(), path)
        written.append(path)
    logger.info(f"Wrote {len(written)} files to {out_dir!s}")
    return written
