"""
File: cli.py
Project: mirrorsim
Created: Saturday, 17th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.

Batch command line. Tables and states go to stdout unless an output file
is given; log records (numerical warnings included) go to stderr as one
JSON object per line.

Exit status: 0 on success, 2 for scenario or argument validation
errors, 1 for any other simulation error or a failed check gate.
"""

import argparse
from collections.abc import Callable, Sequence
from pathlib import Path
import sys

from pydantic import ValidationError

from mirrorsim.config import Settings, get_settings
from mirrorsim.core.events import strict_warnings
from mirrorsim.core.exceptions import ScenarioError, SimulationError
from mirrorsim.core.logger import get_logger, setup_logging
from mirrorsim.physics.field_state import AmplitudeField, Representation
from mirrorsim.physics.grid import UnitSystem, make_units
from mirrorsim.physics.kernels import KernelKind, KernelSpec
from mirrorsim.physics.mirror import (
    Solver,
    apply_scattering,
    evolve_mirror,
    xi_spectrum,
)
from mirrorsim.physics.observables import energy_by_direction, field_profiles
from mirrorsim.physics.propagation import evolve_free
from mirrorsim.physics.transforms import to_momentum, to_position
from mirrorsim.services import serialization
from mirrorsim.services.checks import run_oracle_gates, scenario_gates
from mirrorsim.services.scenario_runner import (
    ScenarioRunner,
    load_scenario,
    write_outputs,
)

logger = get_logger(__name__)

type Handler = Callable[[argparse.Namespace, Settings], int]


# Helpers


def _units(args: argparse.Namespace) -> UnitSystem:
    return make_units(
        hbar=args.hbar, epsilon=args.epsilon, mu=args.mu, area=args.area
    )


def _momentum(field: AmplitudeField) -> AmplitudeField:
    if field.representation is Representation.MOMENTUM:
        return field
    return to_momentum(field)


def _emit_state(field: AmplitudeField, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(serialization.state_to_ndjson(field))
    else:
        serialization.write_state(field, out)
        logger.info(f"State written to {out!s}")


# Commands


def _cmd_run(args: argparse.Namespace, settings: Settings) -> int:
    scenario, base_dir = load_scenario(args.scenario)
    runner = ScenarioRunner(settings, threads=args.threads, strict=args.strict)
    result = runner.run(scenario, base_dir)
    out_dir = (args.out_dir or settings.OUT_DIR) / scenario.name
    for path in write_outputs(result, out_dir):
        print(path)
    return 0


def _cmd_propagate(args: argparse.Namespace, settings: Settings) -> int:
    field = _momentum(serialization.read_state(args.state))
    _emit_state(evolve_free(field, args.time, _units(args)), args.out)
    return 0


def _cmd_scatter(args: argparse.Namespace, settings: Settings) -> int:
    field = _momentum(serialization.read_state(args.state))
    kernel = serialization.read_kernel(args.kernel)
    spectrum = xi_spectrum(kernel, field.grid, _units(args))
    _emit_state(apply_scattering(field, spectrum), args.out)
    return 0


def _cmd_spectrum(args: argparse.Namespace, settings: Settings) -> int:
    kernel = serialization.read_kernel(args.kernel)
    spectrum = xi_spectrum(kernel, units=_units(args))
    serialization.write_spectrum_csv(spectrum, args.out or sys.stdout)
    return 0


def _cmd_mirror_evolve(args: argparse.Namespace, settings: Settings) -> int:
    loaded = serialization.read_state(args.state)
    kernel = serialization.read_kernel(args.kernel)
    flat = KernelSpec.flat()
    field = (
        loaded
        if loaded.kernel == flat
        else to_position(_momentum(loaded), flat)
    )
    evolved = evolve_mirror(
        field,
        kernel,
        args.t_start,
        args.t_end,
        steps=args.steps,
        units=_units(args),
        solver=args.solver,
    )
    if loaded.representation is Representation.MOMENTUM:
        evolved = to_momentum(evolved)
    _emit_state(evolved, args.out)
    return 0


def _cmd_observables(args: argparse.Namespace, settings: Settings) -> int:
    units = _units(args)
    field = _momentum(serialization.read_state(args.state))
    energies = energy_by_direction(
        field, KernelSpec(args.representation, args.phase), units
    )
    logger.info(
        f"Energy right={energies[1]:.17g} left={energies[-1]:.17g}",
        extra={
            "event": {
                "energy_right": energies[1],
                "energy_left": energies[-1],
            }
        },
    )
    profiles = field_profiles(
        to_position(field, KernelSpec.sqrt_abs_k(args.phase)), units
    )
    serialization.write_profiles_csv(profiles, args.out or sys.stdout)
    return 0


def _cmd_check(args: argparse.Namespace, settings: Settings) -> int:
    gates = run_oracle_gates()
    if args.scenario is not None:
        scenario, base_dir = load_scenario(args.scenario)
        runner = ScenarioRunner(
            settings, threads=args.threads, strict=args.strict
        )
        gates += scenario_gates(runner.run(scenario, base_dir))
    serialization.write_gates_csv(gates, sys.stdout)
    return 0 if all(gate.passed for gate in gates) else 1


# Parser


def _add_units(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("units (c = 1/sqrt(epsilon mu))")
    group.add_argument("--hbar", type=float, default=1.0)
    group.add_argument("--epsilon", type=float, default=1.0)
    group.add_argument("--mu", type=float, default=1.0)
    group.add_argument("--area", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one sub-command per operation."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--out-dir",
        type=Path,
        default=None,
        help="Output directory (env MIRRORSIM_OUT_DIR, default ./out).",
    )
    common.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Workers for independent snapshots (default 1).",
    )
    common.add_argument(
        "--strict",
        action="store_true",
        default=None,
        help="Promote numerical warnings to errors.",
    )

    parser = argparse.ArgumentParser(
        prog="mirrorsim",
        description="1D quantised field simulator with two-sided mirrors.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def command(
        name: str, handler: Handler, text: str
    ) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[common], help=text)
        sub.set_defaults(handler=handler)
        return sub

    run = command("run", _cmd_run, "Run a scenario file or bundled name.")
    run.add_argument("--scenario", required=True)

    propagate = command(
        "propagate", _cmd_propagate, "Free evolution of a state."
    )
    propagate.add_argument("--state", type=Path, required=True)
    propagate.add_argument("--time", type=float, required=True)
    propagate.add_argument("--out", type=Path, default=None)
    _add_units(propagate)

    scatter = command(
        "scatter", _cmd_scatter, "Closed-form mirror scattering of a state."
    )
    scatter.add_argument("--state", type=Path, required=True)
    scatter.add_argument(
        "--kernel", type=Path, required=True, help="CSV or dense .bin."
    )
    scatter.add_argument("--out", type=Path, default=None)
    _add_units(scatter)

    spectrum = command(
        "spectrum", _cmd_spectrum, "Scattering spectrum Xi_k of a mirror."
    )
    spectrum.add_argument("--kernel", type=Path, required=True)
    spectrum.add_argument("--out", type=Path, default=None)
    _add_units(spectrum)

    mirror = command(
        "mirror-evolve",
        _cmd_mirror_evolve,
        "Time-resolved interaction-picture mirror dynamics.",
    )
    mirror.add_argument("--state", type=Path, required=True)
    mirror.add_argument("--kernel", type=Path, required=True)
    mirror.add_argument("--t-start", type=float, required=True)
    mirror.add_argument("--t-end", type=float, required=True)
    mirror.add_argument("--steps", type=int, default=None)
    mirror.add_argument(
        "--solver", choices=[s.value for s in Solver], default="auto"
    )
    mirror.add_argument("--out", type=Path, default=None)
    _add_units(mirror)

    observables = command(
        "observables", _cmd_observables, "Field profiles of a state."
    )
    observables.add_argument("--state", type=Path, required=True)
    observables.add_argument(
        "--representation",
        type=KernelKind,
        choices=[KernelKind.FLAT, KernelKind.SQRT_ABS_K],
        default=KernelKind.SQRT_ABS_K,
        help="Kernel used for the energy split.",
    )
    observables.add_argument("--phase", type=float, default=0.0)
    observables.add_argument("--out", type=Path, default=None)
    _add_units(observables)

    check = command(
        "check", _cmd_check, "Oracle gates and scenario equivalence reports."
    )
    check.add_argument("--scenario", default=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    Entry point of the `mirrorsim` script.

    Returns:
        int: Process exit status.
    """
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging("json")
    args.threads = args.threads or settings.THREADS
    args.strict = settings.STRICT if args.strict is None else args.strict
    handler: Handler = args.handler
    try:
        with strict_warnings(args.strict):
            return handler(args, settings)
    except ValidationError as exc:
        logger.error(
            f"Invalid input: {exc}",
            extra={"event": {"code": ScenarioError.error_code}},
        )
        return ScenarioError.exit_code
    except SimulationError as exc:
        logger.error(exc.detail, extra={"event": {"code": exc.error_code}})
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
