"""
File: serialization.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.

File formats.

State NDJSON: one header record, then one amplitude record per
(channel, index). State binary (little-endian): a packed header
(magic "AMPF", version, representation/kernel/basis/interpretation
tags, n_points, dx, phase) followed by 4 n complex64 values in
(s, lambda, index) order. Separable kernels are CSV (x, omega); dense
kernels are a (u4 n, f8 dx) header followed by n x n float64.
"""

from collections.abc import Callable, Sequence
import io
from pathlib import Path
from typing import TextIO

import numpy as np
from pydantic import ValidationError

from mirrorsim.core.exceptions import SerializationError, SimulationError
from mirrorsim.core.logger import get_logger
from mirrorsim.physics.field_state import (
    DIRECTIONS,
    POLARIZATION_LABELS,
    AmplitudeField,
    Basis,
    Interpretation,
    Representation,
    channel_label,
)
from mirrorsim.physics.grid import make_grid
from mirrorsim.physics.kernels import KernelKind, KernelSpec
from mirrorsim.physics.mirror import (
    DenseKernel,
    MirrorKernel,
    ScatteringSpectrum,
    SeparableKernel,
)
from mirrorsim.physics.observables import FieldProfiles
from mirrorsim.schemas.records import (
    AmplitudeRecord,
    GateResult,
    HeaderRecord,
    LedgerRow,
    state_record_adapter,
)

logger = get_logger(__name__)

MAGIC = b"AMPF"
VERSION = 1
HEADER_DTYPE = np.dtype(
    [
        ("magic", "S4"),
        ("version", "<u2"),
        ("representation", "u1"),
        ("kernel", "u1"),
        ("basis", "u1"),
        ("interpretation", "u1"),
        ("n_points", "<u4"),
        ("dx", "<f8"),
        ("phase", "<f8"),
    ]
)
DENSE_HEADER_DTYPE = np.dtype([("n_points", "<u4"), ("dx", "<f8")])

_REPRESENTATION_CODES = [Representation.MOMENTUM, Representation.POSITION]
_KERNEL_CODES = [None, *KernelKind]
_BASIS_CODES = [Basis.LINEAR, Basis.CIRCULAR]
_INTERPRETATION_CODES = [*Interpretation]

type CsvTarget = Path | TextIO


# States


def _header_for(field: AmplitudeField) -> HeaderRecord:
    kernel = field.kernel
    return HeaderRecord(
        n_points=field.grid.n_points,
        dx=field.grid.dx,
        representation=field.representation,
        kernel=kernel.kind if kernel else None,
        phase=kernel.phase if kernel else 0.0,
        basis=field.basis,
        interpretation=field.interpretation,
    )


def _field_from_header(
    header: HeaderRecord, data: np.ndarray
) -> AmplitudeField:
    kernel = None
    if header.kernel is KernelKind.STANDARD_POSITIVE_ONLY:
        kernel = KernelSpec.standard_positive_only()
    elif header.kernel is not None:
        kernel = KernelSpec(header.kernel, header.phase)
    try:
        return AmplitudeField(
            grid=make_grid(header.n_points, header.dx),
            data=data,
            representation=header.representation,
            kernel=kernel,
            basis=header.basis,
            interpretation=header.interpretation,
        )
    except SimulationError as exc:
        raise SerializationError(f"inconsistent state: {exc.detail}") from exc


def state_to_ndjson(field: AmplitudeField) -> str:
    """Serialise a field as NDJSON text."""
    lines = [_header_for(field).model_dump_json()]
    for i, s in enumerate(DIRECTIONS):
        for lam in (0, 1):
            label = channel_label(s, lam, field.basis)
            for index, value in enumerate(field.data[i, lam]):
                record = AmplitudeRecord(
                    channel=label,
                    index=index,
                    re=float(value.real),
                    im=float(value.imag),
                )
                lines.append(record.model_dump_json())
    return "\n".join(lines) + "\n"


def state_from_ndjson(text: str, source: str = "<ndjson>") -> AmplitudeField:
    """
    Parse NDJSON text produced by `state_to_ndjson`.

    Raises:
        SerializationError: With the offending line number.
    """
    header: HeaderRecord | None = None
    data: np.ndarray | None = None
    seen: set[tuple[str, int]] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = state_record_adapter.validate_json(line)
        except ValidationError as exc:
            raise SerializationError(f"{source}:{lineno}: {exc}") from exc
        if isinstance(record, HeaderRecord):
            if header is not None:
                raise SerializationError(f"{source}:{lineno}: second header")
            header = record
            data = np.zeros((2, 2, header.n_points), dtype=np.complex128)
            continue
        if header is None or data is None:
            raise SerializationError(
                f"{source}:{lineno}: amplitude before header"
            )
        s = 1 if record.channel[0] == "+" else -1
        labels = POLARIZATION_LABELS[header.basis]
        if record.channel[2] not in labels:
            raise SerializationError(
                f"{source}:{lineno}: channel {record.channel!r} is not in "
                f"the {header.basis} basis"
            )
        if record.index >= header.n_points:
            raise SerializationError(
                f"{source}:{lineno}: index {record.index} out of range"
            )
        key = (record.channel, record.index)
        if key in seen:
            raise SerializationError(
                f"{source}:{lineno}: duplicate amplitude {key}"
            )
        seen.add(key)
        lam = labels.index(record.channel[2])
        data[0 if s == 1 else 1, lam, record.index] = complex(
            record.re, record.im
        )
    if header is None or data is None:
        raise SerializationError(f"{source}: missing header record")
    return _field_from_header(header, data)


def state_to_bytes(field: AmplitudeField) -> bytes:
    """Compact little-endian binary form (complex64 payload)."""
    header = np.zeros(1, dtype=HEADER_DTYPE)
    kernel = field.kernel
    header["magic"] = MAGIC
    header["version"] = VERSION
    header["representation"] = _REPRESENTATION_CODES.index(
        field.representation
    )
    header["kernel"] = _KERNEL_CODES.index(kernel.kind if kernel else None)
    header["basis"] = _BASIS_CODES.index(field.basis)
    header["interpretation"] = _INTERPRETATION_CODES.index(
        field.interpretation
    )
    header["n_points"] = field.grid.n_points
    header["dx"] = field.grid.dx
    header["phase"] = kernel.phase if kernel else 0.0
    return header.tobytes() + field.data.astype("<c8").tobytes()


def state_from_bytes(raw: bytes, source: str = "<binary>") -> AmplitudeField:
    """
    Decode `state_to_bytes` output.

    Raises:
        SerializationError: On bad magic, tags or payload length.
    """
    if len(raw) < HEADER_DTYPE.itemsize:
        raise SerializationError(f"{source}: truncated header")
    head = np.frombuffer(raw, dtype=HEADER_DTYPE, count=1)[0]
    if bytes(head["magic"]) != MAGIC:
        raise SerializationError(f"{source}: not an amplitude file")
    if int(head["version"]) != VERSION:
        raise SerializationError(
            f"{source}: unsupported version {int(head['version'])}"
        )
    n = int(head["n_points"])
    payload = np.frombuffer(raw, dtype="<c8", offset=HEADER_DTYPE.itemsize)
    if payload.size != 4 * n:
        raise SerializationError(
            f"{source}: expected {4 * n} amplitudes, found {payload.size}"
        )
    try:
        kernel = _KERNEL_CODES[head["kernel"]]
        header = HeaderRecord(
            n_points=n,
            dx=float(head["dx"]),
            representation=_REPRESENTATION_CODES[head["representation"]],
            kernel=kernel,
            phase=float(head["phase"]),
            basis=_BASIS_CODES[head["basis"]],
            interpretation=_INTERPRETATION_CODES[head["interpretation"]],
        )
    except (IndexError, ValidationError) as exc:
        raise SerializationError(f"{source}: bad header tags") from exc
    data = payload.astype(np.complex128).reshape(2, 2, n)
    return _field_from_header(header, data)


def write_state(field: AmplitudeField, path: Path) -> None:
    """Write NDJSON (.ndjson/.jsonl) or binary (.bin) by suffix."""
    suffix = path.suffix.lower()
    if suffix in {".ndjson", ".jsonl"}:
        path.write_text(state_to_ndjson(field), encoding="utf-8")
    elif suffix == ".bin":
        path.write_bytes(state_to_bytes(field))
    else:
        raise SerializationError(f"unknown state format {path.suffix!r}")
    logger.debug(f"State written to {path!s}")


def read_state(path: Path) -> AmplitudeField:
    """Read a state written by `write_state`."""
    suffix = path.suffix.lower()
    try:
        if suffix in {".ndjson", ".jsonl"}:
            return state_from_ndjson(
                path.read_text(encoding="utf-8"), str(path)
            )
        if suffix == ".bin":
            return state_from_bytes(path.read_bytes(), str(path))
    except OSError as exc:
        raise SerializationError(f"cannot read {path!s}: {exc}") from exc
    raise SerializationError(f"unknown state format {path.suffix!r}")


# Kernels


def read_separable_kernel_csv(path: Path) -> SeparableKernel:
    """
    Read (x, omega) rows; the x column must be a centred lattice.

    Raises:
        SerializationError: On malformed rows or an off-lattice x column.
    """
    try:
        with path.open(encoding="utf-8") as fh:
            first = fh.readline().strip()
        skip = 1 if first and first[0].isalpha() else 0
        table = np.loadtxt(
            path, delimiter=",", comments="#", skiprows=skip, ndmin=2
        )
    except (OSError, ValueError) as exc:
        raise SerializationError(f"cannot read kernel {path!s}: {exc}") from exc
    if table.shape[1] != 2:
        raise SerializationError(f"{path!s}: expected columns x, omega")
    x, omega = table[:, 0], table[:, 1]
    n = x.size
    if n < 4 or n % 2:
        raise SerializationError(f"{path!s}: need an even count >= 4 rows")
    dx = float(x[1] - x[0])
    expected = (np.arange(n) - n // 2) * dx
    if dx <= 0 or np.max(np.abs(x - expected)) > 1e-9 * dx * n:
        raise SerializationError(
            f"{path!s}: x column is not the centred lattice (j - n/2) dx"
        )
    try:
        return SeparableKernel(make_grid(n, dx), omega)
    except SimulationError as exc:
        raise SerializationError(f"{path!s}: {exc.detail}") from exc


def write_separable_kernel_csv(kernel: SeparableKernel, path: Path) -> None:
    """Write (x, omega) rows with a header line."""
    _savetxt(
        path,
        np.column_stack([kernel.grid.x_values, kernel.omega]),
        "x,omega",
    )


def read_dense_kernel_binary(path: Path) -> DenseKernel:
    """Read the (n, dx) header and the n x n float64 matrix."""
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise SerializationError(f"cannot read kernel {path!s}: {exc}") from exc
    if len(raw) < DENSE_HEADER_DTYPE.itemsize:
        raise SerializationError(f"{path!s}: truncated header")
    head = np.frombuffer(raw, dtype=DENSE_HEADER_DTYPE, count=1)[0]
    n = int(head["n_points"])
    matrix = np.frombuffer(raw, dtype="<f8", offset=DENSE_HEADER_DTYPE.itemsize)
    if matrix.size != n * n:
        raise SerializationError(
            f"{path!s}: expected {n * n} samples, found {matrix.size}"
        )
    try:
        return DenseKernel(
            make_grid(n, float(head["dx"])), matrix.reshape(n, n)
        )
    except SimulationError as exc:
        raise SerializationError(f"{path!s}: {exc.detail}") from exc


def write_dense_kernel_binary(kernel: DenseKernel, path: Path) -> None:
    """Write the dense kernel layout."""
    header = np.zeros(1, dtype=DENSE_HEADER_DTYPE)
    header["n_points"] = kernel.grid.n_points
    header["dx"] = kernel.grid.dx
    path.write_bytes(
        header.tobytes() + kernel.omega_matrix.astype("<f8").tobytes()
    )


def read_kernel(path: Path) -> MirrorKernel:
    """Separable from .csv, dense from .bin."""
    suffix = path.suffix.lower()
    if suffix == ".csv":
        return read_separable_kernel_csv(path)
    if suffix == ".bin":
        return read_dense_kernel_binary(path)
    raise SerializationError(f"unknown kernel format {path.suffix!r}")


# CSV emitters


def _savetxt(target: CsvTarget, columns: np.ndarray, header: str) -> None:
    np.savetxt(
        target,
        columns,
        fmt="%.17g",
        delimiter=",",
        header=header,
        comments="",
    )


def _save_rows(
    target: CsvTarget, rows: Sequence[Sequence[str]], header: str
) -> None:
    width = header.count(",") + 1
    table = np.array(rows, dtype=str).reshape(len(rows), width)
    np.savetxt(
        target, table, fmt="%s", delimiter=",", header=header, comments=""
    )


def write_profiles_csv(profiles: FieldProfiles, target: CsvTarget) -> None:
    """Columns x, E_y, E_z, B_y, B_z, u; the first line records units."""
    u = profiles.units
    header = (
        f"# units hbar={u.hbar!r} c={u.c!r} epsilon={u.epsilon!r} "
        f"mu={u.mu!r} area={u.area!r} kernel={profiles.kernel.describe()}\n"
        "x,E_y,E_z,B_y,B_z,u"
    )
    _savetxt(target, profiles.as_columns(), header)


def write_spectrum_csv(spectrum: ScatteringSpectrum, target: CsvTarget) -> None:
    """Columns k, Re Xi, Im Xi, |Xi|, sin^2|Xi|, cos^2|Xi|."""
    _savetxt(
        target,
        spectrum.as_columns(),
        "k,re_xi,im_xi,abs_xi,reflectance,transmittance",
    )


def write_ledger_csv(rows: Sequence[LedgerRow], target: CsvTarget) -> None:
    """Energy ledger, one row per schedule step."""
    header = ",".join(LedgerRow.model_fields)
    table = [
        [
            str(row.step),
            row.action,
            *(
                f"{getattr(row, name):.17g}"
                for name in list(LedgerRow.model_fields)[2:]
            ),
        ]
        for row in rows
    ]
    _save_rows(target, table, header)


def write_metrics_csv(
    rows: Sequence[tuple[str, float]], target: CsvTarget
) -> None:
    """Two-column metric/value table (equivalence reports)."""
    table = [[name, f"{value:.17g}"] for name, value in rows]
    _save_rows(target, table, "metric,value")


def write_gates_csv(gates: Sequence[GateResult], target: CsvTarget) -> None:
    """Pass/fail table of the `check` command."""
    table = [
        [
            gate.name,
            "PASS" if gate.passed else "FAIL",
            f"{gate.value:.3e}",
            "diagnostic" if gate.tolerance is None else f"{gate.tolerance:.1e}",
        ]
        for gate in gates
    ]
    _save_rows(target, table, "gate,status,value,tolerance")


def to_text(writer: Callable[..., None], *args: object) -> str:
    """Run a CSV writer against an in-memory buffer."""
    buffer = io.StringIO()
    writer(*args, buffer)
    return buffer.getvalue()
