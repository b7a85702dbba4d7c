"""Matrix, sensor-set, basis and report files.

Matrices are stored either as SSP1 binary (magic ``SSP1``, little-endian u64
rows and cols, then rows·cols little-endian float64 values in column-major
order) or as headerless CSV with one matrix row per line. Sensor sets, basis
metadata and reports are JSON with sorted keys; all indices in files are
1-based.
"""

import csv
import io
import json
import logging
import math
import warnings
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ValidationError

from sparsense.core.config import settings
from sparsense.core.errors import (
    DuplicateIndex,
    EmptyMatrix,
    IndexOutOfRange,
    MalformedHeader,
    NonFiniteValue,
    SchemaViolation,
    StorageError,
)
from sparsense.core.validators import MatrixValidator
from sparsense.models.base import array_to_list
from sparsense.models.basis import BasisSource, TailoredBasis
from sparsense.models.run import MatrixFormat
from sparsense.models.sensors import SensorSetRecord
from sparsense.models.snapshot import SnapshotMatrix
from .schemas import BASIS_SCHEMA, MATRIX_META_SCHEMA, SENSORS_SCHEMA, check_document

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

MAGIC = b"SSP1"
HEADER = np.dtype([("magic", "S4"), ("rows", "<u8"), ("cols", "<u8")])
PAYLOAD = np.dtype("<f8")

MODES_FILE = "modes.ssp"
BASIS_META_FILE = "basis.json"
MATRIX_META_FORMAT = "sparsense.matrix-meta/1"


def _read_bytes(path: Path) -> bytes:
    try:
        return path.read_bytes()
    except OSError as e:
        raise StorageError(f"cannot read {path}: {e.strerror or e}") from e


def _write_bytes(path: Path, data: bytes) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as e:
        raise StorageError(f"cannot write {path}: {e.strerror or e}") from e


def _write_text(path: Path, text: str) -> None:
    _write_bytes(path, text.encode("utf-8"))


def _read_json(path: Path) -> Any:
    try:
        return json.loads(_read_bytes(path).decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise SchemaViolation(f"{path}: not valid JSON: {e}") from e


def json_safe(value: Any) -> Any:
    """Recursively convert models, arrays and non-finite floats into strict JSON values."""
    if isinstance(value, BaseModel):
        return json_safe(value.model_dump(mode="python"))
    if isinstance(value, dict):
        return {str(k): json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, np.ndarray):
        return json_safe(value.tolist())
    if isinstance(value, np.generic):
        return json_safe(value.item())
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


def dumps(document: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(json_safe(document), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _finite_or_raise(values: np.ndarray, source: Path) -> None:
    bad = MatrixValidator.first_non_finite(values)
    if bad is not None:
        raise NonFiniteValue(*bad, source=str(source))


# ==================== Matrices ====================

def encode_binary(values: np.ndarray) -> bytes:
    rows, cols = values.shape
    header = np.array([(MAGIC, rows, cols)], dtype=HEADER).tobytes()
    return header + np.asarray(values, dtype=PAYLOAD).tobytes(order="F")


def decode_binary(data: bytes, source: Path) -> np.ndarray:
    if len(data) < HEADER.itemsize:
        raise MalformedHeader(f"{source}: file too short for an SSP1 header")
    header = np.frombuffer(data[:HEADER.itemsize], dtype=HEADER)[0]
    if header["magic"] != MAGIC:
        raise MalformedHeader(f"{source}: bad magic {bytes(header['magic'])!r}, expected {MAGIC!r}")
    rows, cols = int(header["rows"]), int(header["cols"])
    if rows == 0 or cols == 0:
        raise EmptyMatrix(f"{source}: matrix is {rows}x{cols}")
    payload = data[HEADER.itemsize:]
    expected = rows * cols * PAYLOAD.itemsize
    if len(payload) != expected:
        raise MalformedHeader(
            f"{source}: header declares {rows}x{cols} ({rows * cols} values) "
            f"but payload holds {len(payload) / PAYLOAD.itemsize:g}"
        )
    values = np.frombuffer(payload, dtype=PAYLOAD).reshape((cols, rows)).T
    return values.astype(np.float64)


def _read_csv(path: Path) -> np.ndarray:
    text = _read_bytes(path).decode("utf-8", errors="replace")
    if not text.strip():
        raise EmptyMatrix(f"{path}: no rows")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            values = np.loadtxt(io.StringIO(text), delimiter=",", dtype=np.float64, ndmin=2)
    except ValueError as e:
        raise MalformedHeader(f"{path}: {e}") from e
    if values.size == 0:
        raise EmptyMatrix(f"{path}: no values")
    return values


def _meta_path(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


def load_matrix(path: PathLike, format: Optional[MatrixFormat] = None) -> SnapshotMatrix:
    """Load a matrix file; a ``<path>.meta.json`` sidecar supplies grid and mean."""
    path = Path(path)
    format = format or MatrixFormat.for_path(path)
    if format == MatrixFormat.BINARY:
        values = decode_binary(_read_bytes(path), path)
    else:
        values = _read_csv(path)
    _finite_or_raise(values, path)

    grid, mean = None, None
    meta_path = _meta_path(path)
    if meta_path.exists():
        meta = _read_json(meta_path)
        check_document(meta, MATRIX_META_SCHEMA, str(meta_path))
        grid = tuple(meta["grid"]) if meta.get("grid") else None
        mean = meta.get("mean")
    try:
        matrix = SnapshotMatrix(values=values, grid=grid, mean=mean)
    except ValidationError as e:
        raise SchemaViolation(f"{path}: {e.errors()[0]['msg']}") from e
    logger.debug(f"loaded {matrix.rows}x{matrix.cols} matrix from {path} ({format.value})")
    return matrix


def save_matrix(matrix: Union[SnapshotMatrix, np.ndarray], path: PathLike, format: Optional[MatrixFormat] = None) -> None:
    """Write a matrix; grid/mean metadata of a SnapshotMatrix goes to the sidecar."""
    path = Path(path)
    format = format or MatrixFormat.for_path(path)
    if not isinstance(matrix, SnapshotMatrix):
        values = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
        if values.size == 0:
            raise EmptyMatrix(f"{path}: refusing to write an empty matrix")
        _finite_or_raise(values, path)
        matrix = SnapshotMatrix(values=values)
    values = matrix.values

    if format == MatrixFormat.BINARY:
        _write_bytes(path, encode_binary(values))
    else:
        buffer = io.StringIO()
        np.savetxt(buffer, values, fmt="%.17g", delimiter=",")
        _write_text(path, buffer.getvalue())

    if matrix.grid is not None or matrix.mean is not None:
        meta = {"format": MATRIX_META_FORMAT, "grid": list(matrix.grid) if matrix.grid else None,
                "mean": array_to_list(matrix.mean)}
        _write_text(_meta_path(path), dumps(meta))


# ==================== Sensor sets ====================

def _check_indices(indices: Sequence[int], n: int, source: str) -> None:
    seen = set()
    for idx in indices:
        if idx in seen:
            raise DuplicateIndex(f"{source}: sensor index {idx} appears more than once")
        seen.add(idx)
    for idx in indices:
        if not 1 <= idx <= n:
            raise IndexOutOfRange(f"{source}: sensor index {idx} outside [1, {n}]")


def sensors_document(record: SensorSetRecord) -> Dict[str, Any]:
    document = record.model_dump(mode="json")
    document["format"] = settings.SENSORS_FORMAT
    return document


def save_sensors(record: SensorSetRecord, path: PathLike, provenance: Optional[Dict[str, Any]] = None) -> None:
    path = Path(path)
    _check_indices(record.indices, record.n, str(path))
    document = sensors_document(record)
    if provenance:
        document["provenance"] = provenance
    _write_text(path, dumps(document))


def load_sensors(path: PathLike) -> SensorSetRecord:
    path = Path(path)
    document = _read_json(path)
    check_document(document, SENSORS_SCHEMA, str(path))
    if document["format"] != settings.SENSORS_FORMAT:
        raise SchemaViolation(f"{path}: unsupported format {document['format']!r}")
    _check_indices(document["indices"], document["n"], str(path))
    fields = {k: v for k, v in document.items() if k not in ("format", "provenance")}
    return SensorSetRecord(**fields)


# ==================== Bases ====================

def save_basis(basis: TailoredBasis, directory: PathLike, provenance: Optional[Dict[str, Any]] = None) -> None:
    """Write ``modes.ssp`` and ``basis.json`` into ``directory``."""
    directory = Path(directory)
    _write_bytes(directory / MODES_FILE, encode_binary(basis.modes))
    meta = {
        "format": settings.BASIS_FORMAT,
        "source": basis.source.value,
        "n": basis.n,
        "r": basis.r,
        "sigmas": array_to_list(basis.sigmas),
        "spectrum": array_to_list(basis.spectrum),
        "mean": array_to_list(basis.mean),
        "grid": array_to_list(basis.grid),
        "energy_fraction": basis.energy_fraction,
    }
    if provenance:
        meta["provenance"] = provenance
    _write_text(directory / BASIS_META_FILE, dumps(meta))
    logger.info(f"saved {basis.source.value} basis n={basis.n}, r={basis.r} to {directory}")


def load_basis(directory: PathLike) -> TailoredBasis:
    directory = Path(directory)
    meta_path = directory / BASIS_META_FILE
    meta = _read_json(meta_path)
    check_document(meta, BASIS_SCHEMA, str(meta_path))
    if meta["format"] != settings.BASIS_FORMAT:
        raise SchemaViolation(f"{meta_path}: unsupported format {meta['format']!r}")

    modes_path = directory / MODES_FILE
    modes = decode_binary(_read_bytes(modes_path), modes_path)
    _finite_or_raise(modes, modes_path)
    if modes.shape != (meta["n"], meta["r"]):
        raise MalformedHeader(
            f"{modes_path}: modes are {modes.shape[0]}x{modes.shape[1]}, "
            f"metadata declares {meta['n']}x{meta['r']}"
        )
    try:
        return TailoredBasis(
            modes=modes,
            sigmas=meta["sigmas"],
            mean=meta.get("mean"),
            source=BasisSource(meta["source"]),
            spectrum=meta.get("spectrum"),
            grid=meta.get("grid"),
        )
    except ValidationError as e:
        raise SchemaViolation(f"{meta_path}: {e.errors()[0]['msg']}") from e


# ==================== Reports and tables ====================

def write_report_json(document: Any, path: PathLike) -> None:
    _write_text(Path(path), dumps(document))


def table_text(rows: Iterable[Union[BaseModel, Dict[str, Any]]], columns: Sequence[str]) -> str:
    """CSV text with a header row; floats keep their shortest round-trip form."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        record = json_safe(row)
        writer.writerow(repr(record[name]) if isinstance(record[name], float) else record[name] for name in columns)
    return buffer.getvalue()


def write_table_csv(rows: Iterable[Union[BaseModel, Dict[str, Any]]], columns: Sequence[str], path: PathLike) -> None:
    _write_text(Path(path), table_text(rows, columns))
