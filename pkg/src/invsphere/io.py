"""Dataset file formats: CSV and the "SPHE" packed binary format.

CSV: one point per row, '.' decimal separator, optional '#'-prefixed header
lines, values emitted with 17 significant digits so write/read roundtrips are
lossless at double precision.

f64le: magic b"SPHE", u32-le point count, u32-le dimension, then n*d 64-bit
little-endian floats row-major; roundtrips are bit-identical.

All writes are atomic (temp file in the target directory + rename) so a
failure never leaves a partial output behind.
"""

from __future__ import annotations

import os
import struct
import tempfile

import numpy as np

from .data import Dataset
from .errors import EmptyDataset, InputFormatError

MAGIC = b"SPHE"
FORMATS = ("csv", "f64le")


def _atomic_write(path: str, payload: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".invsphere-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_dataset(path: str, fmt: str = "csv") -> Dataset:
    if fmt not in FORMATS:
        raise InputFormatError(f"unknown format {fmt!r}")
    if fmt == "csv":
        return _read_csv(path)
    return _read_f64le(path)


def write_dataset(X: Dataset, path: str, fmt: str = "csv") -> None:
    if fmt not in FORMATS:
        raise InputFormatError(f"unknown format {fmt!r}")
    if fmt == "csv":
        lines = [",".join(f"{v:.17g}" for v in row) for row in X.points]
        _atomic_write(path, ("\n".join(lines) + "\n").encode("ascii"))
    else:
        n, d = X.points.shape
        payload = MAGIC + struct.pack("<II", n, d) + X.points.astype("<f8").tobytes()
        _atomic_write(path, payload)


def _read_csv(path: str) -> Dataset:
    rows: list[list[float]] = []
    width = None
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                row = [float(tok) for tok in line.split(",")]
            except ValueError as exc:
                raise InputFormatError(f"{path}: unparsable value on line {lineno}: {exc}") from exc
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise InputFormatError(
                    f"{path}: ragged row on line {lineno}: expected {width} values, got {len(row)}"
                )
            rows.append(row)
    if not rows:
        raise EmptyDataset(f"{path}: no data rows")
    return Dataset(np.asarray(rows, dtype=np.float64))


def _read_f64le(path: str) -> Dataset:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 12 or blob[:4] != MAGIC:
        raise InputFormatError(f"{path}: missing or malformed magic bytes")
    n, d = struct.unpack("<II", blob[4:12])
    expected = 12 + 8 * n * d
    if len(blob) != expected:
        raise InputFormatError(
            f"{path}: truncated payload: expected {expected} bytes, got {len(blob)}"
        )
    if n == 0:
        raise EmptyDataset(f"{path}: no data rows")
    pts = np.frombuffer(blob, dtype="<f8", offset=12).reshape(n, d)
    return Dataset(pts.astype(np.float64))
