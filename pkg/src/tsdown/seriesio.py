"""Series file formats: CSV (header ``x,y``) and a raw binary layout.

CSV floats are serialized with ``repr`` so a write/read round trip is exact.
The binary format exists for inputs large enough that CSV parsing would
dominate any measurement: magic ``TSB1``, a little-endian uint64 count, then
count interleaved little-endian float64 (x, y) pairs.
"""
from __future__ import annotations

import csv
import io
import struct

import numpy as np

from .core import TimeSeries

__all__ = ["read_series", "write_series", "detect_format"]

MAGIC = b"TSB1"
_HEADER = struct.Struct("<4sQ")


def detect_format(path) -> str:
    """'bin' when the file starts with the binary magic, else 'csv'."""
    with open(path, "rb") as fh:
        return "bin" if fh.read(4) == MAGIC else "csv"


def read_series(path, fmt: str = "auto") -> TimeSeries:
    """Load a series file; ``fmt`` is 'csv', 'bin', or 'auto' (sniff)."""
    if fmt == "auto":
        fmt = detect_format(path)
    if fmt == "bin":
        return _read_bin(path)
    if fmt == "csv":
        return _read_csv(path)
    raise ValueError(f"unknown format {fmt!r}")


def write_series(path, series: TimeSeries, fmt: str = "csv") -> None:
    """Write a series; see :func:`read_series` for formats."""
    if fmt == "bin":
        _write_bin(path, series.xs, series.ys)
    elif fmt == "csv":
        with open(path, "w", newline="") as fh:
            write_csv_points(fh, series.xs, series.ys)
    else:
        raise ValueError(f"unknown format {fmt!r}")


def write_csv_points(fh: io.TextIOBase, xs: np.ndarray, ys: np.ndarray) -> None:
    writer = csv.writer(fh)
    writer.writerow(["x", "y"])
    for x, y in zip(xs.tolist(), ys.tolist()):
        writer.writerow([repr(x), repr(y)])


def _read_csv(path) -> TimeSeries:
    xs: list[float] = []
    ys: list[float] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip().lower() for c in header[:2]] != ["x", "y"]:
            raise ValueError(f"{path}: expected a CSV with an 'x,y' header")
        for row in reader:
            if not row:
                continue
            xs.append(float(row[0]))
            ys.append(float(row[1]))
    return TimeSeries(np.asarray(xs), np.asarray(ys))


def _write_bin(path, xs: np.ndarray, ys: np.ndarray) -> None:
    interleaved = np.empty(2 * xs.shape[0], dtype="<f8")
    interleaved[0::2] = xs
    interleaved[1::2] = ys
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, xs.shape[0]))
        fh.write(interleaved.tobytes())


def _read_bin(path) -> TimeSeries:
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) != _HEADER.size:
            raise ValueError(f"{path}: truncated binary header")
        magic, count = _HEADER.unpack(head)
        if magic != MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        data = np.fromfile(fh, dtype="<f8", count=2 * count)
    if data.shape[0] != 2 * count:
        raise ValueError(f"{path}: expected {count} samples, file is short")
    return TimeSeries(data[0::2], data[1::2])
