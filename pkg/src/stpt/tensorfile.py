"""Binary tensor container.

Layout (all integers little-endian)::

    offset 0   magic    b"STPT"
    offset 4   version  u8, currently 1
    offset 5   dtype    u8, 1 = float64 little-endian
    offset 6   order    u32, number of dimensions d >= 1
    offset 10  dims     d x u32, each >= 1
    then       payload  prod(dims) float64 values, first index fastest

Round trips are bitwise exact.  Payloads containing NaN or Inf are
rejected on read and write.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .exceptions import DataValidationError, FileFormatError, TruncatedFileError
from .validation import as_tensor

MAGIC = b"STPT"
VERSION = 1
DTYPE_FLOAT64 = 1

_HEADER = struct.Struct("<4sBBI")


def write_tensor(t, path) -> None:
    """Write ``t`` to ``path`` in the container format above."""
    t = as_tensor(t, "t")
    dims = t.shape
    header = _HEADER.pack(MAGIC, VERSION, DTYPE_FLOAT64, len(dims))
    dims_bytes = struct.pack(f"<{len(dims)}I", *dims)
    payload = np.ascontiguousarray(t.ravel(order="F"), dtype="<f8").tobytes()
    Path(path).write_bytes(header + dims_bytes + payload)


def read_tensor(path) -> np.ndarray:
    """Read a tensor written by :func:`write_tensor`."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise TruncatedFileError("file too short for header", offset=len(raw))
    magic, version, dtype, order = _HEADER.unpack_from(raw, 0)
    if magic != MAGIC:
        raise FileFormatError(f"bad magic {magic!r}, expected {MAGIC!r}", offset=0)
    if version != VERSION:
        raise FileFormatError(f"unsupported version {version}", offset=4)
    if dtype != DTYPE_FLOAT64:
        raise FileFormatError(f"unsupported dtype code {dtype}", offset=5)
    if order < 1:
        raise FileFormatError("order must be at least 1", offset=6)
    dims_end = _HEADER.size + 4 * order
    if len(raw) < dims_end:
        raise TruncatedFileError("file too short for dimension list", offset=len(raw))
    dims = struct.unpack_from(f"<{order}I", raw, _HEADER.size)
    for i, n in enumerate(dims):
        if n < 1:
            raise FileFormatError(f"dimension {i + 1} must be positive", offset=_HEADER.size + 4 * i)
    count = 1
    for n in dims:
        count *= n
    expected = dims_end + 8 * count
    if len(raw) < expected:
        raise TruncatedFileError(
            f"payload holds {(len(raw) - dims_end) // 8} of {count} values", offset=len(raw)
        )
    if len(raw) > expected:
        raise FileFormatError(f"{len(raw) - expected} trailing bytes after payload", offset=expected)
    values = np.frombuffer(raw, dtype="<f8", count=count, offset=dims_end)
    if not np.isfinite(values).all():
        raise DataValidationError("payload contains NaN or Inf values")
    return values.reshape(dims, order="F").copy()
