"""Binary PGM (P5, maxval 255) reading and writing.

An image maps to a ``height x width`` float matrix with entry ``(y, x)``
equal to pixel ``(row y, col x)``.  Writing clamps to [0, 255] and rounds
halves away from zero before emitting bytes.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .exceptions import FileFormatError, TruncatedFileError
from .validation import as_matrix


def _read_header_token(raw: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-delimited header token, skipping '#' comments."""
    n = len(raw)
    while pos < n:
        ch = raw[pos : pos + 1]
        if ch == b"#":
            while pos < n and raw[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif ch.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < n and not raw[pos : pos + 1].isspace() and raw[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise TruncatedFileError("unexpected end of PGM header", offset=pos)
    return raw[start:pos], pos


def read_pgm(path) -> np.ndarray:
    """Read a binary PGM file into a ``height x width`` float64 matrix."""
    raw = Path(path).read_bytes()
    if raw[:2] != b"P5":
        raise FileFormatError(f"not a binary PGM (P5) file: magic {raw[:2]!r}", offset=0)
    pos = 2
    fields = []
    for _ in range(3):
        token, pos = _read_header_token(raw, pos)
        try:
            fields.append(int(token))
        except ValueError:
            raise FileFormatError(f"non-numeric PGM header field {token!r}", offset=pos) from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise FileFormatError(f"PGM dimensions must be positive, got {width}x{height}", offset=pos)
    if maxval != 255:
        raise FileFormatError(f"unsupported PGM maxval {maxval}, only 255 is handled", offset=pos)
    pos += 1  # single whitespace byte separates header from raster
    expected = pos + width * height
    if len(raw) < expected:
        raise TruncatedFileError(
            f"PGM raster holds {len(raw) - pos} of {width * height} bytes", offset=len(raw)
        )
    pixels = np.frombuffer(raw, dtype=np.uint8, count=width * height, offset=pos)
    return pixels.reshape(height, width).astype(np.float64)


def quantize_u8(a) -> np.ndarray:
    """Clamp to [0, 255] and round halves away from zero; returns uint8."""
    a = np.asarray(a, dtype=np.float64)
    clamped = np.clip(a, 0.0, 255.0)
    return np.floor(clamped + 0.5).astype(np.uint8)


def write_pgm(m, path) -> None:
    """Write a matrix as a binary PGM image, quantizing with
    :func:`quantize_u8`."""
    m = as_matrix(m, "image")
    height, width = m.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + quantize_u8(m).tobytes())
