"""Approximation quality metrics and the report record they fill.

``relative_error`` works on the raw float arrays.  ``psnr`` and ``ssim``
are image metrics: both quantize their inputs to 8 bits first (clamp to
[0, 255], round halves away from zero), matching what actually lands in a
written image file.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ShapeMismatchError
from .image import quantize_u8
from .linalg import frobenius

SSIM_WINDOW = 8
SSIM_C1 = (0.01 * 255.0) ** 2
SSIM_C2 = (0.03 * 255.0) ** 2

METRICS_CSV_HEADER = "relative_error,psnr_db,ssim,elapsed_seconds,storage_original,storage_factors"


def _check_same_shape(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"arrays of shapes {a.shape} and {b.shape} cannot be compared")
    return a, b


def relative_error(a, b) -> float:
    """``||a - b||_F / ||a||_F`` with ``a`` as the reference.

    A zero reference yields 0.0 when ``b`` is also zero, else infinity.
    """
    a, b = _check_same_shape(a, b)
    denom = frobenius(a)
    num = frobenius(a - b)
    if denom == 0.0:
        return 0.0 if num == 0.0 else float("inf")
    return num / denom


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in dB over the 8-bit-quantized pair.

    ``20 * log10(255 / sqrt(MSE))``; +infinity when the quantized images
    are identical.
    """
    a, b = _check_same_shape(a, b)
    qa = quantize_u8(a).astype(np.float64)
    qb = quantize_u8(b).astype(np.float64)
    mse = float(np.mean((qa - qb) ** 2))
    if mse == 0.0:
        return float("inf")
    return float(10.0 * np.log10(255.0**2 / mse))


def _windows(q: np.ndarray) -> np.ndarray:
    """Stack the full, non-overlapping 8x8 tiles; whole image if smaller."""
    h, w = q.shape
    th, tw = h // SSIM_WINDOW, w // SSIM_WINDOW
    if th == 0 or tw == 0:
        return q.reshape(1, -1)
    tiles = (
        q[: th * SSIM_WINDOW, : tw * SSIM_WINDOW]
        .reshape(th, SSIM_WINDOW, tw, SSIM_WINDOW)
        .transpose(0, 2, 1, 3)
        .reshape(th * tw, SSIM_WINDOW * SSIM_WINDOW)
    )
    return tiles


def ssim(a, b) -> float:
    """Mean structural similarity over non-overlapping 8x8 windows of the
    8-bit-quantized pair (population moments, C1/C2 for 255 dynamic range).
    """
    a, b = _check_same_shape(a, b)
    if a.ndim != 2:
        raise ShapeMismatchError(f"ssim expects 2-D images, got {a.ndim}-D")
    x = _windows(quantize_u8(a).astype(np.float64))
    y = _windows(quantize_u8(b).astype(np.float64))
    mx = x.mean(axis=1)
    my = y.mean(axis=1)
    vx = (x * x).mean(axis=1) - mx * mx
    vy = (y * y).mean(axis=1) - my * my
    cov = (x * y).mean(axis=1) - mx * my
    score = ((2 * mx * my + SSIM_C1) * (2 * cov + SSIM_C2)) / (
        (mx * mx + my * my + SSIM_C1) * (vx + vy + SSIM_C2)
    )
    return float(score.mean())


@dataclass(frozen=True)
class MetricsReport:
    """One comparison between a reference array and its approximation.

    ``relative_error`` is computed on raw floats; ``psnr_db`` and ``ssim``
    on the 8-bit-quantized pair.  ``storage_original`` and
    ``storage_factors`` count stored scalars; pipelines fill
    ``elapsed_seconds`` with the decomposition wall time.
    """

    relative_error: float
    psnr_db: float
    ssim: float
    elapsed_seconds: float
    storage_original: int
    storage_factors: int

    def csv_row(self) -> str:
        return ",".join(
            [
                repr(self.relative_error),
                repr(self.psnr_db),
                repr(self.ssim),
                repr(self.elapsed_seconds),
                str(self.storage_original),
                str(self.storage_factors),
            ]
        )

    def text(self) -> str:
        return "\n".join(
            [
                f"relative_error:   {self.relative_error!r}",
                f"psnr_db:          {self.psnr_db!r}",
                f"ssim:             {self.ssim!r}",
                f"elapsed_seconds:  {self.elapsed_seconds!r}",
                f"storage_original: {self.storage_original}",
                f"storage_factors:  {self.storage_factors}",
            ]
        )


def metrics(a, b, *, elapsed_seconds: float = 0.0, storage_original: int | None = None,
            storage_factors: int | None = None) -> MetricsReport:
    """Compare approximation ``b`` against reference ``a``.

    The storage counts default to the element count of ``a`` (no
    compression); decomposition pipelines pass their actual factor counts.
    """
    a, b = _check_same_shape(a, b)
    size = int(a.size)
    return MetricsReport(
        relative_error=relative_error(a, b),
        psnr_db=psnr(a, b),
        ssim=ssim(a, b) if a.ndim == 2 else float("nan"),
        elapsed_seconds=float(elapsed_seconds),
        storage_original=size if storage_original is None else int(storage_original),
        storage_factors=size if storage_factors is None else int(storage_factors),
    )
