"""Input validation helpers shared by the public entry points."""

from __future__ import annotations

import numpy as np

from .exceptions import (
    DataValidationError,
    IncompatibleDimensionError,
    IndexOutOfRangeError,
    ShapeMismatchError,
)


def as_matrix(x, name: str = "matrix", check_finite: bool = True) -> np.ndarray:
    """Coerce ``x`` to a 2-D float64 array, rejecting non-finite entries."""
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 2:
        raise ShapeMismatchError(f"{name} must be 2-D, got {a.ndim}-D")
    if a.size == 0:
        raise ShapeMismatchError(f"{name} must have positive dimensions, got shape {a.shape}")
    if check_finite and not np.isfinite(a).all():
        raise DataValidationError(f"{name} contains NaN or Inf entries")
    return a


def as_vector(x, name: str = "vector", check_finite: bool = True) -> np.ndarray:
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 1 or a.size == 0:
        raise ShapeMismatchError(f"{name} must be a nonempty 1-D array, got shape {a.shape}")
    if check_finite and not np.isfinite(a).all():
        raise DataValidationError(f"{name} contains NaN or Inf entries")
    return a


def as_tensor(x, name: str = "tensor", check_finite: bool = True) -> np.ndarray:
    """Coerce ``x`` to a float64 array of order >= 1 with positive dimensions."""
    a = np.asarray(x, dtype=np.float64)
    if a.ndim < 1:
        a = a.reshape(1)
    if a.size == 0:
        raise ShapeMismatchError(f"{name} must have positive dimensions, got shape {a.shape}")
    if check_finite and not np.isfinite(a).all():
        raise DataValidationError(f"{name} contains NaN or Inf entries")
    return a


def check_mode(k: int, order: int) -> int:
    """Validate a 1-based mode number against a tensor order."""
    k = int(k)
    if not 1 <= k <= order:
        raise IndexOutOfRangeError(f"mode {k} out of range for an order-{order} tensor")
    return k


def check_divides(s: int, n: int, what: str) -> int:
    """Require ``s`` to be a positive divisor of ``n``; return the quotient."""
    s = int(s)
    if s < 1:
        raise IncompatibleDimensionError(f"{what}: divisor must be positive, got {s}")
    if n % s != 0:
        raise IncompatibleDimensionError(f"{what}: {s} does not divide {n}")
    return n // s
