"""The (left) semi-tensor product and its modal extension to tensors.

The semi-tensor product generalizes the matrix product to operands whose
inner dimensions need not match, provided one divides the other.  For
``m x n`` times ``p x q``:

* ``n == p``          -> ordinary product;
* ``n == k * p``      -> ``a @ kron(b, I_k)``, an ``m x (k q)`` result;
* ``k * n == p``      -> ``kron(a, I_k) @ b``, an ``(k m) x q`` result.

The modal version multiplies the mode-k unfolding of a tensor from the
left by a factor with ``n_k / s_k`` columns, growing that mode's dimension
by the factor's row count times ``s_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .exceptions import IncompatibleDimensionError
from .linalg import kron
from .tensor import mode_product
from .validation import as_matrix, as_tensor, as_vector, check_mode


class StpCase(Enum):
    """How two inner dimensions relate under the semi-tensor product."""

    EQUAL = "equal"
    LEFT_FACTOR = "left-factor"  # right dimension divides the left one
    RIGHT_FACTOR = "right-factor"  # left dimension divides the right one


@dataclass(frozen=True)
class StpShapeRelation:
    case: StpCase
    multiplier: int


def shape_relation(s: int, t: int) -> StpShapeRelation:
    """Classify inner dimensions ``s`` (left) and ``t`` (right).

    Equality wins over the divisor cases, so the multiplier is 1 exactly
    when the dimensions match.
    """
    s, t = int(s), int(t)
    if s < 1 or t < 1:
        raise IncompatibleDimensionError(f"dimensions must be positive, got {s} and {t}")
    if s == t:
        return StpShapeRelation(StpCase.EQUAL, 1)
    if s % t == 0:
        return StpShapeRelation(StpCase.LEFT_FACTOR, s // t)
    if t % s == 0:
        return StpShapeRelation(StpCase.RIGHT_FACTOR, t // s)
    raise IncompatibleDimensionError(
        f"dimensions {s} and {t} are incompatible: neither divides the other"
    )


class StpVector(NamedTuple):
    """A semi-tensor vector product with its orientation.

    ``orientation`` is ``"row"``, ``"column"``, or ``"scalar"``; ``values``
    is always 1-D (length 1 in the scalar case).
    """

    values: np.ndarray
    orientation: str


def stp_vec(x, y) -> StpVector:
    """Semi-tensor product of two vectors.

    With ``len(x) = t * n``: split ``x`` into ``t`` consecutive blocks of
    length ``n`` and return the row vector ``sum_k y_k * x_block_k``.  With
    ``len(y) = s * n``: split ``y`` and return the column vector
    ``sum_k x_k * y_block_k``.  Equal lengths give the ordinary inner
    product.
    """
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    rel = shape_relation(x.size, y.size)
    if rel.case is StpCase.EQUAL:
        return StpVector(np.array([float(x @ y)]), "scalar")
    if rel.case is StpCase.LEFT_FACTOR:
        n = rel.multiplier
        return StpVector(y @ x.reshape(y.size, n), "row")
    n = rel.multiplier
    return StpVector(x @ y.reshape(x.size, n), "column")


def stp_mat(a, b) -> np.ndarray:
    """Semi-tensor product of two matrices (see module docstring)."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    rel = shape_relation(a.shape[1], b.shape[0])
    if rel.case is StpCase.EQUAL:
        return a @ b
    if rel.case is StpCase.LEFT_FACTOR:
        return a @ kron(b, np.eye(rel.multiplier))
    return kron(a, np.eye(rel.multiplier)) @ b


def mode_stp(t, k: int, u, expect_s: int | None = None) -> np.ndarray:
    """Mode-k semi-tensor product of tensor ``t`` with matrix ``u``.

    ``u`` must have ``n_k / s_k`` columns for some positive integer
    ``s_k``; the result equals ``mode_product(t, k, kron(u, I_{s_k}))`` and
    has mode-k dimension ``s_k * u.shape[0]``.  Pass ``expect_s`` to assert
    the implied ``s_k``.
    """
    t = as_tensor(t, check_finite=False)
    u = as_matrix(u, "u")
    k = check_mode(k, t.ndim)
    n_k = t.shape[k - 1]
    if n_k % u.shape[1] != 0:
        raise IncompatibleDimensionError(
            f"mode {k} of dimension {n_k} is not a multiple of the factor's"
            f" {u.shape[1]} columns"
        )
    s_k = n_k // u.shape[1]
    if expect_s is not None and s_k != int(expect_s):
        raise IncompatibleDimensionError(
            f"mode {k}: factor implies block size {s_k}, expected {expect_s}"
        )
    return mode_product(t, k, kron(u, np.eye(s_k)))
