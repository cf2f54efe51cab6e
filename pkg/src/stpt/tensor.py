"""Dense tensor layout and mode-wise operations.

Conventions used throughout the package:

* Tensors are ``numpy`` arrays of order ``d >= 1``; modes are numbered
  ``1..d`` in the public API.
* The linearization of a multi-index ``(i_1, ..., i_d)`` (all 1-based) is
  first-index-fastest::

      <i> = i_1 + sum_{a=2}^{d} (i_a - 1) * n_1 * ... * n_{a-1}

  which is exactly Fortran-order raveling.
* The mode-k unfolding is the ``n_k x (n / n_k)`` matrix whose entry
  ``(i_k, <i_-k>)`` equals ``A(i_1, ..., i_d)``, where ``<i_-k>`` linearizes
  the remaining indices in ascending mode order with the same
  first-fastest rule.
"""

from __future__ import annotations

import numpy as np

from .exceptions import IndexOutOfRangeError, ShapeMismatchError
from .validation import as_matrix, as_tensor, check_mode


def multi_index(dims: tuple[int, ...], index: tuple[int, ...]) -> int:
    """Map a 1-based multi-index to its 1-based linear position.

    The first mode varies fastest; the result lies in ``[1, prod(dims)]``.
    """
    dims = tuple(int(n) for n in dims)
    index = tuple(int(i) for i in index)
    if len(dims) != len(index):
        raise ShapeMismatchError(
            f"multi-index has {len(index)} components for {len(dims)} dimensions"
        )
    position = 0
    stride = 1
    for k, (n, i) in enumerate(zip(dims, index), start=1):
        if n < 1:
            raise ShapeMismatchError(f"dimension {k} must be positive, got {n}")
        if not 1 <= i <= n:
            raise IndexOutOfRangeError(f"index {i} out of range [1, {n}] in mode {k}")
        position += (i - 1) * stride
        stride *= n
    return position + 1


def vec(t) -> np.ndarray:
    """Vectorize a tensor in first-index-fastest (Fortran) order."""
    return as_tensor(t, check_finite=False).ravel(order="F")


def unfold(t, k: int) -> np.ndarray:
    """Mode-k unfolding of ``t`` as an ``n_k x (n / n_k)`` matrix.

    Column ``<i_-k>`` collects the mode-k fiber at the remaining indices,
    ordered ascending by mode with the first remaining mode fastest.
    """
    t = as_tensor(t, check_finite=False)
    k = check_mode(k, t.ndim)
    axis = k - 1
    return np.reshape(np.moveaxis(t, axis, 0), (t.shape[axis], -1), order="F")


def refold(m, k: int, dims: tuple[int, ...]) -> np.ndarray:
    """Inverse of :func:`unfold`: rebuild the tensor with shape ``dims``."""
    m = as_matrix(m, "m", check_finite=False)
    dims = tuple(int(n) for n in dims)
    if any(n < 1 for n in dims):
        raise ShapeMismatchError(f"dimensions must be positive, got {dims}")
    k = check_mode(k, len(dims))
    axis = k - 1
    rest = dims[:axis] + dims[axis + 1 :]
    expected = (dims[axis], int(np.prod(rest, dtype=np.int64)) if rest else 1)
    if m.shape != expected:
        raise ShapeMismatchError(
            f"matrix of shape {m.shape} cannot refold to {dims} along mode {k}"
            f" (expected {expected})"
        )
    t = np.reshape(m, (dims[axis],) + rest, order="F")
    return np.moveaxis(t, 0, axis)


def mode_product(t, k: int, u) -> np.ndarray:
    """Mode-k product: multiply every mode-k fiber of ``t`` by the matrix
    ``u``, replacing dimension ``n_k`` with ``u.shape[0]``.

    Computed as ``refold(u @ unfold(t, k), k, new_dims)`` so that unfolding
    identities hold exactly.
    """
    t = as_tensor(t, check_finite=False)
    u = as_matrix(u, "u", check_finite=False)
    k = check_mode(k, t.ndim)
    if u.shape[1] != t.shape[k - 1]:
        raise ShapeMismatchError(
            f"matrix with {u.shape[1]} columns cannot multiply mode {k}"
            f" of dimension {t.shape[k - 1]}"
        )
    dims = list(t.shape)
    dims[k - 1] = u.shape[0]
    return refold(u @ unfold(t, k), k, tuple(dims))
