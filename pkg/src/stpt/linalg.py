"""Dense matrix primitives: Kronecker product, SVD with a fixed sign
convention, and the Frobenius norm.

The SVD routines return economy-size factors with singular values in
nonincreasing order.  To make factorizations reproducible, each singular
vector pair is sign-normalized: the entry of largest magnitude in the left
vector is made positive (ties broken by lowest row index), and the paired
right vector is flipped with it.
"""

from __future__ import annotations

import sys
from typing import NamedTuple

import numpy as np

from .exceptions import ConvergenceError, DimensionOverflowError, RankOutOfRangeError
from .validation import as_matrix

# Kronecker results larger than this many elements cannot be addressed.
MAX_RESULT_ELEMENTS = sys.maxsize // 8


class SvdTriple(NamedTuple):
    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices."""
    a = as_matrix(a, "a", check_finite=False)
    b = as_matrix(b, "b", check_finite=False)
    elements = a.shape[0] * b.shape[0] * a.shape[1] * b.shape[1]
    if elements > MAX_RESULT_ELEMENTS:
        raise DimensionOverflowError(
            f"Kronecker product of {a.shape} and {b.shape} exceeds the platform size limit"
        )
    return np.kron(a, b)


def apply_sign_convention(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Flip paired columns of ``u``/``v`` so each ``u`` column's
    largest-magnitude entry is positive (ties -> lowest index)."""
    u = u.copy()
    v = v.copy()
    pairs = min(u.shape[1], v.shape[1])
    for j in range(pairs):
        i = int(np.argmax(np.abs(u[:, j])))
        if u[i, j] < 0:
            u[:, j] = -u[:, j]
            v[:, j] = -v[:, j]
    return u, v


def svd(a) -> SvdTriple:
    """Economy SVD ``a = u @ diag(sigma) @ v.T`` with ``p = min(m, n)``
    columns, sign-normalized as described in the module docstring.

    Columns belonging to zero singular values are retained, so ``u`` and
    ``v`` always have orthonormal columns.
    """
    a = as_matrix(a, "a")
    try:
        u, sigma, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD did not converge: {exc}") from exc
    u, v = apply_sign_convention(u, vt.T)
    return SvdTriple(u, sigma, v)


def truncated_svd(a, r: int) -> SvdTriple:
    """First ``r`` singular triplets of ``svd(a)``, same order and signs."""
    a = as_matrix(a, "a")
    p = min(a.shape)
    r = int(r)
    if not 1 <= r <= p:
        raise RankOutOfRangeError(f"rank {r} out of range [1, {p}] for shape {a.shape}")
    u, sigma, v = svd(a)
    return SvdTriple(u[:, :r], sigma[:r], v[:, :r])


def frobenius(a) -> float:
    """Frobenius norm of an array of any order."""
    return float(np.linalg.norm(np.asarray(a, dtype=np.float64).ravel()))
