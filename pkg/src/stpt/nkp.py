"""Nearest Kronecker product via the block-rearrangement trick.

A matrix ``a`` partitioned into an ``m1 x n1`` grid of ``m2 x n2`` blocks
can be rearranged into an ``(m1 n1) x (m2 n2)`` matrix whose row
``(j - 1) * m1 + i`` is ``vec(block_{i,j})^T`` (block columns stacked,
first-index-fastest).  Under this rearrangement, ``a`` is an exact
Kronecker product ``b (x) c`` iff the rearranged matrix is rank one, and
the best Frobenius approximation by a single Kronecker product comes from
the dominant singular triplet: ``vec(b) = sqrt(s1) * u1`` and
``vec(c) = sqrt(s1) * v1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceError, ShapeMismatchError
from .linalg import apply_sign_convention, frobenius
from .validation import as_matrix, check_divides

# Full SVD of the rearranged matrix below this minimum dimension; dominant
# triplet by power iteration above it.
FULL_SVD_LIMIT = 512
POWER_TOL = 1e-12
POWER_MAX_ITER = 10_000

# The dominant-triplet factorization is flagged nearly degenerate when the
# top two singular values of the rearranged matrix are this close.
DEGENERACY_RTOL = 1e-10


@dataclass(frozen=True)
class KronBlockPartition:
    """Partition of an ``(m1 m2) x (n1 n2)`` matrix into ``m2 x n2`` blocks."""

    m1: int
    n1: int
    m2: int
    n2: int

    def __post_init__(self):
        for name in ("m1", "n1", "m2", "n2"):
            if getattr(self, name) < 1:
                raise ShapeMismatchError(f"partition {name} must be positive")

    @classmethod
    def from_divisors(cls, shape: tuple[int, int], s1: int, s2: int) -> "KronBlockPartition":
        """Partition with ``s1 x s2`` blocks; each must divide its dimension."""
        m1 = check_divides(s1, shape[0], "rows")
        n1 = check_divides(s2, shape[1], "columns")
        return cls(m1=m1, n1=n1, m2=int(s1), n2=int(s2))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m1 * self.m2, self.n1 * self.n2)

    @property
    def rearranged_shape(self) -> tuple[int, int]:
        return (self.m1 * self.n1, self.m2 * self.n2)


def rearrange(a, part: KronBlockPartition) -> np.ndarray:
    """Stack ``vec(block)^T`` rows in column-of-blocks order (see module
    docstring)."""
    a = as_matrix(a, "a", check_finite=False)
    if a.shape != part.shape:
        raise ShapeMismatchError(f"matrix shape {a.shape} does not match partition {part.shape}")
    m1, n1, m2, n2 = part.m1, part.n1, part.m2, part.n2
    return (
        a.reshape(m1, m2, n1, n2)
        .transpose(2, 0, 3, 1)
        .reshape(m1 * n1, m2 * n2)
    )


def rearrange_inverse(at, part: KronBlockPartition) -> np.ndarray:
    """Exact inverse of :func:`rearrange`."""
    at = as_matrix(at, "at", check_finite=False)
    if at.shape != part.rearranged_shape:
        raise ShapeMismatchError(
            f"matrix shape {at.shape} does not match rearranged shape {part.rearranged_shape}"
        )
    m1, n1, m2, n2 = part.m1, part.n1, part.m2, part.n2
    return (
        at.reshape(n1, m1, n2, m2)
        .transpose(1, 3, 0, 2)
        .reshape(m1 * m2, n1 * n2)
    )


@dataclass(frozen=True)
class NkpResult:
    """Best single-term Kronecker approximation ``a ~ b (x) c``.

    ``residual`` is ``||a - b (x) c||_F``, equal to the energy of the
    trailing singular values of the rearranged matrix.  ``tilde_sigma``
    holds the singular values of the rearranged matrix — all of them on
    the full-SVD path, only the dominant one on the power-iteration path
    (the tail is then recovered from the Frobenius energy).
    ``near_degenerate`` flags an ill-determined factorization (top two
    singular values within ``DEGENERACY_RTOL``); it is only meaningful on
    the full-SVD path.
    """

    b: np.ndarray
    c: np.ndarray
    residual: float
    tilde_sigma: np.ndarray
    tail_energy: float
    near_degenerate: bool


def _power_dominant(at: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    """Dominant singular triplet of ``at`` by alternating power iteration.

    Deterministic start: the unit vector selecting the largest-norm column.
    """
    col_norms = np.linalg.norm(at, axis=0)
    v = np.zeros(at.shape[1])
    v[int(np.argmax(col_norms))] = 1.0
    sigma = 0.0
    for _ in range(POWER_MAX_ITER):
        u = at @ v
        nu = np.linalg.norm(u)
        if nu == 0.0:
            return 0.0, u, v
        u /= nu
        w = at.T @ u
        new_sigma = float(np.linalg.norm(w))
        v = w / new_sigma
        if abs(new_sigma - sigma) <= POWER_TOL * new_sigma:
            return new_sigma, u, v
        sigma = new_sigma
    raise ConvergenceError(
        f"power iteration did not converge within {POWER_MAX_ITER} iterations"
    )


def nearest_kron(a, s1: int, s2: int) -> NkpResult:
    """Best Frobenius approximation of ``a`` by ``b (x) c`` with ``c`` of
    shape ``(s1, s2)``.

    ``s1`` must divide the row count and ``s2`` the column count.  The
    square-root magnitude split between ``b`` and ``c`` is fixed, and the
    dominant left vector is sign-normalized (largest-magnitude entry
    positive), making the pair deterministic.  A zero matrix yields zero
    factors.
    """
    a = as_matrix(a, "a")
    part = KronBlockPartition.from_divisors(a.shape, s1, s2)
    m1, n1, m2, n2 = part.m1, part.n1, part.m2, part.n2
    if not np.any(a):
        return NkpResult(
            b=np.zeros((m1, n1)),
            c=np.zeros((m2, n2)),
            residual=0.0,
            tilde_sigma=np.zeros(min(part.rearranged_shape)),
            tail_energy=0.0,
            near_degenerate=False,
        )
    at = rearrange(a, part)
    if min(at.shape) <= FULL_SVD_LIMIT:
        try:
            uu, tilde_sigma, vvt = np.linalg.svd(at, full_matrices=False)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"SVD did not converge: {exc}") from exc
        uu, vv = apply_sign_convention(uu, vvt.T)
        u1, v1 = uu[:, 0], vv[:, 0]
        sigma1 = float(tilde_sigma[0])
        tail_energy = float(np.sum(tilde_sigma[1:] ** 2))
        near_degenerate = (
            tilde_sigma.size > 1 and sigma1 - float(tilde_sigma[1]) <= DEGENERACY_RTOL * sigma1
        )
    else:
        sigma1, u1, v1 = _power_dominant(at)
        i = int(np.argmax(np.abs(u1)))
        if u1[i] < 0:
            u1, v1 = -u1, -v1
        tilde_sigma = np.array([sigma1])
        tail_energy = max(frobenius(at) ** 2 - sigma1**2, 0.0)
        near_degenerate = False
    scale = np.sqrt(sigma1)
    b = (scale * u1).reshape(m1, n1, order="F")
    c = (scale * v1).reshape(m2, n2, order="F")
    return NkpResult(
        b=b,
        c=c,
        residual=float(np.sqrt(tail_energy)),
        tilde_sigma=tilde_sigma,
        tail_energy=tail_energy,
        near_degenerate=near_degenerate,
    )
