"""Tucker-like approximations built on the semi-tensor product.

Matrix case
-----------
``svd_stp`` approximates an ``n1 x n2`` matrix ``a``, given block sizes
``s1 | n1`` and ``s2 | n2``, in three steps: (1) the nearest Kronecker
product ``a ~ b (x) c`` with ``c`` of shape ``s1 x s2``; (2) the SVD
``b = u @ diag(sigma_b) @ v.T``; (3) the block-diagonal middle factor
``Sigma = diag(sigma_b) (x) c`` whose i-th diagonal block is
``sigma_b[i] * c``.  The reconstruction
``kron(u, I_s1) @ Sigma @ kron(v, I_s2).T`` equals ``b (x) c``, so its
error is exactly the Kronecker residual.  ``truncated_svd_stp`` keeps the
``r`` leading blocks; its error is bounded by the Kronecker residual plus
the energy of the dropped blocks (``||S_i||_F = sigma_b[i] * ||c||_F``).
With ``s1 = s2 = 1`` everything reduces to the conventional SVD.

Tensor case
-----------
``hosvd_stp`` applies the matrix construction to every mode-k unfolding of
an order-``d`` tensor (block sizes ``s_k`` and ``s'_k = prod(s) / s_k``),
keeping the full orthogonal left factor per mode, and forms the core by
modal semi-tensor products with the transposed factors.  Each mode's
factor is computed from the *original* tensor, so modes are independent
and may be processed concurrently; results are bit-identical to the
sequential loop.  The ``STPT_THREADS`` environment variable caps the
mode-loop thread count (0 or unset = automatic).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import prod

import numpy as np

from .exceptions import (
    ConvergenceError,
    DataValidationError,
    IncompatibleDimensionError,
    RankOutOfRangeError,
)
from .linalg import apply_sign_convention, frobenius, kron, svd
from .nkp import NkpResult, nearest_kron
from .stp import mode_stp
from .tensor import unfold
from .validation import as_matrix, as_tensor, check_divides


@dataclass(frozen=True)
class SvdStpFactors:
    """Factors of a (possibly truncated) matrix decomposition.

    ``u`` and ``v`` carry the ``r`` leading singular vectors of the
    Kronecker factor ``b``; ``sigma_b`` its leading singular values; ``c``
    the ``s1 x s2`` block factor.  ``tilde_sigma_tail_energy`` is the
    squared Kronecker residual and ``block_tail_norms`` holds
    ``sigma_b[i] * ||c||_F`` for the dropped blocks ``i > r``.
    """

    u: np.ndarray
    v: np.ndarray
    sigma_b: np.ndarray
    c: np.ndarray
    s1: int
    s2: int
    r: int
    tilde_sigma_tail_energy: float
    block_tail_norms: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        """Shape of the matrix the factors approximate."""
        return (self.u.shape[0] * self.s1, self.v.shape[0] * self.s2)

    @property
    def max_rank(self) -> int:
        return min(self.u.shape[0], self.v.shape[0])


@dataclass(frozen=True)
class ModeTail:
    """Per-mode truncation data: squared Kronecker residual of the
    unfolding and the norms of the dropped diagonal blocks."""

    tilde_tail_energy: float
    block_tail_norms: np.ndarray


@dataclass(frozen=True)
class HosvdStpFactors:
    """Core tensor plus one factor per mode.

    Mode-k factor has shape ``(n_k / s_k) x r_k``; the core has dimensions
    ``r_k * s_k``.  In the full decomposition ``r_k = n_k / s_k`` and the
    factors are square orthogonal.
    """

    core: np.ndarray
    factors: tuple[np.ndarray, ...]
    s: tuple[int, ...]
    r: tuple[int, ...]
    per_mode_tails: tuple[ModeTail, ...]

    @property
    def shape(self) -> tuple[int, ...]:
        """Dimensions of the tensor the factors approximate."""
        return tuple(u.shape[0] * sk for u, sk in zip(self.factors, self.s))


def svd_stp(a, s1: int, s2: int) -> SvdStpFactors:
    """Full decomposition; keeps all ``p = min(n1/s1, n2/s2)`` blocks."""
    a = as_matrix(a, "a")
    nkp = nearest_kron(a, s1, s2)
    u, sigma_b, v = svd(nkp.b)
    return SvdStpFactors(
        u=u,
        v=v,
        sigma_b=sigma_b,
        c=nkp.c,
        s1=int(s1),
        s2=int(s2),
        r=sigma_b.size,
        tilde_sigma_tail_energy=nkp.tail_energy,
        block_tail_norms=np.zeros(0),
    )


def truncated_svd_stp(a, s1: int, s2: int, r: int) -> SvdStpFactors:
    """Keep the ``r`` leading diagonal blocks, ``1 <= r <= p``."""
    a = as_matrix(a, "a")
    nkp = nearest_kron(a, s1, s2)
    p = min(nkp.b.shape)
    r = int(r)
    if not 1 <= r <= p:
        raise RankOutOfRangeError(f"rank {r} out of range [1, {p}]")
    u, sigma_b, v = svd(nkp.b)
    return SvdStpFactors(
        u=u[:, :r],
        v=v[:, :r],
        sigma_b=sigma_b[:r],
        c=nkp.c,
        s1=int(s1),
        s2=int(s2),
        r=r,
        tilde_sigma_tail_energy=nkp.tail_energy,
        block_tail_norms=sigma_b[r:] * frobenius(nkp.c),
    )


def materialize_sigma(f: SvdStpFactors) -> np.ndarray:
    """Dense middle factor ``blkdiag(sigma_b[1] * c, ..., sigma_b[r] * c)``.

    For the full decomposition of a non-square block grid the result is
    zero-padded to the full matrix shape, matching the exact factorization
    identity.
    """
    sigma = kron(np.diag(f.sigma_b), f.c)
    if f.r == f.max_rank and sigma.shape != f.shape:
        padded = np.zeros(f.shape)
        padded[: sigma.shape[0], : sigma.shape[1]] = sigma
        return padded
    return sigma


def reconstruct_svd_stp(f: SvdStpFactors) -> np.ndarray:
    """Evaluate ``kron(u, I_s1) @ Sigma_r @ kron(v, I_s2).T``.

    Computed in the algebraically identical form
    ``kron(u @ diag(sigma_b) @ v.T, c)``, which avoids materializing the
    identity-expanded factors.
    """
    b_r = (f.u * f.sigma_b) @ f.v.T
    return np.kron(b_r, f.c)


def svd_stp_error_bound(f: SvdStpFactors) -> float:
    """Upper bound on the reconstruction error in the Frobenius norm:
    Kronecker residual plus the energy of the dropped blocks."""
    return float(
        np.sqrt(f.tilde_sigma_tail_energy) + np.sqrt(np.sum(f.block_tail_norms**2))
    )


def _left_factor(b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Square orthogonal left factor and singular values of ``b``.

    When ``b`` is wide the economy SVD already yields a square ``u``;
    otherwise the full SVD completes the basis (completion columns pair
    with zero singular values).
    """
    try:
        u, sigma, vt = np.linalg.svd(b, full_matrices=b.shape[0] > b.shape[1])
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD did not converge: {exc}") from exc
    u, _ = apply_sign_convention(u, vt.T)
    return u, sigma


def _mode_spectrum(t: np.ndarray, k: int, s: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray, float, float]:
    """Per-mode factor data: (square left factor, block scales,
    ||c||_F, squared Kronecker residual of the unfolding)."""
    s_k = s[k - 1]
    s_rest = prod(s) // s_k
    a_k = unfold(t, k)
    nkp: NkpResult = nearest_kron(a_k, s_k, s_rest)
    u, sigma = _left_factor(nkp.b)
    return u, sigma, frobenius(nkp.c), nkp.tail_energy


def _resolve_threads(threads: int | None, d: int) -> int:
    if threads is None:
        env = os.environ.get("STPT_THREADS", "").strip()
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise DataValidationError(
                    f"STPT_THREADS must be a nonnegative integer, got {env!r}"
                ) from None
        else:
            threads = 0
    threads = int(threads)
    if threads < 0:
        raise DataValidationError(f"thread count must be nonnegative, got {threads}")
    if threads == 0:
        threads = os.cpu_count() or 1
    return max(1, min(threads, d))


def _mode_spectra(t: np.ndarray, s: tuple[int, ...], threads: int | None):
    d = t.ndim
    workers = _resolve_threads(threads, d)
    modes = range(1, d + 1)
    if workers == 1:
        return [_mode_spectrum(t, k, s) for k in modes]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda k: _mode_spectrum(t, k, s), modes))


def _check_block_sizes(t: np.ndarray, s) -> tuple[int, ...]:
    s = tuple(int(x) for x in s)
    if len(s) != t.ndim:
        raise IncompatibleDimensionError(
            f"{len(s)} block sizes supplied for an order-{t.ndim} tensor"
        )
    for k, (n_k, s_k) in enumerate(zip(t.shape, s), start=1):
        check_divides(s_k, n_k, f"mode {k}")
    return s


def hosvd_stp(t, s, threads: int | None = None) -> HosvdStpFactors:
    """Full decomposition: every mode keeps its complete orthogonal factor,
    so the reconstruction is exact up to roundoff."""
    t = as_tensor(t, "t")
    s = _check_block_sizes(t, s)
    spectra = _mode_spectra(t, s, threads)
    factors = tuple(u for u, _, _, _ in spectra)
    tails = tuple(
        ModeTail(tilde_tail_energy=tail, block_tail_norms=np.zeros(0))
        for _, _, _, tail in spectra
    )
    core = t
    for k, (u, s_k) in enumerate(zip(factors, s), start=1):
        core = mode_stp(core, k, u.T, expect_s=s_k)
    return HosvdStpFactors(
        core=core,
        factors=factors,
        s=s,
        r=tuple(u.shape[1] for u in factors),
        per_mode_tails=tails,
    )


def truncated_hosvd_stp(t, s, r, threads: int | None = None) -> HosvdStpFactors:
    """Keep the ``r_k`` leading factor columns per mode,
    ``1 <= r_k <= min(n_k/s_k, n'_k/s'_k)``."""
    t = as_tensor(t, "t")
    s = _check_block_sizes(t, s)
    r = tuple(int(x) for x in r)
    if len(r) != t.ndim:
        raise RankOutOfRangeError(f"{len(r)} ranks supplied for an order-{t.ndim} tensor")
    spectra = _mode_spectra(t, s, threads)
    for k, (r_k, (_, sigma, _, _)) in enumerate(zip(r, spectra), start=1):
        if not 1 <= r_k <= sigma.size:
            raise RankOutOfRangeError(
                f"mode {k}: rank {r_k} out of range [1, {sigma.size}]"
            )
    factors = tuple(u[:, :r_k] for r_k, (u, _, _, _) in zip(r, spectra))
    tails = tuple(
        ModeTail(tilde_tail_energy=tail, block_tail_norms=sigma[r_k:] * c_norm)
        for r_k, (_, sigma, c_norm, tail) in zip(r, spectra)
    )
    core = t
    for k, (u, s_k) in enumerate(zip(factors, s), start=1):
        core = mode_stp(core, k, u.T, expect_s=s_k)
    return HosvdStpFactors(
        core=core,
        factors=factors,
        s=s,
        r=r,
        per_mode_tails=tails,
    )


def reconstruct_hosvd(f: HosvdStpFactors) -> np.ndarray:
    """Apply every mode factor to the core by modal semi-tensor products."""
    t = f.core
    for k, (u, s_k) in enumerate(zip(f.factors, f.s), start=1):
        t = mode_stp(t, k, u, expect_s=s_k)
    return t


def hosvd_error_bound(f: HosvdStpFactors) -> float:
    """Upper bound on the reconstruction error: root of the summed
    per-mode Kronecker residuals plus root of the summed dropped-block
    energies."""
    kron_energy = sum(m.tilde_tail_energy for m in f.per_mode_tails)
    block_energy = sum(float(np.sum(m.block_tail_norms**2)) for m in f.per_mode_tails)
    return float(np.sqrt(kron_energy) + np.sqrt(block_energy))


STORAGE_KINDS = ("tsvd", "fsvd_stp", "tsvd_stp", "thosvd", "thosvd_stp")


def storage_cost(kind: str, n: int, s: int | None = None, r: int | None = None,
                 d: int | None = None) -> int:
    """Number of stored scalars for each method on an ``n x ... x n`` array.

    * ``tsvd``:        ``2 n r + r``
    * ``fsvd_stp``:    ``2 (n/s)^2 + n/s + s^2``
    * ``tsvd_stp``:    ``2 (n/s) r + r + s^2``
    * ``thosvd``:      ``r^d + d n r``
    * ``thosvd_stp``:  ``(r s)^d + d (n/s) r``
    """
    if kind not in STORAGE_KINDS:
        raise ValueError(f"unknown storage kind {kind!r}; expected one of {STORAGE_KINDS}")
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")

    def need(value, name):
        if value is None:
            raise ValueError(f"storage kind {kind!r} requires {name}")
        value = int(value)
        if value < 1:
            raise ValueError(f"{name} must be positive, got {value}")
        return value

    if kind == "tsvd":
        r = need(r, "r")
        return 2 * n * r + r
    if kind == "fsvd_stp":
        s = need(s, "s")
        q = check_divides(s, n, "n")
        return 2 * q * q + q + s * s
    if kind == "tsvd_stp":
        s, r = need(s, "s"), need(r, "r")
        q = check_divides(s, n, "n")
        return 2 * q * r + r + s * s
    if kind == "thosvd":
        r, d = need(r, "r"), need(d, "d")
        return r**d + d * n * r
    s, r, d = need(s, "s"), need(r, "r"), need(d, "d")
    q = check_divides(s, n, "n")
    return (r * s) ** d + d * q * r
