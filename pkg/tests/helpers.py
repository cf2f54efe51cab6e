"""Independent reference implementations used as test oracles.

Everything here is written directly from the defining formulas with plain
loops (or an unrelated numpy code path), so agreement with the library is
meaningful.
"""

from __future__ import annotations

import numpy as np


def oracle_multi_index(dims, index) -> int:
    """First-index-fastest linearization via numpy's own ravel machinery."""
    zero_based = tuple(i - 1 for i in index)
    return int(np.ravel_multi_index(zero_based, dims, order="F")) + 1


def oracle_unfold(t: np.ndarray, k: int) -> np.ndarray:
    """Mode-k unfolding assembled entry by entry from the definition."""
    dims = t.shape
    d = t.ndim
    rest = tuple(dims[j] for j in range(d) if j != k - 1)
    out = np.zeros((dims[k - 1], int(np.prod(rest)) if rest else 1))
    for idx0 in np.ndindex(*dims):
        i = tuple(x + 1 for x in idx0)
        row = i[k - 1]
        rem = tuple(i[j] for j in range(d) if j != k - 1)
        col = oracle_multi_index(rest, rem) if rest else 1
        out[row - 1, col - 1] = t[idx0]
    return out


def oracle_rearrange(a: np.ndarray, m1: int, n1: int, m2: int, n2: int) -> np.ndarray:
    """Block rearrangement assembled block by block."""
    out = np.zeros((m1 * n1, m2 * n2))
    for i in range(m1):
        for j in range(n1):
            block = a[i * m2 : (i + 1) * m2, j * n2 : (j + 1) * n2]
            out[j * m1 + i, :] = block.ravel(order="F")
    return out


def oracle_stp_mat(m: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Blocked-summation semi-tensor product, entrywise from the definition."""
    m = np.asarray(m, dtype=float)
    n = np.asarray(n, dtype=float)
    rows_m, cols_m = m.shape
    rows_n, cols_n = n.shape
    if cols_m % rows_n == 0:
        k = cols_m // rows_n
        out = np.zeros((rows_m, cols_n * k))
        for i in range(rows_m):
            for j in range(cols_n):
                acc = np.zeros(k)
                for l in range(rows_n):
                    acc += n[l, j] * m[i, l * k : (l + 1) * k]
                out[i, j * k : (j + 1) * k] = acc
        return out
    if rows_n % cols_m == 0:
        k = rows_n // cols_m
        out = np.zeros((rows_m * k, cols_n))
        for i in range(rows_m):
            for j in range(cols_n):
                acc = np.zeros(k)
                for l in range(cols_m):
                    acc += m[i, l] * n[l * k : (l + 1) * k, j]
                out[i * k : (i + 1) * k, j] = acc
        return out
    raise ValueError("incompatible shapes for the oracle")


def oracle_mode_product(t: np.ndarray, k: int, u: np.ndarray) -> np.ndarray:
    """Mode-k product via tensordot, independent of the unfolding route."""
    moved = np.tensordot(u, t, axes=(1, k - 1))
    return np.moveaxis(moved, 0, k - 1)


def oracle_truncated_hosvd(t: np.ndarray, ranks) -> np.ndarray:
    """Conventional truncated HOSVD reconstruction via tensordot."""
    us = []
    for k in range(t.ndim):
        ak = np.reshape(np.moveaxis(t, k, 0), (t.shape[k], -1))
        u = np.linalg.svd(ak, full_matrices=False)[0][:, : ranks[k]]
        us.append(u)
    core = t
    for k, u in enumerate(us, start=1):
        core = oracle_mode_product(core, k, u.T)
    out = core
    for k, u in enumerate(us, start=1):
        out = oracle_mode_product(out, k, u)
    return out


def rel_scale(*arrays) -> float:
    """Comparison scale: at least 1, else the largest Frobenius norm."""
    return max([1.0] + [float(np.linalg.norm(np.asarray(a).ravel())) for a in arrays])


def random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))
