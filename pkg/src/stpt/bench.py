"""Benchmark harness comparing the semi-tensor-product decompositions
against their conventional counterparts on random uniform data.

For matrices (``d = 2``) the methods are FSVD-STP, TSVD-STP, and TSVD;
for tensors (``d >= 3``) FHOSVD-STP, THOSVD-STP, and THOSVD.  Each trial
draws one ``n x ... x n`` array with uniform(0, 1) entries from a PCG64
generator seeded with ``seed`` (entries filled in C order, one array per
trial, trials drawn consecutively from the same stream), so errors are
reproducible byte for byte.  Wall times measure the decomposition only;
reconstruction for the error measurement is untimed.

CSV output intentionally carries the reproducible fields only — timings
go to the human-readable table, since they can never be identical across
runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .decomp import (
    hosvd_stp,
    reconstruct_hosvd,
    reconstruct_svd_stp,
    svd_stp,
    truncated_hosvd_stp,
    truncated_svd_stp,
)
from .linalg import truncated_svd
from .metrics import relative_error
from .tensor import mode_product, unfold
from .validation import check_divides

BENCH_CSV_HEADER = "method,n,d,s,r,trials,seed,mean_rel_error"


@dataclass(frozen=True)
class BenchConfig:
    n: int
    d: int
    s: int
    r: int
    trials: int
    seed: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"d must be at least 2, got {self.d}")
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        q = check_divides(self.s, self.n, "n")
        if not 1 <= self.r <= q:
            raise ValueError(f"r must lie in [1, n/s] = [1, {q}], got {self.r}")


@dataclass(frozen=True)
class BenchRow:
    method: str
    n: int
    d: int
    s: int
    r: int
    trials: int
    seed: int
    mean_rel_error: float
    mean_time_s: float

    def csv_row(self) -> str:
        return ",".join(
            [
                self.method,
                str(self.n),
                str(self.d),
                str(self.s),
                str(self.r),
                str(self.trials),
                str(self.seed),
                repr(self.mean_rel_error),
            ]
        )


def _truncated_hosvd(t: np.ndarray, r: int) -> np.ndarray:
    """Conventional truncated HOSVD reconstruction: leading ``r`` left
    singular vectors of every unfolding, core by mode products."""
    factors = [truncated_svd(unfold(t, k), r).u for k in range(1, t.ndim + 1)]
    core = t
    for k, u in enumerate(factors, start=1):
        core = mode_product(core, k, u.T)
    out = core
    for k, u in enumerate(factors, start=1):
        out = mode_product(out, k, u)
    return out


def _matrix_methods(a: np.ndarray, cfg: BenchConfig) -> list[tuple[str, float, float]]:
    results = []

    t0 = time.perf_counter()
    full = svd_stp(a, cfg.s, cfg.s)
    dt = time.perf_counter() - t0
    results.append(("FSVD-STP", relative_error(a, reconstruct_svd_stp(full)), dt))

    t0 = time.perf_counter()
    trunc = truncated_svd_stp(a, cfg.s, cfg.s, cfg.r)
    dt = time.perf_counter() - t0
    results.append(("TSVD-STP", relative_error(a, reconstruct_svd_stp(trunc)), dt))

    t0 = time.perf_counter()
    u, sigma, v = truncated_svd(a, cfg.r)
    dt = time.perf_counter() - t0
    results.append(("TSVD", relative_error(a, (u * sigma) @ v.T), dt))

    return results


def _tensor_methods(t: np.ndarray, cfg: BenchConfig) -> list[tuple[str, float, float]]:
    s = (cfg.s,) * cfg.d
    r = (cfg.r,) * cfg.d
    results = []

    t0 = time.perf_counter()
    full = hosvd_stp(t, s)
    dt = time.perf_counter() - t0
    results.append(("FHOSVD-STP", relative_error(t, reconstruct_hosvd(full)), dt))

    t0 = time.perf_counter()
    trunc = truncated_hosvd_stp(t, s, r)
    dt = time.perf_counter() - t0
    results.append(("THOSVD-STP", relative_error(t, reconstruct_hosvd(trunc)), dt))

    t0 = time.perf_counter()
    approx = _truncated_hosvd(t, cfg.r)
    dt = time.perf_counter() - t0
    results.append(("THOSVD", relative_error(t, approx), dt))

    return results


def run_bench(cfg: BenchConfig) -> list[BenchRow]:
    """Run all methods for ``cfg.trials`` trials; one row per method."""
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    shape = (cfg.n,) * cfg.d
    errors: dict[str, list[float]] = {}
    times: dict[str, list[float]] = {}
    order: list[str] = []
    for _ in range(cfg.trials):
        a = rng.random(shape)
        trial = _matrix_methods(a, cfg) if cfg.d == 2 else _tensor_methods(a, cfg)
        for method, err, dt in trial:
            if method not in errors:
                errors[method] = []
                times[method] = []
                order.append(method)
            errors[method].append(err)
            times[method].append(dt)
    return [
        BenchRow(
            method=method,
            n=cfg.n,
            d=cfg.d,
            s=cfg.s,
            r=cfg.r,
            trials=cfg.trials,
            seed=cfg.seed,
            mean_rel_error=float(np.mean(errors[method])),
            mean_time_s=float(np.mean(times[method])),
        )
        for method in order
    ]


def rows_to_csv(rows: list[BenchRow]) -> str:
    """Deterministic CSV: header plus one row per method, no timings."""
    return "\n".join([BENCH_CSV_HEADER] + [row.csv_row() for row in rows]) + "\n"


def rows_to_text(rows: list[BenchRow]) -> str:
    """Human-readable table including mean wall times."""
    lines = [f"{'method':>12}  {'mean_rel_error':>18}  {'mean_time_s':>12}"]
    for row in rows:
        lines.append(f"{row.method:>12}  {row.mean_rel_error:>18.6e}  {row.mean_time_s:>12.4f}")
    return "\n".join(lines)
