"""Command-line interface.

Exit codes: 0 on success, 2 on usage or input validation errors, 3 on
numerical failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from .bench import BenchConfig, rows_to_csv, rows_to_text, run_bench
from .decomp import (
    STORAGE_KINDS,
    HosvdStpFactors,
    hosvd_stp,
    reconstruct_hosvd,
    reconstruct_svd_stp,
    storage_cost,
    svd_stp,
    svd_stp_error_bound,
    truncated_hosvd_stp,
    truncated_svd_stp,
)
from .exceptions import ConvergenceError, FileFormatError
from .image import read_pgm, write_pgm
from .linalg import frobenius
from .metrics import METRICS_CSV_HEADER, metrics
from .serialize import load_factors, save_hosvd_factors, save_svd_factors
from .tensorfile import MAGIC, read_tensor, write_tensor


def _load_array(path: str) -> np.ndarray:
    """Load a PGM image or a tensor container file, sniffing the magic."""
    p = Path(path)
    head = p.open("rb").read(4)
    if head[:2] == b"P5":
        return read_pgm(p)
    if head == MAGIC:
        return read_tensor(p)
    raise FileFormatError(f"{path}: neither a PGM image nor a tensor file", offset=0)


def _load_matrix(path: str) -> np.ndarray:
    a = _load_array(path)
    if a.ndim != 2:
        raise FileFormatError(f"{path}: expected a matrix, got an order-{a.ndim} tensor")
    return a


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"{what} must be a comma-separated list of integers, got {text!r}") from None


def _cmd_info(args) -> int:
    p = Path(args.file)
    if p.is_dir():
        f = load_factors(p)
        if isinstance(f, HosvdStpFactors):
            print(f"factor directory: hosvd-stp, dims {list(f.shape)}, s {list(f.s)}, r {list(f.r)}")
        else:
            print(
                f"factor directory: svd-stp, dims {list(f.shape)},"
                f" s [{f.s1}, {f.s2}], r [{f.r}]"
            )
        return 0
    a = _load_array(args.file)
    print(f"order: {a.ndim}")
    print(f"dims: {list(a.shape)}")
    print(f"values: {a.size}")
    print(f"frobenius: {frobenius(a)!r}")
    return 0


def _cmd_svdstp(args) -> int:
    a = _load_matrix(args.input)
    if args.rank is None:
        f = svd_stp(a, args.s1, args.s2)
    else:
        f = truncated_svd_stp(a, args.s1, args.s2, args.rank)
    save_svd_factors(f, args.out)
    print(f"wrote factors to {args.out}")
    print(f"error bound: {svd_stp_error_bound(f)!r}")
    return 0


def _cmd_hosvdstp(args) -> int:
    t = _load_array(args.input)
    s = _parse_int_list(args.s, "--s")
    if args.rank is None:
        f = hosvd_stp(t, s)
    else:
        f = truncated_hosvd_stp(t, s, _parse_int_list(args.rank, "--rank"))
    save_hosvd_factors(f, args.out)
    print(f"wrote factors to {args.out}")
    return 0


def _cmd_reconstruct(args) -> int:
    f = load_factors(args.factors)
    if isinstance(f, HosvdStpFactors):
        a = reconstruct_hosvd(f)
    else:
        a = reconstruct_svd_stp(f)
    out = Path(args.out)
    if out.suffix.lower() == ".pgm":
        if a.ndim != 2:
            raise ValueError(f"cannot write an order-{a.ndim} tensor as a PGM image")
        write_pgm(a, out)
    else:
        write_tensor(a, out)
    print(f"wrote reconstruction to {args.out}")
    return 0


def _cmd_compress_image(args) -> int:
    a = read_pgm(args.input)
    t0 = time.perf_counter()
    if args.rank is None:
        f = svd_stp(a, args.s1, args.s2)
    else:
        f = truncated_svd_stp(a, args.s1, args.s2, args.rank)
    elapsed = time.perf_counter() - t0
    approx = reconstruct_svd_stp(f)
    write_pgm(approx, args.out)
    report = metrics(
        a,
        approx,
        elapsed_seconds=elapsed,
        storage_original=a.size,
        storage_factors=f.u.size + f.v.size + f.sigma_b.size + f.c.size,
    )
    print(f"wrote {args.out}")
    print(report.text())
    if args.report is not None:
        Path(args.report).write_text(METRICS_CSV_HEADER + "\n" + report.csv_row() + "\n")
        print(f"wrote report to {args.report}")
    return 0


def _cmd_metrics(args) -> int:
    a = _load_array(args.a)
    b = _load_array(args.b)
    report = metrics(a, b)
    print(report.text())
    if args.csv is not None:
        Path(args.csv).write_text(METRICS_CSV_HEADER + "\n" + report.csv_row() + "\n")
    return 0


def _cmd_bench(args) -> int:
    cfg = BenchConfig(n=args.n, d=args.d, s=args.s, r=args.r, trials=args.trials, seed=args.seed)
    rows = run_bench(cfg)
    print(rows_to_text(rows))
    if args.csv is not None:
        Path(args.csv).write_text(rows_to_csv(rows))
    return 0


def _cmd_storage(args) -> int:
    count = storage_cost(args.kind, n=args.n, s=args.s, r=args.r, d=args.d)
    print(count)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stpt",
        description="Semi-tensor-product matrix and tensor approximations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="describe a tensor file, PGM image, or factor directory")
    p.add_argument("file")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("svdstp", help="decompose a matrix")
    p.add_argument("input")
    p.add_argument("--s1", type=int, required=True)
    p.add_argument("--s2", type=int, required=True)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_svdstp)

    p = sub.add_parser("hosvdstp", help="decompose a tensor")
    p.add_argument("input")
    p.add_argument("--s", required=True, help="comma-separated block sizes, one per mode")
    p.add_argument("--rank", default=None, help="comma-separated ranks, one per mode")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_hosvdstp)

    p = sub.add_parser("reconstruct", help="rebuild an array from a factor directory")
    p.add_argument("factors")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("compress-image", help="decompose and rebuild a PGM image")
    p.add_argument("input")
    p.add_argument("--s1", type=int, required=True)
    p.add_argument("--s2", type=int, required=True)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--report", default=None, help="also write the metrics as CSV")
    p.set_defaults(func=_cmd_compress_image)

    p = sub.add_parser("metrics", help="compare two arrays")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("bench", help="compare methods on random data")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("storage", help="stored-scalar count for a method")
    p.add_argument("--kind", required=True, choices=STORAGE_KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.set_defaults(func=_cmd_storage)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return int(args.func(args) or 0)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except np.linalg.LinAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
