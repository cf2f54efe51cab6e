"""Semi-tensor-product matrix and tensor approximations."""

from .bench import BenchConfig, BenchRow, rows_to_csv, rows_to_text, run_bench
from .decomp import (
    HosvdStpFactors,
    ModeTail,
    SvdStpFactors,
    hosvd_error_bound,
    hosvd_stp,
    materialize_sigma,
    reconstruct_hosvd,
    reconstruct_svd_stp,
    storage_cost,
    svd_stp,
    svd_stp_error_bound,
    truncated_hosvd_stp,
    truncated_svd_stp,
)
from .estimators import HosvdStp, SvdStp
from .image import quantize_u8, read_pgm, write_pgm
from .linalg import SvdTriple, frobenius, kron, svd, truncated_svd
from .metrics import MetricsReport, metrics, psnr, relative_error, ssim
from .nkp import KronBlockPartition, NkpResult, nearest_kron, rearrange, rearrange_inverse
from .serialize import load_factors, save_hosvd_factors, save_svd_factors
from .stp import StpCase, StpShapeRelation, StpVector, mode_stp, shape_relation, stp_mat, stp_vec
from .tensor import mode_product, multi_index, refold, unfold, vec
from .tensorfile import read_tensor, write_tensor

__version__ = "0.1.0"

__all__ = [
    "BenchConfig",
    "BenchRow",
    "HosvdStp",
    "HosvdStpFactors",
    "KronBlockPartition",
    "MetricsReport",
    "ModeTail",
    "NkpResult",
    "StpCase",
    "StpShapeRelation",
    "StpVector",
    "SvdStp",
    "SvdStpFactors",
    "SvdTriple",
    "frobenius",
    "hosvd_error_bound",
    "hosvd_stp",
    "kron",
    "load_factors",
    "materialize_sigma",
    "metrics",
    "mode_product",
    "mode_stp",
    "multi_index",
    "nearest_kron",
    "psnr",
    "quantize_u8",
    "read_pgm",
    "read_tensor",
    "rearrange",
    "rearrange_inverse",
    "reconstruct_hosvd",
    "reconstruct_svd_stp",
    "refold",
    "relative_error",
    "rows_to_csv",
    "rows_to_text",
    "run_bench",
    "save_hosvd_factors",
    "save_svd_factors",
    "shape_relation",
    "ssim",
    "storage_cost",
    "stp_mat",
    "stp_vec",
    "svd",
    "svd_stp",
    "svd_stp_error_bound",
    "truncated_hosvd_stp",
    "truncated_svd",
    "truncated_svd_stp",
    "unfold",
    "vec",
    "write_pgm",
    "write_tensor",
]
