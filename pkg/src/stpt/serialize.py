"""Factor directories: decomposition results on disk.

A factor directory holds one tensor container file per factor plus a
``manifest.json`` recording the method, block sizes, ranks, original
dimensions, and truncation tail data.  Serialization is deterministic:
identical factors produce byte-identical directories.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .decomp import HosvdStpFactors, ModeTail, SvdStpFactors
from .exceptions import FileFormatError
from .tensorfile import read_tensor, write_tensor

MANIFEST_NAME = "manifest.json"
FORMAT_NAME = "stpt-factors"
FORMAT_VERSION = 1


def _write_manifest(path: Path, payload: dict) -> None:
    payload = {"format": FORMAT_NAME, "version": FORMAT_VERSION, **payload}
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    (path / MANIFEST_NAME).write_text(text, encoding="ascii")


def save_svd_factors(f: SvdStpFactors, path) -> None:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    write_tensor(f.u, path / "u.stpt")
    write_tensor(f.v, path / "v.stpt")
    write_tensor(f.sigma_b, path / "sigma_b.stpt")
    write_tensor(f.c, path / "c.stpt")
    _write_manifest(
        path,
        {
            "method": "svd-stp",
            "dims": list(f.shape),
            "s": [f.s1, f.s2],
            "r": [f.r],
            "tilde_sigma_tail_energy": f.tilde_sigma_tail_energy,
            "block_tail_norms": [float(x) for x in f.block_tail_norms],
            "files": {"u": "u.stpt", "v": "v.stpt", "sigma_b": "sigma_b.stpt", "c": "c.stpt"},
        },
    )


def save_hosvd_factors(f: HosvdStpFactors, path) -> None:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    write_tensor(f.core, path / "core.stpt")
    files = {"core": "core.stpt"}
    for k, u in enumerate(f.factors, start=1):
        name = f"u{k}.stpt"
        write_tensor(u, path / name)
        files[f"u{k}"] = name
    _write_manifest(
        path,
        {
            "method": "hosvd-stp",
            "dims": list(f.shape),
            "s": list(f.s),
            "r": list(f.r),
            "per_mode_tails": [
                {
                    "tilde_tail_energy": m.tilde_tail_energy,
                    "block_tail_norms": [float(x) for x in m.block_tail_norms],
                }
                for m in f.per_mode_tails
            ],
            "files": files,
        },
    )


def load_factors(path) -> SvdStpFactors | HosvdStpFactors:
    """Load a factor directory written by one of the savers above."""
    path = Path(path)
    manifest_path = path / MANIFEST_NAME
    if not manifest_path.is_file():
        raise FileFormatError(f"no {MANIFEST_NAME} in {path}")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="ascii"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise FileFormatError(f"unreadable manifest: {exc}") from exc
    if manifest.get("format") != FORMAT_NAME:
        raise FileFormatError(f"unknown manifest format {manifest.get('format')!r}")
    if manifest.get("version") != FORMAT_VERSION:
        raise FileFormatError(f"unsupported manifest version {manifest.get('version')!r}")
    method = manifest.get("method")
    files = manifest.get("files", {})
    if method == "svd-stp":
        s1, s2 = (int(x) for x in manifest["s"])
        return SvdStpFactors(
            u=read_tensor(path / files["u"]),
            v=read_tensor(path / files["v"]),
            sigma_b=read_tensor(path / files["sigma_b"]),
            c=read_tensor(path / files["c"]),
            s1=s1,
            s2=s2,
            r=int(manifest["r"][0]),
            tilde_sigma_tail_energy=float(manifest["tilde_sigma_tail_energy"]),
            block_tail_norms=np.asarray(manifest["block_tail_norms"], dtype=np.float64),
        )
    if method == "hosvd-stp":
        s = tuple(int(x) for x in manifest["s"])
        r = tuple(int(x) for x in manifest["r"])
        factors = tuple(read_tensor(path / files[f"u{k}"]) for k in range(1, len(s) + 1))
        tails = tuple(
            ModeTail(
                tilde_tail_energy=float(m["tilde_tail_energy"]),
                block_tail_norms=np.asarray(m["block_tail_norms"], dtype=np.float64),
            )
            for m in manifest["per_mode_tails"]
        )
        return HosvdStpFactors(
            core=read_tensor(path / files["core"]),
            factors=factors,
            s=s,
            r=r,
            per_mode_tails=tails,
        )
    raise FileFormatError(f"unknown factor method {method!r}")
