"""On-disk MPI archive and the web-export layout for the browser viewer.

An archive is a directory holding a `meta.json` document and one file per
plane named plane_0000 ... plane_{K-1} in back-to-front order. Archive
planes are stored as float64 .npy so save/load is lossless; the web
export quantizes planes to 8-bit RGBA PNGs the viewer can load as
textures.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import CameraIntrinsics, Mpi, PlaneDepths
from .errors import DataError
from .formats import save_image_png
from .core import ImageBuffer

__all__ = ["save_mpi", "load_mpi", "export_web"]

FORMAT_VERSION = 1


def _meta_dict(mpi: Mpi, plane_suffix: str) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "plane_count": mpi.plane_count,
        "width": mpi.width,
        "height": mpi.height,
        "depth_near": float(mpi.depths.depths[-1]),
        "depth_far": float(mpi.depths.depths[0]),
        "depths": [float(x) for x in mpi.depths.depths],
        "intrinsics": {
            "fx": mpi.intrinsics.fx,
            "fy": mpi.intrinsics.fy,
            "cx": mpi.intrinsics.cx,
            "cy": mpi.intrinsics.cy,
        },
        "alpha": "straight",
        "plane_files": [f"plane_{k:04d}{plane_suffix}" for k in range(mpi.plane_count)],
    }


def save_mpi(mpi: Mpi, out_dir) -> None:
    """Write an MPI archive (meta.json + float64 .npy planes)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    meta = _meta_dict(mpi, ".npy")
    (out / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    for k in range(mpi.plane_count):
        np.save(out / f"plane_{k:04d}.npy", mpi.planes[k])


def _load_meta(path: Path) -> dict:
    if not path.is_file():
        raise DataError(f"missing archive metadata: {path}")
    try:
        meta = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise DataError(f"malformed archive metadata {path}: {e}") from e
    for key in ("format_version", "plane_count", "depths", "intrinsics", "width", "height"):
        if key not in meta:
            raise DataError(f"archive metadata {path} lacks required field {key!r}")
    if meta["format_version"] != FORMAT_VERSION:
        raise DataError(
            f"unsupported archive format version {meta['format_version']} in {path}"
        )
    return meta


def load_mpi(in_dir) -> Mpi:
    """Read an MPI archive written by save_mpi."""
    root = Path(in_dir)
    meta = _load_meta(root / "meta.json")
    k = int(meta["plane_count"])
    plane_paths = [root / f"plane_{i:04d}.npy" for i in range(k)]
    present = sorted(root.glob("plane_*.npy"))
    if len(present) != k:
        raise DataError(
            f"archive {root} declares {k} planes but holds {len(present)} plane files"
        )
    try:
        planes = np.stack([np.load(p) for p in plane_paths])
    except (OSError, ValueError) as e:
        raise DataError(f"cannot read archive planes in {root}: {e}") from e
    intr = meta["intrinsics"]
    try:
        return Mpi(
            planes,
            PlaneDepths(np.array(meta["depths"], dtype=np.float64)),
            CameraIntrinsics(intr["fx"], intr["fy"], intr["cx"], intr["cy"]),
        )
    except (KeyError, TypeError) as e:
        raise DataError(f"malformed archive metadata in {root}: {e}") from e


def export_web(mpi: Mpi, out_dir) -> None:
    """Write the browser-viewer layout: meta.json + 8-bit RGBA plane PNGs."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    meta = _meta_dict(mpi, ".png")
    (out / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    for k in range(mpi.plane_count):
        save_image_png(ImageBuffer(mpi.planes[k]), out / f"plane_{k:04d}.png", bit_depth=8)
