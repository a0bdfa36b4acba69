#!/usr/bin/env python3
"""Plane-count ablation: build and render the same scene at K in {32, 64, 128}.

Writes, per K, the frames of a small viewpoint sweep so the layering
artifacts can be compared side by side (fewer planes show more depth
quantization under camera motion).
"""

import argparse
from pathlib import Path

from mpiview import (
    CameraIntrinsics,
    grid_path,
    identity_mpi,
    load_disparity_pfm,
    load_image_png,
    plane_depths,
    render_novel_view,
    save_image_png,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fg", required=True)
    parser.add_argument("--disparity", required=True)
    parser.add_argument("--counts", type=int, nargs="+", default=[32, 64, 128])
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--extent", type=float, default=0.2)
    parser.add_argument("-o", "--out", default="ablation")
    args = parser.parse_args()

    fg = load_image_png(args.fg)
    disparity = load_disparity_pfm(args.disparity)
    intr = CameraIntrinsics(
        float(fg.width), float(fg.width), (fg.width - 1) / 2.0, (fg.height - 1) / 2.0
    )
    sweep = grid_path(args.n, args.extent)

    for count in args.counts:
        mpi = identity_mpi(fg, disparity, plane_depths(count, 1.0, 100.0), intr)
        out = Path(args.out) / f"k{count:03d}"
        out.mkdir(parents=True, exist_ok=True)
        for i, pose in enumerate(sweep.poses):
            save_image_png(render_novel_view(mpi, pose), out / f"frame_{i:04d}.png")
        print(f"K={count}: {len(sweep)} frames -> {out}")


if __name__ == "__main__":
    main()
