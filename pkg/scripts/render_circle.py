#!/usr/bin/env python3
"""Render a circular fly-around from an MPI archive (one revolution).

Frames are numbered in order; assemble a video externally, e.g.
`ffmpeg -i frame_%04d.png -pix_fmt yuv420p orbit.mp4`.
"""

import argparse
from pathlib import Path

from mpiview import circle_path, load_mpi, render_novel_view, save_image_png


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--mpi", required=True, help="MPI archive directory")
    parser.add_argument("--radius", type=float, default=0.15)
    parser.add_argument("--frames", type=int, default=60)
    parser.add_argument("-o", "--out", default="circle_frames")
    args = parser.parse_args()

    mpi = load_mpi(args.mpi)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, pose in enumerate(circle_path(args.radius, args.frames).poses):
        save_image_png(render_novel_view(mpi, pose), out / f"frame_{i:04d}.png")
    print(f"rendered {args.frames} frames -> {out}")


if __name__ == "__main__":
    main()
