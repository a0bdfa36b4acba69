#!/usr/bin/env python3
"""Generate a synthetic color + disparity scene for pipeline demos.

Builds a textured room-like layout (far wall, floor gradient, two floating
boxes at different depths) and writes fg.png plus disparity.pfm, ready for
`mpiview build` / `mpiview baseline`.
"""

import argparse
from pathlib import Path

import numpy as np
from scipy import ndimage

from mpiview import (
    DisparityMap,
    DisparityUnit,
    ImageBuffer,
    save_disparity_pfm,
    save_image_png,
)


def make_scene(size: int, seed: int):
    rng = np.random.default_rng(seed)
    color = ndimage.gaussian_filter(rng.random((size, size, 3)), sigma=(3, 3, 0))
    lo, hi = color.min(), color.max()
    color = 0.15 + 0.7 * (color - lo) / (hi - lo)

    # Far wall ~ 30 m, floor ramping closer toward the bottom edge.
    disparity = np.full((size, size), 1.0 / 30.0)
    ys = np.linspace(0.0, 1.0, size)[:, None]
    floor = ys > 0.6
    disparity = np.where(floor, 1.0 / 30.0 + (ys - 0.6) * 2.0, disparity)

    boxes = [
        (slice(size // 5, size // 5 + size // 4), slice(size // 6, size // 6 + size // 5), 2.0),
        (slice(size // 2, size // 2 + size // 3), slice(size // 2, size // 2 + size // 4), 5.0),
    ]
    for rows, cols, depth in boxes:
        disparity[rows, cols] = 1.0 / depth
        color[rows, cols] = color[rows, cols] * 0.6 + rng.random(3) * 0.4

    return ImageBuffer(np.clip(color, 0, 1)), DisparityMap(
        disparity, DisparityUnit.INVERSE_METERS
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=384)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-o", "--out", default="demo_scene", help="output directory")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    fg, disparity = make_scene(args.size, args.seed)
    save_image_png(fg, out / "fg.png")
    save_disparity_pfm(disparity, out / "disparity.pfm")
    print(f"wrote {out / 'fg.png'} and {out / 'disparity.pfm'}")


if __name__ == "__main__":
    main()
