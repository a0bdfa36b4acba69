"""Numba kernels for the hot rendering paths.

Every kernel is a pure per-output-pixel map parallelized over rows, so
results are bitwise identical regardless of thread count or scheduling.
The fused render kernel performs, per pixel, exactly the same IEEE
operations in the same order as warp-then-composite; tests assert the two
routes agree bitwise.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

_OUT_OF_VIEW = 1e-12  # homogeneous w at or below this counts as outside


@njit(cache=True, parallel=True)
def warp_image(src, hom, out_h, out_w):
    """Backward-warp (H, W, C) by a target->source homography, bilinear.

    Samples outside the source raster produce zeros in all channels. The
    affine shortcut below skips the division by a homogeneous w that is
    exactly 1, which is bitwise-identical to performing it.
    """
    h, w, c = src.shape
    affine = hom[2, 0] == 0.0 and hom[2, 1] == 0.0 and hom[2, 2] > _OUT_OF_VIEW
    inv_w = 1.0 / hom[2, 2] if affine else 0.0
    out = np.zeros((out_h, out_w, c))
    for row in prange(out_h):
        for col in range(out_w):
            if affine:
                sx = (hom[0, 0] * col + hom[0, 1] * row + hom[0, 2]) * inv_w
                sy = (hom[1, 0] * col + hom[1, 1] * row + hom[1, 2]) * inv_w
            else:
                sw = hom[2, 0] * col + hom[2, 1] * row + hom[2, 2]
                if sw <= _OUT_OF_VIEW:
                    continue
                sx = (hom[0, 0] * col + hom[0, 1] * row + hom[0, 2]) / sw
                sy = (hom[1, 0] * col + hom[1, 1] * row + hom[1, 2]) / sw
            if sx < 0.0 or sx > w - 1 or sy < 0.0 or sy > h - 1:
                continue
            x0 = int(np.floor(sx))
            y0 = int(np.floor(sy))
            x1 = min(x0 + 1, w - 1)
            y1 = min(y0 + 1, h - 1)
            fx = sx - x0
            fy = sy - y0
            w00 = (1.0 - fy) * (1.0 - fx)
            w01 = (1.0 - fy) * fx
            w10 = fy * (1.0 - fx)
            w11 = fy * fx
            for ch in range(c):
                out[row, col, ch] = (
                    w00 * src[y0, x0, ch]
                    + w01 * src[y0, x1, ch]
                    + w10 * src[y1, x0, ch]
                    + w11 * src[y1, x1, ch]
                )
    return out


@njit(cache=True, parallel=True)
def render_planes(planes, homs, identity_flags, out_h, out_w):
    """Warp all (K, H, W, 4) planes and over-composite them back-to-front.

    `homs` holds one target->source homography per plane. Equivalent to
    warping each plane with warp_image, clamping into [0, 1], and folding
    rgb*a + acc*(1-a) from plane 0 upward; fused here to avoid K full-size
    intermediates. Two bitwise-neutral shortcuts keep it fast: planes
    flagged in `identity_flags` (exact-identity homographies) are read
    directly (bilinear weights at integer offsets are exactly {1,0,0,0}),
    and fully transparent samples skip the color fetches and the fold
    step (folding with a == 0 leaves the accumulator bit-identical).
    """
    n_planes, h, w, _ = planes.shape
    affine = np.empty(n_planes, dtype=np.bool_)
    inv_w = np.zeros(n_planes)
    for k in range(n_planes):
        affine[k] = (
            homs[k, 2, 0] == 0.0
            and homs[k, 2, 1] == 0.0
            and homs[k, 2, 2] > _OUT_OF_VIEW
        )
        if affine[k]:
            inv_w[k] = 1.0 / homs[k, 2, 2]
    out = np.empty((out_h, out_w, 3))
    for row in prange(out_h):
        for col in range(out_w):
            c0 = 0.0
            c1 = 0.0
            c2 = 0.0
            for k in range(n_planes):
                if identity_flags[k]:
                    if row >= h or col >= w:
                        continue
                    a = planes[k, row, col, 3]
                    if a == 0.0:
                        continue
                    r = planes[k, row, col, 0]
                    g = planes[k, row, col, 1]
                    b = planes[k, row, col, 2]
                else:
                    if affine[k]:
                        sx = homs[k, 0, 0] * col + homs[k, 0, 1] * row + homs[k, 0, 2]
                        sy = homs[k, 1, 0] * col + homs[k, 1, 1] * row + homs[k, 1, 2]
                    else:
                        sw = homs[k, 2, 0] * col + homs[k, 2, 1] * row + homs[k, 2, 2]
                        if sw <= _OUT_OF_VIEW:
                            continue
                        sx = (homs[k, 0, 0] * col + homs[k, 0, 1] * row + homs[k, 0, 2]) / sw
                        sy = (homs[k, 1, 0] * col + homs[k, 1, 1] * row + homs[k, 1, 2]) / sw
                    if sx < 0.0 or sx > w - 1 or sy < 0.0 or sy > h - 1:
                        continue
                    x0 = int(np.floor(sx))
                    y0 = int(np.floor(sy))
                    x1 = min(x0 + 1, w - 1)
                    y1 = min(y0 + 1, h - 1)
                    fx = sx - x0
                    fy = sy - y0
                    w00 = (1.0 - fy) * (1.0 - fx)
                    w01 = (1.0 - fy) * fx
                    w10 = fy * (1.0 - fx)
                    w11 = fy * fx
                    a = (
                        w00 * planes[k, y0, x0, 3]
                        + w01 * planes[k, y0, x1, 3]
                        + w10 * planes[k, y1, x0, 3]
                        + w11 * planes[k, y1, x1, 3]
                    )
                    a = min(max(a, 0.0), 1.0)
                    if a == 0.0:
                        continue
                    r = (
                        w00 * planes[k, y0, x0, 0]
                        + w01 * planes[k, y0, x1, 0]
                        + w10 * planes[k, y1, x0, 0]
                        + w11 * planes[k, y1, x1, 0]
                    )
                    g = (
                        w00 * planes[k, y0, x0, 1]
                        + w01 * planes[k, y0, x1, 1]
                        + w10 * planes[k, y1, x0, 1]
                        + w11 * planes[k, y1, x1, 1]
                    )
                    b = (
                        w00 * planes[k, y0, x0, 2]
                        + w01 * planes[k, y0, x1, 2]
                        + w10 * planes[k, y1, x0, 2]
                        + w11 * planes[k, y1, x1, 2]
                    )
                    r = min(max(r, 0.0), 1.0)
                    g = min(max(g, 0.0), 1.0)
                    b = min(max(b, 0.0), 1.0)
                c0 = r * a + c0 * (1.0 - a)
                c1 = g * a + c1 * (1.0 - a)
                c2 = b * a + c2 * (1.0 - a)
            out[row, col, 0] = min(max(c0, 0.0), 1.0)
            out[row, col, 1] = min(max(c1, 0.0), 1.0)
            out[row, col, 2] = min(max(c2, 0.0), 1.0)
    return out
