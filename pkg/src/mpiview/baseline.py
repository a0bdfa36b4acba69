"""Single-image warping baseline for dis-occlusion handling.

Instead of an MPI, this pipeline filters the disparity map, warps the
color image to the novel view with per-pixel visibility, cleans the
occlusion mask with a neighborhood-majority threshold, and fills the
remaining holes by diffusion (Laplace) inpainting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .core import CameraIntrinsics, CameraPose, DisparityMap, ImageBuffer
from .errors import ArgumentError, NumericError

__all__ = [
    "VisibilityMask",
    "median_filter_disparity",
    "warp_single_image",
    "threshold_occlusion_mask",
    "diffusion_inpaint",
]


@dataclass(frozen=True, eq=False)
class VisibilityMask:
    """H×W booleans; True marks pixels that received source content."""

    mask: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mask)
        if m.ndim != 2 or m.dtype != np.bool_:
            raise ArgumentError(f"mask must be a 2-D bool array, got {m.dtype} {m.shape}")
        m = np.ascontiguousarray(m)
        m.flags.writeable = False
        object.__setattr__(self, "mask", m)

    @property
    def height(self) -> int:
        return self.mask.shape[0]

    @property
    def width(self) -> int:
        return self.mask.shape[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, VisibilityMask) and np.array_equal(self.mask, other.mask)


def median_filter_disparity(d: DisparityMap, window: int = 19) -> DisparityMap:
    """Per-pixel median over a window×window neighborhood, replicated borders."""
    if window < 1 or window % 2 == 0:
        raise ArgumentError(f"window must be odd and >= 1, got {window}")
    filtered = ndimage.median_filter(d.values, size=window, mode="nearest")
    return DisparityMap(filtered, d.unit)


def _bilinear_sample(img: np.ndarray, xs: np.ndarray, ys: np.ndarray):
    """Sample (H, W, C) at float coords; returns (values, inside-mask)."""
    h, w = img.shape[:2]
    inside = (xs >= 0) & (xs <= w - 1) & (ys >= 0) & (ys <= h - 1)
    x = np.where(inside, xs, 0.0)
    y = np.where(inside, ys, 0.0)
    x0 = np.floor(x).astype(np.intp)
    y0 = np.floor(y).astype(np.intp)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = (x - x0)[:, None]
    fy = (y - y0)[:, None]
    flat = img.reshape(-1, img.shape[2])
    v00 = flat[y0 * w + x0]
    v01 = flat[y0 * w + x1]
    v10 = flat[y1 * w + x0]
    v11 = flat[y1 * w + x1]
    out = (
        (1.0 - fy) * (1.0 - fx) * v00
        + (1.0 - fy) * fx * v01
        + fy * (1.0 - fx) * v10
        + fy * fx * v11
    )
    out[~inside] = 0.0
    return out, inside


def warp_single_image(
    fg: ImageBuffer,
    d: DisparityMap,
    rel: CameraPose,
    intr: CameraIntrinsics,
) -> tuple[ImageBuffer, VisibilityMask]:
    """Warp `fg` into the view reached by `rel`, reporting per-pixel visibility.

    Disparity values are treated as inverse meters. The forward pass
    splats each source pixel's disparity to its nearest-integer target
    pixel, resolving collisions by keeping the largest disparity
    (nearest surface); the backward pass bilinearly samples `fg` at the
    source location implied by the splatted target disparity. Target
    pixels no source pixel reached stay black with mask False.

    The splat resolve is a pure per-pixel maximum, so the result does not
    depend on traversal order.
    """
    if (fg.height, fg.width) != (d.height, d.width):
        raise ArgumentError(
            f"image ({fg.height}, {fg.width}) and disparity ({d.height}, {d.width}) sizes differ"
        )
    h, w = d.height, d.width
    if rel.is_identity():
        # The exact result; skipping the round trip through projections
        # keeps it bit-exact for arbitrary intrinsics.
        return fg, VisibilityMask(np.ones((h, w), dtype=bool))
    kinv = intr.inverse_matrix()
    rot = rel.rotation
    t = rel.translation

    ys, xs = np.mgrid[0:h, 0:w]
    pix = np.stack([xs.ravel(), ys.ravel(), np.ones(h * w)])
    delta = d.values.ravel()

    # Disparity-scaled projection avoids infinities at zero disparity:
    # a point at depth 1/delta maps through rot/t as (rot @ ray + delta*t).
    rays = rot @ (kinv @ pix)
    num = rays + delta[None, :] * t[:, None]
    z = num[2]
    ok = z > 1e-12
    tx = np.floor(intr.fx * num[0] / z + intr.cx + 0.5).astype(np.intp)
    ty = np.floor(intr.fy * num[1] / z + intr.cy + 0.5).astype(np.intp)
    ok &= (tx >= 0) & (tx < w) & (ty >= 0) & (ty < h)
    target_disp = delta / np.where(z > 1e-12, z, 1.0)

    splat = np.full((h, w), -1.0)
    np.maximum.at(splat, (ty[ok], tx[ok]), target_disp[ok])
    covered = splat >= 0.0

    # Backward pass: source pixel of each covered target pixel.
    dq = np.where(covered, splat, 0.0).ravel()
    back = rot.T @ (kinv @ pix) - (rot.T @ t)[:, None] * dq[None, :]
    zs = back[2]
    ok_back = covered.ravel() & (zs > 1e-12)
    sx = intr.fx * back[0] / np.where(zs > 1e-12, zs, 1.0) + intr.cx
    sy = intr.fy * back[1] / np.where(zs > 1e-12, zs, 1.0) + intr.cy
    sampled, inside = _bilinear_sample(fg.data, sx, sy)
    visible = ok_back & inside
    sampled[~visible] = 0.0
    out = np.clip(sampled.reshape(h, w, fg.channels), 0.0, 1.0)
    return ImageBuffer(out), VisibilityMask(visible.reshape(h, w))


def threshold_occlusion_mask(
    mask: VisibilityMask, window: int = 9, ratio: float = 0.5
) -> VisibilityMask:
    """Keep a pixel visible iff >= ratio of its window×window neighbors are.

    The window includes the pixel itself; borders use replicated
    neighborhoods. Counting is integer-exact, so the ratio threshold has
    no floating-point edge cases.
    """
    if window < 1 or window % 2 == 0:
        raise ArgumentError(f"window must be odd and >= 1, got {window}")
    if not 0.0 <= ratio <= 1.0:
        raise ArgumentError(f"ratio must be in [0, 1], got {ratio}")
    counts = ndimage.correlate(
        mask.mask.astype(np.int64), np.ones((window, window), dtype=np.int64), mode="nearest"
    )
    return VisibilityMask(counts >= ratio * window * window)


def diffusion_inpaint(
    img: ImageBuffer,
    mask: VisibilityMask,
    tol: float = 1e-5,
    max_iters: int = 10000,
) -> ImageBuffer:
    """Fill mask-False pixels with the Laplace solution over visible boundaries.

    Jacobi sweeps of u <- mean(4-neighbors) on missing pixels (out-of-grid
    neighbors drop out) until the largest update falls below `tol` or
    `max_iters` is hit. Iterates are clamped into the visible value range
    per channel, which keeps the discrete maximum principle exact.
    """
    if (img.height, img.width) != (mask.height, mask.width):
        raise ArgumentError(
            f"image ({img.height}, {img.width}) and mask ({mask.height}, {mask.width}) sizes differ"
        )
    if tol <= 0 or max_iters < 1:
        raise ArgumentError(f"need tol > 0 and max_iters >= 1, got {tol}, {max_iters}")
    visible = mask.mask
    if visible.all():
        return img
    if not visible.any():
        raise NumericError("cannot inpaint: no visible pixels to diffuse from")

    u = img.data.copy()
    missing = ~visible
    lo = u[visible].min(axis=0)
    hi = u[visible].max(axis=0)
    u[missing] = np.clip(u[visible].mean(axis=0), lo, hi)

    counts = np.full((img.height, img.width), 4.0)
    counts[0, :] -= 1.0
    counts[-1, :] -= 1.0
    counts[:, 0] -= 1.0
    counts[:, -1] -= 1.0

    for _ in range(max_iters):
        s = np.zeros_like(u)
        s[1:] += u[:-1]
        s[:-1] += u[1:]
        s[:, 1:] += u[:, :-1]
        s[:, :-1] += u[:, 1:]
        mean = s[missing] / counts[missing][:, None]
        mean = np.clip(mean, lo, hi)
        if np.abs(mean - u[missing]).max() < tol:
            break
        u[missing] = mean
    return ImageBuffer(u)
