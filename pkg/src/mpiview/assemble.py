"""Assembling a full MPI from color, blend weights, and alpha planes.

Per-plane color is a pixelwise convex blend between the visible-surface
(foreground) image and a hallucinated background image; the blend weights
and the background typically come from files produced elsewhere. The
foreground-only variant skips blending entirely and textures every plane
with the input image.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alpha import AlphaVolume, discretize_disparity, half_gaussian_alpha
from .core import CameraIntrinsics, DisparityMap, ImageBuffer, Mpi, PlaneDepths, _freeze
from .errors import ArgumentError

__all__ = ["BlendWeights", "blend_planes", "assemble_mpi", "identity_mpi"]


@dataclass(frozen=True, eq=False)
class BlendWeights:
    """K×H×W foreground/background mixing weights in [0, 1], back-to-front."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 3 or v.size == 0:
            raise ArgumentError(f"blend weights must be non-empty (K, H, W), got shape {v.shape}")
        lo, hi = float(v.min()), float(v.max())
        if not (lo >= 0.0 and hi <= 1.0):
            raise ArgumentError(f"blend weights must be finite and in [0, 1], got [{lo}, {hi}]")
        object.__setattr__(self, "values", _freeze(v))

    @property
    def plane_count(self) -> int:
        return self.values.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, BlendWeights) and np.array_equal(self.values, other.values)


def blend_planes(fg: ImageBuffer, bg: ImageBuffer, weights: BlendWeights) -> np.ndarray:
    """Per-plane RGB as w*fg + (1-w)*bg, returned as a (K, H, W, 3) array.

    The result is clamped into [min(fg, bg), max(fg, bg)] per pixel and
    channel; this absorbs the last-ulp drift of the blend arithmetic so
    the convex-range contract holds exactly (and fg == bg stays fg).
    """
    if fg.channels != 3 or bg.channels != 3:
        raise ArgumentError("foreground and background must be 3-channel images")
    if fg.data.shape != bg.data.shape:
        raise ArgumentError(
            f"foreground {fg.data.shape} and background {bg.data.shape} sizes differ"
        )
    if weights.values.shape[1:] != fg.data.shape[:2]:
        raise ArgumentError(
            f"weights {weights.values.shape} do not match image size {fg.data.shape[:2]}"
        )
    w = weights.values[..., None]
    out = w * fg.data + (1.0 - w) * bg.data
    lo = np.minimum(fg.data, bg.data)
    hi = np.maximum(fg.data, bg.data)
    return np.clip(out, lo, hi)


def assemble_mpi(
    planes_rgb: np.ndarray,
    alphas: AlphaVolume,
    depths: PlaneDepths,
    intrinsics: CameraIntrinsics,
) -> Mpi:
    """Combine (K, H, W, 3) plane colors with an alpha volume into an Mpi."""
    rgb = np.asarray(planes_rgb, dtype=np.float64)
    if rgb.ndim != 4 or rgb.shape[3] != 3:
        raise ArgumentError(f"plane colors must be (K, H, W, 3), got shape {rgb.shape}")
    if rgb.shape[0] != alphas.plane_count or rgb.shape[0] != depths.count:
        raise ArgumentError(
            f"plane count mismatch: colors {rgb.shape[0]}, alphas {alphas.plane_count}, "
            f"depths {depths.count}"
        )
    if rgb.shape[1:3] != alphas.values.shape[1:]:
        raise ArgumentError(
            f"colors {rgb.shape[1:3]} and alphas {alphas.values.shape[1:]} sizes differ"
        )
    planes = np.empty(rgb.shape[:3] + (4,))
    planes[..., :3] = rgb
    planes[..., 3] = alphas.values
    return Mpi(planes, depths, intrinsics)


def identity_mpi(
    fg: ImageBuffer,
    d: DisparityMap,
    depths: PlaneDepths,
    intrinsics: CameraIntrinsics,
    sigma: float = 10.0,
    window: int = 31,
) -> Mpi:
    """Foreground-only MPI: every plane's color is the input image.

    Equivalent to blend weights identically 1 (no background content);
    alphas come from the usual discretize-then-blur pipeline. Rendering
    this MPI at the reference pose reproduces `fg` exactly; novel views
    expose stretching at dis-occlusions, which is the point of the
    variant.
    """
    if fg.channels != 3:
        raise ArgumentError("foreground must be a 3-channel image")
    if (fg.height, fg.width) != (d.height, d.width):
        raise ArgumentError(
            f"image ({fg.height}, {fg.width}) and disparity ({d.height}, {d.width}) sizes differ"
        )
    alphas = half_gaussian_alpha(discretize_disparity(d, depths), sigma=sigma, window=window)
    planes = np.empty((depths.count, fg.height, fg.width, 4))
    planes[..., :3] = fg.data
    planes[..., 3] = alphas.values
    return Mpi(planes, depths, intrinsics)
