"""Scale/shift alignment of relative disparity onto absolute disparity.

Monocular predictors output disparity up to an unknown affine transform;
fitting s, b by least squares against an absolute reference (per frame)
turns the relative map into metric inverse depth. A separate pair of
helpers maps physical disparity in [1/2, 32] to the normalized [0, 1]
encoding used for network targets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .baseline import VisibilityMask
from .core import DisparityMap, DisparityUnit
from .errors import ArgumentError, NumericError

__all__ = [
    "ScaleShift",
    "fit_scale_shift",
    "apply_scale_shift",
    "encode_normalized",
    "decode_normalized",
    "PHYSICAL_DISPARITY_MIN",
    "PHYSICAL_DISPARITY_MAX",
]

PHYSICAL_DISPARITY_MIN = 0.5
PHYSICAL_DISPARITY_MAX = 32.0
_SPAN = PHYSICAL_DISPARITY_MAX - PHYSICAL_DISPARITY_MIN


@dataclass(frozen=True)
class ScaleShift:
    """Affine disparity calibration: absolute ~= scale * relative + shift."""

    scale: float
    shift: float

    def __post_init__(self):
        if not (np.isfinite(self.scale) and np.isfinite(self.shift)):
            raise ArgumentError(f"scale/shift must be finite, got {self.scale}, {self.shift}")
        object.__setattr__(self, "scale", float(self.scale))
        object.__setattr__(self, "shift", float(self.shift))


def fit_scale_shift(
    rel: DisparityMap,
    absolute: DisparityMap,
    valid: VisibilityMask | None = None,
) -> ScaleShift:
    """Least-squares (scale, shift) minimizing sum((s*rel + b - abs)^2).

    Solved in closed form from the 2×2 normal equations over the valid
    pixels (all pixels when `valid` is None). Summation order is fixed,
    so the result is deterministic.
    """
    if rel.values.shape != absolute.values.shape:
        raise ArgumentError(
            f"relative {rel.values.shape} and absolute {absolute.values.shape} sizes differ"
        )
    if valid is None:
        r = rel.values.ravel()
        a = absolute.values.ravel()
    else:
        if valid.mask.shape != rel.values.shape:
            raise ArgumentError(
                f"mask {valid.mask.shape} does not match maps {rel.values.shape}"
            )
        r = rel.values[valid.mask]
        a = absolute.values[valid.mask]
    n = r.size
    if n < 2:
        raise ArgumentError(f"need at least 2 valid pixels, got {n}")

    sum_r = float(np.sum(r))
    sum_rr = float(np.sum(r * r))
    sum_a = float(np.sum(a))
    sum_ra = float(np.sum(r * a))
    det = n * sum_rr - sum_r * sum_r
    if det <= 1e-12 * max(n * sum_rr, 1.0):
        raise NumericError("degenerate fit: relative disparity is constant over valid pixels")
    scale = (n * sum_ra - sum_r * sum_a) / det
    shift = (sum_rr * sum_a - sum_r * sum_ra) / det
    return ScaleShift(scale, shift)


def apply_scale_shift(rel: DisparityMap, t: ScaleShift) -> DisparityMap:
    """Pixelwise s*rel + b; negative results clamp to zero.

    The output is absolute disparity, tagged INVERSE_METERS.
    """
    out = np.maximum(t.scale * rel.values + t.shift, 0.0)
    return DisparityMap(out, DisparityUnit.INVERSE_METERS)


def encode_normalized(phys):
    """Map physical disparity in [1/2, 32] linearly onto [0, 1].

    Accepts scalars or arrays; inputs outside the physical range clamp to
    the endpoints. NaN raises.
    """
    p = np.asarray(phys, dtype=np.float64)
    if np.isnan(p).any():
        raise ArgumentError("disparity must not be NaN")
    out = np.clip((p - PHYSICAL_DISPARITY_MIN) / _SPAN, 0.0, 1.0)
    return out if out.ndim else float(out)


def decode_normalized(norm):
    """Inverse of encode_normalized: [0, 1] back to disparity in [1/2, 32]."""
    q = np.asarray(norm, dtype=np.float64)
    if np.isnan(q).any():
        raise ArgumentError("normalized disparity must not be NaN")
    out = PHYSICAL_DISPARITY_MIN + _SPAN * np.clip(q, 0.0, 1.0)
    return out if out.ndim else float(out)
