"""Alpha-plane generation from a disparity map.

The disparity map is discretized into a per-pixel one-hot plane volume,
then blurred along the plane axis with a truncated half Gaussian that
leaves the peak untouched and only spreads weight onto *farther* planes.
The result is used directly as the MPI's alpha channels: content at the
predicted disparity stays fully opaque, while planes behind it become
partially visible so dis-occlusions can reveal hallucinated background.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DisparityMap, PlaneDepths, _freeze, nearest_plane_indices
from .errors import ArgumentError

__all__ = ["AlphaVolume", "discretize_disparity", "half_gaussian_alpha"]


@dataclass(frozen=True, eq=False)
class AlphaVolume:
    """K×H×W per-plane visibility in [0, 1], back-to-front plane order.

    Valid volumes have a single-peak profile at every pixel: one plane
    holds the per-pixel maximum, every plane in front of it is fully
    transparent, and opacity never increases moving toward farther
    planes. In the standard pipeline the peak value is exactly 1.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 3 or v.size == 0:
            raise ArgumentError(f"alpha volume must be non-empty (K, H, W), got shape {v.shape}")
        lo, hi = float(v.min()), float(v.max())
        if not (lo >= 0.0 and hi <= 1.0):
            raise ArgumentError(f"alpha values must be finite and in [0, 1], got [{lo}, {hi}]")
        _check_profile(v)
        object.__setattr__(self, "values", _freeze(v))

    @classmethod
    def _trusted(cls, values: np.ndarray, peaks: np.ndarray | None = None) -> "AlphaVolume":
        # Internal fast path for freshly built volumes whose invariants
        # hold by construction; skips the (multi-pass) validation.
        obj = object.__new__(cls)
        object.__setattr__(obj, "values", _freeze(values))
        if peaks is not None:
            object.__setattr__(obj, "_peaks", peaks)
        return obj

    @property
    def plane_count(self) -> int:
        return self.values.shape[0]

    @property
    def height(self) -> int:
        return self.values.shape[1]

    @property
    def width(self) -> int:
        return self.values.shape[2]

    @property
    def peak_indices(self) -> np.ndarray:
        """H×W indices of the per-pixel peak plane."""
        cached = getattr(self, "_peaks", None)
        if cached is None:
            cached = np.argmax(self.values, axis=0)
            object.__setattr__(self, "_peaks", cached)
        return cached

    def __eq__(self, other) -> bool:
        return isinstance(other, AlphaVolume) and np.array_equal(self.values, other.values)


def _check_profile(v: np.ndarray) -> None:
    k = v.shape[0]
    if k == 1:
        return
    peak = np.argmax(v, axis=0)[None]
    plane_idx = np.arange(k, dtype=np.int32)[:, None, None]
    if ((v > 0.0) & (plane_idx > peak)).any():
        raise ArgumentError("alpha volume has non-zero values in front of the peak plane")
    # Behind the peak (k ascending toward it) opacity must not decrease.
    if ((v[1:] < v[:-1]) & (plane_idx[:-1] < peak)).any():
        raise ArgumentError("alpha volume is not non-increasing behind the peak plane")


def discretize_disparity(d: DisparityMap, depths: PlaneDepths) -> AlphaVolume:
    """One-hot plane volume: 1 at each pixel's nearest-disparity plane.

    Values outside the schedule's disparity span clamp to the end planes.
    """
    idx = nearest_plane_indices(d.values, depths)
    onehot = np.zeros((depths.count, d.height, d.width))
    rows, cols = np.indices(idx.shape)
    onehot[idx, rows, cols] = 1.0
    return AlphaVolume._trusted(onehot, peaks=idx)


def half_gaussian_alpha(
    onehot: AlphaVolume,
    sigma: float = 10.0,
    window: int = 31,
    peak: float = 1.0,
) -> AlphaVolume:
    """Spread each pixel's one-hot peak onto farther planes with a half Gaussian.

    With peak plane i, the output is `peak` at i, peak * exp(-(i-j)^2 / (2 sigma^2))
    for planes j behind it within (window-1)/2 taps, and 0 everywhere else.
    The kernel is deliberately not renormalized: the peak must stay fully
    opaque so the reference view reproduces the input image exactly.
    """
    if window < 1 or window % 2 == 0:
        raise ArgumentError(f"window must be odd and >= 1, got {window}")
    if not sigma > 0:
        raise ArgumentError(f"sigma must be > 0, got {sigma}")
    if not 0.0 < peak <= 1.0:
        raise ArgumentError(f"peak must be in (0, 1], got {peak}")
    peak_idx = onehot.peak_indices
    pixels = onehot.height * onehot.width
    peaks_are_one = bool(
        (np.take_along_axis(onehot.values, peak_idx[None], axis=0) == 1.0).all()
    )
    if not peaks_are_one or np.count_nonzero(onehot.values) != pixels:
        raise ArgumentError("input volume is not one-hot")
    half = (window - 1) // 2
    k = onehot.plane_count
    # One kernel value per plane offset, gathered by lookup: offset 0 is the
    # peak, positive offsets are farther planes inside the window, anything
    # else is fully transparent.
    lut = np.zeros(2 * k - 1)
    lut[k - 1] = peak
    tail_offsets = np.arange(1, min(half, k - 1) + 1, dtype=np.float64)
    lut[k - 1 + 1 : k - 1 + 1 + tail_offsets.size] = peak * np.exp(
        -(tail_offsets**2) / (2.0 * sigma * sigma)
    )
    offset_idx = (
        peak_idx[None].astype(np.int32)
        - np.arange(k, dtype=np.int32)[:, None, None]
        + (k - 1)
    )
    return AlphaVolume._trusted(lut[offset_idx], peaks=peak_idx)
