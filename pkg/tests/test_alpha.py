import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mpiview import (
    AlphaVolume,
    ArgumentError,
    DisparityMap,
    DisparityUnit,
    discretize_disparity,
    half_gaussian_alpha,
    plane_depths,
)


def onehot_from_indices(idx: np.ndarray, planes: int) -> AlphaVolume:
    v = np.zeros((planes,) + idx.shape)
    rows, cols = np.indices(idx.shape)
    v[idx, rows, cols] = 1.0
    return AlphaVolume(v)


class TestDiscretize:
    def test_uniform_map_hits_the_exact_plane(self):
        sched = plane_depths(4, 1.0, 100.0)
        d = DisparityMap(np.full((3, 5), float(sched.disparities[2])))
        vol = discretize_disparity(d, sched)
        assert (vol.peak_indices == 2).all()
        assert (np.count_nonzero(vol.values, axis=0) == 1).all()

    def test_zero_disparity_clamps_to_farthest(self):
        sched = plane_depths(4, 1.0, 100.0)
        vol = discretize_disparity(DisparityMap(np.zeros((2, 2))), sched)
        assert (vol.peak_indices == 0).all()

    def test_matches_bruteforce_nearest_scan(self, rng):
        # Independent oracle: per pixel, scan all planes keeping the last
        # plane at minimal |disparity - value| (ties go nearer).
        sched = plane_depths(8, 1.0, 100.0)
        values = rng.uniform(0.0, 1.0, size=(6, 7))
        vol = discretize_disparity(DisparityMap(values), sched)
        disps = sched.disparities
        for (i, j), v in np.ndenumerate(values):
            dist = np.abs(disps - v)
            oracle = max(k for k in range(8) if dist[k] == dist.min())
            assert vol.peak_indices[i, j] == oracle
            assert vol.values[oracle, i, j] == 1.0

    def test_nan_rejected_at_map_construction(self):
        values = np.zeros((2, 2))
        values[0, 0] = np.nan
        with pytest.raises(ArgumentError):
            DisparityMap(values)


class TestHalfGaussian:
    def test_neighbor_value_matches_gaussian(self, rng):
        sched = plane_depths(32, 1.0, 100.0)
        idx = rng.integers(1, 32, size=(4, 4))
        out = half_gaussian_alpha(onehot_from_indices(idx, 32), sigma=10.0, window=31)
        for (i, j), k in np.ndenumerate(idx):
            assert out.values[k - 1, i, j] == pytest.approx(math.exp(-1.0 / 200.0), abs=1e-15)

    def test_peak_stays_exactly_one(self, rng):
        idx = rng.integers(0, 16, size=(5, 5))
        out = half_gaussian_alpha(onehot_from_indices(idx, 16))
        rows, cols = np.indices(idx.shape)
        assert (out.values[idx, rows, cols] == 1.0).all()

    def test_zero_in_front_of_peak(self, rng):
        idx = rng.integers(0, 16, size=(5, 5))
        out = half_gaussian_alpha(onehot_from_indices(idx, 16))
        k = np.arange(16)[:, None, None]
        assert not out.values[k > idx[None]].any()

    def test_window_truncates_one_sided_support(self):
        idx = np.full((1, 1), 20)
        out = half_gaussian_alpha(onehot_from_indices(idx, 32), sigma=10.0, window=31)
        col = out.values[:, 0, 0]
        assert col[20 - 15] > 0.0
        assert col[20 - 16] == 0.0

    def test_window_one_returns_the_onehot(self, rng):
        idx = rng.integers(0, 8, size=(3, 3))
        onehot = onehot_from_indices(idx, 8)
        out = half_gaussian_alpha(onehot, sigma=10.0, window=1)
        assert np.array_equal(out.values, onehot.values)

    def test_vanishing_sigma_returns_the_onehot(self, rng):
        idx = rng.integers(0, 8, size=(3, 3))
        onehot = onehot_from_indices(idx, 8)
        out = half_gaussian_alpha(onehot, sigma=1e-4, window=7)
        assert np.array_equal(out.values, onehot.values)

    def test_even_window_rejected(self):
        onehot = onehot_from_indices(np.zeros((2, 2), dtype=int), 4)
        with pytest.raises(ArgumentError):
            half_gaussian_alpha(onehot, window=30)

    def test_non_positive_sigma_rejected(self):
        onehot = onehot_from_indices(np.zeros((2, 2), dtype=int), 4)
        with pytest.raises(ArgumentError):
            half_gaussian_alpha(onehot, sigma=0.0)

    def test_non_onehot_input_rejected(self):
        idx = np.full((2, 2), 3)
        blurred = half_gaussian_alpha(onehot_from_indices(idx, 8), sigma=2.0, window=5)
        with pytest.raises(ArgumentError):
            half_gaussian_alpha(blurred)

    @given(
        idx=arrays(np.int64, (4, 5), elements=st.integers(0, 11)),
        sigma=st.floats(0.1, 50.0),
        window=st.integers(0, 10).map(lambda h: 2 * h + 1),
    )
    @settings(max_examples=60, deadline=None)
    def test_profile_invariants_hold(self, idx, sigma, window):
        out = half_gaussian_alpha(onehot_from_indices(idx, 12), sigma=sigma, window=window)
        v = out.values
        rows, cols = np.indices(idx.shape)
        # Peak exactly one; nothing in front; non-increasing toward the back.
        assert (v[idx, rows, cols] == 1.0).all()
        k = np.arange(12)[:, None, None]
        assert not v[k > idx[None]].any()
        diffs = np.diff(v, axis=0)
        behind = k[:-1] < idx[None]
        assert (diffs[behind] >= 0).all()

    def test_pixelwise_independence_under_permutation(self, rng):
        idx = rng.integers(0, 10, size=(4, 6))
        perm = rng.permutation(idx.size)
        out = half_gaussian_alpha(onehot_from_indices(idx, 10), sigma=3.0, window=9)
        flat_idx = idx.ravel()[perm].reshape(idx.shape)
        out_perm = half_gaussian_alpha(onehot_from_indices(flat_idx, 10), sigma=3.0, window=9)
        flat = out.values.reshape(10, -1)[:, perm].reshape(out.values.shape)
        assert np.array_equal(out_perm.values, flat)


class TestAlphaVolumeValidation:
    def test_rejects_out_of_range(self):
        with pytest.raises(ArgumentError):
            AlphaVolume(np.full((2, 2, 2), 1.01))

    def test_rejects_weight_in_front_of_peak(self):
        v = np.zeros((3, 1, 1))
        v[1, 0, 0] = 1.0
        v[2, 0, 0] = 0.5
        with pytest.raises(ArgumentError):
            AlphaVolume(v)

    def test_rejects_non_monotone_tail(self):
        v = np.zeros((4, 1, 1))
        v[3, 0, 0] = 1.0
        v[2, 0, 0] = 0.2
        v[1, 0, 0] = 0.5  # rises again moving backward
        with pytest.raises(ArgumentError):
            AlphaVolume(v)

    def test_accepts_valid_half_gaussian_profile(self):
        v = np.zeros((4, 1, 1))
        v[3, 0, 0] = 1.0
        v[2, 0, 0] = 0.9
        v[1, 0, 0] = 0.5
        v[0, 0, 0] = 0.1
        AlphaVolume(v)
