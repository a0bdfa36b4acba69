"""Core scene-representation types: rasters, cameras, plane schedules, MPIs.

All types are immutable after construction, so instances can be shared
freely across threads; every operation in this package is a pure function
over them. Construction marks the backing array read-only *in place*
(arrays are not defensively copied): pass a copy if you need to keep
mutating yours.

Conventions fixed here and relied on everywhere else:

- images are (H, W, C) float64 row-major rasters with samples in [0, 1];
- camera poses are world-to-camera rigid transforms (right-handed,
  z-forward camera);
- plane stacks are ordered back-to-front: index 0 is the farthest plane.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError

__all__ = [
    "ImageBuffer",
    "DisparityMap",
    "DisparityUnit",
    "CameraIntrinsics",
    "CameraPose",
    "PlaneDepths",
    "Mpi",
    "plane_depths",
    "relative_pose",
    "compose_poses",
    "disparity_to_plane_index",
    "nearest_plane_indices",
]

_ORTHONORMAL_TOL = 1e-9


def _freeze(a: np.ndarray) -> np.ndarray:
    # Marks the array read-only in place (copying only to fix dtype or
    # layout): constructing a domain object freezes the buffer you pass.
    out = np.ascontiguousarray(a, dtype=np.float64)
    out.flags.writeable = False
    return out


def _check_unit_range(a: np.ndarray, what: str) -> None:
    # min/max propagate NaN, so one pair of reductions covers both the
    # finiteness and the range check even for large volumes.
    lo = float(a.min()) if a.size else 0.0
    hi = float(a.max()) if a.size else 0.0
    if not (lo >= 0.0 and hi <= 1.0):
        raise ArgumentError(
            f"{what} must be finite and within [0, 1], got range [{lo}, {hi}]"
        )


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    """H×W×C floating-point raster with samples in [0, 1].

    C is 1 (gray), 3 (RGB) or 4 (RGBA, straight alpha). Use
    :meth:`from_array` to coerce 2-D grayscale input.
    """

    data: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.data, dtype=np.float64)
        if d.ndim != 3:
            raise ArgumentError(f"image data must be (H, W, C), got shape {d.shape}")
        if d.shape[2] not in (1, 3, 4):
            raise ArgumentError(f"channel count must be 1, 3 or 4, got {d.shape[2]}")
        if d.shape[0] < 1 or d.shape[1] < 1:
            raise ArgumentError("image must have at least one pixel")
        _check_unit_range(d, "image samples")
        object.__setattr__(self, "data", _freeze(d))

    @classmethod
    def from_array(cls, a: np.ndarray) -> "ImageBuffer":
        a = np.asarray(a, dtype=np.float64)
        if a.ndim == 2:
            a = a[:, :, None]
        return cls(a)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    def __eq__(self, other) -> bool:
        return isinstance(other, ImageBuffer) and np.array_equal(self.data, other.data)


class DisparityUnit(enum.Enum):
    """Tag telling how disparity samples are scaled.

    NORMALIZED maps live in [0, 1]; INVERSE_METERS maps hold physical
    inverse depth (1/m) and are only bounded below by zero.
    """

    NORMALIZED = "normalized"
    INVERSE_METERS = "inverse_meters"


@dataclass(frozen=True, eq=False)
class DisparityMap:
    """H×W inverse-depth raster; `unit` declares the value scale."""

    values: np.ndarray
    unit: DisparityUnit = DisparityUnit.NORMALIZED

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2:
            raise ArgumentError(f"disparity must be (H, W), got shape {v.shape}")
        if not np.isfinite(v).all():
            raise ArgumentError("disparity contains non-finite values")
        if v.size and float(v.min()) < 0.0:
            raise ArgumentError("disparity values must be >= 0")
        if self.unit is DisparityUnit.NORMALIZED and v.size and float(v.max()) > 1.0:
            raise ArgumentError("normalized disparity values must be <= 1")
        object.__setattr__(self, "values", _freeze(v))

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DisparityMap)
            and self.unit is other.unit
            and np.array_equal(self.values, other.values)
        )


@dataclass(frozen=True)
class CameraIntrinsics:
    """Pinhole parameters in pixel units."""

    fx: float
    fy: float
    cx: float
    cy: float

    def __post_init__(self):
        for name in ("fx", "fy", "cx", "cy"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ArgumentError(f"intrinsic {name} must be finite, got {v}")
            object.__setattr__(self, name, float(v))
        if self.fx <= 0 or self.fy <= 0:
            raise ArgumentError(f"focal lengths must be positive, got fx={self.fx}, fy={self.fy}")

    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.fx, 0.0, self.cx], [0.0, self.fy, self.cy], [0.0, 0.0, 1.0]]
        )

    def inverse_matrix(self) -> np.ndarray:
        # Closed form; K is upper triangular.
        return np.array(
            [
                [1.0 / self.fx, 0.0, -self.cx / self.fx],
                [0.0, 1.0 / self.fy, -self.cy / self.fy],
                [0.0, 0.0, 1.0],
            ]
        )


@dataclass(frozen=True, eq=False)
class CameraPose:
    """World-to-camera rigid transform: X_cam = rotation @ X_world + translation.

    Translation is in meters. The rotation must be orthonormal with
    determinant +1 (checked to 1e-9).
    """

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.rotation, dtype=np.float64)
        t = np.asarray(self.translation, dtype=np.float64).reshape(-1)
        if r.shape != (3, 3):
            raise ArgumentError(f"rotation must be 3x3, got {r.shape}")
        if t.shape != (3,):
            raise ArgumentError(f"translation must be a 3-vector, got {t.shape}")
        if not (np.isfinite(r).all() and np.isfinite(t).all()):
            raise ArgumentError("pose entries must be finite")
        if np.abs(r.T @ r - np.eye(3)).max() > _ORTHONORMAL_TOL:
            raise ArgumentError("rotation is not orthonormal")
        if abs(np.linalg.det(r) - 1.0) > _ORTHONORMAL_TOL:
            raise ArgumentError("rotation determinant must be +1")
        object.__setattr__(self, "rotation", _freeze(r))
        object.__setattr__(self, "translation", _freeze(t))

    @classmethod
    def identity(cls) -> "CameraPose":
        return cls(np.eye(3), np.zeros(3))

    @classmethod
    def from_translation(cls, tx: float, ty: float, tz: float) -> "CameraPose":
        return cls(np.eye(3), np.array([tx, ty, tz], dtype=np.float64))

    def is_identity(self) -> bool:
        return np.array_equal(self.rotation, np.eye(3)) and not self.translation.any()

    def matrix34(self) -> np.ndarray:
        return np.hstack([self.rotation, self.translation[:, None]])

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Transform (..., 3) world/source points into this camera's frame."""
        p = np.asarray(points, dtype=np.float64)
        return p @ self.rotation.T + self.translation

    def inverse(self) -> "CameraPose":
        rt = self.rotation.T
        return CameraPose(rt, -rt @ self.translation)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CameraPose)
            and np.array_equal(self.rotation, other.rotation)
            and np.array_equal(self.translation, other.translation)
        )

    def approx_equal(self, other: "CameraPose", tol: float = 1e-9) -> bool:
        return (
            np.abs(self.rotation - other.rotation).max() <= tol
            and np.abs(self.translation - other.translation).max() <= tol
        )


@dataclass(frozen=True, eq=False)
class PlaneDepths:
    """Back-to-front plane depth schedule (index 0 = farthest).

    Depths are strictly decreasing and their reciprocals (disparities)
    form an arithmetic sequence; this is what makes nearest-plane lookup
    and the one-hot discretization well defined.
    """

    depths: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.depths, dtype=np.float64).reshape(-1)
        if d.size < 1:
            raise ArgumentError("need at least one plane depth")
        if not np.isfinite(d).all() or float(d.min()) <= 0.0:
            raise ArgumentError("plane depths must be finite and positive")
        if d.size > 1:
            if not (np.diff(d) < 0).all():
                raise ArgumentError("plane depths must be strictly decreasing (back-to-front)")
            disp = 1.0 / d
            step = (disp[-1] - disp[0]) / (d.size - 1)
            if np.abs(np.diff(disp) - step).max() > 1e-9:
                raise ArgumentError("plane disparities must be equispaced")
        object.__setattr__(self, "depths", _freeze(d))

    @property
    def count(self) -> int:
        return self.depths.size

    @property
    def disparities(self) -> np.ndarray:
        return 1.0 / self.depths

    def __len__(self) -> int:
        return self.depths.size

    def __eq__(self, other) -> bool:
        return isinstance(other, PlaneDepths) and np.array_equal(self.depths, other.depths)


@dataclass(frozen=True, eq=False)
class Mpi:
    """Multiplane image: K RGBA planes at fixed depths from a reference camera.

    `planes` is a (K, H, W, 4) array; RGB holds per-plane color, A the
    per-plane visibility in [0, 1] (straight, non-premultiplied alpha).
    Alpha is validated here; colors are expected in [0, 1] (guaranteed by
    the library's builders, and the renderer clamps regardless).
    """

    planes: np.ndarray
    depths: PlaneDepths
    intrinsics: CameraIntrinsics

    def __post_init__(self):
        p = np.asarray(self.planes, dtype=np.float64)
        if p.ndim != 4 or p.shape[3] != 4:
            raise ArgumentError(f"planes must be (K, H, W, 4), got shape {p.shape}")
        if p.shape[0] != self.depths.count:
            raise ArgumentError(
                f"plane count {p.shape[0]} does not match depth schedule ({self.depths.count})"
            )
        _check_unit_range(p[..., 3], "MPI alpha samples")
        object.__setattr__(self, "planes", _freeze(p))

    @property
    def plane_count(self) -> int:
        return self.planes.shape[0]

    @property
    def height(self) -> int:
        return self.planes.shape[1]

    @property
    def width(self) -> int:
        return self.planes.shape[2]

    def plane(self, k: int) -> ImageBuffer:
        return ImageBuffer(self.planes[k])

    @property
    def colors(self) -> np.ndarray:
        return self.planes[..., :3]

    @property
    def alphas(self) -> np.ndarray:
        return self.planes[..., 3]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mpi)
            and np.array_equal(self.planes, other.planes)
            and self.depths == other.depths
            and self.intrinsics == other.intrinsics
        )


def plane_depths(count: int, d_near: float, d_far: float) -> PlaneDepths:
    """Build a schedule of `count` depths equispaced in disparity.

    Disparities run from 1/d_far to 1/d_near; the result is ordered
    back-to-front, so depths[0] == d_far and depths[-1] == d_near.
    """
    if count < 2:
        raise ArgumentError(f"need at least 2 planes, got {count}")
    if not (0.0 < d_near < d_far) or not np.isfinite(d_near) or not np.isfinite(d_far):
        raise ArgumentError(f"need 0 < d_near < d_far, got d_near={d_near}, d_far={d_far}")
    disparities = np.linspace(1.0 / d_far, 1.0 / d_near, count)
    depths = 1.0 / disparities
    # 1/(1/x) can be off by one ulp; the endpoints are the given depths by
    # definition, so pin them.
    depths[0] = d_far
    depths[-1] = d_near
    return PlaneDepths(depths)


def rotation_from_euler(rx: float, ry: float, rz: float) -> np.ndarray:
    """Rotation matrix for extrinsic x, y, z rotations (radians): Rz @ Ry @ Rx."""
    cx, sx = np.cos(rx), np.sin(rx)
    cy, sy = np.cos(ry), np.sin(ry)
    cz, sz = np.cos(rz), np.sin(rz)
    r_x = np.array([[1, 0, 0], [0, cx, -sx], [0, sx, cx]])
    r_y = np.array([[cy, 0, sy], [0, 1, 0], [-sy, 0, cy]])
    r_z = np.array([[cz, -sz, 0], [sz, cz, 0], [0, 0, 1]])
    return r_z @ r_y @ r_x


def compose_poses(second: CameraPose, first: CameraPose) -> CameraPose:
    """Return the pose applying `first` then `second`."""
    r = second.rotation @ first.rotation
    t = second.rotation @ first.translation + second.translation
    return CameraPose(r, t)


def relative_pose(source: CameraPose, target: CameraPose) -> CameraPose:
    """Transform taking source-camera coordinates to target-camera coordinates.

    compose_poses(relative_pose(s, t), s) == t up to floating-point error.
    """
    r = target.rotation @ source.rotation.T
    t = target.translation - r @ source.translation
    return CameraPose(r, t)


def nearest_plane_indices(values: np.ndarray, depths: PlaneDepths) -> np.ndarray:
    """Index of the disparity-nearest plane for every sample in `values`.

    Ties go to the nearer plane (higher back-to-front index); out-of-range
    values clamp to the end planes. Works on arrays of any shape.
    """
    v = np.asarray(values, dtype=np.float64)
    if np.isnan(v).any():
        raise ArgumentError("disparity values must not be NaN")
    disps = depths.disparities
    k = depths.count
    if k == 1:
        return np.zeros(v.shape, dtype=np.intp)
    # Rounding against the (equispaced) schedule lands within one plane of
    # the true nearest; resolving the +-1 neighborhood against the actual
    # disparities keeps the result exact, including the tie rule.
    step = (disps[-1] - disps[0]) / (k - 1)
    est = np.floor((v - disps[0]) / step + 0.5)
    est = np.clip(est, 0, k - 1).astype(np.intp)
    best = est
    best_dist = np.abs(v - disps[best])
    for delta in (-1, 1):
        cand = np.clip(est + delta, 0, k - 1)
        cand_dist = np.abs(v - disps[cand])
        take = (cand_dist < best_dist) | ((cand_dist == best_dist) & (cand > best))
        best = np.where(take, cand, best)
        best_dist = np.where(take, cand_dist, best_dist)
    return best


def disparity_to_plane_index(value: float, depths: PlaneDepths) -> int:
    """Nearest plane for one disparity value (see nearest_plane_indices)."""
    if not np.isfinite(value):
        raise ArgumentError(f"disparity value must be finite, got {value}")
    if value < 0:
        raise ArgumentError(f"disparity value must be >= 0, got {value}")
    return int(nearest_plane_indices(np.asarray(value), depths))
