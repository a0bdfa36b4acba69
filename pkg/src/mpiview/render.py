"""Novel-view rendering: plane homographies, warping, compositing, paths.

A novel view is produced by warping every MPI plane with its plane-induced
homography and folding the warped planes back-to-front with the over
operator. Warping samples backward (target pixel -> source pixel) with
bilinear interpolation; samples leaving the source raster are fully
transparent black, so extreme viewpoints darken at the borders instead of
failing.

Determinism contract: rendering the same inputs yields bitwise-identical
images regardless of worker thread count.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .core import CameraIntrinsics, CameraPose, ImageBuffer, Mpi, _freeze
from .errors import ArgumentError, NumericError

__all__ = [
    "Homography",
    "CameraPath",
    "PathKind",
    "plane_homography",
    "warp_plane",
    "over_composite",
    "render_novel_view",
    "grid_path",
    "circle_path",
    "zoom_path",
]

_PLANE_NORMAL = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True, eq=False)
class Homography:
    """3×3 projective map taking target pixel coordinates to source pixels."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.shape != (3, 3):
            raise ArgumentError(f"homography must be 3x3, got {m.shape}")
        if not np.isfinite(m).all():
            raise ArgumentError("homography entries must be finite")
        if abs(np.linalg.det(m)) <= 1e-12:
            raise NumericError("homography is singular")
        object.__setattr__(self, "matrix", _freeze(m))

    def is_identity(self) -> bool:
        return np.array_equal(self.matrix, np.eye(3))

    def __eq__(self, other) -> bool:
        return isinstance(other, Homography) and np.array_equal(self.matrix, other.matrix)


class PathKind(enum.Enum):
    GRID = "grid"
    CIRCLE = "circle"
    ZOOM = "zoom"
    CUSTOM = "custom"


@dataclass(frozen=True)
class CameraPath:
    """Ordered camera poses for an evaluation or fly-through sequence."""

    poses: tuple[CameraPose, ...]
    kind: PathKind = PathKind.CUSTOM

    def __post_init__(self):
        if len(self.poses) == 0:
            raise ArgumentError("camera path must contain at least one pose")
        object.__setattr__(self, "poses", tuple(self.poses))

    def __len__(self) -> int:
        return len(self.poses)


def plane_homography(
    intr_source: CameraIntrinsics,
    intr_target: CameraIntrinsics,
    rel: CameraPose,
    depth: float,
) -> Homography:
    """Homography induced by the source fronto-parallel plane at `depth`.

    `rel` takes source-camera coordinates to target-camera coordinates.
    The returned matrix maps target pixels back to source pixels for
    backward sampling. A point on the plane z = depth (source frame)
    projects consistently through both cameras under this map.
    """
    if not np.isfinite(depth) or depth <= 0:
        raise ArgumentError(f"plane depth must be positive, got {depth}")
    if rel.is_identity() and intr_source == intr_target:
        # The exact closed form; avoids K @ K^-1 round-off so that
        # reference-view rendering stays bit-exact.
        return Homography(np.eye(3))
    m = rel.rotation + np.outer(rel.translation, _PLANE_NORMAL) / depth
    # det(m) = 1 + (R^T t)_z / depth vanishes exactly when the plane
    # passes through the target camera center.
    if abs(np.linalg.det(m)) <= 1e-12:
        raise NumericError(
            f"degenerate homography: plane at depth {depth} passes through the target camera"
        )
    forward = intr_target.matrix() @ m @ intr_source.inverse_matrix()
    return Homography(np.linalg.inv(forward))


def warp_plane(
    plane: ImageBuffer,
    hom: Homography,
    out_size: tuple[int, int] | None = None,
) -> ImageBuffer:
    """Backward-warp an RGBA plane into a target raster of `out_size` (H, W).

    Bilinear sampling on straight (non-premultiplied) RGBA; target pixels
    whose source sample falls outside the raster become fully transparent
    black. An exact identity homography at unchanged size is a bit-exact
    copy.
    """
    if plane.channels != 4:
        raise ArgumentError(f"warp_plane expects an RGBA plane, got {plane.channels} channels")
    out_h, out_w = out_size if out_size is not None else (plane.height, plane.width)
    if out_h < 1 or out_w < 1:
        raise ArgumentError(f"output size must be positive, got {(out_h, out_w)}")
    warped = _kernels.warp_image(plane.data, hom.matrix, out_h, out_w)
    return ImageBuffer(np.clip(warped, 0.0, 1.0))


def over_composite(planes: Sequence[ImageBuffer] | np.ndarray) -> ImageBuffer:
    """Fold RGBA planes back-to-front with the over operator.

    planes[0] is the farthest layer. The fold is acc = rgb*a + acc*(1-a)
    starting from black; the result is clamped into [0, 1] to absorb
    last-ulp drift.
    """
    if isinstance(planes, np.ndarray):
        if planes.ndim != 4 or planes.shape[3] != 4:
            raise ArgumentError(f"plane stack must be (K, H, W, 4), got {planes.shape}")
        stack = [np.asarray(p, dtype=np.float64) for p in planes]
    else:
        stack = [p.data for p in planes]
        if any(p.shape[2] != 4 for p in stack):
            raise ArgumentError("all planes must be RGBA")
    if len(stack) == 0:
        raise ArgumentError("cannot composite an empty plane list")
    shape = stack[0].shape
    if any(p.shape != shape for p in stack):
        raise ArgumentError("all planes must share one resolution")
    acc = np.zeros(shape[:2] + (3,))
    for p in stack:
        a = p[..., 3:]
        acc = p[..., :3] * a + acc * (1.0 - a)
    return ImageBuffer(np.clip(acc, 0.0, 1.0))


def render_novel_view(
    mpi: Mpi,
    target: CameraPose,
    intr_target: CameraIntrinsics | None = None,
    out_size: tuple[int, int] | None = None,
) -> ImageBuffer:
    """Render the MPI from a camera posed relative to its reference frame.

    `target` maps reference-camera coordinates to target-camera
    coordinates (for a reference at the world origin this is simply the
    target's world-to-camera pose). Target intrinsics default to the
    MPI's own. Bitwise-equal to warping each plane with warp_plane and
    folding with over_composite, but fused to avoid K full-size
    intermediates.
    """
    intr_t = intr_target if intr_target is not None else mpi.intrinsics
    out_h, out_w = out_size if out_size is not None else (mpi.height, mpi.width)
    if out_h < 1 or out_w < 1:
        raise ArgumentError(f"output size must be positive, got {(out_h, out_w)}")
    homs = np.stack(
        [
            plane_homography(mpi.intrinsics, intr_t, target, float(d)).matrix
            for d in mpi.depths.depths
        ]
    )
    eye = np.eye(3)
    identity_flags = np.array([np.array_equal(m, eye) for m in homs])
    out = _kernels.render_planes(mpi.planes, homs, identity_flags, out_h, out_w)
    return ImageBuffer(out)


def grid_path(n: int = 7, extent: float = 0.3) -> CameraPath:
    """n×n pure-translation viewpoints on the x-y plane, row-major.

    Offsets are equispaced over [-extent, extent] per axis with exact
    endpoints; for odd n the center pose is the exact identity.
    """
    if n < 1:
        raise ArgumentError(f"grid size must be >= 1, got {n}")
    if not np.isfinite(extent) or extent < 0:
        raise ArgumentError(f"extent must be >= 0, got {extent}")
    if n == 1:
        offsets = np.array([0.0])
    else:
        half = (n - 1) / 2.0
        offsets = extent * ((np.arange(n) - half) / half)
    poses = [
        CameraPose.from_translation(x, y, 0.0) for y in offsets for x in offsets
    ]
    return CameraPath(tuple(poses), PathKind.GRID)


def circle_path(radius: float, frames: int) -> CameraPath:
    """Closed circular translation in the x-y plane, one full revolution."""
    if frames < 1:
        raise ArgumentError(f"frame count must be >= 1, got {frames}")
    if not np.isfinite(radius) or radius < 0:
        raise ArgumentError(f"radius must be >= 0, got {radius}")
    angles = 2.0 * np.pi * np.arange(frames) / frames
    poses = [
        CameraPose.from_translation(radius * np.cos(a), radius * np.sin(a), 0.0)
        for a in angles
    ]
    return CameraPath(tuple(poses), PathKind.CIRCLE)


def zoom_path(depth_range: tuple[float, float], frames: int) -> CameraPath:
    """Dolly along +z from depth_range[0] to depth_range[1]."""
    if frames < 1:
        raise ArgumentError(f"frame count must be >= 1, got {frames}")
    z0, z1 = float(depth_range[0]), float(depth_range[1])
    if not (np.isfinite(z0) and np.isfinite(z1)):
        raise ArgumentError(f"depth range must be finite, got {depth_range}")
    zs = np.linspace(z0, z1, frames)
    poses = [CameraPose.from_translation(0.0, 0.0, z) for z in zs]
    return CameraPath(tuple(poses), PathKind.ZOOM)
