import numpy as np
import pytest

from mpiview import CameraIntrinsics, CameraPose, rotation_from_euler


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_pose(rng, max_angle=0.3, max_shift=0.5) -> CameraPose:
    angles = rng.uniform(-max_angle, max_angle, size=3)
    t = rng.uniform(-max_shift, max_shift, size=3)
    return CameraPose(rotation_from_euler(*angles), t)


def default_intrinsics(width: int, height: int) -> CameraIntrinsics:
    return CameraIntrinsics(float(width), float(width), (width - 1) / 2.0, (height - 1) / 2.0)


def project_pixel(intr: CameraIntrinsics, point: np.ndarray) -> tuple[float, float]:
    """Pinhole projection of a 3-D camera-frame point to pixel coordinates."""
    return (
        intr.fx * point[0] / point[2] + intr.cx,
        intr.fy * point[1] / point[2] + intr.cy,
    )


def backproject_pixel(intr: CameraIntrinsics, x: float, y: float, depth: float) -> np.ndarray:
    """Camera-frame 3-D point of pixel (x, y) at the given depth."""
    return depth * np.array([(x - intr.cx) / intr.fx, (y - intr.cy) / intr.fy, 1.0])
