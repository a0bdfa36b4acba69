"""Camera-trajectory text files and training-pair sampling.

The file layout follows the public video-dataset convention: the first
line is the source video URL, then one whitespace-separated line per
frame with 19 fields: integer timestamp (microseconds), four normalized
intrinsics (fx fy cx cy as fractions of width/height), two reserved
fields, and the 12 entries of a 3×4 world-to-camera matrix, row-major.

Records keep the extrinsic entries verbatim so parse/serialize round-trips
exactly; `pose()` projects the stored rotation block onto the nearest
orthonormal matrix before handing it to the geometry code.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import CameraIntrinsics, CameraPose
from .errors import DataError

__all__ = [
    "TrajectoryRecord",
    "Trajectory",
    "parse_trajectory",
    "serialize_trajectory",
    "sample_training_pairs",
]

_FIELDS_PER_LINE = 19
_ROTATION_TOL = 1e-6
# A strided 10-frame window with the largest interval (10) spans 91 frames.
_MIN_FRAMES_FOR_SAMPLING = 91


@dataclass(frozen=True, eq=False)
class TrajectoryRecord:
    """One trajectory frame: timestamp, normalized intrinsics, extrinsic."""

    timestamp_us: int
    fx: float
    fy: float
    cx: float
    cy: float
    extra: tuple[float, float]
    extrinsic: np.ndarray  # 3x4 world-to-camera, rows [R | t]

    def __post_init__(self):
        e = np.asarray(self.extrinsic, dtype=np.float64)
        if e.shape != (3, 4):
            raise DataError(f"extrinsic must be 3x4, got {e.shape}")
        e = np.ascontiguousarray(e)
        e.flags.writeable = False
        object.__setattr__(self, "extrinsic", e)
        object.__setattr__(self, "extra", (float(self.extra[0]), float(self.extra[1])))

    @property
    def rotation(self) -> np.ndarray:
        return self.extrinsic[:, :3]

    @property
    def translation(self) -> np.ndarray:
        return self.extrinsic[:, 3]

    def pose(self) -> CameraPose:
        """World-to-camera pose with the rotation snapped onto SO(3).

        File rotations are only orthonormal to ~1e-6; the SVD projection
        makes them exact enough for the pose type's stricter check.
        """
        u, _, vt = np.linalg.svd(self.rotation)
        r = u @ vt
        if np.linalg.det(r) < 0:
            u[:, -1] = -u[:, -1]
            r = u @ vt
        return CameraPose(r, self.translation)

    def pixel_intrinsics(self, width: int, height: int) -> CameraIntrinsics:
        """Denormalize the stored intrinsics for a raster of width×height."""
        return CameraIntrinsics(
            self.fx * width, self.fy * height, self.cx * width, self.cy * height
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TrajectoryRecord)
            and self.timestamp_us == other.timestamp_us
            and (self.fx, self.fy, self.cx, self.cy) == (other.fx, other.fy, other.cx, other.cy)
            and self.extra == other.extra
            and np.array_equal(self.extrinsic, other.extrinsic)
        )


@dataclass(frozen=True)
class Trajectory:
    """Parsed trajectory: the source URL line plus per-frame records."""

    url: str
    records: tuple[TrajectoryRecord, ...]

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[TrajectoryRecord]:
        return iter(self.records)

    def __getitem__(self, i: int) -> TrajectoryRecord:
        return self.records[i]


def _parse_frame_line(line: str, line_no: int) -> TrajectoryRecord:
    fields = line.split()
    if len(fields) != _FIELDS_PER_LINE:
        raise DataError(
            f"line {line_no}: expected {_FIELDS_PER_LINE} fields, got {len(fields)}"
        )
    try:
        timestamp = int(fields[0])
        numbers = [float(x) for x in fields[1:]]
    except ValueError as e:
        raise DataError(f"line {line_no}: non-numeric field ({e})") from e
    fx, fy, cx, cy = numbers[0:4]
    for name, v in zip(("fx", "fy", "cx", "cy"), (fx, fy, cx, cy)):
        if not (0.0 < v < 2.0):
            raise DataError(
                f"line {line_no}: normalized intrinsic {name}={v} outside (0, 2)"
            )
    extra = (numbers[4], numbers[5])
    extrinsic = np.array(numbers[6:18], dtype=np.float64).reshape(3, 4)
    r = extrinsic[:, :3]
    if np.abs(r.T @ r - np.eye(3)).max() > _ROTATION_TOL:
        raise DataError(f"line {line_no}: rotation block is not orthonormal")
    if np.linalg.det(r) < 0:
        raise DataError(f"line {line_no}: rotation block is a reflection")
    return TrajectoryRecord(timestamp, fx, fy, cx, cy, extra, extrinsic)


def parse_trajectory(text: str) -> Trajectory:
    """Parse a trajectory document; raises DataError with the line number."""
    lines = [ln for ln in text.splitlines()]
    stripped = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not stripped:
        raise DataError("empty trajectory document")
    url_no, url = stripped[0]
    if not url or url.split() != [url]:
        raise DataError(f"line {url_no}: expected a URL line")
    records = [_parse_frame_line(ln, no) for no, ln in stripped[1:]]
    return Trajectory(url, tuple(records))


def serialize_trajectory(traj: Trajectory) -> str:
    """Inverse of parse_trajectory; floats keep full round-trip precision."""
    out = [traj.url]
    for rec in traj.records:
        fields = [str(rec.timestamp_us)]
        fields += [repr(float(v)) for v in (rec.fx, rec.fy, rec.cx, rec.cy)]
        fields += [repr(float(v)) for v in rec.extra]
        fields += [repr(float(v)) for v in rec.extrinsic.ravel()]
        out.append(" ".join(fields))
    return "\n".join(out) + "\n"


def sample_training_pairs(
    records: Sequence[TrajectoryRecord] | Trajectory,
    rng_seed: int,
    n_pairs: int = 10,
) -> list[tuple[int, int]]:
    """Draw (source, target) frame-index pairs for two-view training.

    Each pair: draw a stride from 1..10, place a 10-frame window with that
    stride at a random start, then pick two distinct frames of the window.
    Deterministic for a given seed.
    """
    n = len(records)
    if n < _MIN_FRAMES_FOR_SAMPLING:
        raise DataError(
            f"trajectory too short for pair sampling: {n} frames < {_MIN_FRAMES_FOR_SAMPLING}"
        )
    rng = np.random.default_rng(rng_seed)
    pairs = []
    for _ in range(n_pairs):
        interval = int(rng.integers(1, 11))
        span = 9 * interval
        start = int(rng.integers(0, n - span))
        window = start + interval * np.arange(10)
        a, b = rng.choice(10, size=2, replace=False)
        pairs.append((int(window[a]), int(window[b])))
    return pairs
