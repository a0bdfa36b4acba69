"""Multiplane-image scene construction and novel-view rendering.

Builds a layered RGBA scene representation from a single color image and
disparity map, renders geometrically consistent novel views by per-plane
homography warping and back-to-front alpha compositing, and ships the
single-image warping baseline, disparity alignment preprocessing, and the
file formats that tie a pipeline together.
"""

from .align import (
    ScaleShift,
    apply_scale_shift,
    decode_normalized,
    encode_normalized,
    fit_scale_shift,
)
from .alpha import AlphaVolume, discretize_disparity, half_gaussian_alpha
from .archive import export_web, load_mpi, save_mpi
from .assemble import BlendWeights, assemble_mpi, blend_planes, identity_mpi
from .baseline import (
    VisibilityMask,
    diffusion_inpaint,
    median_filter_disparity,
    threshold_occlusion_mask,
    warp_single_image,
)
from .core import (
    CameraIntrinsics,
    CameraPose,
    DisparityMap,
    DisparityUnit,
    ImageBuffer,
    Mpi,
    PlaneDepths,
    compose_poses,
    disparity_to_plane_index,
    nearest_plane_indices,
    plane_depths,
    relative_pose,
    rotation_from_euler,
)
from .errors import ArgumentError, DataError, MpiViewError, NumericError
from .formats import (
    load_disparity_pfm,
    load_disparity_png16,
    load_image_png,
    save_disparity_pfm,
    save_disparity_png16,
    save_image_png,
)
from .render import (
    CameraPath,
    Homography,
    PathKind,
    circle_path,
    grid_path,
    over_composite,
    plane_homography,
    render_novel_view,
    warp_plane,
    zoom_path,
)
from .trajectory import (
    Trajectory,
    TrajectoryRecord,
    parse_trajectory,
    sample_training_pairs,
    serialize_trajectory,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaVolume",
    "ArgumentError",
    "BlendWeights",
    "CameraIntrinsics",
    "CameraPath",
    "CameraPose",
    "DataError",
    "DisparityMap",
    "DisparityUnit",
    "Homography",
    "ImageBuffer",
    "Mpi",
    "MpiViewError",
    "NumericError",
    "PathKind",
    "PlaneDepths",
    "ScaleShift",
    "Trajectory",
    "TrajectoryRecord",
    "VisibilityMask",
    "apply_scale_shift",
    "assemble_mpi",
    "blend_planes",
    "circle_path",
    "compose_poses",
    "decode_normalized",
    "diffusion_inpaint",
    "discretize_disparity",
    "disparity_to_plane_index",
    "encode_normalized",
    "export_web",
    "fit_scale_shift",
    "grid_path",
    "half_gaussian_alpha",
    "identity_mpi",
    "load_disparity_pfm",
    "load_disparity_png16",
    "load_image_png",
    "load_mpi",
    "median_filter_disparity",
    "nearest_plane_indices",
    "over_composite",
    "parse_trajectory",
    "plane_depths",
    "plane_homography",
    "relative_pose",
    "render_novel_view",
    "rotation_from_euler",
    "sample_training_pairs",
    "save_disparity_pfm",
    "save_disparity_png16",
    "save_image_png",
    "save_mpi",
    "serialize_trajectory",
    "threshold_occlusion_mask",
    "warp_plane",
    "warp_single_image",
    "zoom_path",
]
