"""Command-line surface.

Subcommands: build, render, path, baseline, align, sample-pairs,
export-web. Exit codes: 0 success, 2 argument error, 3 data/parse error,
4 numeric/degenerate error.

Input images with no accompanying camera information get a default
pinhole model: fx = fy = width, principal point at the raster center
((W-1)/2, (H-1)/2).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .align import apply_scale_shift, fit_scale_shift
from .archive import export_web, load_mpi, save_mpi
from .assemble import BlendWeights, assemble_mpi, blend_planes, identity_mpi
from .alpha import discretize_disparity, half_gaussian_alpha
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
    plane_depths,
    rotation_from_euler,
)
from .errors import ArgumentError, DataError, MpiViewError, NumericError
from .formats import (
    load_disparity_pfm,
    load_disparity_png16,
    load_image_png,
    save_disparity_pfm,
    save_image_png,
)
from .render import circle_path, grid_path, render_novel_view, zoom_path
from .trajectory import parse_trajectory, sample_training_pairs

__all__ = ["main"]


def _default_intrinsics(width: int, height: int) -> CameraIntrinsics:
    return CameraIntrinsics(float(width), float(width), (width - 1) / 2.0, (height - 1) / 2.0)


def _load_disparity(path: str) -> DisparityMap:
    suffix = Path(path).suffix.lower()
    if suffix == ".pfm":
        return load_disparity_pfm(path)
    if suffix == ".png":
        return load_disparity_png16(path, unit=DisparityUnit.INVERSE_METERS)
    raise ArgumentError(f"unsupported disparity format {suffix!r} (expected .pfm or .png)")


def _parse_pose(spec: str) -> CameraPose:
    """Parse 'tx,ty,tz' or 'tx,ty,tz,rx,ry,rz' (rotations in radians)."""
    parts = [p.strip() for p in spec.split(",")]
    if len(parts) not in (3, 6):
        raise ArgumentError(f"pose must have 3 or 6 comma-separated values, got {len(parts)}")
    try:
        vals = [float(p) for p in parts]
    except ValueError as e:
        raise ArgumentError(f"non-numeric pose component in {spec!r}") from e
    rotation = np.eye(3) if len(vals) == 3 else rotation_from_euler(*vals[3:])
    return CameraPose(rotation, np.array(vals[:3]))


def _cmd_build(args) -> int:
    fg = load_image_png(args.fg)
    disparity = _load_disparity(args.disparity)
    depths = plane_depths(args.planes, args.near, args.far)
    intr = _default_intrinsics(fg.width, fg.height)
    if (args.bg is None) != (args.weights is None):
        raise ArgumentError("--bg and --weights must be given together")
    if args.bg is None:
        mpi = identity_mpi(fg, disparity, depths, intr, sigma=args.sigma, window=args.window)
    else:
        bg = load_image_png(args.bg)
        try:
            weights = BlendWeights(np.load(args.weights))
        except (OSError, ValueError) as e:
            raise DataError(f"cannot read blend weights {args.weights}: {e}") from e
        alphas = half_gaussian_alpha(
            discretize_disparity(disparity, depths), sigma=args.sigma, window=args.window
        )
        mpi = assemble_mpi(blend_planes(fg, bg, weights), alphas, depths, intr)
    save_mpi(mpi, args.out)
    return 0


def _cmd_render(args) -> int:
    mpi = load_mpi(args.mpi)
    pose = _parse_pose(args.pose)
    frame = render_novel_view(mpi, pose)
    save_image_png(frame, args.out)
    return 0


def _cmd_path(args) -> int:
    mpi = load_mpi(args.mpi)
    if args.kind == "grid":
        path = grid_path(args.n, args.extent)
    elif args.kind == "circle":
        path = circle_path(args.extent, args.n)
    else:
        path = zoom_path((0.0, args.extent), args.n)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, pose in enumerate(path.poses):
        frame = render_novel_view(mpi, pose)
        save_image_png(frame, out / f"frame_{i:04d}.png")
    return 0


def _cmd_baseline(args) -> int:
    fg = load_image_png(args.fg)
    disparity = _load_disparity(args.disparity)
    pose = _parse_pose(args.pose)
    intr = _default_intrinsics(fg.width, fg.height)
    filtered = median_filter_disparity(disparity, window=19)
    warped, mask = warp_single_image(fg, filtered, pose, intr)
    mask = threshold_occlusion_mask(mask, window=9, ratio=0.5)
    if args.inpaint == "diffusion":
        warped = diffusion_inpaint(warped, mask)
    save_image_png(warped, args.out)
    return 0


def _cmd_align(args) -> int:
    rel = load_disparity_pfm(args.relative)
    absolute = load_disparity_pfm(args.absolute)
    valid = VisibilityMask(absolute.values > 0)
    t = fit_scale_shift(rel, absolute, valid)
    aligned = apply_scale_shift(rel, t)
    save_disparity_pfm(aligned, args.out)
    print(f"s={t.scale!r} b={t.shift!r}")
    return 0


def _cmd_sample_pairs(args) -> int:
    try:
        text = Path(args.trajectory).read_text()
    except OSError as e:
        raise DataError(f"cannot read trajectory {args.trajectory}: {e}") from e
    traj = parse_trajectory(text)
    pairs = sample_training_pairs(traj, args.seed)
    lines = [f"{s} {t}" for s, t in pairs]
    Path(args.out).write_text("\n".join(lines) + "\n")
    return 0


def _cmd_export_web(args) -> int:
    mpi = load_mpi(args.mpi)
    export_web(mpi, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpiview",
        description="Build, render, and export multiplane-image scenes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build an MPI archive from image + disparity")
    p.add_argument("--fg", required=True, help="foreground (visible surface) PNG")
    p.add_argument("--disparity", required=True, help="disparity map (.pfm or 16-bit .png)")
    p.add_argument("--bg", help="background color PNG (requires --weights)")
    p.add_argument("--weights", help="blend weights .npy of shape (K, H, W)")
    p.add_argument("--planes", type=int, default=128, help="number of planes (default 128)")
    p.add_argument("--near", type=float, default=1.0, help="nearest plane depth in meters")
    p.add_argument("--far", type=float, default=100.0, help="farthest plane depth in meters")
    p.add_argument("--sigma", type=float, default=10.0, help="alpha blur sigma in planes")
    p.add_argument("--window", type=int, default=31, help="alpha blur window in taps (odd)")
    p.add_argument("-o", "--out", required=True, help="output archive directory")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("render", help="render a single novel view")
    p.add_argument("--mpi", required=True, help="MPI archive directory")
    p.add_argument("--pose", required=True, help='"tx,ty,tz[,rx,ry,rz]" (meters, radians)')
    p.add_argument("-o", "--out", required=True, help="output PNG")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("path", help="render a camera path to numbered frames")
    p.add_argument("--mpi", required=True, help="MPI archive directory")
    p.add_argument("--kind", required=True, choices=["grid", "circle", "zoom"])
    p.add_argument("--n", type=int, default=7, help="grid side length / frame count")
    p.add_argument(
        "--extent",
        type=float,
        default=0.3,
        help="grid half-extent / circle radius / zoom end depth (meters)",
    )
    p.add_argument("-o", "--out", required=True, help="output frame directory")
    p.set_defaults(func=_cmd_path)

    p = sub.add_parser("baseline", help="single-image warp baseline with inpainting")
    p.add_argument("--fg", required=True, help="source color PNG")
    p.add_argument("--disparity", required=True, help="disparity map (.pfm or 16-bit .png)")
    p.add_argument("--pose", required=True, help='"tx,ty,tz[,rx,ry,rz]"')
    p.add_argument("--inpaint", choices=["diffusion", "none"], default="diffusion")
    p.add_argument("-o", "--out", required=True, help="output PNG")
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("align", help="fit scale/shift of relative onto absolute disparity")
    p.add_argument("--relative", required=True, help="relative disparity PFM")
    p.add_argument("--absolute", required=True, help="absolute disparity PFM")
    p.add_argument("-o", "--out", required=True, help="aligned disparity PFM")
    p.set_defaults(func=_cmd_align)

    p = sub.add_parser("sample-pairs", help="sample training frame pairs from a trajectory")
    p.add_argument("--trajectory", required=True, help="trajectory text file")
    p.add_argument("--seed", type=int, required=True, help="RNG seed")
    p.add_argument("-o", "--out", required=True, help="output pair list (one 'src tgt' per line)")
    p.set_defaults(func=_cmd_sample_pairs)

    p = sub.add_parser("export-web", help="export an archive for the browser viewer")
    p.add_argument("--mpi", required=True, help="MPI archive directory")
    p.add_argument("-o", "--out", required=True, help="output web directory")
    p.set_defaults(func=_cmd_export_web)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ArgumentError as e:
        print(f"mpiview: argument error: {e}", file=sys.stderr)
        return 2
    except (DataError, FileNotFoundError) as e:
        print(f"mpiview: data error: {e}", file=sys.stderr)
        return 3
    except NumericError as e:
        print(f"mpiview: numeric error: {e}", file=sys.stderr)
        return 4
    except MpiViewError as e:
        print(f"mpiview: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
