"""Image and disparity file formats: PNG (8/16-bit) and PFM.

PFM is the lossless disparity format (float32, both endiannesses on
read); 16-bit PNG is offered for toolchain convenience and carries its
unit and value scale in tEXt chunks so round-trips keep the declared
meaning.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image
from PIL.PngImagePlugin import PngInfo

from .core import DisparityMap, DisparityUnit, ImageBuffer
from .errors import ArgumentError, DataError

__all__ = [
    "load_image_png",
    "save_image_png",
    "load_disparity_png16",
    "save_disparity_png16",
    "load_disparity_pfm",
    "save_disparity_pfm",
]

_UNIT_KEY = "disparity_unit"
_SCALE_KEY = "disparity_scale"


def load_image_png(path) -> ImageBuffer:
    """Read an 8-bit (gray/RGB/RGBA) or 16-bit grayscale PNG into [0, 1]."""
    try:
        with Image.open(path) as im:
            if im.mode == "P":
                im = im.convert("RGBA" if "transparency" in im.info else "RGB")
            if im.mode in ("I", "I;16"):
                a = np.asarray(im, dtype=np.float64) / 65535.0
                return ImageBuffer.from_array(a)
            if im.mode in ("L", "RGB", "RGBA"):
                a = np.asarray(im, dtype=np.float64) / 255.0
                return ImageBuffer.from_array(a)
            raise DataError(f"unsupported PNG mode {im.mode!r} in {path}")
    except (OSError, SyntaxError) as e:
        raise DataError(f"cannot read PNG {path}: {e}") from e


def save_image_png(img: ImageBuffer, path, bit_depth: int = 8) -> None:
    """Write an ImageBuffer as PNG; 16-bit output is single-channel only."""
    if bit_depth == 8:
        quantized = np.round(img.data * 255.0).astype(np.uint8)
        if img.channels == 1:
            pil = Image.fromarray(quantized[:, :, 0], mode="L")
        elif img.channels == 3:
            pil = Image.fromarray(quantized, mode="RGB")
        else:
            pil = Image.fromarray(quantized, mode="RGBA")
    elif bit_depth == 16:
        if img.channels != 1:
            raise ArgumentError("16-bit PNG output supports single-channel images only")
        quantized = np.round(img.data[:, :, 0] * 65535.0).astype(np.uint16)
        pil = Image.fromarray(quantized)
    else:
        raise ArgumentError(f"bit depth must be 8 or 16, got {bit_depth}")
    pil.save(Path(path), format="PNG")


def save_disparity_png16(d: DisparityMap, path) -> None:
    """Write disparity as 16-bit PNG with unit and scale recorded in tEXt."""
    if d.unit is DisparityUnit.NORMALIZED:
        scale = 1.0
    else:
        peak = float(d.values.max()) if d.values.size else 0.0
        scale = peak if peak > 0 else 1.0
    raw = np.round(d.values / scale * 65535.0).astype(np.uint16)
    info = PngInfo()
    info.add_text(_UNIT_KEY, d.unit.value)
    info.add_text(_SCALE_KEY, repr(scale))
    Image.fromarray(raw).save(Path(path), format="PNG", pnginfo=info)


def load_disparity_png16(path, unit: DisparityUnit | None = None) -> DisparityMap:
    """Read a 16-bit disparity PNG; the file's declared unit wins over `unit`."""
    try:
        with Image.open(path) as im:
            text = dict(getattr(im, "text", {}))
            if im.mode not in ("I", "I;16"):
                raise DataError(f"expected a 16-bit grayscale PNG, got mode {im.mode!r}")
            raw = np.asarray(im, dtype=np.float64)
    except (OSError, SyntaxError) as e:
        raise DataError(f"cannot read PNG {path}: {e}") from e
    if _UNIT_KEY in text:
        try:
            file_unit = DisparityUnit(text[_UNIT_KEY])
        except ValueError as e:
            raise DataError(f"unknown disparity unit {text[_UNIT_KEY]!r} in {path}") from e
    elif unit is not None:
        file_unit = unit
    else:
        raise DataError(f"{path} does not declare a disparity unit and none was given")
    try:
        scale = float(text.get(_SCALE_KEY, "1.0"))
    except ValueError as e:
        raise DataError(f"bad disparity scale in {path}") from e
    return DisparityMap(raw / 65535.0 * scale, file_unit)


def save_disparity_pfm(d: DisparityMap, path) -> None:
    """Write a grayscale PFM (float32, little-endian, bottom-to-top rows)."""
    data = np.flipud(d.values).astype("<f4")
    with open(path, "wb") as f:
        f.write(b"Pf\n")
        f.write(f"{d.width} {d.height}\n".encode("ascii"))
        f.write(b"-1.0\n")
        f.write(data.tobytes())


def _read_pfm_header(f, path):
    def read_line():
        out = b""
        while True:
            c = f.read(1)
            if not c:
                raise DataError(f"unexpected end of PFM header in {path}")
            if c == b"\n":
                return out
            out += c

    magic = read_line().strip()
    if magic not in (b"Pf", b"PF"):
        raise DataError(f"not a PFM file: {path} (magic {magic!r})")
    dims = read_line().split()
    if len(dims) != 2:
        raise DataError(f"malformed PFM dimensions line in {path}")
    try:
        width, height = int(dims[0]), int(dims[1])
        scale = float(read_line())
    except ValueError as e:
        raise DataError(f"malformed PFM header in {path}: {e}") from e
    if width < 1 or height < 1 or scale == 0.0:
        raise DataError(f"malformed PFM header in {path}")
    return magic, width, height, scale


def load_disparity_pfm(
    path, unit: DisparityUnit = DisparityUnit.INVERSE_METERS
) -> DisparityMap:
    """Read a grayscale PFM.

    Negative scale means little-endian sample data (the common case);
    positive means big-endian. A scale magnitude other than 1 multiplies
    the stored values.
    """
    with open(path, "rb") as f:
        magic, width, height, scale = _read_pfm_header(f, path)
        if magic != b"Pf":
            raise DataError(f"expected grayscale PFM for disparity, got color: {path}")
        count = width * height
        buf = f.read(4 * count)
        if len(buf) != 4 * count:
            raise DataError(f"truncated PFM payload in {path}")
    dtype = "<f4" if scale < 0 else ">f4"
    values = np.frombuffer(buf, dtype=dtype).reshape(height, width).astype(np.float64)
    values = np.flipud(values)
    magnitude = abs(scale)
    if magnitude != 1.0:
        values = values * magnitude
    if not np.isfinite(values).all() or (values.size and float(values.min()) < 0):
        raise DataError(f"PFM {path} holds non-finite or negative disparities")
    return DisparityMap(values, unit)
