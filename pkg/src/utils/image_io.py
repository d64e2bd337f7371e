from __future__ import annotations

import logging
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..config import INTENSITY_MAX, INTENSITY_MIN, SUPPORTED_SUFFIXES
from ..models.raster import BoundaryMap, ImagePlane, ImageRGB
from .exceptions import ImageIOError


logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_READABLE_FORMATS = {"PNG", "PPM"}
_READABLE_MODES = {"L", "RGB"}


def _ppm_magic(path: Path) -> bytes:
    with path.open("rb") as handle:
        return handle.read(2)


def _open_array(path: PathLike) -> np.ndarray:
    path = Path(path)
    if not path.is_file():
        raise ImageIOError(f"image not found: {path}")
    try:
        with Image.open(path) as img:
            fmt = img.format
            mode = img.mode
            if fmt not in _READABLE_FORMATS:
                raise ImageIOError(f"unsupported image format {fmt!r} for {path} (PNG or PPM P6 only)")
            if fmt == "PPM" and _ppm_magic(path) != b"P6":
                raise ImageIOError(f"only binary PPM (P6) is supported: {path}")
            if mode == "P":
                img = img.convert("RGB")
                mode = "RGB"
            if mode not in _READABLE_MODES:
                raise ImageIOError(f"unsupported pixel mode {mode!r} for {path} (8-bit gray or RGB only)")
            array = np.asarray(img, dtype=np.uint8)
    except (UnidentifiedImageError, OSError) as exc:
        raise ImageIOError(f"cannot read image {path}: {exc}") from exc
    if array.size == 0 or min(array.shape[:2]) < 1:
        raise ImageIOError(f"image has zero dimension: {path}")
    return array


def load_image(path: PathLike) -> ImageRGB:
    array = _open_array(path)
    logger.debug("loaded %s (%dx%d, %s)", path, array.shape[1], array.shape[0], "gray" if array.ndim == 2 else "rgb")
    return ImageRGB.from_array(array.astype(np.float64))


def load_boundary(path: PathLike) -> BoundaryMap:
    """Load a ground-truth boundary image; any nonzero sample marks an edge."""
    array = _open_array(path)
    if array.ndim == 3:
        array = array.max(axis=2)
    return BoundaryMap(array != 0)


def to_bytes(data: np.ndarray) -> np.ndarray:
    # round half up, then clamp
    return np.clip(np.floor(data + 0.5), INTENSITY_MIN, INTENSITY_MAX).astype(np.uint8)


def _format_for(path: Path) -> str:
    fmt = SUPPORTED_SUFFIXES.get(path.suffix.lower())
    if fmt is None:
        raise ImageIOError(f"unsupported output extension {path.suffix!r} (use .png or .ppm)")
    return fmt


def save_image(img: ImageRGB, path: PathLike) -> Path:
    path = Path(path)
    fmt = _format_for(path)
    pixels = to_bytes(img.to_array())
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        Image.fromarray(pixels).save(path, format=fmt)
    except OSError as exc:
        raise ImageIOError(f"cannot write image {path}: {exc}") from exc
    logger.debug("wrote %s", path)
    return path


def save_plane(plane: ImagePlane, path: PathLike) -> Path:
    path = Path(path)
    fmt = _format_for(path)
    if fmt == "PPM":
        return save_image(ImageRGB.from_gray(plane), path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        Image.fromarray(to_bytes(plane.data)).save(path, format=fmt)
    except OSError as exc:
        raise ImageIOError(f"cannot write image {path}: {exc}") from exc
    return path


def save_boundary(boundary: BoundaryMap, path: PathLike) -> Path:
    return save_plane(ImagePlane(boundary.edge.astype(np.float64) * INTENSITY_MAX), path)
