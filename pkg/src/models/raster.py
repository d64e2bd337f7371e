"""Immutable numpy-backed rasters shared by every filter.

Arrays are stored row-major as ``(height, width)`` float64 (or bool for
boundary maps) and flagged read-only, so a plane handed to a filter can never
be changed behind the caller's back.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator

import numpy as np

from ..utils.exceptions import DimensionMismatchError, InvalidParameterError


def _frozen(array: np.ndarray, dtype) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


class BorderPolicy(str, Enum):
    REPLICATE = "replicate"

    @property
    def numpy_mode(self) -> str:
        return "edge"

    @property
    def ndimage_mode(self) -> str:
        return "nearest"


DEFAULT_BORDER = BorderPolicy.REPLICATE


@dataclass(frozen=True, eq=False)
class ImagePlane:
    data: np.ndarray

    def __post_init__(self) -> None:
        data = np.asarray(self.data)
        if data.ndim != 2:
            raise InvalidParameterError(f"image plane must be 2-D, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise InvalidParameterError(f"image plane must be at least 1x1, got shape {data.shape}")
        if not np.all(np.isfinite(data)):
            raise InvalidParameterError("image plane contains NaN or Inf")
        object.__setattr__(self, "data", _frozen(data, np.float64))

    @classmethod
    def constant(cls, width: int, height: int, value: float) -> "ImagePlane":
        return cls(np.full((height, width), float(value)))

    @property
    def width(self) -> int:
        return int(self.data.shape[1])

    @property
    def height(self) -> int:
        return int(self.data.shape[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.height, self.width

    def transpose(self) -> "ImagePlane":
        return ImagePlane(self.data.T)

    def same_size(self, other: "ImagePlane") -> bool:
        return self.shape == other.shape

    def require_same_size(self, other: "ImagePlane", what: str = "guide") -> None:
        if not self.same_size(other):
            raise DimensionMismatchError(
                f"{what} is {other.width}x{other.height}, image is {self.width}x{self.height}"
            )

    def max_abs_diff(self, other: "ImagePlane") -> float:
        self.require_same_size(other, "other plane")
        return float(np.max(np.abs(self.data - other.data)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImagePlane):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class ImageRGB:
    r: ImagePlane
    g: ImagePlane
    b: ImagePlane

    def __post_init__(self) -> None:
        if not (self.r.shape == self.g.shape == self.b.shape):
            raise DimensionMismatchError(
                f"channel sizes differ: r={self.r.shape} g={self.g.shape} b={self.b.shape}"
            )

    @classmethod
    def from_array(cls, array: np.ndarray) -> "ImageRGB":
        array = np.asarray(array)
        if array.ndim == 2:
            plane = ImagePlane(array)
            return cls(plane, plane, plane)
        if array.ndim != 3 or array.shape[2] != 3:
            raise InvalidParameterError(f"expected (H, W) or (H, W, 3) array, got {array.shape}")
        return cls(ImagePlane(array[:, :, 0]), ImagePlane(array[:, :, 1]), ImagePlane(array[:, :, 2]))

    @classmethod
    def from_gray(cls, plane: ImagePlane) -> "ImageRGB":
        return cls(plane, plane, plane)

    @property
    def width(self) -> int:
        return self.r.width

    @property
    def height(self) -> int:
        return self.r.height

    @property
    def shape(self) -> tuple[int, int]:
        return self.r.shape

    def channels(self) -> tuple[ImagePlane, ImagePlane, ImagePlane]:
        return self.r, self.g, self.b

    def __iter__(self) -> Iterator[ImagePlane]:
        return iter(self.channels())

    def map_channels(self, fn: Callable[[ImagePlane], ImagePlane]) -> "ImageRGB":
        return ImageRGB(*(fn(plane) for plane in self.channels()))

    def to_array(self) -> np.ndarray:
        return np.stack([plane.data for plane in self.channels()], axis=-1)

    def require_same_size(self, other: "ImageRGB", what: str = "guide") -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(
                f"{what} is {other.width}x{other.height}, image is {self.width}x{self.height}"
            )

    def max_abs_diff(self, other: "ImageRGB") -> float:
        return max(a.max_abs_diff(b) for a, b in zip(self.channels(), other.channels()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImageRGB):
            return NotImplemented
        return all(a == b for a, b in zip(self.channels(), other.channels()))

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class GradientMap:
    magnitude: np.ndarray

    def __post_init__(self) -> None:
        mag = np.asarray(self.magnitude)
        if mag.ndim != 2:
            raise InvalidParameterError(f"gradient map must be 2-D, got shape {mag.shape}")
        if not np.all(np.isfinite(mag)) or np.any(mag < 0):
            raise InvalidParameterError("gradient magnitudes must be finite and non-negative")
        object.__setattr__(self, "magnitude", _frozen(mag, np.float64))

    @property
    def width(self) -> int:
        return int(self.magnitude.shape[1])

    @property
    def height(self) -> int:
        return int(self.magnitude.shape[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.height, self.width

    @property
    def max(self) -> float:
        return float(self.magnitude.max())


@dataclass(frozen=True, eq=False)
class BoundaryMap:
    edge: np.ndarray

    def __post_init__(self) -> None:
        edge = np.asarray(self.edge)
        if edge.ndim != 2:
            raise InvalidParameterError(f"boundary map must be 2-D, got shape {edge.shape}")
        object.__setattr__(self, "edge", _frozen(edge, bool))

    @classmethod
    def from_plane(cls, plane: ImagePlane) -> "BoundaryMap":
        return cls(plane.data != 0)

    @property
    def width(self) -> int:
        return int(self.edge.shape[1])

    @property
    def height(self) -> int:
        return int(self.edge.shape[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.height, self.width

    @property
    def count(self) -> int:
        return int(self.edge.sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoundaryMap):
            return NotImplemented
        return bool(np.array_equal(self.edge, other.edge))

    __hash__ = None  # type: ignore[assignment]


def sample(plane: ImagePlane, x: int, y: int, policy: BorderPolicy = DEFAULT_BORDER) -> float:
    if policy is not BorderPolicy.REPLICATE:
        raise InvalidParameterError(f"unsupported border policy: {policy}")
    xi = min(max(int(x), 0), plane.width - 1)
    yi = min(max(int(y), 0), plane.height - 1)
    return float(plane.data[yi, xi])


def pad(data: np.ndarray, radius: int, policy: BorderPolicy = DEFAULT_BORDER, axis: int | None = None) -> np.ndarray:
    """Pad a 2-D array by ``radius`` pixels on both sides (one axis or both)."""
    if axis is None:
        widths = ((radius, radius), (radius, radius))
    elif axis == 0:
        widths = ((radius, radius), (0, 0))
    else:
        widths = ((0, 0), (radius, radius))
    return np.pad(data, widths, mode=policy.numpy_mode)
