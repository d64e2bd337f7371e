"""Guided edge-aware filters used to restore strong edges.

Weights always come from the guide, values from the filtered image J. Every
window sum runs over offsets in a fixed order on whole arrays, so results do
not depend on how channels are scheduled.
"""

from __future__ import annotations

import logging
import math
from typing import Literal

import numpy as np

from ..models.data_schemas import (
    Gauss2DRestorer,
    RangeSpec,
    RestorerSpec,
    SeparableGaussRestorer,
    SnnRestorer,
    WeightPair,
)
from ..models.raster import ImagePlane, pad
from ..utils.exceptions import InvalidParameterError


logger = logging.getLogger(__name__)

# (dy, dx) of the four opposite neighbour pairs: N/S, E/W, NE/SW, NW/SE.
# The first member wins ties.
SNN_PAIRS = (
    ((-1, 0), (1, 0)),
    ((0, 1), (0, -1)),
    ((-1, 1), (1, -1)),
    ((-1, -1), (1, 1)),
)


def _inv_two_sigma_sq(spec: RangeSpec) -> float:
    return 1.0 / (2.0 * spec.sigma * spec.sigma)


def range_filter_2d(J: ImagePlane, guide: ImagePlane, spec: RangeSpec) -> ImagePlane:
    J.require_same_size(guide)
    r = spec.radius
    height, width = J.shape
    inv = _inv_two_sigma_sq(spec)
    center = guide.data
    values = pad(J.data, r)
    guides = pad(guide.data, r)

    num = np.zeros((height, width))
    den = np.zeros((height, width))
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            rows = slice(r + dy, r + dy + height)
            cols = slice(r + dx, r + dx + width)
            diff = center - guides[rows, cols]
            weight = np.exp(-(diff * diff) * inv)
            num += weight * values[rows, cols]
            den += weight
    return ImagePlane(num / den)


def range_filter(J: ImagePlane, spec: RangeSpec) -> ImagePlane:
    """Unguided Gaussian range filter: the image is its own guide."""
    return range_filter_2d(J, J, spec)


def _range_pass_1d(J: ImagePlane, guide: ImagePlane, spec: RangeSpec, axis: int) -> ImagePlane:
    J.require_same_size(guide)
    r = spec.radius
    length = J.shape[axis]
    inv = _inv_two_sigma_sq(spec)
    center = guide.data
    values = pad(J.data, r, axis=axis)
    guides = pad(guide.data, r, axis=axis)

    num = np.zeros(J.shape)
    den = np.zeros(J.shape)
    for offset in range(-r, r + 1):
        window = slice(r + offset, r + offset + length)
        index = (window, slice(None)) if axis == 0 else (slice(None), window)
        diff = center - guides[index]
        weight = np.exp(-(diff * diff) * inv)
        num += weight * values[index]
        den += weight
    return ImagePlane(num / den)


def op_h(J: ImagePlane, guide: ImagePlane, spec: RangeSpec) -> ImagePlane:
    """Horizontal guided range pass over ``[x - r, x + r]`` of each row."""
    return _range_pass_1d(J, guide, spec, axis=1)


def op_v(J: ImagePlane, guide: ImagePlane, spec: RangeSpec) -> ImagePlane:
    """Vertical guided range pass over ``[y - r, y + r]`` of each column."""
    return _range_pass_1d(J, guide, spec, axis=0)


def separable_range_filter(
    J: ImagePlane,
    guide: ImagePlane,
    spec: RangeSpec,
    order: Literal["hv", "vh"] = "hv",
) -> ImagePlane:
    """Two independently normalized 1-D passes.

    ``hv`` is ``op_h(op_v(J))``: pixel q reaches p through the intermediate
    pixel on p's row. ``vh`` goes through the pixel on p's column instead; the
    two orders are not interchangeable.
    """
    if order == "hv":
        return op_h(op_v(J, guide, spec), guide, spec)
    if order == "vh":
        return op_v(op_h(J, guide, spec), guide, spec)
    raise InvalidParameterError(f"order must be 'hv' or 'vh', got {order!r}")


def path_weights(ip: float, it1: float, iq: float, sigma: float) -> WeightPair:
    """Weights of pair (p, q): direct (2-D filter) and via t1 (separable filter)."""
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be positive, got {sigma}")
    scale = 2.0 * sigma * sigma
    log_w1 = -((ip - iq) ** 2) / scale
    log_w2 = -((ip - it1) ** 2 + (it1 - iq) ** 2) / scale
    return WeightPair(w1=math.exp(log_w1), w2=math.exp(log_w2), log_w1=log_w1, log_w2=log_w2)


def snn_filter(J: ImagePlane, guide: ImagePlane, mode: Literal["mean", "median"] = "mean") -> ImagePlane:
    J.require_same_size(guide)
    if mode not in ("mean", "median"):
        raise InvalidParameterError(f"SNN mode must be 'mean' or 'median', got {mode!r}")
    height, width = J.shape
    center = guide.data
    values = pad(J.data, 1)
    guides = pad(guide.data, 1)

    def shifted(array: np.ndarray, dy: int, dx: int) -> np.ndarray:
        return array[1 + dy : 1 + dy + height, 1 + dx : 1 + dx + width]

    picks = []
    for (dy1, dx1), (dy2, dx2) in SNN_PAIRS:
        first_closer = np.abs(shifted(guides, dy1, dx1) - center) <= np.abs(shifted(guides, dy2, dx2) - center)
        picks.append(np.where(first_closer, shifted(values, dy1, dx1), shifted(values, dy2, dx2)))
    stacked = np.stack(picks)

    if mode == "mean":
        return ImagePlane(stacked.sum(axis=0) / 4.0)
    ordered = np.sort(stacked, axis=0)
    return ImagePlane(0.5 * (ordered[1] + ordered[2]))


def apply_restorer(J: ImagePlane, guide: ImagePlane, spec: RestorerSpec) -> ImagePlane:
    if isinstance(spec, Gauss2DRestorer):
        return range_filter_2d(J, guide, spec.range_spec)
    if isinstance(spec, SeparableGaussRestorer):
        return separable_range_filter(J, guide, spec.range_spec, spec.order)
    if isinstance(spec, SnnRestorer):
        return snn_filter(J, guide, spec.mode)
    raise InvalidParameterError(f"unknown restorer: {spec!r}")
