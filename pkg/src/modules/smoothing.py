"""Smoothing filters that remove small structures before restoration.

Both filters are separable: a horizontal 1-D correlation followed by a vertical
one, with replicated borders.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.ndimage import correlate1d

from ..models.data_schemas import GaussianSmoother, IteratedBoxSmoother, Kernel1D, SmootherSpec
from ..models.raster import DEFAULT_BORDER, BorderPolicy, ImagePlane
from ..utils.exceptions import InvalidParameterError


logger = logging.getLogger(__name__)


def gaussian_kernel_1d(sigma: float, radius: int) -> Kernel1D:
    """Truncated Gaussian of ``2 * radius + 1`` taps, renormalized to sum 1."""
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be positive, got {sigma}")
    if radius < 0:
        raise InvalidParameterError(f"radius must be >= 0, got {radius}")
    offsets = np.arange(-radius, radius + 1, dtype=np.float64)
    raw = np.exp(-(offsets * offsets) / (2.0 * sigma * sigma))
    weights = raw / raw.sum()
    # far taps underflow at small sigma; every tap stays positive
    weights = np.maximum(weights, np.finfo(np.float64).tiny)
    weights /= weights.sum()
    return Kernel1D(radius=radius, weights=tuple(float(w) for w in weights))


def box_kernel_1d(radius: int) -> Kernel1D:
    if radius < 0:
        raise InvalidParameterError(f"radius must be >= 0, got {radius}")
    size = 2 * radius + 1
    return Kernel1D(radius=radius, weights=(1.0 / size,) * size)


def separable_correlate(
    img: ImagePlane,
    kernel: Kernel1D,
    policy: BorderPolicy = DEFAULT_BORDER,
) -> ImagePlane:
    weights = np.asarray(kernel.weights, dtype=np.float64)
    rows = correlate1d(img.data, weights, axis=1, mode=policy.ndimage_mode)
    both = correlate1d(rows, weights, axis=0, mode=policy.ndimage_mode)
    return ImagePlane(both)


def gaussian_blur(img: ImagePlane, spec: GaussianSmoother) -> ImagePlane:
    return separable_correlate(img, gaussian_kernel_1d(spec.sigma, spec.radius))


def box_blur_iterated(img: ImagePlane, radius: int, times: int) -> ImagePlane:
    if radius < 1:
        raise InvalidParameterError(f"box radius must be >= 1, got {radius}")
    if times < 1:
        raise InvalidParameterError(f"box repetitions must be >= 1, got {times}")
    kernel = box_kernel_1d(radius)
    out = img
    for _ in range(times):
        out = separable_correlate(out, kernel)
    return out


def apply_smoother(img: ImagePlane, spec: SmootherSpec) -> ImagePlane:
    if isinstance(spec, GaussianSmoother):
        return gaussian_blur(img, spec)
    if isinstance(spec, IteratedBoxSmoother):
        return box_blur_iterated(img, spec.radius, spec.times)
    raise InvalidParameterError(f"unknown smoother: {spec!r}")
