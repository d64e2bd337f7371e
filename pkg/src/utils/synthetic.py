"""Deterministic synthetic images for tests and the desk-scale edge corpus."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from ..config import MANIFEST_NAME, CorpusOptions
from ..models.raster import BoundaryMap, ImagePlane, ImageRGB
from .image_io import save_boundary, save_image


@dataclass(frozen=True)
class SquareDotsFixture:
    image: ImagePlane
    square: tuple[int, int, int, int]  # y0, x0, y1, x1 (exclusive)
    dot_origins: tuple[tuple[int, int], ...]  # (y, x) top-left pixel of each 2x2 dot
    intensity: float


def square_and_dots(
    size: int = 128,
    square_size: int = 50,
    square_origin: tuple[int, int] = (12, 12),
    intensity: float = 200.0,
    dot_spacing: int = 16,
) -> SquareDotsFixture:
    """One large square and a grid of isolated 2x2 dots on a black background."""
    data = np.zeros((size, size))
    y0, x0 = square_origin
    y1, x1 = y0 + square_size, x0 + square_size
    data[y0:y1, x0:x1] = intensity

    margin = 8
    dots = []
    for y in range(margin, size - margin, dot_spacing):
        for x in range(margin, size - margin, dot_spacing):
            if y0 - margin <= y < y1 + margin and x0 - margin <= x < x1 + margin:
                continue
            data[y : y + 2, x : x + 2] = intensity
            dots.append((y, x))
    return SquareDotsFixture(ImagePlane(data), (y0, x0, y1, x1), tuple(dots), intensity)


def step_edge_image(width: int = 16, height: int = 16, column: int | None = None, low: float = 0.0, high: float = 255.0) -> ImagePlane:
    """Vertical step: columns ``<= column`` are ``low``, the rest ``high``."""
    column = width // 2 - 1 if column is None else column
    data = np.full((height, width), low)
    data[:, column + 1 :] = high
    return ImagePlane(data)


def label_boundaries(labels: np.ndarray) -> np.ndarray:
    """Pixels whose 4-neighbour carries a different label (both sides marked)."""
    edge = np.zeros(labels.shape, dtype=bool)
    horizontal = labels[:, 1:] != labels[:, :-1]
    vertical = labels[1:, :] != labels[:-1, :]
    edge[:, 1:] |= horizontal
    edge[:, :-1] |= horizontal
    edge[1:, :] |= vertical
    edge[:-1, :] |= vertical
    return edge


def textured_scene(seed: int, size: int = 96, texture_density: float = 0.03, noise: float = 3.0) -> tuple[ImageRGB, BoundaryMap]:
    """Large flat regions with a fine high-contrast speckle texture.

    Region contrast is kept below the speckle contrast, so a plain Sobel
    detector cannot separate object boundaries from texture by threshold alone.
    """
    rng = np.random.default_rng(seed)
    labels = np.zeros((size, size), dtype=np.int32)

    for label in (1, 2):
        h, w = rng.integers(size // 4, size // 2, size=2)
        y, x = rng.integers(4, size - 4 - h), rng.integers(4, size - 4 - w)
        labels[y : y + h, x : x + w] = label
    cy, cx = rng.integers(size // 4, 3 * size // 4, size=2)
    radius = rng.integers(size // 8, size // 5)
    yy, xx = np.mgrid[0:size, 0:size]
    labels[(yy - cy) ** 2 + (xx - cx) ** 2 <= radius * radius] = 3

    base_levels = np.array([60.0, 130.0, 190.0, 100.0])
    colour_shift = rng.uniform(-6.0, 6.0, size=(4, 3))
    image = np.empty((size, size, 3))
    for label in range(4):
        image[labels == label] = base_levels[label] + colour_shift[label]

    speckle_contrast = 120.0
    for y in range(0, size - 1, 3):
        for x in range(0, size - 1, 3):
            if rng.random() >= texture_density * 9:
                continue
            block = labels[y : y + 2, x : x + 2]
            if np.any(block != block[0, 0]):
                continue
            sign = 1.0 if image[y, x, 0] < 128.0 else -1.0
            image[y : y + 2, x : x + 2] += sign * speckle_contrast

    image += rng.normal(0.0, noise, size=image.shape)
    image = np.clip(np.round(image), 0.0, 255.0)
    return ImageRGB.from_array(image), BoundaryMap(label_boundaries(labels))


def write_corpus(outdir: Union[str, Path], options: CorpusOptions = CorpusOptions()) -> Path:
    """Write ``options.count`` textured scenes with ground truth and a manifest."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    lines = []
    for index in range(options.count):
        image, boundary = textured_scene(options.seed + index, size=options.size)
        image_name = f"scene_{index:02d}.png"
        gt_name = f"scene_{index:02d}.gt.png"
        save_image(image, outdir / image_name)
        save_boundary(boundary, outdir / gt_name)
        lines.append(f"{image_name}\t{gt_name}")
    manifest = outdir / MANIFEST_NAME
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest
