"""Smooth once, then restore ``n`` times against a fixed guidance image."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Optional

from ..config import (
    DEFAULT_BOX_RADIUS,
    DEFAULT_BOX_TIMES,
    DEFAULT_GAUSSIAN_RADIUS,
    DEFAULT_GAUSSIAN_SIGMA,
    DEFAULT_RANGE_RADIUS,
    DEFAULT_RANGE_SIGMA,
    EDGE_BLUR_SIGMA,
    EDGE_ITERATIONS,
    EDGE_RANGE_SIGMA,
    GAUSS_ITERATIONS,
    SNN_ITERATIONS,
)
from ..models.data_schemas import (
    Gauss2DRestorer,
    GaussianSmoother,
    IteratedBoxSmoother,
    RangeSpec,
    RestorerSpec,
    SeparableGaussRestorer,
    SirConfig,
    SirPreset,
    SnnRestorer,
)
from ..models.raster import ImageRGB
from ..utils.exceptions import InvalidParameterError
from ..utils.parallel import map_ordered
from .restore import apply_restorer
from .smoothing import apply_smoother


logger = logging.getLogger(__name__)


@dataclass
class SirRunResult:
    output: ImageRGB
    smooth_seconds: float
    restore_seconds: float
    deltas: list[float] = field(default_factory=list)

    @property
    def total_seconds(self) -> float:
        return self.smooth_seconds + self.restore_seconds

    def timing_line(self) -> str:
        return f"smooth={self.smooth_seconds:.6f} restore={self.restore_seconds:.6f} total={self.total_seconds:.6f}"


def _resolve_guidance(image: ImageRGB, config: SirConfig, guide: Optional[ImageRGB]) -> ImageRGB:
    if config.guidance == "external":
        if guide is None:
            raise InvalidParameterError("config asks for external guidance but no guide image was given")
        image.require_same_size(guide, "guide")
        return guide
    if guide is not None:
        logger.debug("guide image ignored: config uses the input as guidance")
    return image


def sir_run_detailed(
    image: ImageRGB,
    config: SirConfig,
    guide: Optional[ImageRGB] = None,
    workers: Optional[int] = None,
) -> SirRunResult:
    guidance = _resolve_guidance(image, config, guide)
    smoother = config.smoother
    restorer = config.restorer

    started = time.perf_counter()
    planes = map_ordered(lambda plane: apply_smoother(plane, smoother), image.channels(), workers=workers)
    smoothed = time.perf_counter()

    deltas: list[float] = []
    for step in range(config.iterations):
        restored = map_ordered(
            lambda plane, guide_plane: apply_restorer(plane, guide_plane, restorer),
            planes,
            guidance.channels(),
            workers=workers,
        )
        deltas.append(max(new.max_abs_diff(old) for new, old in zip(restored, planes)))
        planes = restored
        logger.debug("iteration %d/%d: max change %.6f", step + 1, config.iterations, deltas[-1])
    finished = time.perf_counter()

    logger.debug("%s on %dx%d", config.describe(), image.width, image.height)
    return SirRunResult(
        output=ImageRGB(*planes),
        smooth_seconds=smoothed - started,
        restore_seconds=finished - smoothed,
        deltas=deltas,
    )


def sir_run(image: ImageRGB, config: SirConfig, guide: Optional[ImageRGB] = None) -> ImageRGB:
    return sir_run_detailed(image, config, guide).output


def sir_run_passes(
    image: ImageRGB,
    config: SirConfig,
    passes: int = 1,
    guide: Optional[ImageRGB] = None,
) -> SirRunResult:
    """Run the whole algorithm ``passes`` times, feeding each output back in.

    Guidance stays the original input (or the external guide) for every pass.
    Repeated passes lose colour intensity, which is why one pass is the default.
    """
    if passes < 1:
        raise InvalidParameterError(f"passes must be >= 1, got {passes}")
    guidance = _resolve_guidance(image, config, guide)
    fixed = config.model_copy(update={"guidance": "external"})
    current = image
    smooth_total = restore_total = 0.0
    deltas: list[float] = []
    for _ in range(passes):
        result = sir_run_detailed(current, fixed, guidance)
        current = result.output
        smooth_total += result.smooth_seconds
        restore_total += result.restore_seconds
        deltas.extend(result.deltas)
    return SirRunResult(output=current, smooth_seconds=smooth_total, restore_seconds=restore_total, deltas=deltas)


def restorer_for(name: str, sigma: float = EDGE_RANGE_SIGMA, radius: int = DEFAULT_RANGE_RADIUS) -> RestorerSpec:
    key = name.strip().lower()
    if key == "snn":
        return SnnRestorer(mode="mean")
    if key == "snn-median":
        return SnnRestorer(mode="median")
    if key == "gauss2d":
        return Gauss2DRestorer(range_spec=RangeSpec(sigma=sigma, radius=radius))
    if key in {"sep", "separable"}:
        return SeparableGaussRestorer(range_spec=RangeSpec(sigma=sigma, radius=radius), order="hv")
    raise InvalidParameterError(f"unknown restorer {name!r} (snn, snn-median, gauss2d, sep)")


def builtin_presets() -> list[SirPreset]:
    texture_blur = GaussianSmoother(sigma=DEFAULT_GAUSSIAN_SIGMA, radius=DEFAULT_GAUSSIAN_RADIUS)
    texture_range = RangeSpec(sigma=DEFAULT_RANGE_SIGMA, radius=DEFAULT_RANGE_RADIUS)
    edge_blur = GaussianSmoother(sigma=EDGE_BLUR_SIGMA, radius=DEFAULT_GAUSSIAN_RADIUS)

    presets = [
        SirPreset(
            name="SiRSNN",
            description="iterated 5x5 box blur (2 passes) + SNN mean, 9 iterations",
            config=SirConfig(
                smoother=IteratedBoxSmoother(radius=DEFAULT_BOX_RADIUS, times=DEFAULT_BOX_TIMES),
                restorer=SnnRestorer(mode="mean"),
                iterations=SNN_ITERATIONS,
            ),
        ),
        SirPreset(
            name="SiR2DGauss",
            description="Gaussian blur sigma 5 + 2-D Gaussian range filter sigma 20, 5 iterations",
            config=SirConfig(
                smoother=texture_blur,
                restorer=Gauss2DRestorer(range_spec=texture_range),
                iterations=GAUSS_ITERATIONS,
            ),
        ),
        SirPreset(
            name="SiRsep",
            description="Gaussian blur sigma 5 + separable Gaussian range filter sigma 20, 5 iterations",
            config=SirConfig(
                smoother=texture_blur,
                restorer=SeparableGaussRestorer(range_spec=texture_range, order="hv"),
                iterations=GAUSS_ITERATIONS,
            ),
        ),
    ]
    for short in ("snn", "gauss2d", "sep"):
        # SNN compares neighbours directly and has no range sigma
        range_note = "" if short == "snn" else f" (sigma {EDGE_RANGE_SIGMA:g})"
        presets.append(
            SirPreset(
                name=f"EdgePrep-{short}",
                description=f"edge-detection pre-processing: Gaussian blur sigma 3 + {short}{range_note}, 5 iterations",
                config=SirConfig(smoother=edge_blur, restorer=restorer_for(short), iterations=EDGE_ITERATIONS),
            )
        )
    return presets


def get_preset(name: str) -> SirPreset:
    key = name.strip().lower()
    for preset in builtin_presets():
        if preset.name.lower() == key:
            return preset
    known = ", ".join(p.name for p in builtin_presets())
    raise InvalidParameterError(f"unknown preset {name!r} (known: {known})")
