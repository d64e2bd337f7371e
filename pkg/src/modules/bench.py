from __future__ import annotations

import logging
import statistics
from typing import Optional

from ..config import BenchOptions
from ..models.data_schemas import BenchReport, BenchRow
from ..models.raster import ImageRGB
from ..utils.exceptions import InvalidParameterError
from .pipeline import get_preset, sir_run_detailed


logger = logging.getLogger(__name__)


def time_variant(image: ImageRGB, variant: str, repeat: int) -> BenchRow:
    """Median-of-``repeat`` stage times for one preset."""
    if repeat < 1:
        raise InvalidParameterError(f"repeat must be >= 1, got {repeat}")
    preset = get_preset(variant)
    smooth_times: list[float] = []
    restore_times: list[float] = []
    for attempt in range(repeat):
        result = sir_run_detailed(image, preset.config)
        smooth_times.append(result.smooth_seconds)
        restore_times.append(result.restore_seconds)
        logger.debug("%s run %d: %s", preset.name, attempt + 1, result.timing_line())
    smooth = statistics.median(smooth_times)
    restore = statistics.median(restore_times)
    return BenchRow(
        variant=preset.name,
        width=image.width,
        height=image.height,
        iters=preset.config.iterations,
        smooth_s=smooth,
        restore_s=restore,
        total_s=smooth + restore,
    )


def run_benchmark(
    image: ImageRGB,
    options: BenchOptions = BenchOptions(),
    input_path: Optional[str] = None,
) -> BenchReport:
    # variants run one after another so their timers never overlap
    rows = [time_variant(image, variant, options.repeat) for variant in options.variants]
    return BenchReport(input_path=input_path, repeat=options.repeat, rows=rows)


def format_table(report: BenchReport) -> str:
    header = f"{'variant':<12} {'smooth':>10} {'restore':>10} {'total':>10}"
    lines = [header, "-" * len(header)]
    for row in report.rows:
        lines.append(f"{row.variant:<12} {row.smooth_s:>9.4f}s {row.restore_s:>9.4f}s {row.total_s:>9.4f}s")
    if report.rows:
        first = report.rows[0]
        lines.append(f"image {first.width}x{first.height}, median of {report.repeat} run(s)")
    return "\n".join(lines)
