from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Tuple


INTENSITY_MIN = 0.0
INTENSITY_MAX = 255.0

DEFAULT_GAUSSIAN_SIGMA = 5.0
DEFAULT_GAUSSIAN_RADIUS = 3
DEFAULT_BOX_RADIUS = 2
DEFAULT_BOX_TIMES = 2

DEFAULT_RANGE_SIGMA = 20.0
DEFAULT_RANGE_RADIUS = 3

SNN_ITERATIONS = 9
GAUSS_ITERATIONS = 5

EDGE_BLUR_SIGMA = 3.0
EDGE_RANGE_SIGMA = 8.0
EDGE_ITERATIONS = 5

DEFAULT_TOLERANCE = 2.0
DEFAULT_THRESHOLD_STEPS = 64

DEFAULT_BENCH_REPEAT = 3
BENCH_VARIANTS = ("SiRSNN", "SiRsep", "SiR2DGauss")

EDGE_SETTINGS = ("none", "filter-only", "sir")
EDGE_RESTORERS = ("snn", "gauss2d", "sep")

THREADS_ENV_VAR = "SIR_THREADS"

CORPUS_DIR = Path("data/corpus")
MANIFEST_NAME = "manifest.tsv"
METADATA_SUFFIX = ".metadata.json"

SUPPORTED_SUFFIXES = {".png": "PNG", ".ppm": "PPM"}

BENCH_CSV_FIELDS = ("variant", "width", "height", "iters", "smooth_s", "restore_s", "total_s")
EDGES_CSV_FIELDS = ("image", "precision", "recall", "f_measure", "best_threshold")


@dataclass(frozen=True)
class EdgeEvalOptions:
    tolerance: float = DEFAULT_TOLERANCE
    threshold_steps: int = DEFAULT_THRESHOLD_STEPS


@dataclass(frozen=True)
class BenchOptions:
    repeat: int = DEFAULT_BENCH_REPEAT
    variants: Tuple[str, ...] = BENCH_VARIANTS


@dataclass(frozen=True)
class CorpusOptions:
    count: int = 12
    size: int = 96
    seed: int = 2024
