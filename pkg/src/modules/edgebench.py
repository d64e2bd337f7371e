"""Sobel edge detection and boundary F-measure on a small corpus."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy import ndimage

from ..config import DEFAULT_THRESHOLD_STEPS, DEFAULT_TOLERANCE, EDGE_SETTINGS
from ..models.data_schemas import (
    CorpusReport,
    EvalResult,
    Gauss2DRestorer,
    ImageEvalRecord,
    SeparableGaussRestorer,
    SirConfig,
    SnnRestorer,
)
from ..models.raster import DEFAULT_BORDER, BoundaryMap, GradientMap, ImagePlane, ImageRGB
from ..utils.exceptions import CorpusError, DimensionMismatchError, InvalidParameterError, SirError
from ..utils.image_io import load_boundary, load_image
from .pipeline import get_preset, restorer_for, sir_run
from .restore import apply_restorer


logger = logging.getLogger(__name__)

RestorerOnly = Union[Gauss2DRestorer, SeparableGaussRestorer, SnnRestorer]
Preprocess = Optional[Union[SirConfig, RestorerOnly]]


def to_gray(image: ImageRGB) -> ImagePlane:
    return ImagePlane((image.r.data + image.g.data + image.b.data) / 3.0)


def sobel(img: ImagePlane) -> GradientMap:
    mode = DEFAULT_BORDER.ndimage_mode
    gx = ndimage.sobel(img.data, axis=1, mode=mode)
    gy = ndimage.sobel(img.data, axis=0, mode=mode)
    return GradientMap(np.sqrt(gx * gx + gy * gy))


def threshold_boundary(grad: GradientMap, t: float) -> BoundaryMap:
    if t < 0:
        raise InvalidParameterError(f"threshold must be >= 0, got {t}")
    return BoundaryMap(grad.magnitude >= t)


def default_thresholds(grad: GradientMap, steps: int = DEFAULT_THRESHOLD_STEPS) -> list[float]:
    """``steps`` evenly spaced thresholds over (0, max magnitude]."""
    if steps < 1:
        raise InvalidParameterError(f"threshold steps must be >= 1, got {steps}")
    top = grad.max
    if top <= 0:
        return [1.0]
    return [float(t) for t in np.linspace(top / steps, top, steps)]


class BoundaryMatcher:
    """Greedy one-to-one matching of predicted to ground-truth edge pixels.

    Predictions are visited in scan order; each takes the nearest unmatched
    ground-truth pixel within ``tolerance`` (ties go to the earlier pixel in
    scan order). Offsets and the reachable mask are built once per ground
    truth so a threshold sweep only repeats the greedy pass.
    """

    def __init__(self, gt: BoundaryMap, tolerance: float = DEFAULT_TOLERANCE) -> None:
        if tolerance < 0:
            raise InvalidParameterError(f"tolerance must be >= 0, got {tolerance}")
        self.gt = gt
        self.tolerance = tolerance
        reach = int(math.floor(tolerance))
        limit = tolerance * tolerance + 1e-9
        self.offsets = sorted(
            ((dy, dx) for dy in range(-reach, reach + 1) for dx in range(-reach, reach + 1) if dy * dy + dx * dx <= limit),
            key=lambda o: (o[0] * o[0] + o[1] * o[1], o[0], o[1]),
        )
        self._gt_pixels = {(int(y), int(x)) for y, x in np.argwhere(gt.edge)}
        self._reachable = self._dilate(gt.edge, reach)

    def _dilate(self, edge: np.ndarray, reach: int) -> np.ndarray:
        height, width = edge.shape
        padded = np.pad(edge, reach, mode="constant", constant_values=False)
        out = np.zeros_like(edge)
        for dy, dx in self.offsets:
            out |= padded[reach + dy : reach + dy + height, reach + dx : reach + dx + width]
        return out

    @property
    def gt_count(self) -> int:
        return len(self._gt_pixels)

    def true_positives(self, pred: BoundaryMap) -> int:
        if pred.shape != self.gt.shape:
            raise DimensionMismatchError(f"prediction is {pred.width}x{pred.height}, ground truth is {self.gt.width}x{self.gt.height}")
        matched: set[tuple[int, int]] = set()
        for y, x in np.argwhere(pred.edge & self._reachable).tolist():
            for dy, dx in self.offsets:
                key = (y + dy, x + dx)
                if key in self._gt_pixels and key not in matched:
                    matched.add(key)
                    break
        return len(matched)

    def evaluate(self, pred: BoundaryMap, threshold: float = 0.0) -> EvalResult:
        tp = self.true_positives(pred)
        n_pred = pred.count
        precision = tp / n_pred if n_pred else 0.0
        recall = tp / self.gt_count if self.gt_count else 0.0
        return EvalResult.from_scores(precision, recall, threshold)


def f_measure(pred: BoundaryMap, gt: BoundaryMap, tolerance: float = DEFAULT_TOLERANCE) -> EvalResult:
    return BoundaryMatcher(gt, tolerance).evaluate(pred)


def sweep_best_f(
    grad: GradientMap,
    gt: BoundaryMap,
    tolerance: float = DEFAULT_TOLERANCE,
    thresholds: Optional[Sequence[float]] = None,
) -> EvalResult:
    if thresholds is None:
        thresholds = default_thresholds(grad)
    if len(thresholds) == 0:
        raise InvalidParameterError("threshold list is empty")
    if grad.shape != gt.shape:
        raise DimensionMismatchError(f"gradient map is {grad.width}x{grad.height}, ground truth is {gt.width}x{gt.height}")
    matcher = BoundaryMatcher(gt, tolerance)
    best: Optional[EvalResult] = None
    for t in sorted(float(v) for v in thresholds):
        result = matcher.evaluate(threshold_boundary(grad, t), threshold=t)
        if best is None or result.f_measure > best.f_measure:
            best = result
    assert best is not None
    return best


@dataclass(frozen=True)
class CorpusItem:
    name: str
    image: ImageRGB
    ground_truth: BoundaryMap


@dataclass(frozen=True)
class ManifestEntry:
    image_path: Path
    gt_path: Path

    @property
    def name(self) -> str:
        return self.image_path.name

    def load(self) -> CorpusItem:
        return CorpusItem(name=self.name, image=load_image(self.image_path), ground_truth=load_boundary(self.gt_path))


def load_manifest(path: Union[str, Path]) -> tuple[list[ManifestEntry], list[str]]:
    """Read ``<image>\\t<ground truth>`` lines; relative paths resolve against the manifest."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CorpusError(f"cannot read manifest {path}: {exc}") from exc
    base = path.parent
    entries: list[ManifestEntry] = []
    warnings: list[str] = []
    for number, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = line.rstrip("\r\n").split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            warnings.append(f"{path.name}:{number}: expected '<image>\\t<ground-truth>'")
            continue
        image_path, gt_path = (Path(p.strip()) for p in parts)
        entries.append(
            ManifestEntry(
                image_path=image_path if image_path.is_absolute() else base / image_path,
                gt_path=gt_path if gt_path.is_absolute() else base / gt_path,
            )
        )
    return entries, warnings


def preprocess_for(setting: str, restorer: str = "sep") -> Preprocess:
    key = setting.strip().lower()
    if key == "none":
        return None
    if key == "filter-only":
        return restorer_for(restorer)
    if key == "sir":
        return get_preset(f"EdgePrep-{_short_restorer(restorer)}").config
    raise InvalidParameterError(f"unknown setting {setting!r} ({', '.join(EDGE_SETTINGS)})")


def _short_restorer(name: str) -> str:
    key = name.strip().lower()
    return "sep" if key == "separable" else key


def apply_preprocess(image: ImageRGB, preprocess: Preprocess) -> ImageRGB:
    if preprocess is None:
        return image
    if isinstance(preprocess, SirConfig):
        return sir_run(image, preprocess)
    # restorer alone: one pass, guided by the image itself, no blur
    return ImageRGB(*(apply_restorer(plane, plane, preprocess) for plane in image.channels()))


def describe_preprocess(preprocess: Preprocess) -> tuple[str, Optional[str]]:
    if preprocess is None:
        return "none", None
    if isinstance(preprocess, SirConfig):
        return "sir", preprocess.restorer.label()
    return "filter-only", preprocess.label()


def evaluate_item(
    item: CorpusItem,
    preprocess: Preprocess = None,
    tolerance: float = DEFAULT_TOLERANCE,
    threshold_steps: int = DEFAULT_THRESHOLD_STEPS,
) -> ImageEvalRecord:
    if item.image.shape != item.ground_truth.shape:
        raise DimensionMismatchError(
            f"ground truth is {item.ground_truth.width}x{item.ground_truth.height}, "
            f"image is {item.image.width}x{item.image.height}"
        )
    processed = apply_preprocess(item.image, preprocess)
    grad = sobel(to_gray(processed))
    result = sweep_best_f(grad, item.ground_truth, tolerance, default_thresholds(grad, threshold_steps))
    return ImageEvalRecord(name=item.name, width=item.image.width, height=item.image.height, result=result)


def evaluate_corpus(
    items: Iterable[Union[CorpusItem, ManifestEntry]],
    preprocess: Preprocess = None,
    tolerance: float = DEFAULT_TOLERANCE,
    threshold_steps: int = DEFAULT_THRESHOLD_STEPS,
    warnings: Optional[list[str]] = None,
) -> CorpusReport:
    items = list(items)
    if not items:
        raise CorpusError("corpus is empty")
    warnings = list(warnings or [])
    records: list[ImageEvalRecord] = []
    for item in items:
        name = item.name
        try:
            loaded = item.load() if isinstance(item, ManifestEntry) else item
            records.append(evaluate_item(loaded, preprocess, tolerance, threshold_steps))
        except SirError as exc:
            warnings.append(f"{name}: {exc}")
            logger.warning("skipping %s: %s", name, exc)
            continue
        logger.debug("%s: F=%.4f", name, records[-1].result.f_measure)

    if not records:
        raise CorpusError(f"no corpus item could be evaluated ({len(warnings)} failures)")
    setting, restorer = describe_preprocess(preprocess)
    count = len(records)
    return CorpusReport(
        setting=setting,
        restorer=restorer,
        tolerance=tolerance,
        records=records,
        mean_precision=sum(r.result.precision for r in records) / count,
        mean_recall=sum(r.result.recall for r in records) / count,
        mean_f_measure=sum(r.result.f_measure for r in records) / count,
        warnings=warnings,
    )
