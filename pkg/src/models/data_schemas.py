from __future__ import annotations

import math
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import (
    DEFAULT_BOX_RADIUS,
    DEFAULT_BOX_TIMES,
    DEFAULT_GAUSSIAN_RADIUS,
    DEFAULT_GAUSSIAN_SIGMA,
    DEFAULT_RANGE_RADIUS,
    DEFAULT_RANGE_SIGMA,
)


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class Kernel1D(_Frozen):
    radius: int = Field(ge=0)
    weights: tuple[float, ...]

    @model_validator(mode="after")
    def _check_weights(self) -> "Kernel1D":
        size = 2 * self.radius + 1
        if len(self.weights) != size:
            raise ValueError(f"kernel of radius {self.radius} needs {size} weights, got {len(self.weights)}")
        if any(w <= 0 for w in self.weights):
            raise ValueError("kernel weights must be positive")
        if abs(math.fsum(self.weights) - 1.0) > 1e-12:
            raise ValueError("kernel weights must sum to 1")
        if any(self.weights[i] != self.weights[size - 1 - i] for i in range(size)):
            raise ValueError("kernel weights must be symmetric")
        return self

    @property
    def size(self) -> int:
        return len(self.weights)


class GaussianSmoother(_Frozen):
    kind: Literal["gaussian"] = "gaussian"
    sigma: float = Field(default=DEFAULT_GAUSSIAN_SIGMA, gt=0)
    radius: int = Field(default=DEFAULT_GAUSSIAN_RADIUS, ge=1)

    def label(self) -> str:
        return f"gaussian(sigma={self.sigma:g}, {2 * self.radius + 1}x{2 * self.radius + 1})"


class IteratedBoxSmoother(_Frozen):
    kind: Literal["box"] = "box"
    radius: int = Field(default=DEFAULT_BOX_RADIUS, ge=1)
    times: int = Field(default=DEFAULT_BOX_TIMES, ge=1)

    def label(self) -> str:
        return f"box({2 * self.radius + 1}x{2 * self.radius + 1}, x{self.times})"


SmootherSpec = Annotated[Union[GaussianSmoother, IteratedBoxSmoother], Field(discriminator="kind")]


class RangeSpec(_Frozen):
    sigma: float = Field(default=DEFAULT_RANGE_SIGMA, gt=0)
    radius: int = Field(default=DEFAULT_RANGE_RADIUS, ge=1)


class Gauss2DRestorer(_Frozen):
    kind: Literal["gauss2d"] = "gauss2d"
    range_spec: RangeSpec = Field(default_factory=RangeSpec)

    def label(self) -> str:
        return f"gauss2d(sigma={self.range_spec.sigma:g}, r={self.range_spec.radius})"


class SeparableGaussRestorer(_Frozen):
    kind: Literal["separable"] = "separable"
    range_spec: RangeSpec = Field(default_factory=RangeSpec)
    order: Literal["hv", "vh"] = "hv"

    def label(self) -> str:
        return f"separable(sigma={self.range_spec.sigma:g}, r={self.range_spec.radius}, {self.order})"


class SnnRestorer(_Frozen):
    kind: Literal["snn"] = "snn"
    mode: Literal["mean", "median"] = "mean"

    def label(self) -> str:
        return f"snn-{self.mode}(3x3)"


RestorerSpec = Annotated[
    Union[Gauss2DRestorer, SeparableGaussRestorer, SnnRestorer],
    Field(discriminator="kind"),
]


class WeightPair(_Frozen):
    """Direct (w1) and one-intermediate-pixel (w2) range weights of a pixel pair.

    The log-weights are kept next to the weights because w1, w2 underflow to
    0.0 for large intensity gaps at small sigma while their ordering does not.
    """

    w1: float = Field(ge=0, le=1)
    w2: float = Field(ge=0, le=1)
    log_w1: float = Field(le=0)
    log_w2: float = Field(le=0)


class SirConfig(_Frozen):
    smoother: SmootherSpec = Field(default_factory=GaussianSmoother)
    restorer: RestorerSpec = Field(default_factory=SeparableGaussRestorer)
    iterations: int = Field(default=5, ge=0)
    guidance: Literal["input", "external"] = "input"

    def describe(self) -> str:
        return f"{self.smoother.label()} -> {self.restorer.label()} x{self.iterations} (guide={self.guidance})"


class SirPreset(_Frozen):
    name: str
    description: str
    config: SirConfig


class EvalResult(_Frozen):
    precision: float = Field(ge=0, le=1)
    recall: float = Field(ge=0, le=1)
    f_measure: float = Field(ge=0, le=1)
    best_threshold: float = Field(ge=0)

    @classmethod
    def from_scores(cls, precision: float, recall: float, threshold: float) -> "EvalResult":
        total = precision + recall
        f_value = 2.0 * precision * recall / total if total > 0 else 0.0
        return cls(precision=precision, recall=recall, f_measure=f_value, best_threshold=threshold)


class ImageEvalRecord(_Frozen):
    name: str
    width: int
    height: int
    result: EvalResult


class CorpusReport(BaseModel):
    setting: str
    restorer: Optional[str] = None
    tolerance: float
    records: list[ImageEvalRecord]
    mean_precision: float
    mean_recall: float
    mean_f_measure: float
    warnings: list[str] = Field(default_factory=list)


class BenchRow(_Frozen):
    variant: str
    width: int
    height: int
    iters: int
    smooth_s: float = Field(gt=0)
    restore_s: float = Field(gt=0)
    total_s: float = Field(gt=0)


class BenchReport(BaseModel):
    input_path: Optional[str] = None
    repeat: int = Field(ge=1)
    rows: list[BenchRow]
    warnings: list[str] = Field(default_factory=list)

    def row(self, variant: str) -> BenchRow:
        for item in self.rows:
            if item.variant.lower() == variant.lower():
                return item
        raise KeyError(variant)
