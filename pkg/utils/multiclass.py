#!/usr/bin/env python3
"""
다중 클래스 / 다중 레이블 C_score
- 클래스별 one-vs-rest 이진화
- 클래스별 비용 비율과 임계값으로 C_score 계산
- 산술 / 가중 / 조화 평균 집계
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from common.config import config
from common.errors import (
    ConfigError,
    DatasetParseError,
    DegenerateDatasetError,
    LengthMismatchError,
    MetricDomainError,
    ScoreRangeError,
)
from common.logger import get_logger
from utils.metrics_core import CostRatio, cscore_counts
from utils.threshold_sweep import (
    ScoredDataset,
    ThresholdChoice,
    confusion_at,
    min_cost_threshold,
    sweep,
)

logger = get_logger('multiclass')

AGGREGATIONS = ('arithmetic', 'weighted', 'harmonic')


def _check_scores(scores: Sequence[float]) -> Tuple[float, ...]:
    values = tuple(float(s) for s in scores)
    if len(values) < 2:
        raise DatasetParseError(f"클래스 수는 2 이상이어야 합니다: {len(values)}")
    for s in values:
        if not math.isfinite(s) or not 0.0 <= s <= 1.0:
            raise ScoreRangeError(f"score는 [0, 1] 범위여야 합니다: {s}")
    return values


@dataclass(frozen=True)
class MulticlassScoredExample:
    """클래스별 점수 (합이 1일 필요 없음)와 실제 클래스"""

    scores: Tuple[float, ...]
    true_class: int

    def __post_init__(self):
        scores = _check_scores(self.scores)
        if isinstance(self.true_class, bool) or int(self.true_class) != self.true_class:
            raise DatasetParseError(f"true_class는 정수여야 합니다: {self.true_class}")
        if not 0 <= int(self.true_class) < len(scores):
            raise DatasetParseError(f"true_class 범위 오류: {self.true_class} (클래스 수 {len(scores)})")
        object.__setattr__(self, 'scores', scores)
        object.__setattr__(self, 'true_class', int(self.true_class))

    @property
    def n_classes(self) -> int:
        return len(self.scores)

    def label_for(self, c: int) -> int:
        return 1 if self.true_class == c else 0


@dataclass(frozen=True)
class MultilabelScoredExample:
    """레이블마다 독립적인 이진 문제 (labels[c] ∈ {0, 1})"""

    scores: Tuple[float, ...]
    labels: Tuple[int, ...]

    def __post_init__(self):
        scores = _check_scores(self.scores)
        labels = tuple(int(l) for l in self.labels)
        if len(labels) != len(scores):
            raise DatasetParseError(f"scores/labels 길이 불일치: {len(scores)} != {len(labels)}")
        if any(l not in (0, 1) for l in labels):
            raise DatasetParseError(f"labels는 0 또는 1이어야 합니다: {labels}")
        object.__setattr__(self, 'scores', scores)
        object.__setattr__(self, 'labels', labels)

    @property
    def n_classes(self) -> int:
        return len(self.scores)

    def label_for(self, c: int) -> int:
        return self.labels[c]


Example = Union[MulticlassScoredExample, MultilabelScoredExample]


@dataclass(frozen=True)
class ClassCostProfile:
    """클래스 인덱스 → 비용 비율"""

    ratios: Mapping[int, CostRatio]

    def __post_init__(self):
        object.__setattr__(self, 'ratios', {int(c): CostRatio.of(r) for c, r in self.ratios.items()})

    @classmethod
    def from_list(cls, ratios: Sequence[float]) -> 'ClassCostProfile':
        return cls({c: r for c, r in enumerate(ratios)})

    def __getitem__(self, c: int) -> CostRatio:
        return self.ratios[c]

    def require_classes(self, n_classes: int) -> None:
        missing = [c for c in range(n_classes) if c not in self.ratios]
        if missing:
            raise ConfigError(f"비용 비율이 없는 클래스: {missing}")


@dataclass(frozen=True)
class AggregationMethod:
    """arithmetic / weighted(weights) / harmonic"""

    kind: str = 'arithmetic'
    weights: Tuple[float, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in AGGREGATIONS:
            raise ConfigError(f"지원하지 않는 집계 방법: {self.kind}")
        weights = tuple(float(w) for w in self.weights)
        if self.kind == 'weighted':
            if not weights:
                raise ConfigError("weighted 집계에는 가중치가 필요합니다")
            if any(not math.isfinite(w) or w < 0 for w in weights):
                raise ConfigError(f"가중치는 음이 아닌 유한값이어야 합니다: {weights}")
            if abs(math.fsum(weights) - 1.0) > 1e-12:
                raise ConfigError(f"가중치 합은 1이어야 합니다: {math.fsum(weights)}")
        object.__setattr__(self, 'weights', weights)

    @classmethod
    def arithmetic(cls) -> 'AggregationMethod':
        return cls('arithmetic')

    @classmethod
    def weighted(cls, weights: Sequence[float]) -> 'AggregationMethod':
        return cls('weighted', tuple(weights))

    @classmethod
    def harmonic(cls) -> 'AggregationMethod':
        return cls('harmonic')


def _n_classes(ds: Sequence[Example]) -> int:
    if not ds:
        raise DegenerateDatasetError("빈 데이터셋입니다")
    n_classes = ds[0].n_classes
    for i, example in enumerate(ds):
        if example.n_classes != n_classes:
            raise DatasetParseError(f"예제 {i}의 클래스 수가 다릅니다: {example.n_classes} != {n_classes}")
    return n_classes


def binarize(ds: Sequence[Example], c: int) -> ScoredDataset:
    """클래스 c 대 나머지 이진 데이터셋"""
    n_classes = _n_classes(ds)
    if not 0 <= c < n_classes:
        raise MetricDomainError(f"클래스 인덱스 범위 오류: {c} (클래스 수 {n_classes})")

    labels = [example.label_for(c) for example in ds]
    if not any(labels):
        raise DegenerateDatasetError(f"클래스 {c}에 속한 예제가 없습니다")
    return ScoredDataset(scores=[example.scores[c] for example in ds], labels=labels)


def per_class_cscores(ds: Sequence[Example], profile: ClassCostProfile,
                      thresholds: Mapping[int, float],
                      max_workers: Optional[int] = None) -> List[float]:
    """클래스별 C_score (클래스 인덱스 순서)"""
    n_classes = _n_classes(ds)
    profile.require_classes(n_classes)
    missing = [c for c in range(n_classes) if c not in thresholds]
    if missing:
        raise ConfigError(f"임계값이 없는 클래스: {missing}")

    def one(c: int) -> float:
        return cscore_counts(confusion_at(binarize(ds, c), thresholds[c]), profile[c])

    workers = max_workers or config.MAX_WORKERS
    with ThreadPoolExecutor(max_workers=workers) as executor:
        values = list(executor.map(one, range(n_classes)))

    logger.info(f"클래스별 C_score: {[round(v, 6) for v in values]}")
    return values


def per_class_min_cost_thresholds(ds: Sequence[Example], profile: ClassCostProfile,
                                  max_workers: Optional[int] = None) -> Dict[int, ThresholdChoice]:
    """클래스마다 독립적으로 C_score 최소 임계값 선택"""
    n_classes = _n_classes(ds)
    profile.require_classes(n_classes)

    def one(c: int) -> ThresholdChoice:
        sr = sweep(binarize(ds, c), [profile[c]])
        return min_cost_threshold(sr, profile[c])

    workers = max_workers or config.MAX_WORKERS
    with ThreadPoolExecutor(max_workers=workers) as executor:
        choices = list(executor.map(one, range(n_classes)))
    return dict(enumerate(choices))


def aggregate(values: Sequence[float], method: AggregationMethod = AggregationMethod()) -> float:
    """클래스별 C_score 집계"""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise MetricDomainError("집계할 값이 없습니다")
    if not np.all(np.isfinite(values)) or values.min() < 0:
        raise MetricDomainError("집계 값은 음이 아닌 유한값이어야 합니다")

    if method.kind == 'arithmetic':
        return float(np.mean(values))

    if method.kind == 'weighted':
        if len(method.weights) != values.size:
            raise LengthMismatchError(f"가중치 길이 불일치: {len(method.weights)} != {values.size}")
        return float(np.dot(np.asarray(method.weights), values))

    # 0이 있으면 조화평균의 극한값 0
    if np.any(values == 0):
        return 0.0
    return float(values.size / np.sum(1.0 / values))
