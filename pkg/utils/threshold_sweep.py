#!/usr/bin/env python3
"""
임계값 스윕 모듈
- 점수화된 예측(score, label)에서 임계값별 혼동 행렬 생성 (score >= t 이면 양성)
- F1 최대 / C_score 최소 임계값 선택
- F1 기준 대비 비용 개선율 비교, 비용 비율 스윕
- 점수 분포 히스토그램, PR 곡선, 스윕 DataFrame
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from common.config import config
from common.errors import (
    DatasetParseError,
    DegenerateDatasetError,
    MetricDomainError,
    ScoreRangeError,
    UnknownRatioError,
)
from common.logger import get_logger, logger_manager
from utils.metrics_core import (
    UNDEFINED,
    ConfusionMatrix,
    CostRatio,
    MetricSet,
    basic_metrics,
    cscore_counts,
)

logger = get_logger('threshold_sweep')

RatioLike = Union[CostRatio, float]

OBJECTIVE_MAX_F1 = 'max-f1'
OBJECTIVE_MIN_CSCORE = 'min-cscore'


@dataclass(frozen=True)
class ScoredExample:
    """모델이 예측한 양성 확률과 실제 레이블"""

    score: float
    label: int

    def __post_init__(self):
        score = float(self.score)
        if not math.isfinite(score) or not 0.0 <= score <= 1.0:
            raise ScoreRangeError(f"score는 [0, 1] 범위의 유한값이어야 합니다: {self.score}")
        if self.label not in (0, 1):
            raise DatasetParseError(f"label은 0 또는 1이어야 합니다: {self.label}")
        object.__setattr__(self, 'score', score)
        object.__setattr__(self, 'label', int(self.label))


@dataclass(frozen=True, eq=False)
class ScoredDataset:
    """
    점수화된 데이터셋 (읽기 전용 numpy 배열로 보관)

    비어 있지 않아야 하며 양성 레이블이 최소 1개 있어야 한다.
    """

    scores: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        scores = np.array(self.scores, dtype=np.float64).reshape(-1)
        labels = np.array(self.labels).reshape(-1)

        if scores.size == 0:
            raise DegenerateDatasetError("빈 데이터셋입니다")
        if scores.size != labels.size:
            raise DatasetParseError(f"score/label 길이 불일치: {scores.size} != {labels.size}")
        if not np.all(np.isfinite(scores)) or scores.min() < 0.0 or scores.max() > 1.0:
            raise ScoreRangeError("score는 [0, 1] 범위의 유한값이어야 합니다")
        if not np.all(np.isin(labels, (0, 1))):
            raise DatasetParseError("label은 0 또는 1이어야 합니다")
        labels = labels.astype(np.int8)
        if not labels.any():
            raise DegenerateDatasetError("양성 레이블(1)이 하나도 없습니다")

        scores.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, 'scores', scores)
        object.__setattr__(self, 'labels', labels)

    @classmethod
    def from_examples(cls, examples: Iterable[ScoredExample]) -> 'ScoredDataset':
        examples = list(examples)
        return cls(
            scores=[e.score for e in examples],
            labels=[e.label for e in examples],
        )

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[float, int]]) -> 'ScoredDataset':
        """(score, label) 튜플 목록에서 생성"""
        return cls.from_examples(ScoredExample(s, l) for s, l in pairs)

    @property
    def examples(self) -> List[ScoredExample]:
        return [ScoredExample(float(s), int(l)) for s, l in zip(self.scores, self.labels)]

    def __len__(self) -> int:
        return int(self.scores.size)

    @property
    def n_total(self) -> int:
        return int(self.scores.size)

    @property
    def n_pos(self) -> int:
        return int(self.labels.sum())

    @property
    def n_neg(self) -> int:
        return self.n_total - self.n_pos

    @property
    def base_rate(self) -> float:
        return self.n_pos / self.n_total

    @property
    def sentinel(self) -> float:
        """최대 점수보다 큰 임계값 (전부 음성 예측)"""
        return float(self.scores.max()) + config.SENTINEL_OFFSET


@dataclass(frozen=True)
class MetricPoint:
    """임계값 하나에서의 혼동 행렬, 지표, 비용 비율별 C_score"""

    threshold: float
    cm: ConfusionMatrix
    metrics: MetricSet
    cscores: Mapping[CostRatio, float]

    def cscore(self, rc: RatioLike) -> float:
        rc = CostRatio.of(rc)
        if rc not in self.cscores:
            raise UnknownRatioError(f"스윕에 없는 비용 비율입니다: {rc}")
        return self.cscores[rc]


@dataclass(frozen=True)
class SweepResult:
    """임계값 오름차순 MetricPoint 목록과 데이터셋 요약"""

    points: Tuple[MetricPoint, ...]
    n_total: int
    n_pos: int
    n_neg: int
    ratios: Tuple[CostRatio, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.points)

    @property
    def thresholds(self) -> np.ndarray:
        """임계값 오름차순 배열"""
        return np.array([pt.threshold for pt in self.points], dtype=np.float64)

    @property
    def fp_counts(self) -> np.ndarray:
        return np.array([pt.cm.fp for pt in self.points], dtype=np.float64)

    @property
    def fn_counts(self) -> np.ndarray:
        return np.array([pt.cm.fn for pt in self.points], dtype=np.float64)

    def require_ratio(self, rc: RatioLike) -> CostRatio:
        rc = CostRatio.of(rc)
        if rc not in self.ratios:
            known = ', '.join(str(r) for r in self.ratios)
            raise UnknownRatioError(f"스윕에 없는 비용 비율입니다: {rc} (스윕 비율: {known})")
        return rc


@dataclass(frozen=True)
class ThresholdChoice:
    """목적 함수별 선택된 임계값"""

    objective: str
    threshold: float
    point: MetricPoint
    ratio: Optional[CostRatio] = None

    @property
    def label(self) -> str:
        if self.ratio is None:
            return self.objective
        return f"{self.objective}@{self.ratio}"


@dataclass(frozen=True)
class ImprovementEntry:
    """비용 비율 하나에 대한 F1 기준 vs C_score 기준 비교"""

    ratio: CostRatio
    f1_choice: ThresholdChoice
    cost_choice: ThresholdChoice
    cscore_at_f1: float
    cscore_at_opt: float
    improvement_pct: float

    @property
    def f1_threshold(self) -> float:
        return self.f1_choice.threshold

    @property
    def cscore_threshold(self) -> float:
        return self.cost_choice.threshold


@dataclass(frozen=True)
class ImprovementReport:
    entries: Tuple[ImprovementEntry, ...]

    def for_ratio(self, rc: RatioLike) -> ImprovementEntry:
        rc = CostRatio.of(rc)
        for entry in self.entries:
            if entry.ratio == rc:
                return entry
        raise UnknownRatioError(f"리포트에 없는 비용 비율입니다: {rc}")


def _normalize_ratios(ratios: Iterable[RatioLike]) -> Tuple[CostRatio, ...]:
    """중복 제거 후 값 오름차순 정렬"""
    unique = {CostRatio.of(r) for r in ratios}
    if not unique:
        raise MetricDomainError("비용 비율이 최소 1개 필요합니다")
    return tuple(sorted(unique, key=lambda r: r.value))


def _cumulative_counts(ds: ScoredDataset) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    정렬 한 번으로 후보 임계값별 (tp, fp) 계산

    각 고유 점수 u에 대해 score >= u 인 샘플이 양성 예측이다.
    마지막 원소는 센티널(전부 음성)이다.
    """
    order = np.argsort(ds.scores, kind='stable')
    sorted_scores = ds.scores[order]
    sorted_labels = ds.labels[order].astype(np.int64)

    uniq, first_idx = np.unique(sorted_scores, return_index=True)
    pos_below = np.concatenate(([0], np.cumsum(sorted_labels)))[first_idx]
    neg_below = first_idx - pos_below

    tp = np.append(ds.n_pos - pos_below, 0)
    fp = np.append(ds.n_neg - neg_below, 0)
    thresholds = np.append(uniq, ds.sentinel)
    return thresholds, tp, fp


def candidate_thresholds(ds: ScoredDataset) -> List[float]:
    """고유 점수 오름차순 + 센티널"""
    uniq = np.unique(ds.scores)
    return [float(t) for t in uniq] + [ds.sentinel]


def confusion_at(ds: ScoredDataset, t: float) -> ConfusionMatrix:
    """임계값 t 에서의 혼동 행렬 (score >= t 이면 양성)"""
    predicted = ds.scores >= t
    positive = ds.labels == 1
    tp = int(np.count_nonzero(predicted & positive))
    fp = int(np.count_nonzero(predicted & ~positive))
    return ConfusionMatrix(tp=tp, fp=fp, fn=ds.n_pos - tp, tn=ds.n_neg - fp)


def sweep(ds: ScoredDataset, ratios: Iterable[RatioLike]) -> SweepResult:
    """후보 임계값 전체에 대해 지표와 비용 비율별 C_score 계산"""
    ratio_keys = _normalize_ratios(ratios)
    thresholds, tp, fp = _cumulative_counts(ds)

    points = []
    for t, tp_i, fp_i in zip(thresholds, tp, fp):
        cm = ConfusionMatrix(
            tp=float(tp_i),
            fp=float(fp_i),
            fn=float(ds.n_pos - tp_i),
            tn=float(ds.n_neg - fp_i),
        )
        cscores = {rc: cscore_counts(cm, rc) for rc in ratio_keys}
        points.append(MetricPoint(threshold=float(t), cm=cm, metrics=basic_metrics(cm), cscores=cscores))

    result = SweepResult(
        points=tuple(points),
        n_total=ds.n_total,
        n_pos=ds.n_pos,
        n_neg=ds.n_neg,
        ratios=ratio_keys,
    )
    logger_manager.log_sweep_done(len(points), ds.n_total, ds.n_pos, [r.value for r in ratio_keys])
    return result


def best_f1_threshold(sr: SweepResult) -> ThresholdChoice:
    """F1 최대 임계값 (동률이면 가장 작은 임계값)"""
    if not sr.points:
        raise MetricDomainError("빈 스윕 결과입니다")

    best = sr.points[0]
    for pt in sr.points[1:]:
        if pt.metrics.f1 > best.metrics.f1:
            best = pt

    logger_manager.log_choice(OBJECTIVE_MAX_F1, best.threshold, best.metrics.f1)
    return ThresholdChoice(objective=OBJECTIVE_MAX_F1, threshold=best.threshold, point=best)


def min_cost_threshold(sr: SweepResult, rc: RatioLike) -> ThresholdChoice:
    """C_score 최소 임계값 (동률이면 가장 작은 임계값 = 가장 높은 recall)"""
    rc = sr.require_ratio(rc)
    if not sr.points:
        raise MetricDomainError("빈 스윕 결과입니다")

    best = sr.points[0]
    for pt in sr.points[1:]:
        if pt.cscores[rc] < best.cscores[rc]:
            best = pt

    logger_manager.log_choice(f"{OBJECTIVE_MIN_CSCORE}@{rc}", best.threshold, best.cscores[rc])
    return ThresholdChoice(objective=OBJECTIVE_MIN_CSCORE, threshold=best.threshold, point=best, ratio=rc)


def improvement_pct(cscore_at_f1: float, cscore_at_opt: float) -> float:
    """F1 기준 비용 대비 감소율(%), F1 기준 비용이 0이면 0"""
    if cscore_at_f1 == 0:
        return 0.0
    return 100.0 * (cscore_at_f1 - cscore_at_opt) / cscore_at_f1


def _improvement_entry(sr: SweepResult, f1_choice: ThresholdChoice, rc: CostRatio) -> ImprovementEntry:
    cost_choice = min_cost_threshold(sr, rc)
    at_f1 = f1_choice.point.cscores[rc]
    at_opt = cost_choice.point.cscores[rc]
    pct = improvement_pct(at_f1, at_opt)
    logger_manager.log_improvement(rc.value, at_f1, at_opt, pct)
    return ImprovementEntry(
        ratio=rc,
        f1_choice=f1_choice,
        cost_choice=cost_choice,
        cscore_at_f1=at_f1,
        cscore_at_opt=at_opt,
        improvement_pct=pct,
    )


def improvement_report(sr: SweepResult, ratios: Optional[Iterable[RatioLike]] = None,
                       max_workers: Optional[int] = None) -> ImprovementReport:
    """비용 비율별로 F1 최적 임계값과 C_score 최적 임계값의 비용 비교"""
    if ratios is None:
        ratio_keys = sr.ratios
    else:
        ratio_keys = tuple(sr.require_ratio(r) for r in _normalize_ratios(ratios))

    f1_choice = best_f1_threshold(sr)
    workers = max_workers or config.MAX_WORKERS

    # 비율별 계산은 서로 독립이며 결과 순서는 입력 순서를 따른다
    with ThreadPoolExecutor(max_workers=workers) as executor:
        entries = list(executor.map(lambda rc: _improvement_entry(sr, f1_choice, rc), ratio_keys))

    return ImprovementReport(entries=tuple(entries))


def ratio_sweep(ds: ScoredDataset, log10_min: float, log10_max: float, steps: int,
                max_workers: Optional[int] = None) -> List[Tuple[float, float]]:
    """log10 비용 비율 격자에서 비용 개선율 계산"""
    if steps < 2:
        raise MetricDomainError(f"steps는 2 이상이어야 합니다: {steps}")
    if not log10_min < log10_max:
        raise MetricDomainError(f"log10_min < log10_max 이어야 합니다: {log10_min}, {log10_max}")

    grid = np.linspace(log10_min, log10_max, steps)
    ratios = [CostRatio(10.0 ** g) for g in grid]

    thresholds, tp, fp = _cumulative_counts(ds)
    fn = (ds.n_pos - tp).astype(np.float64)
    fp = fp.astype(np.float64)
    tp = tp.astype(np.float64)

    # F1 최대 지점 (argmax는 첫 번째 최대값 = 가장 작은 임계값)
    f1 = 2.0 * tp / (2.0 * tp + fp + fn)
    f1_idx = int(np.argmax(f1))

    def one(rc: CostRatio) -> float:
        costs = fp / ds.n_pos + rc.value * (fn / ds.n_pos)
        opt_idx = int(np.argmin(costs))
        return improvement_pct(float(costs[f1_idx]), float(costs[opt_idx]))

    workers = max_workers or config.MAX_WORKERS
    with ThreadPoolExecutor(max_workers=workers) as executor:
        improvements = list(executor.map(one, ratios))

    logger.info(f"비용 비율 스윕 완료: log10 [{log10_min:g}, {log10_max:g}], {steps}단계, "
                f"F1 임계값 {thresholds[f1_idx]:.6g}")
    return [(float(g), float(v)) for g, v in zip(grid, improvements)]


def score_histogram(ds: ScoredDataset, bins: int = 20) -> pd.DataFrame:
    """[0, 1] 구간 클래스별 점수 분포"""
    if bins < 1:
        raise MetricDomainError(f"bins는 1 이상이어야 합니다: {bins}")
    edges = np.linspace(0.0, 1.0, bins + 1)
    negatives, _ = np.histogram(ds.scores[ds.labels == 0], bins=edges)
    positives, _ = np.histogram(ds.scores[ds.labels == 1], bins=edges)
    return pd.DataFrame({
        'bin_left': edges[:-1],
        'bin_right': edges[1:],
        'negatives': negatives.astype(np.int64),
        'positives': positives.astype(np.int64),
    })


def _rate_or_nan(value) -> float:
    return np.nan if value is UNDEFINED else float(value)


def ratio_column(rc: CostRatio, prefix: str = 'cscore') -> str:
    return f"{prefix}_{rc.value:.12g}"


def sweep_frame(sr: SweepResult, log_cscore: bool = False) -> pd.DataFrame:
    """스윕 결과를 DataFrame으로 변환 (정의되지 않은 precision은 NaN)"""
    rows = []
    for pt in sr.points:
        row = {
            'threshold': pt.threshold,
            'tp': pt.cm.tp,
            'fp': pt.cm.fp,
            'fn': pt.cm.fn,
            'tn': pt.cm.tn,
            'precision': _rate_or_nan(pt.metrics.precision),
            'recall': pt.metrics.recall,
            'f1': pt.metrics.f1,
        }
        for rc in sr.ratios:
            row[ratio_column(rc)] = pt.cscores[rc]
        if log_cscore:
            for rc in sr.ratios:
                value = pt.cscores[rc]
                row[ratio_column(rc, 'log10_cscore')] = math.log10(value) if value > 0 else np.nan
        rows.append(row)

    frame = pd.DataFrame(rows)
    for col in ('tp', 'fp', 'fn', 'tn'):
        frame[col] = frame[col].astype(np.int64)
    return frame


def pr_curve(sr: SweepResult, choices: Sequence[ThresholdChoice] = ()) -> pd.DataFrame:
    """precision이 정의된 점들의 PR 곡선과 선택된 운영점 표시"""
    markers: Dict[float, List[str]] = {}
    for choice in choices:
        markers.setdefault(choice.threshold, []).append(choice.label)

    rows = []
    for pt in sr.points:
        if pt.metrics.precision is UNDEFINED:
            continue
        rows.append({
            'threshold': pt.threshold,
            'recall': pt.metrics.recall,
            'precision': pt.metrics.precision,
            'f1': pt.metrics.f1,
            'marker': ';'.join(markers.get(pt.threshold, [])),
        })
    return pd.DataFrame(rows, columns=['threshold', 'recall', 'precision', 'f1', 'marker'])
