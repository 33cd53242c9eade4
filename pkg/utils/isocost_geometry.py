#!/usr/bin/env python3
"""
PR 공간 등고선 기하 모듈
- C_score 등비용 곡선 / F1 등고선의 precision 계산과 샘플링
- 등고선 기울기와 기울기 부호 분류
- C_score가 일정한 혼동 행렬 계열 (TP+k, FP+r_c*k, FN-k, TN-r_c*k)

PR 공간의 점은 precision이 (0, 1] 안에 있을 때만 실현 가능하다.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np

from common.errors import EmptyCurveError, InfeasiblePointError, MetricDomainError
from utils.metrics_core import ConfusionMatrix, CostRatio

# precision 상한 비교 허용 오차 (경계점 R = 1 - C/r_c 의 반올림 오차 흡수)
PRECISION_TOL = 1e-12


class SlopeSign(str, Enum):
    POSITIVE = 'positive'
    NEGATIVE = 'negative'
    ZERO = 'zero'


@dataclass(frozen=True)
class IsocostCurve:
    """r_c 와 C_score 수준이 고정된 (recall, precision) 점 목록"""

    rc: CostRatio
    level: float
    points: Tuple[Tuple[float, float], ...]


@dataclass(frozen=True)
class F1Isocurve:
    """F1 값이 고정된 (recall, precision) 점 목록"""

    level: float
    points: Tuple[Tuple[float, float], ...]


def _check_recall(recall: float) -> float:
    recall = float(recall)
    if not math.isfinite(recall) or not 0.0 < recall <= 1.0:
        raise MetricDomainError(f"recall은 (0, 1] 범위여야 합니다: {recall}")
    return recall


def _check_level(level: float) -> float:
    level = float(level)
    if not math.isfinite(level) or level < 0:
        raise MetricDomainError(f"C_score 수준은 음이 아닌 유한값이어야 합니다: {level}")
    return level


def _check_f1(f1: float) -> float:
    f1 = float(f1)
    if not math.isfinite(f1) or not 0.0 < f1 <= 1.0:
        raise MetricDomainError(f"F1 값은 (0, 1] 범위여야 합니다: {f1}")
    return f1


def _cap_precision(precision: float, what: str) -> float:
    if precision > 1.0 + PRECISION_TOL:
        raise InfeasiblePointError(f"{what}: 필요한 precision {precision:.6g} > 1")
    return min(precision, 1.0)


def _isocost_denominator(recall: float, level: float, rc: float) -> float:
    return (level - rc) + recall * (rc + 1.0)


def isocost_precision(recall: float, level: float, rc: Union[CostRatio, float]) -> float:
    """C_score = level 을 만족하는 precision: R / (C + R(r_c + 1) - r_c)"""
    rc = CostRatio.of(rc).value
    recall = _check_recall(recall)
    level = _check_level(level)

    denom = _isocost_denominator(recall, level, rc)
    if denom <= 0:
        raise InfeasiblePointError(
            f"recall={recall:g}, C_score={level:g}, r_c={rc:g} 에서 분모가 0 이하입니다"
        )
    return _cap_precision(recall / denom, f"recall={recall:g}, C_score={level:g}, r_c={rc:g}")


def f1_isocurve_precision(recall: float, f1: float) -> float:
    """F1 = f1 을 만족하는 precision: F1 * R / (2R - F1)"""
    recall = _check_recall(recall)
    f1 = _check_f1(f1)

    denom = 2.0 * recall - f1
    if denom <= 0:
        raise InfeasiblePointError(f"2R <= F1 (recall={recall:g}, F1={f1:g})")
    return _cap_precision(f1 * recall / denom, f"recall={recall:g}, F1={f1:g}")


def cscore_slope(recall: float, level: float, rc: Union[CostRatio, float]) -> float:
    """C_score 등비용 곡선의 기울기: (C - r_c) / D², D = C + R(r_c + 1) - r_c"""
    rc = CostRatio.of(rc).value
    isocost_precision(recall, level, rc)
    denom = _isocost_denominator(float(recall), float(level), rc)
    return (float(level) - rc) / (denom * denom)


def f1_slope(recall: float, f1: float) -> float:
    """F1 등고선의 기울기: -F1² / (2R - F1)², 항상 음수"""
    recall = _check_recall(recall)
    f1 = _check_f1(f1)
    denom = 2.0 * recall - f1
    if denom <= 0:
        raise InfeasiblePointError(f"2R <= F1 (recall={recall:g}, F1={f1:g})")
    return -(f1 * f1) / (denom * denom)


def slope_sign(level: float, rc: Union[CostRatio, float]) -> SlopeSign:
    """C_score > r_c 이면 양, < r_c 이면 음, 같으면 0 (입력값 그대로 비교)"""
    rc = CostRatio.of(rc).value
    level = _check_level(level)
    if level > rc:
        return SlopeSign.POSITIVE
    if level < rc:
        return SlopeSign.NEGATIVE
    return SlopeSign.ZERO


def table4_point(base: ConfusionMatrix, rc: Union[CostRatio, float], k: float) -> ConfusionMatrix:
    """C_score를 유지하며 k 만큼 이동한 혼동 행렬 (TP+k, FP+r_c*k, FN-k, TN-r_c*k)"""
    rc = CostRatio.of(rc).value
    k = float(k)
    if not math.isfinite(k):
        raise MetricDomainError(f"k는 유한값이어야 합니다: {k}")

    shifted = (base.tp + k, base.fp + rc * k, base.fn - k, base.tn - rc * k)
    if min(shifted) < 0:
        raise MetricDomainError(
            f"k={k:g}, r_c={rc:g} 에서 음수 카운트가 생깁니다: {tuple(round(v, 6) for v in shifted)}"
        )
    return ConfusionMatrix(*shifted)


def _recall_grid(low: float, n_points: int) -> np.ndarray:
    # 하한이 0이면 0을 제외한 (0, 1] 균등 격자
    if low <= 0:
        return np.linspace(1.0 / n_points, 1.0, n_points)
    return np.unique(np.linspace(low, 1.0, n_points))


def sample_isocost(level: float, rc: Union[CostRatio, float], n_points: int) -> IsocostCurve:
    """
    실현 가능한 recall 구간에서 등비용 곡선을 균등 샘플링

    precision <= 1 조건은 R >= 1 - C / r_c 와 같으므로 이 구간만 샘플링한다.
    실현 불가능한 recall은 건너뛰며 n_points 보다 적은 점을 반환할 수 있다.
    """
    rc = CostRatio.of(rc)
    level = _check_level(level)
    if n_points < 2:
        raise MetricDomainError(f"n_points는 2 이상이어야 합니다: {n_points}")

    low = max(1.0 - level / rc.value, 0.0)
    points = []
    for recall in _recall_grid(low, n_points):
        try:
            points.append((float(recall), isocost_precision(recall, level, rc)))
        except (InfeasiblePointError, MetricDomainError):
            continue

    if not points:
        raise EmptyCurveError(f"C_score={level:g}, r_c={rc} 에서 실현 가능한 점이 없습니다")
    return IsocostCurve(rc=rc, level=level, points=tuple(points))


def sample_f1_isocurve(f1: float, n_points: int) -> F1Isocurve:
    """실현 가능한 recall 구간 [F1/(2-F1), 1] 에서 F1 등고선 샘플링"""
    f1 = _check_f1(f1)
    if n_points < 2:
        raise MetricDomainError(f"n_points는 2 이상이어야 합니다: {n_points}")

    low = f1 / (2.0 - f1)
    points = []
    for recall in _recall_grid(low, n_points):
        try:
            points.append((float(recall), f1_isocurve_precision(recall, f1)))
        except (InfeasiblePointError, MetricDomainError):
            continue

    if not points:
        raise EmptyCurveError(f"F1={f1:g} 에서 실현 가능한 점이 없습니다")
    return F1Isocurve(level=f1, points=tuple(points))
