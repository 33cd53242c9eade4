#!/usr/bin/env python3
"""
혼동 행렬 기반 지표 모듈
- 혼동 행렬(TP, FP, FN, TN)과 파생 주변합
- precision / recall / FPR / TNR / 기저율 / F1
- F1 비용 변환 (1/F1 - 1)
- C_score의 세 가지 동등한 계산식 (카운트, PR, 비율)과 총 비용

C_score = (FP + r_c * FN) / p 가 기준 계산식이며,
PR 형식과 비율 형식은 이 값과 일치하도록 검증되는 보조 표현이다.
"""

import math
from dataclasses import dataclass
from typing import Union

from common.errors import DegenerateDatasetError, MetricDomainError


class Undefined:
    """0/0 으로 정의되지 않는 비율을 나타내는 표시값"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(Undefined, cls).__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return 'UNDEFINED'

    def __bool__(self) -> bool:
        return False

    def __reduce__(self):
        return (Undefined, ())


UNDEFINED = Undefined()

Rate = Union[float, Undefined]


def is_defined(value) -> bool:
    """값이 UNDEFINED 표시값이 아닌지 확인"""
    return value is not UNDEFINED


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise MetricDomainError(f"{name} 값은 유한해야 합니다: {value}")
    return value


def _require_unit(name: str, value: float) -> float:
    value = _require_finite(name, value)
    if not 0.0 <= value <= 1.0:
        raise MetricDomainError(f"{name} 값은 [0, 1] 범위여야 합니다: {value}")
    return value


@dataclass(frozen=True)
class CostRatio:
    """비용 비율 r_c = C_FN / C_FP (정확한 값으로 비교/해시)"""

    value: float

    def __post_init__(self):
        value = float(self.value)
        if not math.isfinite(value) or value <= 0:
            raise MetricDomainError(f"비용 비율은 양의 유한 실수여야 합니다: {self.value}")
        object.__setattr__(self, 'value', value)

    @classmethod
    def of(cls, ratio: Union['CostRatio', float]) -> 'CostRatio':
        """float 또는 CostRatio를 CostRatio로 정규화"""
        if isinstance(ratio, CostRatio):
            return ratio
        return cls(ratio)

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        return f"{self.value:g}"


@dataclass(frozen=True)
class ConfusionMatrix:
    """
    혼동 행렬

    카운트는 음이 아닌 실수이다. 데이터에서 만든 행렬은 정수값을 갖지만
    비용이 일정한 행렬 계열(table4_point)은 실수 카운트를 만든다.
    """

    tp: float
    fp: float
    fn: float
    tn: float

    def __post_init__(self):
        for name in ('tp', 'fp', 'fn', 'tn'):
            value = _require_finite(name, getattr(self, name))
            if value < 0:
                raise MetricDomainError(f"{name} 카운트는 음수일 수 없습니다: {value}")
            object.__setattr__(self, name, value)

    @property
    def p(self) -> float:
        """실제 양성 수"""
        return self.tp + self.fn

    @property
    def n(self) -> float:
        """실제 음성 수"""
        return self.fp + self.tn

    @property
    def predicted_positive(self) -> float:
        """예측 양성 수 (p̂)"""
        return self.tp + self.fp

    @property
    def predicted_negative(self) -> float:
        """예측 음성 수 (n̂)"""
        return self.fn + self.tn

    @property
    def total(self) -> float:
        """전체 샘플 수 N"""
        return self.p + self.n

    def scaled(self, factor: float) -> 'ConfusionMatrix':
        """모든 카운트에 factor를 곱한 행렬"""
        factor = _require_finite('factor', factor)
        if factor <= 0:
            raise MetricDomainError(f"factor는 양수여야 합니다: {factor}")
        return ConfusionMatrix(self.tp * factor, self.fp * factor, self.fn * factor, self.tn * factor)

    def as_dict(self) -> dict:
        return {'tp': self.tp, 'fp': self.fp, 'fn': self.fn, 'tn': self.tn}


@dataclass(frozen=True)
class MetricSet:
    """확률적 정의에 따른 기본 지표 묶음"""

    precision: Rate
    recall: float
    fpr: Rate
    tnr: Rate
    base_rate: float
    f1: float

    @property
    def fdr(self) -> Rate:
        """오탐률 P(¬V|A) = 1 - precision"""
        if self.precision is UNDEFINED:
            return UNDEFINED
        return 1.0 - self.precision


def _require_positives(cm: ConfusionMatrix) -> None:
    if cm.p <= 0:
        raise DegenerateDatasetError("실제 양성(p)이 0인 데이터에서는 지표를 계산할 수 없습니다")


def f1_from_counts(cm: ConfusionMatrix) -> float:
    """F1 = 2TP / (2TP + FP + FN), 예측 양성이 없으면 0"""
    _require_positives(cm)
    return 2.0 * cm.tp / (2.0 * cm.tp + cm.fp + cm.fn)


def f1_from_pr(precision: float, recall: float) -> float:
    """precision과 recall의 조화평균"""
    precision = _require_unit('precision', precision)
    recall = _require_unit('recall', recall)
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def basic_metrics(cm: ConfusionMatrix) -> MetricSet:
    """혼동 행렬에서 기본 지표 계산"""
    _require_positives(cm)

    precision = cm.tp / cm.predicted_positive if cm.predicted_positive > 0 else UNDEFINED
    if cm.n > 0:
        fpr = cm.fp / cm.n
        tnr = cm.tn / cm.n
    else:
        fpr = UNDEFINED
        tnr = UNDEFINED

    return MetricSet(
        precision=precision,
        recall=cm.tp / cm.p,
        fpr=fpr,
        tnr=tnr,
        base_rate=cm.p / cm.total,
        f1=f1_from_counts(cm),
    )


def f1_cost(f1: float) -> float:
    """F1 점수를 비용 형태로 변환: 1/F1 - 1"""
    f1 = _require_finite('f1', f1)
    if f1 == 0:
        raise MetricDomainError("F1 = 0 에서 F1 비용은 발산합니다")
    if not 0.0 < f1 <= 1.0:
        raise MetricDomainError(f"f1 값은 (0, 1] 범위여야 합니다: {f1}")
    return (1.0 - f1) / f1


def cscore_counts(cm: ConfusionMatrix, rc: Union[CostRatio, float]) -> float:
    """
    C_score = (FP + r_c * FN) / p

    FP/p + r_c * (FN/p) 로 계산하므로 전부 음성 예측(FN = p)에서는 정확히 r_c 이다.
    """
    rc = CostRatio.of(rc).value
    _require_positives(cm)
    return cm.fp / cm.p + rc * (cm.fn / cm.p)


def cscore_pr(precision: Rate, recall: float, rc: Union[CostRatio, float]) -> float:
    """
    precision, recall, 비용 비율로 C_score 계산

    (1/Prec - 1 - r_c) * R + r_c 와 같으며, 음이 아닌 두 항
    ((1 - Prec)/Prec) * R 과 r_c * (1 - R) 의 합으로 계산한다.
    recall = 0 이면 precision과 무관하게 r_c 를 반환한다.
    """
    rc = CostRatio.of(rc).value
    recall = _require_unit('recall', recall)
    if recall == 0:
        return rc

    if precision is UNDEFINED:
        raise MetricDomainError("recall > 0 인데 precision이 정의되지 않았습니다")
    precision = _require_unit('precision', precision)
    if precision == 0:
        raise MetricDomainError("precision = 0, recall > 0 에서 C_score는 발산합니다")

    return (1.0 - precision) * (recall / precision) + rc * (1.0 - recall)


def cscore_rates(tpr: float, fpr: float, base_rate: float, rc: Union[CostRatio, float]) -> float:
    """
    비율 형식 C_score: FPR + P(V) * (r_c - r_c * TPR - FPR)

    값은 기저율 * cscore_counts 와 같다 (상수 K 제외).
    """
    rc = CostRatio.of(rc).value
    tpr = _require_unit('tpr', tpr)
    fpr = _require_unit('fpr', fpr)
    base_rate = _require_unit('base_rate', base_rate)
    if base_rate == 0:
        raise MetricDomainError("base_rate는 0보다 커야 합니다")
    return fpr * (1.0 - base_rate) + base_rate * rc * (1.0 - tpr)


def total_cost(cm: ConfusionMatrix, c_fp: float, rc: Union[CostRatio, float]) -> float:
    """총 오분류 비용: C_FP * (FP + r_c * FN)"""
    rc = CostRatio.of(rc).value
    c_fp = _require_finite('c_fp', c_fp)
    if c_fp <= 0:
        raise MetricDomainError(f"c_fp는 양수여야 합니다: {c_fp}")
    return c_fp * (cm.fp + rc * cm.fn)
