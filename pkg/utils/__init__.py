# utils 패키지
"""
비용 인지 평가 / 임계값 선택 모듈 패키지
"""

__version__ = '0.1.0'

from .metrics_core import (
    UNDEFINED,
    ConfusionMatrix,
    CostRatio,
    MetricSet,
    basic_metrics,
    cscore_counts,
    cscore_pr,
    cscore_rates,
    f1_cost,
    total_cost,
)
from .threshold_sweep import (
    ScoredDataset,
    ScoredExample,
    best_f1_threshold,
    candidate_thresholds,
    confusion_at,
    improvement_report,
    min_cost_threshold,
    ratio_sweep,
    sweep,
)

__all__ = [
    '__version__',
    'UNDEFINED',
    'ConfusionMatrix',
    'CostRatio',
    'MetricSet',
    'basic_metrics',
    'cscore_counts',
    'cscore_pr',
    'cscore_rates',
    'f1_cost',
    'total_cost',
    'ScoredDataset',
    'ScoredExample',
    'best_f1_threshold',
    'candidate_thresholds',
    'confusion_at',
    'improvement_report',
    'min_cost_threshold',
    'ratio_sweep',
    'sweep',
]
