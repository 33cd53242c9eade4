#!/usr/bin/env python3
"""
입출력 및 리포트 모듈
- score,label CSV 데이터셋 로드 (1부터 시작하는 줄 번호로 오류 보고)
- 다중 클래스 / 다중 레이블 JSON-lines 로드
- 비교 리포트 생성과 json / table 렌더링
- 스윕, 곡선, 비용 비율 스윕 결과 CSV 저장
"""

import hashlib
import io
import json
import math
import os
import re
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from rich import box
from rich.console import Console
from rich.table import Table

from common.config import config
from common.errors import DatasetParseError, MetricDomainError, ScoreRangeError
from common.logger import get_logger
from utils import __version__
from utils.isocost_geometry import F1Isocurve, IsocostCurve
from utils.metrics_core import UNDEFINED, CostRatio, total_cost
from utils.multiclass import Example, MulticlassScoredExample, MultilabelScoredExample
from utils.threshold_sweep import (
    ImprovementReport,
    ScoredDataset,
    SweepResult,
    ThresholdChoice,
    best_f1_threshold,
    improvement_report,
    sweep,
)

logger = get_logger('report_io')

DATASET_HEADER = ['score', 'label']


def file_digest(path: str) -> str:
    """파일 내용의 sha256 해시"""
    sha = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(65536), b''):
            sha.update(chunk)
    return sha.hexdigest()


def dataset_to_frame(ds: ScoredDataset) -> pd.DataFrame:
    return pd.DataFrame({'score': ds.scores, 'label': ds.labels.astype(np.int64)})


def _is_blank(value: Any) -> bool:
    return value is None or (isinstance(value, float) and math.isnan(value)) or str(value).strip() == ''


def load_dataset(path: str) -> ScoredDataset:
    """
    score,label 헤더가 있는 CSV 로드

    Raises:
        DatasetParseError: 헤더 누락, 숫자 파싱 실패 (줄 번호 포함)
        ScoreRangeError: [0, 1] 밖의 score
        DegenerateDatasetError: 양성 레이블 없음
    """
    try:
        raw = pd.read_csv(path, header=None, dtype=str, keep_default_na=False,
                          skip_blank_lines=False, encoding='utf-8')
    except pd.errors.EmptyDataError:
        raise DatasetParseError("빈 파일입니다 (score,label 헤더 필요)", line=1)
    except pd.errors.ParserError as e:
        match = re.search(r'line (\d+)', str(e))
        line = int(match.group(1)) if match else None
        raise DatasetParseError(f"열 개수가 맞지 않습니다: {e}", line=line)

    header = [str(v).strip() for v in raw.iloc[0].tolist()]
    if raw.shape[1] != 2 or header != DATASET_HEADER:
        raise DatasetParseError(f"헤더는 'score,label' 이어야 합니다: {','.join(header)}", line=1)

    scores: List[float] = []
    labels: List[int] = []
    for idx in range(1, len(raw)):
        line = idx + 1
        score_text, label_text = raw.iloc[idx, 0], raw.iloc[idx, 1]
        if _is_blank(score_text) and _is_blank(label_text):
            continue
        if _is_blank(score_text) or _is_blank(label_text):
            raise DatasetParseError("score와 label이 모두 필요합니다", line=line)

        try:
            score = float(str(score_text).strip())
        except ValueError:
            raise DatasetParseError(f"score를 숫자로 읽을 수 없습니다: {score_text!r}", line=line)
        if not math.isfinite(score) or not 0.0 <= score <= 1.0:
            raise ScoreRangeError(f"score는 [0, 1] 범위여야 합니다: {score_text}", line=line)

        label_text = str(label_text).strip()
        if label_text not in ('0', '1'):
            raise DatasetParseError(f"label은 0 또는 1이어야 합니다: {label_text!r}", line=line)

        scores.append(score)
        labels.append(int(label_text))

    ds = ScoredDataset(scores=scores, labels=labels)
    logger.info(f"데이터셋 로드: {path} - N={ds.n_total}, p={ds.n_pos}, n={ds.n_neg}")
    return ds


def save_dataset(ds: ScoredDataset, path: str) -> None:
    _ensure_parent(path)
    dataset_to_frame(ds).to_csv(path, index=False, lineterminator='\n')


def load_labeled_jsonl(path: str) -> List[Example]:
    """
    JSON-lines 로드: {"scores": [...], "true_class": k} (다중 클래스)
    또는 {"scores": [...], "labels": [0/1, ...]} (다중 레이블)
    """
    examples: List[Example] = []
    with open(path, 'r', encoding='utf-8') as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise DatasetParseError(f"JSON 파싱 실패: {e.msg}", line=line_no)
            if not isinstance(obj, dict) or 'scores' not in obj:
                raise DatasetParseError("'scores' 키가 있는 객체여야 합니다", line=line_no)

            try:
                if 'true_class' in obj:
                    examples.append(MulticlassScoredExample(tuple(obj['scores']), obj['true_class']))
                elif 'labels' in obj:
                    examples.append(MultilabelScoredExample(tuple(obj['scores']), tuple(obj['labels'])))
                else:
                    raise DatasetParseError("'true_class' 또는 'labels' 키가 필요합니다", line=line_no)
            except DatasetParseError as e:
                if e.line is not None:
                    raise
                raise type(e)(str(e), line=line_no)
            except (TypeError, ValueError) as e:
                raise DatasetParseError(f"값 형식 오류: {e}", line=line_no)

    if examples and len({type(e) for e in examples}) > 1:
        raise DatasetParseError("true_class 형식과 labels 형식을 섞을 수 없습니다")
    logger.info(f"JSON-lines 로드: {path} - {len(examples)}개 예제")
    return examples


def _rate(value) -> Optional[float]:
    return None if value is UNDEFINED else float(value)


@dataclass(frozen=True)
class Report:
    """F1 기준 vs C_score 기준 임계값 비교 리포트"""

    n_total: int
    n_pos: int
    n_neg: int
    base_rate: float
    digest: str
    f1_choice: ThresholdChoice
    cost_choices: Tuple[ThresholdChoice, ...]
    improvements: ImprovementReport
    version: str = __version__
    c_fp: Optional[float] = None


def build_report(ds: ScoredDataset, ratios: Iterable[Union[CostRatio, float]], digest: str,
                 c_fp: Optional[float] = None) -> Report:
    """데이터셋과 비용 비율 목록으로 비교 리포트 생성"""
    if c_fp is not None and (not math.isfinite(c_fp) or c_fp <= 0):
        raise MetricDomainError(f"c_fp는 양수여야 합니다: {c_fp}")
    ratios = list(ratios)
    sr = sweep(ds, ratios)
    improvements = improvement_report(sr, ratios)
    return Report(
        n_total=ds.n_total,
        n_pos=ds.n_pos,
        n_neg=ds.n_neg,
        base_rate=ds.base_rate,
        digest=digest,
        f1_choice=best_f1_threshold(sr),
        cost_choices=tuple(entry.cost_choice for entry in improvements.entries),
        improvements=improvements,
        c_fp=c_fp,
    )


def _dataset_block(n_total: int, n_pos: int, n_neg: int, base_rate: float, digest: str) -> Dict[str, Any]:
    return {'n': n_total, 'p': n_pos, 'neg': n_neg, 'base_rate': base_rate, 'digest': digest}


def report_to_dict(report: Report) -> Dict[str, Any]:
    f1_metrics = report.f1_choice.point.metrics
    improvements = []
    for entry in report.improvements.entries:
        item = {
            'ratio': entry.ratio.value,
            'cscore_at_f1': entry.cscore_at_f1,
            'cscore_at_opt': entry.cscore_at_opt,
            'improvement_pct': entry.improvement_pct,
        }
        if report.c_fp is not None:
            item['total_cost_at_f1'] = total_cost(entry.f1_choice.point.cm, report.c_fp, entry.ratio)
            item['total_cost_at_opt'] = total_cost(entry.cost_choice.point.cm, report.c_fp, entry.ratio)
        improvements.append(item)

    return {
        'dataset': _dataset_block(report.n_total, report.n_pos, report.n_neg, report.base_rate, report.digest),
        'f1_choice': {
            'threshold': report.f1_choice.threshold,
            'precision': _rate(f1_metrics.precision),
            'recall': f1_metrics.recall,
            'f1': f1_metrics.f1,
        },
        'cost_choices': [
            {
                'ratio': choice.ratio.value,
                'threshold': choice.threshold,
                'precision': _rate(choice.point.metrics.precision),
                'recall': choice.point.metrics.recall,
                'cscore': choice.point.cscores[choice.ratio],
            }
            for choice in report.cost_choices
        ],
        'improvements': improvements,
        'version': report.version,
    }


def _fmt(value: Optional[float]) -> str:
    if value is None or value is UNDEFINED:
        return '-'
    return f"{float(value):.{config.SIG_DIGITS}g}"


def _render_table(report: Report) -> str:
    table = Table(
        title=f"C_score 비용 비교 (N={report.n_total}, p={report.n_pos}, n={report.n_neg}, "
              f"base_rate={_fmt(report.base_rate)})",
        box=box.ASCII,
    )
    for header in ('Cost ratio', 'F1 threshold', 'Precision', 'Recall', 'C_score',
                   'C_score threshold', 'Precision', 'Recall', 'C_score', 'Improvement'):
        table.add_column(header, justify='right')

    f1_metrics = report.f1_choice.point.metrics
    for entry in report.improvements.entries:
        opt_metrics = entry.cost_choice.point.metrics
        table.add_row(
            _fmt(entry.ratio.value),
            _fmt(entry.f1_threshold),
            _fmt(_rate(f1_metrics.precision)),
            _fmt(f1_metrics.recall),
            _fmt(entry.cscore_at_f1),
            _fmt(entry.cscore_threshold),
            _fmt(_rate(opt_metrics.precision)),
            _fmt(opt_metrics.recall),
            _fmt(entry.cscore_at_opt),
            f"{_fmt(entry.improvement_pct)}%",
        )

    buffer = io.StringIO()
    console = Console(file=buffer, width=200, color_system=None, force_terminal=False,
                      highlight=False, emoji=False, legacy_windows=False)
    console.print(table)
    console.print(f"version {report.version} / digest {report.digest}")
    return buffer.getvalue()


def render_report(report: Report, fmt: str = 'json') -> str:
    """리포트를 json 또는 table 텍스트로 렌더링 (같은 리포트 → 같은 바이트)"""
    if fmt == 'json':
        return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + '\n'
    if fmt == 'table':
        return _render_table(report)
    raise ValueError(f"지원하지 않는 형식: {fmt}")


def choice_to_dict(choice: ThresholdChoice) -> Dict[str, Any]:
    pt = choice.point
    data: Dict[str, Any] = {
        'objective': choice.objective,
        'ratio': choice.ratio.value if choice.ratio is not None else None,
        'threshold': choice.threshold,
        **pt.cm.as_dict(),
        'precision': _rate(pt.metrics.precision),
        'recall': pt.metrics.recall,
        'f1': pt.metrics.f1,
    }
    if choice.ratio is not None:
        data['cscore'] = pt.cscores[choice.ratio]
    return data


def sweep_to_dict(sr: SweepResult, digest: str) -> Dict[str, Any]:
    base_rate = sr.n_pos / sr.n_total
    return {
        'dataset': _dataset_block(sr.n_total, sr.n_pos, sr.n_neg, base_rate, digest),
        'ratios': [rc.value for rc in sr.ratios],
        'points': [
            {
                'threshold': pt.threshold,
                **pt.cm.as_dict(),
                'precision': _rate(pt.metrics.precision),
                'recall': pt.metrics.recall,
                'fpr': _rate(pt.metrics.fpr),
                'f1': pt.metrics.f1,
                'cscores': [{'ratio': rc.value, 'cscore': pt.cscores[rc]} for rc in sr.ratios],
            }
            for pt in sr.points
        ],
        'version': __version__,
    }


def curves_frame(curves: Sequence[Union[IsocostCurve, F1Isocurve]]) -> pd.DataFrame:
    """등고선 목록을 level, recall, precision 열의 DataFrame으로 변환"""
    rows = [
        {'level': curve.level, 'recall': recall, 'precision': precision}
        for curve in curves
        for recall, precision in curve.points
    ]
    return pd.DataFrame(rows, columns=['level', 'recall', 'precision'])


def ratio_sweep_frame(entries: Sequence[Tuple[float, float]]) -> pd.DataFrame:
    return pd.DataFrame(list(entries), columns=['log10_ratio', 'improvement_pct'])


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def write_frame(frame: pd.DataFrame, path: str) -> None:
    """DataFrame을 CSV로 저장 (NaN은 빈 칸)"""
    _ensure_parent(path)
    frame.to_csv(path, index=False, lineterminator='\n')
    logger.info(f"CSV 저장: {path} ({len(frame)}행)")


def write_json(data: Dict[str, Any], path: str) -> None:
    _ensure_parent(path)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(json.dumps(data, indent=2, ensure_ascii=False) + '\n')
    logger.info(f"JSON 저장: {path}")
