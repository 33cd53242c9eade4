#!/usr/bin/env python3
"""
C_score 명령행 도구
- sweep / choose / compare : 임계값 스윕, 임계값 선택, F1 기준 대비 비용 비교
- ratio-sweep              : log10 비용 비율별 개선율
- isocost / f1-curves      : PR 공간 등고선 데이터
- isocost-point            : 등고선 위 한 점의 precision, 기울기, 기울기 부호
- synth                    : 합성 점수 데이터셋
- multiclass               : 클래스별 C_score와 집계
- histogram / pr-curve     : 점수 분포, PR 곡선 데이터

종료 코드: 0 성공, 2 입력 파싱/검증 실패, 3 양성 없는 데이터셋, 4 실현 불가능한 기하 요청
"""

import argparse
import json
import os
import sys
from typing import List, Optional

from rich.console import Console

# 프로젝트 루트 디렉토리를 Python 경로에 추가
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from common.config import config
from common.errors import CostScoreError, UsageError
from common.logger import get_logger
from utils import __version__
from utils.isocost_geometry import (
    cscore_slope,
    f1_isocurve_precision,
    f1_slope,
    isocost_precision,
    sample_f1_isocurve,
    sample_isocost,
    slope_sign,
)
from utils.multiclass import (
    AGGREGATIONS,
    AggregationMethod,
    ClassCostProfile,
    aggregate,
    per_class_cscores,
    per_class_min_cost_thresholds,
)
from utils.report_io import (
    build_report,
    choice_to_dict,
    curves_frame,
    file_digest,
    load_dataset,
    load_labeled_jsonl,
    ratio_sweep_frame,
    render_report,
    save_dataset,
    sweep_to_dict,
    write_frame,
    write_json,
)
from utils.synth_data import SynthConfig, generate
from utils.threshold_sweep import (
    best_f1_threshold,
    min_cost_threshold,
    pr_curve,
    ratio_sweep,
    score_histogram,
    sweep,
    sweep_frame,
)

logger = get_logger('cli')

# 결과는 stdout, 진행 메시지는 stderr
console = Console(stderr=True)


def float_list(text: str) -> List[float]:
    """'0.1,1,10' → [0.1, 1.0, 10.0]"""
    try:
        values = config.parse_ratio_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"숫자 목록이 아닙니다: {text}")
    if not values:
        raise argparse.ArgumentTypeError("빈 목록입니다")
    return values


def _emit(text: str, out: Optional[str] = None) -> None:
    if out:
        os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text)
        console.print(f"💾 저장 완료: {out}")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def cmd_sweep(args) -> int:
    ds = load_dataset(args.input)
    sr = sweep(ds, args.ratios)
    write_json(sweep_to_dict(sr, file_digest(args.input)), args.out)
    console.print(f"✅ 스윕 완료: 임계값 {len(sr)}개 → {args.out}")
    if args.points:
        write_frame(sweep_frame(sr, log_cscore=args.log_cscore), args.points)
        console.print(f"💾 포인트 CSV: {args.points}")
    return 0


def cmd_choose(args) -> int:
    ds = load_dataset(args.input)
    if args.objective == 'f1':
        sr = sweep(ds, config.get_default_ratios())
        choice = best_f1_threshold(sr)
    else:
        if args.ratio is None:
            raise UsageError("--objective cscore 에는 --ratio 가 필요합니다")
        sr = sweep(ds, [args.ratio])
        choice = min_cost_threshold(sr, args.ratio)
    _emit(json.dumps(choice_to_dict(choice), indent=2, ensure_ascii=False) + '\n')
    return 0


def cmd_compare(args) -> int:
    ds = load_dataset(args.input)
    report = build_report(ds, args.ratios, file_digest(args.input), c_fp=args.c_fp)
    _emit(render_report(report, args.format), args.out)
    return 0


def cmd_ratio_sweep(args) -> int:
    ds = load_dataset(args.input)
    entries = ratio_sweep(ds, args.log10_min, args.log10_max, args.steps)
    write_frame(ratio_sweep_frame(entries), args.out)
    console.print(f"✅ 비용 비율 스윕 완료: {len(entries)}단계 → {args.out}")
    return 0


def cmd_isocost(args) -> int:
    curves = [sample_isocost(level, args.ratio, args.points) for level in args.levels]
    write_frame(curves_frame(curves), args.out)
    console.print(f"✅ 등비용 곡선 {len(curves)}개 → {args.out}")
    return 0


def cmd_f1_curves(args) -> int:
    curves = [sample_f1_isocurve(level, args.points) for level in args.levels]
    write_frame(curves_frame(curves), args.out)
    console.print(f"✅ F1 등고선 {len(curves)}개 → {args.out}")
    return 0


def cmd_isocost_point(args) -> int:
    if args.f1 is not None and (args.ratio is not None or args.level is not None):
        raise UsageError("--f1 은 --ratio / --level 과 함께 쓸 수 없습니다")
    if args.f1 is not None:
        data = {
            'curve': 'f1',
            'level': args.f1,
            'recall': args.recall,
            'precision': f1_isocurve_precision(args.recall, args.f1),
            'slope': f1_slope(args.recall, args.f1),
        }
    else:
        if args.ratio is None or args.level is None:
            raise UsageError("--f1 또는 --ratio 와 --level 이 필요합니다")
        data = {
            'curve': 'cscore',
            'ratio': args.ratio,
            'level': args.level,
            'recall': args.recall,
            'precision': isocost_precision(args.recall, args.level, args.ratio),
            'slope': cscore_slope(args.recall, args.level, args.ratio),
            'slope_sign': slope_sign(args.level, args.ratio).value,
        }
    _emit(json.dumps(data, indent=2, ensure_ascii=False) + '\n')
    return 0


def cmd_synth(args) -> int:
    cfg = SynthConfig(
        n=args.n,
        positive_fraction=args.positive_fraction,
        separation=args.separation,
        noise_overlap=args.noise_overlap,
        seed=args.seed,
        spread=args.spread,
    )
    ds = generate(cfg)
    save_dataset(ds, args.out)
    console.print(f"✅ 합성 데이터 저장: N={ds.n_total}, p={ds.n_pos} → {args.out}")
    return 0


def cmd_multiclass(args) -> int:
    examples = load_labeled_jsonl(args.input)
    profile = ClassCostProfile.from_list(args.ratios)

    if args.thresholds is not None:
        thresholds = dict(enumerate(args.thresholds))
    elif args.optimize:
        choices = per_class_min_cost_thresholds(examples, profile)
        thresholds = {c: choice.threshold for c, choice in choices.items()}
    else:
        raise UsageError("--thresholds 또는 --optimize 중 하나가 필요합니다")

    if args.aggregate == 'weighted':
        if args.weights is None:
            raise UsageError("weighted 집계에는 --weights 가 필요합니다")
        method = AggregationMethod.weighted(args.weights)
    else:
        method = AggregationMethod(args.aggregate)

    values = per_class_cscores(examples, profile, thresholds)
    result = {
        'classes': [
            {'class': c, 'ratio': profile[c].value, 'threshold': thresholds[c], 'cscore': value}
            for c, value in enumerate(values)
        ],
        'aggregate': {'method': method.kind, 'value': aggregate(values, method)},
        'version': __version__,
    }
    _emit(json.dumps(result, indent=2, ensure_ascii=False) + '\n', args.out)
    return 0


def cmd_histogram(args) -> int:
    ds = load_dataset(args.input)
    write_frame(score_histogram(ds, args.bins), args.out)
    console.print(f"✅ 점수 히스토그램 ({args.bins}구간) → {args.out}")
    return 0


def cmd_pr_curve(args) -> int:
    ds = load_dataset(args.input)
    sr = sweep(ds, args.ratios)
    choices = [best_f1_threshold(sr)] + [min_cost_threshold(sr, r) for r in sr.ratios]
    write_frame(pr_curve(sr, choices), args.out)
    console.print(f"✅ PR 곡선 → {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='cscore',
        description='비용 인지 C_score 평가 및 임계값 선택 도구',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    default_ratios = config.DEFAULT_RATIOS

    p = sub.add_parser('sweep', help='전체 임계값 스윕 (JSON + 선택적 포인트 CSV)')
    p.add_argument('--input', required=True, help='score,label CSV')
    p.add_argument('--ratios', type=float_list, default=float_list(default_ratios), help='비용 비율 목록')
    p.add_argument('--out', required=True, help='스윕 JSON 경로')
    p.add_argument('--points', help='임계값별 지표 CSV 경로')
    p.add_argument('--log-cscore', action='store_true', help='log10 C_score 열 추가')
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser('choose', help='목적 함수별 임계값 선택')
    p.add_argument('--input', required=True)
    p.add_argument('--objective', choices=['f1', 'cscore'], required=True)
    p.add_argument('--ratio', type=float, help='cscore 목적의 비용 비율')
    p.set_defaults(func=cmd_choose)

    p = sub.add_parser('compare', help='F1 기준 vs C_score 기준 비용 비교')
    p.add_argument('--input', required=True)
    p.add_argument('--ratios', type=float_list, default=float_list(default_ratios))
    p.add_argument('--format', choices=['json', 'table'], default='json')
    p.add_argument('--c-fp', type=float, help='오탐 1건 비용 (총 비용 열 추가)')
    p.add_argument('--out', help='출력 파일 (기본: stdout)')
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser('ratio-sweep', help='log10 비용 비율별 개선율')
    p.add_argument('--input', required=True)
    p.add_argument('--log10-min', type=float, required=True)
    p.add_argument('--log10-max', type=float, required=True)
    p.add_argument('--steps', type=int, required=True)
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_ratio_sweep)

    p = sub.add_parser('isocost', help='C_score 등비용 곡선')
    p.add_argument('--ratio', type=float, required=True)
    p.add_argument('--levels', type=float_list, required=True)
    p.add_argument('--points', type=int, default=config.ISO_POINTS)
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_isocost)

    p = sub.add_parser('f1-curves', help='F1 등고선')
    p.add_argument('--levels', type=float_list, required=True)
    p.add_argument('--points', type=int, default=config.ISO_POINTS)
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_f1_curves)

    p = sub.add_parser('isocost-point', help='등고선 위 한 점의 precision과 기울기')
    p.add_argument('--recall', type=float, required=True)
    p.add_argument('--ratio', type=float, help='C_score 등비용 곡선의 비용 비율')
    p.add_argument('--level', type=float, help='C_score 수준')
    p.add_argument('--f1', type=float, help='F1 등고선 값 (--ratio / --level 과 함께 쓸 수 없음)')
    p.set_defaults(func=cmd_isocost_point)

    p = sub.add_parser('synth', help='합성 점수 데이터셋 생성')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--positive-fraction', type=float, required=True)
    p.add_argument('--separation', type=float, required=True)
    p.add_argument('--noise-overlap', type=float, required=True)
    p.add_argument('--seed', type=int, required=True)
    p.add_argument('--spread', type=float, default=0.1)
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser('multiclass', help='클래스별 C_score와 집계')
    p.add_argument('--input', required=True, help='JSON-lines (scores + true_class 또는 labels)')
    p.add_argument('--ratios', type=float_list, required=True, help='클래스별 비용 비율')
    p.add_argument('--thresholds', type=float_list, help='클래스별 임계값')
    p.add_argument('--optimize', action='store_true', help='클래스별 최소 비용 임계값 사용')
    p.add_argument('--aggregate', choices=list(AGGREGATIONS), default='arithmetic')
    p.add_argument('--weights', type=float_list)
    p.add_argument('--out')
    p.set_defaults(func=cmd_multiclass)

    p = sub.add_parser('histogram', help='클래스별 점수 분포')
    p.add_argument('--input', required=True)
    p.add_argument('--bins', type=int, default=20)
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser('pr-curve', help='PR 곡선과 운영점')
    p.add_argument('--input', required=True)
    p.add_argument('--ratios', type=float_list, default=float_list(default_ratios))
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_pr_curve)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """메인 실행 함수"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not config.validate_config():
        console.print("[yellow]⚠️ 설정값에 문제가 있습니다. 로그를 확인하세요.[/yellow]")

    try:
        return args.func(args)
    except CostScoreError as e:
        logger.error(f"{args.command} 실패: {e}")
        console.print(f"[red]❌ {e}[/red]")
        return e.exit_code
    except OSError as e:
        logger.error(f"{args.command} 파일 오류: {e}")
        console.print(f"[red]❌ 파일 오류: {e}[/red]")
        return 2
    except KeyboardInterrupt:
        console.print("\n⚠️ 사용자에 의해 중단되었습니다.")
        return 1


if __name__ == "__main__":
    sys.exit(main())
