#!/usr/bin/env python3
"""
지표 모듈 테스트
혼동 행렬 지표, F1 비용, C_score 세 가지 계산식의 예제값과 성질 검증
"""

import math
import os
import sys
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

# 프로젝트 루트 디렉토리를 Python 경로에 추가
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from common.errors import DegenerateDatasetError, MetricDomainError
from utils.metrics_core import (
    UNDEFINED,
    ConfusionMatrix,
    CostRatio,
    basic_metrics,
    cscore_counts,
    cscore_pr,
    cscore_rates,
    f1_cost,
    f1_from_counts,
    f1_from_pr,
    is_defined,
    total_cost,
)

REL_TOL = 1e-12


def confusion_matrices(min_p=1, min_pred=0, min_n=0, min_tp=0):
    """0~1000 정수 카운트의 혼동 행렬 전략"""
    counts = st.integers(min_value=0, max_value=1000)
    return st.tuples(counts, counts, counts, counts).map(lambda c: ConfusionMatrix(*c)).filter(
        lambda cm: cm.p >= min_p and cm.predicted_positive >= min_pred and cm.n >= min_n and cm.tp >= min_tp
    )


cost_ratios = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)


class TestCostRatio(unittest.TestCase):
    """비용 비율 타입 테스트"""

    def test_positive_finite_only(self):
        """0, 음수, 무한대는 거부"""
        for bad in (0, -1, float('inf'), float('nan')):
            with self.subTest(value=bad):
                with self.assertRaises(MetricDomainError):
                    CostRatio(bad)

    def test_equal_values_are_same_key(self):
        """같은 값은 같은 dict 키"""
        table = {CostRatio(0.1): 'a'}
        self.assertEqual(table[CostRatio(0.1)], 'a')
        self.assertEqual(CostRatio.of(2), CostRatio(2.0))
        self.assertEqual(str(CostRatio(0.1)), '0.1')


class TestBasicMetrics(unittest.TestCase):
    """기본 지표 계산 테스트"""

    def test_count_arithmetic(self):
        """(8, 2, 2, 88) 행렬의 지표"""
        m = basic_metrics(ConfusionMatrix(tp=8, fp=2, fn=2, tn=88))
        self.assertAlmostEqual(m.precision, 0.8)
        self.assertAlmostEqual(m.recall, 0.8)
        self.assertAlmostEqual(m.fpr, 2 / 90)
        self.assertAlmostEqual(m.tnr, 88 / 90)
        self.assertAlmostEqual(m.f1, 0.8)
        self.assertAlmostEqual(m.base_rate, 0.1)
        self.assertAlmostEqual(m.fdr, 0.2)

    def test_perfect_classifier(self):
        """완벽한 분류기"""
        m = basic_metrics(ConfusionMatrix(tp=10, fp=0, fn=0, tn=90))
        self.assertEqual(m.precision, 1.0)
        self.assertEqual(m.recall, 1.0)
        self.assertEqual(m.f1, 1.0)

    def test_all_negative_prediction(self):
        """예측 양성이 없으면 precision은 UNDEFINED, F1은 0"""
        m = basic_metrics(ConfusionMatrix(tp=0, fp=0, fn=10, tn=90))
        self.assertIs(m.precision, UNDEFINED)
        self.assertIs(m.fdr, UNDEFINED)
        self.assertFalse(is_defined(m.precision))
        self.assertEqual(m.recall, 0.0)
        self.assertEqual(m.f1, 0.0)

    def test_no_negatives(self):
        """실제 음성이 없으면 FPR/TNR은 UNDEFINED"""
        m = basic_metrics(ConfusionMatrix(tp=3, fp=0, fn=1, tn=0))
        self.assertIs(m.fpr, UNDEFINED)
        self.assertIs(m.tnr, UNDEFINED)

    def test_no_positives_rejected(self):
        """p = 0 이면 오류"""
        with self.assertRaises(DegenerateDatasetError):
            basic_metrics(ConfusionMatrix(tp=0, fp=3, fn=0, tn=7))

    def test_negative_count_rejected(self):
        with self.assertRaises(MetricDomainError):
            ConfusionMatrix(tp=-1, fp=0, fn=1, tn=0)

    def test_f1_from_pr(self):
        """precision 0.949, recall 0.961 의 조화평균"""
        self.assertAlmostEqual(f1_from_pr(0.949, 0.961), 0.954962, places=6)
        self.assertEqual(f1_from_pr(0.0, 0.0), 0.0)

    @given(confusion_matrices(min_pred=1))
    def test_f1_forms_agree(self, cm):
        """카운트 F1과 PR 조화평균 F1 일치"""
        m = basic_metrics(cm)
        self.assertTrue(math.isclose(f1_from_counts(cm), f1_from_pr(m.precision, m.recall),
                                     rel_tol=1e-12, abs_tol=1e-15))


class TestF1Cost(unittest.TestCase):
    """F1 비용 변환 테스트"""

    def test_examples(self):
        self.assertEqual(f1_cost(1.0), 0.0)
        self.assertEqual(f1_cost(0.5), 1.0)
        self.assertAlmostEqual(f1_cost(0.95496), 0.04717, delta=1e-5)

    def test_zero_diverges(self):
        """F1 = 0 은 명시적 오류"""
        with self.assertRaises(MetricDomainError):
            f1_cost(0.0)

    def test_out_of_range(self):
        with self.assertRaises(MetricDomainError):
            f1_cost(1.5)


class TestCScoreForms(unittest.TestCase):
    """C_score 계산식 예제값"""

    def test_pr_form_reference_values(self):
        """공개된 precision/recall 값에서의 C_score"""
        self.assertAlmostEqual(cscore_pr(0.949, 0.961, 1), 0.091, delta=0.002)
        self.assertAlmostEqual(cscore_pr(0.992, 0.868, 0.1), 0.020, delta=0.002)
        self.assertAlmostEqual(cscore_pr(0.815, 0.781, 10), 2.365, delta=0.005)

    def test_pr_form_perfect(self):
        for rc in (0.01, 1, 100):
            with self.subTest(rc=rc):
                self.assertEqual(cscore_pr(1.0, 1.0, rc), 0.0)

    def test_recall_zero_limit(self):
        """recall = 0 이면 precision과 무관하게 r_c"""
        for precision in (UNDEFINED, 0.0, 0.3, 1.0):
            with self.subTest(precision=precision):
                self.assertEqual(cscore_pr(precision, 0.0, 7.5), 7.5)

    def test_pr_form_subnormal_precision(self):
        """precision 과 recall 이 비정규 수여도 유한한 값"""
        self.assertAlmostEqual(cscore_pr(1e-310, 1e-310, 1), 2.0)
        self.assertAlmostEqual(cscore_pr(2e-311, 1e-310, 0.5), 5.5)

    def test_pr_form_domain(self):
        """precision = 0 또는 UNDEFINED 이면서 recall > 0"""
        with self.assertRaises(MetricDomainError):
            cscore_pr(0.0, 0.5, 1)
        with self.assertRaises(MetricDomainError):
            cscore_pr(UNDEFINED, 0.5, 1)
        with self.assertRaises(MetricDomainError):
            cscore_pr(0.5, 1.2, 1)

    def test_counts_form(self):
        cm = ConfusionMatrix(tp=8, fp=2, fn=2, tn=88)
        self.assertAlmostEqual(cscore_counts(cm, 1), 0.4)
        self.assertAlmostEqual(cscore_counts(cm, 1), cscore_pr(0.8, 0.8, 1))

    def test_counts_form_endpoints(self):
        """전부 음성 예측 → r_c, 전부 양성 예측 → n/p (r_c 무관)"""
        p, n = 7, 93
        for rc in (0.001, 0.1, 1, 10, 1000):
            with self.subTest(rc=rc):
                self.assertEqual(cscore_counts(ConfusionMatrix(0, 0, p, n), rc), rc)
                self.assertEqual(cscore_counts(ConfusionMatrix(p, n, 0, 0), rc), n / p)

    def test_counts_form_degenerate(self):
        with self.assertRaises(DegenerateDatasetError):
            cscore_counts(ConfusionMatrix(0, 1, 0, 1), 1)

    def test_rates_form(self):
        self.assertAlmostEqual(cscore_rates(0.8, 2 / 90, 0.1, 1), 0.04)
        self.assertEqual(cscore_rates(1.0, 0.0, 0.1, 3), 0.0)
        self.assertAlmostEqual(cscore_rates(0.0, 0.0, 0.2, 10), 2.0)

    def test_rates_form_domain(self):
        with self.assertRaises(MetricDomainError):
            cscore_rates(0.5, 0.1, 0.0, 1)
        with self.assertRaises(MetricDomainError):
            cscore_rates(1.1, 0.1, 0.5, 1)

    def test_total_cost(self):
        self.assertEqual(total_cost(ConfusionMatrix(8, 2, 2, 88), 100, 1), 400)
        self.assertEqual(total_cost(ConfusionMatrix(5, 0, 0, 5), 37, 9), 0)
        self.assertAlmostEqual(total_cost(ConfusionMatrix(4, 3, 1, 2), 10, 0.1), 31)
        with self.assertRaises(MetricDomainError):
            total_cost(ConfusionMatrix(4, 3, 1, 2), 0, 1)


class TestCScoreProperties(unittest.TestCase):
    """무작위 혼동 행렬에 대한 C_score 성질"""

    def test_pr_form_equivalence_bulk(self):
        """무작위 행렬 10^4개에서 PR 형식 = 카운트 형식"""
        rng = np.random.default_rng(20240601)
        checked = 0
        while checked < 10000:
            tp, fp, fn, tn = (int(v) for v in rng.integers(0, 1001, size=4))
            cm = ConfusionMatrix(tp, fp, fn, tn)
            # precision = 0 (TP = 0, FP > 0) 은 PR 형식의 정의역 밖
            if cm.tp < 1:
                continue
            rc = float(10.0 ** rng.uniform(-3, 3))
            m = basic_metrics(cm)
            expected = cscore_counts(cm, rc)
            self.assertTrue(
                math.isclose(cscore_pr(m.precision, m.recall, rc), expected, rel_tol=REL_TOL),
                f"{cm}, rc={rc}",
            )
            checked += 1

    @given(confusion_matrices(min_tp=1), cost_ratios)
    def test_pr_form_equivalence(self, cm, rc):
        m = basic_metrics(cm)
        self.assertTrue(math.isclose(cscore_pr(m.precision, m.recall, rc), cscore_counts(cm, rc),
                                     rel_tol=REL_TOL))

    @given(confusion_matrices(min_n=1), cost_ratios)
    def test_rates_form_equivalence(self, cm, rc):
        """비율 형식 = 기저율 * 카운트 형식"""
        m = basic_metrics(cm)
        lhs = cscore_rates(m.recall, m.fpr, m.base_rate, rc)
        rhs = m.base_rate * cscore_counts(cm, rc)
        self.assertTrue(math.isclose(lhs, rhs, rel_tol=REL_TOL))

    @given(confusion_matrices(), cost_ratios)
    def test_non_negative(self, cm, rc):
        value = cscore_counts(cm, rc)
        self.assertGreaterEqual(value, 0.0)
        self.assertEqual(value == 0.0, cm.fp == 0 and cm.fn == 0)

    @given(confusion_matrices(), cost_ratios,
           st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False))
    def test_scale_invariance(self, cm, rc, factor):
        self.assertTrue(math.isclose(cscore_counts(cm.scaled(factor), rc), cscore_counts(cm, rc),
                                     rel_tol=REL_TOL, abs_tol=1e-300))

    @given(confusion_matrices())
    def test_unit_ratio_counts_errors(self, cm):
        """r_c = 1 에서 C_score * p = 전체 오류 수"""
        self.assertTrue(math.isclose(cscore_counts(cm, 1) * cm.p, cm.fp + cm.fn,
                                     rel_tol=REL_TOL, abs_tol=1e-12))

    @given(confusion_matrices().filter(lambda cm: cm.tp >= 1))
    def test_f1_cost_counts_form(self, cm):
        """F1 비용 = (FP + FN) / (2TP)"""
        self.assertTrue(math.isclose(f1_cost(f1_from_counts(cm)), (cm.fp + cm.fn) / (2 * cm.tp),
                                     rel_tol=REL_TOL, abs_tol=1e-15))

    @settings(max_examples=50)
    @given(confusion_matrices(), cost_ratios,
           st.floats(min_value=0.01, max_value=1e4, allow_nan=False, allow_infinity=False))
    def test_total_cost_relation(self, cm, rc, c_fp):
        """총 비용 = C_FP * p * C_score"""
        self.assertTrue(math.isclose(total_cost(cm, c_fp, rc), c_fp * cm.p * cscore_counts(cm, rc),
                                     rel_tol=1e-12, abs_tol=1e-9))

    def test_equal_cost_different_f1_cost(self):
        """r_c = 1 에서 C_score는 같고 F1 비용은 다른 두 행렬"""
        a = ConfusionMatrix(tp=8, fp=2, fn=2, tn=88)
        b = ConfusionMatrix(tp=10, fp=4, fn=0, tn=86)
        self.assertAlmostEqual(cscore_counts(a, 1), cscore_counts(b, 1))
        self.assertNotAlmostEqual(f1_cost(f1_from_counts(a)), f1_cost(f1_from_counts(b)))


if __name__ == "__main__":
    unittest.main()
