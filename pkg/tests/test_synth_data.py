#!/usr/bin/env python3
"""
합성 점수 데이터 생성기 테스트
"""

import os
import sys
import unittest

import numpy as np

# 프로젝트 루트 디렉토리를 Python 경로에 추가
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from common.errors import ConfigError
from utils.synth_data import SynthConfig, generate
from utils.threshold_sweep import best_f1_threshold, min_cost_threshold, sweep


class TestSynthConfig(unittest.TestCase):
    """설정 검증 테스트"""

    def test_invalid_configs(self):
        base = dict(n=100, positive_fraction=0.2, separation=0.5, noise_overlap=0.1, seed=0)
        bad_values = [
            ('n', 1), ('n', 10.5),
            ('positive_fraction', 0.0), ('positive_fraction', 1.0),
            ('separation', 0.0), ('separation', float('inf')),
            ('noise_overlap', -0.1), ('noise_overlap', 1.5),
            ('seed', -1),
        ]
        for name, value in bad_values:
            with self.subTest(field=name, value=value):
                with self.assertRaises(ConfigError):
                    SynthConfig(**{**base, name: value})

    def test_no_positive_after_rounding(self):
        with self.assertRaises(ConfigError):
            SynthConfig(n=2, positive_fraction=0.2, separation=0.5, noise_overlap=0.0, seed=0)

    def test_half_up_rounding(self):
        cfg = SynthConfig(n=10, positive_fraction=0.25, separation=0.5, noise_overlap=0.0, seed=0)
        self.assertEqual(cfg.n_pos, 3)


class TestGenerate(unittest.TestCase):
    """생성 결과 테스트"""

    def test_deterministic(self):
        cfg = SynthConfig(n=2000, positive_fraction=0.3, separation=0.4, noise_overlap=0.1, seed=123)
        a, b = generate(cfg), generate(cfg)
        self.assertTrue(np.array_equal(a.scores, b.scores))
        self.assertTrue(np.array_equal(a.labels, b.labels))

    def test_seed_changes_output(self):
        a = generate(SynthConfig(n=500, positive_fraction=0.3, separation=0.4, noise_overlap=0.1, seed=1))
        b = generate(SynthConfig(n=500, positive_fraction=0.3, separation=0.4, noise_overlap=0.1, seed=2))
        self.assertFalse(np.array_equal(a.scores, b.scores))

    def test_exact_positive_count(self):
        ds = generate(SynthConfig(n=10000, positive_fraction=0.15, separation=0.5, noise_overlap=0.05, seed=7))
        self.assertEqual(ds.n_total, 10000)
        self.assertEqual(ds.n_pos, 1500)
        self.assertGreaterEqual(float(ds.scores.min()), 0.0)
        self.assertLessEqual(float(ds.scores.max()), 1.0)

    def test_high_mode_for_positives(self):
        ds = generate(SynthConfig(n=1000, positive_fraction=0.4, separation=0.5, noise_overlap=0.0, seed=3))
        self.assertGreater(ds.scores[ds.labels == 1].mean(), ds.scores[ds.labels == 0].mean())

    def test_separable(self):
        """모드 간격이 크고 겹침이 없으면 F1 = 1, 모든 비용 비율에서 최소 C_score = 0"""
        ds = generate(SynthConfig(n=1000, positive_fraction=0.2, separation=0.8, noise_overlap=0.0, seed=11))
        ratios = [0.01, 0.1, 1, 10, 100]
        sr = sweep(ds, ratios)
        self.assertEqual(best_f1_threshold(sr).point.metrics.f1, 1.0)
        for rc in ratios:
            with self.subTest(rc=rc):
                self.assertEqual(min_cost_threshold(sr, rc).point.cscore(rc), 0.0)

    def test_noise_never_improves_f1(self):
        """noise_overlap 증가 시 최대 F1 비증가"""
        noise_grid = [0.0, 0.02, 0.05, 0.1, 0.2, 0.4]
        for seed, separation in ((0, 0.3), (1, 0.5), (2, 0.7)):
            best = []
            for noise in noise_grid:
                cfg = SynthConfig(n=800, positive_fraction=0.25, separation=separation,
                                  noise_overlap=noise, seed=seed)
                best.append(best_f1_threshold(sweep(generate(cfg), [1])).point.metrics.f1)
            with self.subTest(seed=seed, separation=separation):
                self.assertEqual(best, sorted(best, reverse=True))


if __name__ == "__main__":
    unittest.main()
