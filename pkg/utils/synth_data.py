#!/usr/bin/env python3
"""
합성 점수 데이터 생성기

생성 절차 (시드와 설정이 같으면 비트 단위로 같은 결과):
1) 양성 수 = floor(n * positive_fraction + 0.5), 앞쪽 인덱스부터 양성
2) numpy PCG64(seed) 에서 표준정규 n개를 뽑아 [-3, 3] 으로 절단
3) 각 클래스의 앞쪽 floor(noise_overlap * 클래스 크기 + 0.5) 개는 반대 모드에 배치
4) score = clip(모드 중심 + spread * z, 0, 1),
   모드 중심은 0.5 ± separation / 2 (양성 = 높은 모드)
5) 같은 생성기로 permutation 을 뽑아 순서를 섞음

z 는 noise_overlap 과 무관하게 먼저 뽑으므로 noise_overlap 이 커지면
추가로 반대 모드에 놓이는 예제만 바뀐다.
"""

import math
from dataclasses import dataclass

import numpy as np

from common.errors import ConfigError
from common.logger import get_logger
from utils.threshold_sweep import ScoredDataset

logger = get_logger('synth_data')

TRUNCATE_Z = 3.0


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


@dataclass(frozen=True)
class SynthConfig:
    n: int
    positive_fraction: float
    separation: float
    noise_overlap: float
    seed: int
    spread: float = 0.1

    def __post_init__(self):
        for name in ('positive_fraction', 'separation', 'noise_overlap', 'spread'):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name}는 유한값이어야 합니다: {getattr(self, name)}")
        if int(self.n) != self.n or self.n < 2:
            raise ConfigError(f"n은 2 이상의 정수여야 합니다: {self.n}")
        if not 0.0 < self.positive_fraction < 1.0:
            raise ConfigError(f"positive_fraction은 (0, 1) 범위여야 합니다: {self.positive_fraction}")
        if self.separation <= 0:
            raise ConfigError(f"separation은 양수여야 합니다: {self.separation}")
        if not 0.0 <= self.noise_overlap <= 1.0:
            raise ConfigError(f"noise_overlap은 [0, 1] 범위여야 합니다: {self.noise_overlap}")
        if self.spread <= 0:
            raise ConfigError(f"spread는 양수여야 합니다: {self.spread}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise ConfigError(f"seed는 음이 아닌 정수여야 합니다: {self.seed}")
        if self.n_pos < 1:
            raise ConfigError(f"양성 수가 0입니다 (n={self.n}, positive_fraction={self.positive_fraction})")

    @property
    def n_pos(self) -> int:
        return _round_half_up(self.n * self.positive_fraction)


def generate(cfg: SynthConfig) -> ScoredDataset:
    """설정으로부터 이봉(bimodal) 점수 데이터셋 생성"""
    rng = np.random.Generator(np.random.PCG64(int(cfg.seed)))
    n = int(cfg.n)
    n_pos = cfg.n_pos
    n_neg = n - n_pos

    labels = np.zeros(n, dtype=np.int8)
    labels[:n_pos] = 1

    z = np.clip(rng.standard_normal(n), -TRUNCATE_Z, TRUNCATE_Z)

    # 높은 모드에 배치되는지 여부
    high = labels.astype(bool)
    swap_pos = _round_half_up(cfg.noise_overlap * n_pos)
    swap_neg = _round_half_up(cfg.noise_overlap * n_neg)
    high[:swap_pos] = False
    high[n_pos:n_pos + swap_neg] = True

    centers = np.where(high, 0.5 + cfg.separation / 2.0, 0.5 - cfg.separation / 2.0)
    scores = np.clip(centers + cfg.spread * z, 0.0, 1.0)

    order = rng.permutation(n)
    logger.info(f"합성 데이터 생성: n={n}, 양성={n_pos}, 반대 모드 배치 양성={swap_pos}/음성={swap_neg}, seed={cfg.seed}")
    return ScoredDataset(scores=scores[order], labels=labels[order])
