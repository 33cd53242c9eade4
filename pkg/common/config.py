#!/usr/bin/env python3
"""
공통 설정 관리
환경변수 로드 및 상수값 관리
"""

import math
import os
from typing import List

from dotenv import load_dotenv

# 환경 변수 로드
load_dotenv()


class Config:
    """설정 관리 클래스"""

    # 비용 비율 기본값 (C_FN / C_FP)
    DEFAULT_RATIOS = os.getenv('DEFAULT_RATIOS', '0.1,1,10')

    # 병렬 처리
    MAX_WORKERS = int(os.getenv('MAX_WORKERS', '4'))

    # 출력 형식
    SIG_DIGITS = int(os.getenv('SIG_DIGITS', '6'))
    ISO_POINTS = int(os.getenv('ISO_POINTS', '101'))
    OUTPUT_DIR = os.getenv('OUTPUT_DIR', 'outputs')

    # 센티널 임계값 = 최대 점수 + SENTINEL_OFFSET
    SENTINEL_OFFSET = float(os.getenv('SENTINEL_OFFSET', '1.0'))

    # 로깅 설정
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_DIR = os.getenv('LOG_DIR', 'logs')
    LOG_TO_FILE = os.getenv('LOG_TO_FILE', '1') not in ('0', 'false', 'False', '')
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

    @staticmethod
    def parse_ratio_list(text: str) -> List[float]:
        """'0.1,1,10' 형식 문자열을 float 리스트로 변환"""
        values = []
        for item in text.split(','):
            item = item.strip()
            if item:
                values.append(float(item))
        return values

    @classmethod
    def get_default_ratios(cls) -> List[float]:
        """기본 비용 비율 리스트 반환"""
        return cls.parse_ratio_list(cls.DEFAULT_RATIOS)

    @classmethod
    def validate_config(cls) -> bool:
        """설정 유효성 검사"""
        # 순환 import 방지
        from common.logger import get_logger
        logger = get_logger('config')

        try:
            ratios = cls.get_default_ratios()
        except ValueError:
            logger.warning(f"DEFAULT_RATIOS 파싱 실패: {cls.DEFAULT_RATIOS}")
            return False

        if not ratios or any(not math.isfinite(r) or r <= 0 for r in ratios):
            logger.warning(f"DEFAULT_RATIOS는 양의 유한 실수여야 합니다: {cls.DEFAULT_RATIOS}")
            return False

        if cls.MAX_WORKERS < 1:
            logger.warning(f"MAX_WORKERS는 1 이상이어야 합니다: {cls.MAX_WORKERS}")
            return False

        if not 1 <= cls.SIG_DIGITS <= 17:
            logger.warning(f"SIG_DIGITS 범위 오류: {cls.SIG_DIGITS}")
            return False

        if cls.ISO_POINTS < 2:
            logger.warning(f"ISO_POINTS는 2 이상이어야 합니다: {cls.ISO_POINTS}")
            return False

        if not math.isfinite(cls.SENTINEL_OFFSET) or cls.SENTINEL_OFFSET <= 0:
            logger.warning(f"SENTINEL_OFFSET은 양수여야 합니다: {cls.SENTINEL_OFFSET}")
            return False

        return True


# 전역 설정 인스턴스
config = Config()
