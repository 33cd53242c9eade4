#!/usr/bin/env python3
"""
공통 로깅 유틸리티
스윕/임계값 선택/리포트 실행 시 일관된 로그 형식과 레벨을 제공
"""

import logging
import os
from datetime import datetime

from common.config import config


class Logger:
    """통합 로깅 관리자"""

    _instance = None
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(Logger, cls).__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            self._setup_logging()
            self._initialized = True

    def _setup_logging(self):
        """로깅 설정 초기화"""
        self.logger = logging.getLogger('costscore')
        self.logger.setLevel(getattr(logging, config.LOG_LEVEL.upper(), logging.INFO))

        # 기존 핸들러 제거 (중복 방지)
        for handler in self.logger.handlers[:]:
            self.logger.removeHandler(handler)

        formatter = logging.Formatter(config.LOG_FORMAT, datefmt=config.LOG_DATE_FORMAT)

        # 파일 핸들러 (날짜별)
        if config.LOG_TO_FILE:
            os.makedirs(config.LOG_DIR, exist_ok=True)
            today = datetime.now().strftime('%Y-%m-%d')
            log_filename = os.path.join(config.LOG_DIR, f'costscore_{today}.log')
            file_handler = logging.FileHandler(log_filename, encoding='utf-8')
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)

        # 콘솔 핸들러 (stdout은 결과 출력용이므로 stderr 사용)
        console_handler = logging.StreamHandler()
        console_handler.setLevel(logging.WARNING)
        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

    def get_logger(self, name: str = None) -> logging.Logger:
        """
        로거 인스턴스 반환

        Args:
            name: 로거 이름 (기본값: None)

        Returns:
            로거 인스턴스
        """
        if name:
            return logging.getLogger(f'costscore.{name}')
        return self.logger

    def log_sweep_done(self, n_points: int, n: int, p: int, ratios, logger_name: str = 'threshold_sweep'):
        """스윕 완료 로그"""
        ratio_text = ', '.join(f"{r:g}" for r in ratios)
        self.get_logger(logger_name).info(
            f"스윕 완료: 임계값 {n_points}개, N={n}, p={p}, 비용 비율=[{ratio_text}]"
        )

    def log_choice(self, objective: str, threshold: float, value: float, logger_name: str = 'threshold_sweep'):
        """임계값 선택 로그"""
        self.get_logger(logger_name).info(
            f"임계값 선택: {objective} - t={threshold:.6g}, 값={value:.6g}"
        )

    def log_improvement(self, ratio: float, at_f1: float, at_opt: float, pct: float,
                        logger_name: str = 'threshold_sweep'):
        """비용 개선율 로그"""
        self.get_logger(logger_name).info(
            f"비용 비교: r_c={ratio:g} - F1 기준 {at_f1:.6g}, 최소 비용 {at_opt:.6g}, 개선 {pct:.2f}%"
        )


# 전역 로거 인스턴스
logger_manager = Logger()


def get_logger(name: str = None) -> logging.Logger:
    """로거 인스턴스 반환 (편의 함수)"""
    return logger_manager.get_logger(name)
