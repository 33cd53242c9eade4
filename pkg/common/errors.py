#!/usr/bin/env python3
"""
공통 예외 정의
라이브러리 모듈이 던지는 오류와 CLI 종료 코드 매핑
"""

from typing import Optional


class CostScoreError(ValueError):
    """모든 도메인 오류의 기본 클래스"""

    exit_code = 1


class MetricDomainError(CostScoreError):
    """지표 함수의 정의역을 벗어난 인자"""

    exit_code = 2


class ConfigError(CostScoreError):
    """설정값 오류 (SynthConfig, 비용 비율 등)"""

    exit_code = 2


class LengthMismatchError(CostScoreError):
    """가중치/값 길이 불일치"""

    exit_code = 2


class UnknownRatioError(CostScoreError):
    """스윕에 포함되지 않은 비용 비율 요청"""

    exit_code = 2


class DatasetParseError(CostScoreError):
    """입력 파일 파싱 오류 (1부터 시작하는 줄 번호 포함)"""

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ScoreRangeError(DatasetParseError):
    """점수가 [0, 1] 범위를 벗어남"""


class DegenerateDatasetError(CostScoreError):
    """양성(또는 해당 클래스) 샘플이 없는 데이터셋"""

    exit_code = 3


class InfeasiblePointError(CostScoreError):
    """PR 공간에서 실현 불가능한 점 (precision이 (0, 1] 밖)"""

    exit_code = 4


class EmptyCurveError(InfeasiblePointError):
    """샘플링 구간 전체가 실현 불가능한 등비용 곡선"""


class UsageError(CostScoreError):
    """명령행 인자 조합 오류"""

    exit_code = 2
