"""
공통 예외 정의
CLI 종료 코드: ConfigError/ParameterError/UnsupportedOperationError → 1, NumericalError → 2
"""

from typing import Any, Dict, Optional


class TransformError(Exception):
    """라이브러리 전체의 베이스 예외"""


class ParameterError(TransformError, ValueError):
    """파라미터 범위 위반, 차원 불일치 등"""


class NotPositiveDefiniteError(ParameterError):
    """상관행렬이 양의 정부호가 아닐 때"""

    def __init__(self, message: str, diagnostic: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}


class UndefinedConditionalError(ParameterError):
    """P[N=n] = 0 인 n 으로 조건부 분포를 요청했을 때"""


class UnsupportedOperationError(TransformError, NotImplementedError):
    """지원하지 않는 (family, dimension, operation) 조합"""


class NumericalError(TransformError, ArithmeticError):
    """수치 계산 실패 (음수 밀도, 비유한 추정치 등)"""


class QuadratureError(NumericalError):
    """적응 구적법이 허용오차에 수렴하지 못했을 때"""

    def __init__(self, message: str, achieved_tolerance: float):
        super().__init__(f"{message} (achieved tolerance {achieved_tolerance:.3e})")
        self.achieved_tolerance = achieved_tolerance


class ConfigError(TransformError, ValueError):
    """설정 파일/CLI 인자 오류"""
