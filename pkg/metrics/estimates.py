"""
추정 결과 타입
"""

from dataclasses import dataclass, asdict
from enum import Enum
from typing import Any, Dict


class EstimationMethod(Enum):
    MONTE_CARLO = 'monte_carlo'
    QUADRATURE = 'quadrature'
    EXACT = 'exact'


@dataclass(frozen=True)
class KlEstimate:
    """D(P, Q) 추정치. MONTE_CARLO 면 value 는 log-ratio 표본 평균, std_error 는 그 표준오차."""
    value: float
    std_error: float
    sample_count: int
    method: EstimationMethod = EstimationMethod.MONTE_CARLO

    @property
    def is_exact(self) -> bool:
        return self.method is EstimationMethod.EXACT

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['method'] = self.method.value
        return data


@dataclass(frozen=True)
class RhoEstimate:
    """Spearman ρ 추정치"""
    value: float
    std_error: float
    sample_count: int = 0
    method: EstimationMethod = EstimationMethod.MONTE_CARLO

    @property
    def is_exact(self) -> bool:
        return self.method is EstimationMethod.EXACT

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['method'] = self.method.value
        return data


def exact_kl_zero() -> KlEstimate:
    return KlEstimate(0.0, 0.0, 0, EstimationMethod.EXACT)


def exact_rho_zero() -> RhoEstimate:
    return RhoEstimate(0.0, 0.0, 0, EstimationMethod.EXACT)
