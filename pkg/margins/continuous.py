"""
연속 주변분포 G_i (CDF, 분위수, 밀도)
scipy frozen 분포를 감싸는 얇은 래퍼입니다.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np
from scipy import stats

from errors import ParameterError


class ContinuousMarginal(ABC):
    """연속 주변분포 베이스 클래스"""

    @abstractmethod
    def get_marginal_name(self) -> str:
        pass

    @abstractmethod
    def frozen(self):
        """scipy frozen 연속 분포"""
        pass

    def cdf(self, y):
        return self.frozen().cdf(y)

    def ppf(self, v):
        return self.frozen().ppf(v)

    def pdf(self, y):
        return self.frozen().pdf(y)

    def logpdf(self, y):
        return self.frozen().logpdf(y)

    def support(self):
        return self.frozen().support()

    def describe(self) -> Dict[str, Any]:
        return {'marginal': self.get_marginal_name()}


class NormalMarginal(ContinuousMarginal):
    """N(ξ, σ²)"""

    def __init__(self, xi: float = 0.0, sigma: float = 1.0):
        if not float(sigma) > 0:
            raise ParameterError(f"Normal sigma 는 양수여야 합니다: {sigma}")
        self.xi = float(xi)
        self.sigma = float(sigma)
        self._dist = stats.norm(self.xi, self.sigma)

    def get_marginal_name(self) -> str:
        return f"normal(ξ={self.xi:g}, σ={self.sigma:g})"

    def frozen(self):
        return self._dist


class UniformMarginal(ContinuousMarginal):
    """U(low, high), 기본 U(0, 1)"""

    def __init__(self, low: float = 0.0, high: float = 1.0):
        if not float(high) > float(low):
            raise ParameterError(f"Uniform 구간 오류: [{low}, {high}]")
        self.low = float(low)
        self.high = float(high)
        self._dist = stats.uniform(self.low, self.high - self.low)

    def get_marginal_name(self) -> str:
        return f"uniform({self.low:g}, {self.high:g})"

    def frozen(self):
        return self._dist


class FrozenMarginal(ContinuousMarginal):
    """임의의 scipy frozen 연속 분포 (예: stats.gamma(2.0))"""

    def __init__(self, dist, name: str = None):
        if not hasattr(dist, 'ppf') or not hasattr(dist, 'pdf'):
            raise ParameterError("FrozenMarginal 은 scipy frozen 연속 분포가 필요합니다.")
        if isinstance(getattr(dist, 'dist', None), stats.rv_discrete):
            raise ParameterError("FrozenMarginal 에 이산 분포를 줄 수 없습니다.")
        self._dist = dist
        self._name = name or getattr(getattr(dist, 'dist', None), 'name', 'frozen')

    def get_marginal_name(self) -> str:
        return self._name

    def frozen(self):
        return self._dist


def log_density_sum(marginals, y: np.ndarray) -> np.ndarray:
    """Σ log g_i(y_i), y 는 (m, d)"""
    return np.sum([g.logpdf(y[:, i]) for i, g in enumerate(marginals)], axis=0)


def to_uniform(marginals, y: np.ndarray) -> np.ndarray:
    """(G_1(y_1), ..., G_d(y_d))"""
    return np.column_stack([g.cdf(y[:, i]) for i, g in enumerate(marginals)])


def from_uniform(marginals, v: np.ndarray) -> np.ndarray:
    """(G_1⁻¹(v_1), ..., G_d⁻¹(v_d))"""
    return np.column_stack([g.ppf(v[:, i]) for i, g in enumerate(marginals)])
