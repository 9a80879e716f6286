"""
Clayton 코퓰라 (θ ≥ 0, θ = 0 은 독립)
C(w) = (Σ w_i^{-θ} - dim + 1)^{-1/θ}
"""

import numpy as np
from scipy import special

from .base import CopulaBase


class ClaytonCopula(CopulaBase):
    """Clayton 코퓰라. 밀도, partial1, 조건부 표본 모두 닫힌 꼴입니다."""

    def get_family_name(self) -> str:
        return 'clayton'

    def is_independence(self) -> bool:
        return self.theta == 0.0

    def _cdf(self, points: np.ndarray) -> np.ndarray:
        if self.is_independence():
            return np.prod(points, axis=1)
        theta = self.theta
        total = np.sum(points ** (-theta), axis=1) - self.dimension + 1.0
        return total ** (-1.0 / theta)

    def _log_density(self, points: np.ndarray) -> np.ndarray:
        if self.is_independence():
            return np.zeros(points.shape[0])
        theta = self.theta
        d = self.dimension
        log_u = np.log(points)
        total = np.sum(np.exp(-theta * log_u), axis=1) - d + 1.0
        constant = float(np.sum(np.log1p(theta * np.arange(d))))
        return constant - (theta + 1.0) * np.sum(log_u, axis=1) - (1.0 / theta + d) * np.log(total)

    def _partial1(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        if self.is_independence():
            return np.prod(v, axis=1)
        theta = self.theta
        total = u ** (-theta) + np.sum(v ** (-theta), axis=1) - (self.dimension - 1)
        log_value = -(theta + 1.0) * np.log(u) - (1.0 / theta + 1.0) * np.log(total)
        return np.exp(log_value)

    def _sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        # Marshall-Olkin: V ~ Gamma(1/θ), U_i = (1 + E_i/V)^{-1/θ}
        if self.is_independence():
            return rng.random((count, self.dimension))
        theta = self.theta
        frailty = rng.gamma(1.0 / theta, 1.0, count)
        expo = rng.exponential(1.0, (count, self.dimension))
        return (1.0 + expo / frailty[:, np.newaxis]) ** (-1.0 / theta)

    def _conditional_sample(self, u0: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        m = u0.shape[0]
        if self.is_independence():
            return rng.random((m, self.dimension - 1))
        theta = self.theta
        out = np.empty((m, self.dimension - 1))
        # s_j = Σ_{i≤j} u_i^{-θ} - j + 1, 다음 좌표의 조건부 CDF 는 (1 + (u^{-θ}-1)/s_j)^{-(1/θ + j)}
        s = u0 ** (-theta)
        for j in range(1, self.dimension):
            w = rng.random(m)
            exponent = 1.0 / theta + j
            # w^{-1/exponent} - 1 을 expm1 로 계산해 w≈1 근처 정밀도 유지
            lifted = 1.0 + s * special.expm1(-np.log(w) / exponent)
            value = lifted ** (-1.0 / theta)
            out[:, j - 1] = value
            s = s + lifted - 1.0
        return np.clip(out, 0.0, 1.0)
