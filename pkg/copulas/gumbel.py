"""
Gumbel 코퓰라 (θ ≥ 1, θ = 1 은 독립)
C(w) = exp(-(Σ (-ln w_i)^θ)^{1/θ})

CDF 는 모든 차원, 밀도와 표본은 2차원만 지원합니다.
"""

import numpy as np

from errors import UnsupportedOperationError

from .base import CopulaBase


class GumbelCopula(CopulaBase):
    """Gumbel 코퓰라"""

    def get_family_name(self) -> str:
        return 'gumbel'

    def is_independence(self) -> bool:
        return self.theta == 1.0

    def _require_bivariate(self, operation: str) -> None:
        if self.dimension != 2:
            raise UnsupportedOperationError(
                f"Gumbel {operation} 은(는) 2차원만 지원합니다 (dimension={self.dimension})."
            )

    def _cdf(self, points: np.ndarray) -> np.ndarray:
        theta = self.theta
        total = np.sum((-np.log(points)) ** theta, axis=1)
        return np.exp(-total ** (1.0 / theta))

    def _log_density(self, points: np.ndarray) -> np.ndarray:
        self._require_bivariate('density')
        theta = self.theta
        x = -np.log(points[:, 0])
        y = -np.log(points[:, 1])
        a = (x ** theta + y ** theta) ** (1.0 / theta)
        return (
            -a + np.log(a + theta - 1.0) + (1.0 - 2.0 * theta) * np.log(a)
            + (theta - 1.0) * np.log(x * y) + x + y
        )

    def _partial1(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        if self.dimension != 2:
            # 닫힌 꼴이 없으므로 CDF 유한차분
            return super()._partial1(u, v)
        theta = self.theta
        x = -np.log(u)
        y = -np.log(v[:, 0])
        a = (x ** theta + y ** theta) ** (1.0 / theta)
        return np.exp(-a + (1.0 - theta) * np.log(a) + (theta - 1.0) * np.log(x) + x)

    def _sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        self._require_bivariate('sampling')
        alpha = 1.0 / self.theta
        # 양의 alpha-안정 프레일티 (Kanter 표현), Laplace 변환 exp(-t^alpha)
        angle = rng.uniform(0.0, np.pi, count)
        weight = rng.exponential(1.0, count)
        stable = (
            np.sin(alpha * angle) / np.sin(angle) ** (1.0 / alpha)
            * (np.sin((1.0 - alpha) * angle) / weight) ** ((1.0 - alpha) / alpha)
        )
        expo = rng.exponential(1.0, (count, 2))
        return np.exp(-(expo / stable[:, np.newaxis]) ** alpha)

    def _conditional_sample(self, u0: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        self._require_bivariate('conditional sampling')
        if self.is_independence():
            return rng.random((u0.shape[0], 1))
        return super()._conditional_sample(u0, rng)
