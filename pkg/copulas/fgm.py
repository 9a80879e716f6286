"""
FGM 섭동 코퓰라
C(u, v) = Π(u, v) + θ·u(1-u)·v1(1-v1)·∏_{i≥2} v_i

첫 두 좌표만 FGM 으로 얽히고 나머지는 독립입니다.
"""

import numpy as np

from .base import CopulaBase


class FGMPerturbedCopula(CopulaBase):
    """FGM 섭동 코퓰라 (θ ∈ [-1, 1], 모든 차원)"""

    def get_family_name(self) -> str:
        return 'fgm_perturbed'

    def _cdf(self, points: np.ndarray) -> np.ndarray:
        u = points[:, 0]
        v1 = points[:, 1]
        rest = np.prod(points[:, 2:], axis=1)
        return np.prod(points, axis=1) + self.theta * u * (1.0 - u) * v1 * (1.0 - v1) * rest

    def _log_density(self, points: np.ndarray) -> np.ndarray:
        u = points[:, 0]
        v1 = points[:, 1]
        return np.log1p(self.theta * (1.0 - 2.0 * u) * (1.0 - 2.0 * v1))

    def _partial1(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        v1 = v[:, 0]
        rest = np.prod(v[:, 1:], axis=1)
        return np.prod(v, axis=1) + self.theta * (1.0 - 2.0 * u) * v1 * (1.0 - v1) * rest

    def _conditional_sample(self, u0: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        # v1 | u 의 조건부 CDF v(1 + a(1-v)) = w 의 [0,1] 근 (a=0 이면 v=w)
        w = rng.random(u0.shape[0])
        a = self.theta * (1.0 - 2.0 * u0)
        b = 1.0 + a
        v1 = 2.0 * w / (b + np.sqrt(np.maximum(b * b - 4.0 * a * w, 0.0)))
        others = rng.random((u0.shape[0], self.dimension - 2))
        return np.column_stack([np.clip(v1, 0.0, 1.0), others])

    def _sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        u = rng.random(count)
        return np.column_stack([u, self._conditional_sample(u, rng)])

    def is_independence(self) -> bool:
        return self.theta == 0.0
