"""
독립 코퓰라 Π
"""

import numpy as np

from .base import CopulaBase


class IndependenceCopula(CopulaBase):
    """Π(w) = ∏ w_i"""

    def get_family_name(self) -> str:
        return 'independence'

    def _cdf(self, points: np.ndarray) -> np.ndarray:
        return np.prod(points, axis=1)

    def _log_density(self, points: np.ndarray) -> np.ndarray:
        return np.zeros(points.shape[0])

    def _partial1(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.prod(v, axis=1)

    def _sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return rng.random((count, self.dimension))

    def _conditional_sample(self, u0: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        return rng.random((u0.shape[0], self.dimension - 1))

    def is_independence(self) -> bool:
        return True
