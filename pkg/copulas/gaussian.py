"""
Gaussian 코퓰라
"""

import numpy as np
from scipy import stats

from numerics import bvn_cdf, norm_cdf, norm_ppf

from .base import CopulaBase


class GaussianCopula(CopulaBase):
    """
    상관행렬 R 을 갖는 Gaussian 코퓰라.

    U=u 조건부 분포는 z0 = Φ⁻¹(u) 에 대해
    평균 r·z0, 공분산 S = R[1:,1:] - r rᵀ 인 정규분포 (r = R[1:,0]).
    """

    def __init__(self, spec):
        super().__init__(spec)
        self.correlation = spec.correlation
        self._chol = np.linalg.cholesky(self.correlation)
        self._precision_minus_identity = np.linalg.inv(self.correlation) - np.eye(self.dimension)
        self._logdet = 2.0 * float(np.sum(np.log(np.diag(self._chol))))
        self._cond_loading = self.correlation[1:, 0].copy()
        self._cond_cov = self.correlation[1:, 1:] - np.outer(self._cond_loading, self._cond_loading)
        self._cond_chol = np.linalg.cholesky(self._cond_cov)

    def get_family_name(self) -> str:
        return 'gaussian'

    def _cdf(self, points: np.ndarray) -> np.ndarray:
        z = norm_ppf(points)
        if self.dimension == 2:
            return bvn_cdf(z[:, 0], z[:, 1], self.correlation[0, 1])
        mvn = stats.multivariate_normal(mean=np.zeros(self.dimension), cov=self.correlation, seed=0)
        return np.atleast_1d(mvn.cdf(z))

    def _log_density(self, points: np.ndarray) -> np.ndarray:
        z = norm_ppf(points)
        quad = np.einsum('mi,ij,mj->m', z, self._precision_minus_identity, z)
        return -0.5 * quad - 0.5 * self._logdet

    def _partial1(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        z0 = norm_ppf(u)
        zv = norm_ppf(v)
        shifted = zv - z0[:, np.newaxis] * self._cond_loading
        scale = np.sqrt(np.diag(self._cond_cov))
        if self.dimension == 2:
            return norm_cdf(shifted[:, 0] / scale[0])
        if self.dimension == 3:
            rho = self._cond_cov[0, 1] / (scale[0] * scale[1])
            return bvn_cdf(shifted[:, 0] / scale[0], shifted[:, 1] / scale[1], rho)
        mvn = stats.multivariate_normal(mean=np.zeros(self.dimension - 1), cov=self._cond_cov, seed=0)
        return np.atleast_1d(mvn.cdf(shifted))

    def _sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        z = rng.standard_normal((count, self.dimension)) @ self._chol.T
        return norm_cdf(z)

    def _conditional_sample(self, u0: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        z0 = norm_ppf(u0)
        noise = rng.standard_normal((u0.shape[0], self.dimension - 1)) @ self._cond_chol.T
        return norm_cdf(z0[:, np.newaxis] * self._cond_loading + noise)

    def is_independence(self) -> bool:
        return bool(np.all(self.correlation == np.eye(self.dimension)))
