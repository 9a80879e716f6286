"""
Student t 코퓰라
"""

import numpy as np
from scipy import special, stats

from .base import CopulaBase

# scipy multivariate_t.cdf 의 준난수 적분을 결정적으로 고정
_CDF_RANDOM_STATE = 0


class StudentTCopula(CopulaBase):
    """
    상관행렬 R, 자유도 ν 인 Student t 코퓰라.

    X0 = x0 조건부로 나머지는 자유도 ν+1, 위치 r·x0,
    척도행렬 (ν + x0²)/(ν + 1) · S 인 다변량 t 를 따릅니다.
    """

    def __init__(self, spec):
        super().__init__(spec)
        self.dof = spec.dof
        self.correlation = spec.correlation
        self._chol = np.linalg.cholesky(self.correlation)
        self._precision = np.linalg.inv(self.correlation)
        self._logdet = 2.0 * float(np.sum(np.log(np.diag(self._chol))))
        self._cond_loading = self.correlation[1:, 0].copy()
        self._cond_cov = self.correlation[1:, 1:] - np.outer(self._cond_loading, self._cond_loading)
        self._cond_chol = np.linalg.cholesky(self._cond_cov)

        d = self.dimension
        nu = self.dof
        self._log_norm = (
            special.gammaln((nu + d) / 2.0) - special.gammaln(nu / 2.0)
            - 0.5 * d * np.log(nu * np.pi) - 0.5 * self._logdet
        )

    def get_family_name(self) -> str:
        return 'student_t'

    def _ppf(self, u: np.ndarray) -> np.ndarray:
        return stats.t.ppf(u, self.dof)

    def _cdf(self, points: np.ndarray) -> np.ndarray:
        x = self._ppf(points)
        dist = stats.multivariate_t(loc=np.zeros(self.dimension), shape=self.correlation, df=self.dof)
        return np.atleast_1d(dist.cdf(x, random_state=_CDF_RANDOM_STATE))

    def _log_density(self, points: np.ndarray) -> np.ndarray:
        x = self._ppf(points)
        nu = self.dof
        quad = np.einsum('mi,ij,mj->m', x, self._precision, x)
        joint = self._log_norm - 0.5 * (nu + self.dimension) * np.log1p(quad / nu)
        margins = np.sum(stats.t.logpdf(x, nu), axis=1)
        return joint - margins

    def _partial1(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        nu = self.dof
        x0 = self._ppf(u)
        xv = self._ppf(v)
        scale = np.sqrt((nu + x0 * x0) / (nu + 1.0))
        shifted = (xv - x0[:, np.newaxis] * self._cond_loading) / scale[:, np.newaxis]
        if self.dimension == 2:
            return stats.t.cdf(shifted[:, 0] / np.sqrt(self._cond_cov[0, 0]), nu + 1.0)
        dist = stats.multivariate_t(
            loc=np.zeros(self.dimension - 1), shape=self._cond_cov, df=nu + 1.0
        )
        return np.atleast_1d(dist.cdf(shifted, random_state=_CDF_RANDOM_STATE))

    def _sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        z = rng.standard_normal((count, self.dimension)) @ self._chol.T
        w = rng.chisquare(self.dof, count) / self.dof
        return stats.t.cdf(z / np.sqrt(w)[:, np.newaxis], self.dof)

    def _conditional_sample(self, u0: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        nu = self.dof
        m = u0.shape[0]
        x0 = self._ppf(u0)
        scale = np.sqrt((nu + x0 * x0) / (nu + 1.0))
        z = rng.standard_normal((m, self.dimension - 1)) @ self._cond_chol.T
        w = rng.chisquare(nu + 1.0, m) / (nu + 1.0)
        x = x0[:, np.newaxis] * self._cond_loading + (scale / np.sqrt(w))[:, np.newaxis] * z
        return stats.t.cdf(x, nu)
