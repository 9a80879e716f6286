"""
혼합 이산-연속 모델 (N, Y_1..Y_d)
- 원래 밀도 h(n, y) = ∫_{(F(n-1), F(n)]} c(u, G(y)) du · ∏ g_i(y_i)
- 변환 밀도 h*(n, y) = c(F_α(n), G(y))·P[N=n]·∏ g_i(y_i)
- 조건부 밀도 h*(y | n) = c(F_α(n), G(y))·∏ g_i(y_i)
"""

import logging
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from copulas import CopulaSpec
from errors import ParameterError, UndefinedConditionalError
from margins import (
    ContinuousMarginal, DiscreteMarginal, from_uniform, log_density_sum, to_uniform, validate_alpha,
)
from numerics import adaptive_gauss_legendre

from .transformed_copula import TransformedCopula

logger = logging.getLogger(__name__)

# h(n, y) 적분의 상대 허용오차
MIXED_DENSITY_RTOL = 1e-8


class MixedModel:
    """
    (F, G_1..G_d, C, α) 묶음.

    Args:
        marginal: N 의 이산 분포 F
        margins: 연속 주변분포 G_1..G_d
        copula: dimension d+1 인 CopulaSpec
        alpha: (0, 1]
    """

    def __init__(self, marginal: DiscreteMarginal, margins: Sequence[ContinuousMarginal],
                 copula: CopulaSpec, alpha: float = 1.0):
        self.marginal = marginal
        self.margins: List[ContinuousMarginal] = list(margins)
        self.copula = copula
        self.alpha = validate_alpha(alpha)
        if copula.dimension != len(self.margins) + 1:
            raise ParameterError(
                f"코퓰라 차원 {copula.dimension} 과 연속 주변분포 개수 {len(self.margins)} 가 맞지 않습니다."
            )
        self.transformed = TransformedCopula(copula, marginal, self.alpha)
        self._evaluator = copula.evaluator

    @property
    def d(self) -> int:
        return len(self.margins)

    def _rows(self, y) -> Tuple[np.ndarray, bool]:
        array = np.asarray(y, dtype=float)
        single = array.ndim <= 1
        array = array.reshape(1, -1) if single else array
        if array.shape[1] != self.d:
            raise ParameterError(f"y 의 차원이 {self.d} 가 아닙니다: shape {np.shape(y)}")
        return array, single

    def _check_count(self, n) -> int:
        if int(n) != n or n < 0:
            raise ParameterError(f"n 은 0 이상의 정수여야 합니다: {n}")
        return int(n)

    def _require_positive(self, n: int) -> float:
        weight = self.marginal.pmf(n)
        if weight <= 0.0:
            raise UndefinedConditionalError(f"P[N={n}] = 0 이므로 조건부 분포가 정의되지 않습니다.")
        return weight

    def _anchored_log_density(self, anchor: float, v: np.ndarray) -> np.ndarray:
        points = np.column_stack([np.full(v.shape[0], anchor), v])
        return self._evaluator.log_density(points)

    # ------------------------------------------------------------------
    # 밀도
    # ------------------------------------------------------------------

    def mixed_density_h(self, n: int, y):
        """
        변환 전 혼합 밀도 h(n, y).

        u ↦ c(u, G(y)) 를 (F(n-1), F(n)] 에서 적응 Gauss-Legendre 로 적분합니다.

        Raises:
            QuadratureError: 상대 허용오차 1e-8 에 수렴하지 못한 경우
        """
        n = self._check_count(n)
        rows, single = self._rows(y)
        lower = self.marginal.cdf(n - 1)
        upper = self.marginal.cdf(n)
        v_rows = to_uniform(self.margins, rows)
        log_g = log_density_sum(self.margins, rows)

        out = np.zeros(rows.shape[0])
        if upper > lower:
            for i, v in enumerate(v_rows):
                def integrand(u, v=v):
                    points = np.column_stack([u, np.repeat(v[np.newaxis, :], u.size, axis=0)])
                    return self._evaluator.density(points)

                mass = adaptive_gauss_legendre(integrand, lower, upper, rtol=MIXED_DENSITY_RTOL)
                out[i] = mass * np.exp(log_g[i])
        return float(out[0]) if single else out

    def mixed_conditional_density(self, n: int, y):
        """h(y | n) = h(n, y) / P[N=n]"""
        n = self._check_count(n)
        weight = self._require_positive(n)
        return self.mixed_density_h(n, y) / weight

    def transformed_joint_density(self, n: int, y):
        """h*(n, y) = c(F_α(n), G(y))·P[N=n]·∏ g_i(y_i)"""
        n = self._check_count(n)
        rows, single = self._rows(y)
        weight = self.marginal.pmf(n)
        if weight <= 0.0:
            out = np.zeros(rows.shape[0])
        else:
            anchor = self.marginal.f_alpha(self.alpha, n)
            log_value = (
                self._anchored_log_density(anchor, to_uniform(self.margins, rows))
                + log_density_sum(self.margins, rows)
            )
            out = weight * np.exp(log_value)
        return float(out[0]) if single else out

    def conditional_density(self, n: int, y):
        """
        h*(y | n) = c(F_α(n), G(y))·∏ g_i(y_i).

        Raises:
            UndefinedConditionalError: P[N=n] = 0
        """
        n = self._check_count(n)
        self._require_positive(n)
        rows, single = self._rows(y)
        anchor = self.marginal.f_alpha(self.alpha, n)
        log_value = (
            self._anchored_log_density(anchor, to_uniform(self.margins, rows))
            + log_density_sum(self.margins, rows)
        )
        out = np.exp(log_value)
        return float(out[0]) if single else out

    # ------------------------------------------------------------------
    # 분포 함수
    # ------------------------------------------------------------------

    def joint_cdf(self, n: int, y):
        """H(n, y) = C(F(n), G(y))"""
        rows, single = self._rows(y)
        u = np.full(rows.shape[0], self.marginal.cdf(int(n)))
        values = self._evaluator.cdf(np.column_stack([u, to_uniform(self.margins, rows)]))
        return float(values[0]) if single else values

    def transformed_joint_cdf(self, x: float, y):
        """𝔥(x, y) = 𝔈(F(x), G(y)), x 는 실수 (F(x) = F(⌊x⌋))"""
        rows, single = self._rows(y)
        u = self.marginal.cdf(int(np.floor(x))) if x >= -1 else 0.0
        values = self.transformed.cdf(np.full(rows.shape[0], u), to_uniform(self.margins, rows))
        return float(values[0]) if single else values

    # ------------------------------------------------------------------
    # 표본
    # ------------------------------------------------------------------

    def sample_transformed(self, rng: np.random.Generator, count: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        (M, T) ~ 𝔥 표본.

        u ~ U(0,1], n = F^←(u), v ~ C(· | F_α(n)), y = G⁻¹(v)

        Returns:
            (n 배열 (count,), y 배열 (count, d))
        """
        u = 1.0 - rng.random(int(count))
        counts = self.marginal.pseudo_inverse(u)
        anchors = self.marginal.f_alpha(self.alpha, counts)
        v = self._evaluator.conditional_sample(anchors, rng)
        return counts, from_uniform(self.margins, v)

    def sample_conditional(self, n: int, rng: np.random.Generator, count: int) -> np.ndarray:
        """
        W*_(n) ~ h*(· | n) 표본 (count, d).

        Raises:
            UndefinedConditionalError: P[N=n] = 0
        """
        n = self._check_count(n)
        self._require_positive(n)
        anchors = np.full(int(count), self.marginal.f_alpha(self.alpha, n))
        v = self._evaluator.conditional_sample(anchors, rng)
        return from_uniform(self.margins, v)

    def describe(self) -> Dict[str, Any]:
        return {
            'transformed': self.transformed.describe(),
            'margins': [g.describe() for g in self.margins],
        }


def mixed_density_h(model: MixedModel, n: int, y):
    return model.mixed_density_h(n, y)


def transformed_joint_density(model: MixedModel, n: int, y):
    return model.transformed_joint_density(n, y)


def conditional_density(model: MixedModel, n: int, y):
    return model.conditional_density(n, y)


def mixed_conditional_density(model: MixedModel, n: int, y):
    return model.mixed_conditional_density(n, y)


def joint_cdf(model: MixedModel, n: int, y):
    return model.joint_cdf(n, y)


def transformed_joint_cdf(model: MixedModel, x: float, y):
    return model.transformed_joint_cdf(x, y)


def sample_transformed(model: MixedModel, rng: np.random.Generator, count: int):
    return model.sample_transformed(rng, count)


def sample_conditional(model: MixedModel, n: int, rng: np.random.Generator, count: int) -> np.ndarray:
    return model.sample_conditional(n, rng, count)
