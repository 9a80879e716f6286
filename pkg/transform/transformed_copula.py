"""
변환 코퓰라 (α, F) ∘ C
- 밀도 𝔠(u, v) = c(⌈u⌉_{α,F}, v)
- 분포 𝔈(u, v) = Σ_{k<n} ∂₁C(F_α(k), v)·P[N=k] + ∂₁C(F_α(n), v)·(u - F(n-1)),  n = F^←(u)
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from copulas import CopulaSpec
from errors import ParameterError
from margins import DiscreteMarginal, validate_alpha

logger = logging.getLogger(__name__)

# 주변분포 균일성 판정 임계값
COPULA_CHECK_THRESHOLD = 1e-9


@dataclass(frozen=True)
class CopulaCheckReport:
    """𝔈 의 주변분포 균일성 검사 결과"""
    is_copula: bool
    max_margin_violation: float
    worst_coordinate: int
    worst_probe: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            'is_copula': self.is_copula,
            'max_margin_violation': self.max_margin_violation,
            'worst_coordinate': self.worst_coordinate,
            'worst_probe': self.worst_probe,
        }


class TransformedCopula:
    """
    기본 코퓰라 C (dimension d+1) 에 (α, F) 를 적용한 변환 코퓰라.

    Args:
        base: 기본 CopulaSpec (첫 좌표가 이산 변수 자리)
        marginal: 이산 분포 F
        alpha: (0, 1] 보간 모수
    """

    def __init__(self, base: CopulaSpec, marginal: DiscreteMarginal, alpha: float):
        self.base = base
        self.marginal = marginal
        self.alpha = validate_alpha(alpha)
        self.dimension = base.dimension
        self._copula = base.evaluator

        # F_α(k), P[N=k] (k = 0..N*) 를 미리 계산
        support = marginal.support
        self._weights = marginal.pmf_table
        self._anchors = marginal.f_alpha(self.alpha, support)
        self._live = np.flatnonzero(self._weights > 0.0)

    def __repr__(self) -> str:
        return f"TransformedCopula({self.base.label}, {self.marginal.label}, α={self.alpha:g})"

    def _pair(self, u, v) -> Tuple[np.ndarray, np.ndarray, bool]:
        """u → (m,), v → (m, d) 로 맞춥니다."""
        d = self.dimension - 1
        u_array = np.atleast_1d(np.asarray(u, dtype=float))
        v_array = np.asarray(v, dtype=float)
        single = np.ndim(u) == 0 and v_array.ndim == 1
        if v_array.ndim == 1:
            v_array = v_array[np.newaxis, :]
        if v_array.ndim != 2 or v_array.shape[1] != d:
            raise ParameterError(f"v 의 차원이 맞지 않습니다: shape {np.shape(v)}, 기대 차원 {d}")
        if u_array.shape[0] == 1 and v_array.shape[0] > 1:
            u_array = np.repeat(u_array, v_array.shape[0])
        if v_array.shape[0] == 1 and u_array.shape[0] > 1:
            v_array = np.repeat(v_array, u_array.shape[0], axis=0)
        if u_array.shape[0] != v_array.shape[0]:
            raise ParameterError("u 와 v 의 개수가 다릅니다.")
        if np.any(np.isnan(u_array)) or np.any(u_array < 0.0) or np.any(u_array > 1.0):
            raise ParameterError("u 는 [0, 1] 안에 있어야 합니다.")
        return u_array, v_array, single

    def lifted_points(self, u, v) -> np.ndarray:
        """(⌈u⌉_{α,F}, v) 를 (m, d+1) 로"""
        u_array, v_array, _ = self._pair(u, v)
        return np.column_stack([self.marginal.ceiling(self.alpha, u_array), v_array])

    def density(self, u, v):
        """𝔠(u, v) = c(⌈u⌉, v). u 의 각 CDF 구간에서 상수인 계단함수."""
        _, _, single = self._pair(u, v)
        values = self._copula.density(self.lifted_points(u, v))
        return float(values[0]) if single else values

    def log_density(self, u, v):
        _, _, single = self._pair(u, v)
        values = self._copula.log_density(self.lifted_points(u, v))
        return float(values[0]) if single else values

    def _partial_at_anchor(self, k: int, v: np.ndarray) -> np.ndarray:
        anchor = np.full(v.shape[0], self._anchors[k])
        return self._copula.partial1(anchor, v)

    def cdf(self, u, v):
        """𝔈(u, v). 𝔈(u, 1) = u, 𝔈(1, v) = E[∂₁C(F_α(N), v)]."""
        u_array, v_array, single = self._pair(u, v)
        counts = self.marginal.pseudo_inverse(u_array)
        previous = self.marginal.cdf(counts - 1)

        out = np.zeros(u_array.shape[0])
        top = int(counts.max()) if counts.size else 0
        for k in self._live[self._live < top]:
            rows = counts > k
            out[rows] += self._weights[k] * self._partial_at_anchor(k, v_array[rows])

        anchors = self.marginal.f_alpha(self.alpha, counts)
        last = self._copula.partial1(anchors, v_array) * (u_array - previous)
        out += np.where(u_array > 0.0, last, 0.0)
        out = np.clip(out, 0.0, 1.0)
        return float(out[0]) if single else out

    def second_margin_cdf(self, v):
        """F_T(v) = Σ_k P[N=k]·∂₁C(F_α(k), v) (절단 지지 0..N*)"""
        d = self.dimension - 1
        v_array = np.asarray(v, dtype=float)
        single = v_array.ndim == 1
        v_array = np.atleast_2d(v_array)
        if v_array.shape[1] != d:
            raise ParameterError(f"v 의 차원이 맞지 않습니다: {np.shape(v)}")
        out = np.zeros(v_array.shape[0])
        for k in self._live:
            out += self._weights[k] * self._partial_at_anchor(k, v_array)
        out = np.clip(out, 0.0, 1.0)
        return float(out[0]) if single else out

    def is_copula_check(self, probe_count: int = 99) -> CopulaCheckReport:
        """
        𝔈 의 모든 주변분포가 균일한지 probe 격자에서 검사합니다.

        좌표 0: |𝔈(u, 1) - u|, 좌표 i ≥ 1: |𝔈(1, v_i, 1...) - v_i|
        """
        if int(probe_count) < 1:
            raise ParameterError(f"probe_count 는 1 이상이어야 합니다: {probe_count}")
        probes = np.arange(1, int(probe_count) + 1) / (int(probe_count) + 1.0)
        d = self.dimension - 1

        violations = [np.abs(self.cdf(probes, np.ones(d)) - probes)]
        for i in range(d):
            v = np.ones((probes.size, d))
            v[:, i] = probes
            violations.append(np.abs(self.second_margin_cdf(v) - probes))

        table = np.vstack(violations)
        coord, probe_index = np.unravel_index(int(np.argmax(table)), table.shape)
        worst = float(table[coord, probe_index])
        report = CopulaCheckReport(
            is_copula=worst <= COPULA_CHECK_THRESHOLD,
            max_margin_violation=worst,
            worst_coordinate=int(coord),
            worst_probe=float(probes[probe_index]),
        )
        logger.debug("is_copula_check %r → %s", self, report)
        return report

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """
        (U, V) ~ 𝔈 표본 (count, d+1).

        U ~ U(0,1], V | U ~ ∂₁C(⌈U⌉, ·)
        """
        u = 1.0 - rng.random(int(count))
        v = self._copula.conditional_sample(self.marginal.ceiling(self.alpha, u), rng)
        return np.column_stack([u, v])

    def describe(self) -> Dict[str, Any]:
        return {
            'copula': self._copula.describe(),
            'marginal': self.marginal.describe(),
            'alpha': self.alpha,
        }


def transformed_density(transformed: TransformedCopula, u, v):
    return transformed.density(u, v)


def transformed_cdf(transformed: TransformedCopula, u, v):
    return transformed.cdf(u, v)


def second_margin_cdf(transformed: TransformedCopula, v):
    return transformed.second_margin_cdf(v)


def is_copula_check(transformed: TransformedCopula, probe_count: int = 99) -> CopulaCheckReport:
    return transformed.is_copula_check(probe_count)


def sample_transformed_copula(transformed: TransformedCopula, rng: np.random.Generator,
                              count: int) -> np.ndarray:
    return transformed.sample(rng, count)
