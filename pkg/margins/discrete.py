"""
ℕ₀ 위의 이산 분포 F
- F_α(n) = (1-α)F(n-1) + αF(n)
- ceiling 사상 ⌈u⌉_{α,F} = F_α(n), u ∈ (F(n-1), F(n)]
- pseudo-inverse F^←(u) = inf{n : F(n) ≥ u}

CDF 값은 생성 시 한 번 표로 계산해 두고, ceiling 과 pseudo_inverse 는
같은 표에 대한 같은 searchsorted 경로를 씁니다.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy import stats

from errors import ParameterError

logger = logging.getLogger(__name__)

DEFAULT_TAIL_EPSILON = 1e-12
# Explicit pmf 합 허용오차
_PMF_SUM_TOLERANCE = 1e-12


class MarginalKind(Enum):
    POISSON = 'poisson'
    NEGATIVE_BINOMIAL = 'negative_binomial'
    BINOMIAL = 'binomial'
    EXPLICIT = 'explicit'


def validate_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise ParameterError(f"α 는 (0, 1] 이어야 합니다: {alpha}")
    return alpha


@dataclass(frozen=True)
class DiscreteMarginal:
    """
    ℕ₀ 위의 이산 분포.

    직접 생성하기보다 poisson(), negative_binomial(), binomial(), explicit() 를 사용합니다.
    params: POISSON (mean,), NEGATIVE_BINOMIAL (r, p), BINOMIAL (n, p), EXPLICIT pmf 튜플
    """
    kind: MarginalKind
    params: Tuple[float, ...]
    tail_epsilon: float = DEFAULT_TAIL_EPSILON
    _pmf_table: np.ndarray = field(init=False, repr=False, compare=False)
    _cdf_table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 < self.tail_epsilon < 1e-3:
            raise ParameterError(f"tail_epsilon 은 (0, 1e-3) 이어야 합니다: {self.tail_epsilon}")
        if self.kind is MarginalKind.EXPLICIT:
            pmf, cdf = self._explicit_tables()
        else:
            pmf, cdf = self._scipy_tables()
        pmf.setflags(write=False)
        cdf.setflags(write=False)
        object.__setattr__(self, '_pmf_table', pmf)
        object.__setattr__(self, '_cdf_table', cdf)

    # ------------------------------------------------------------------
    # 생성자
    # ------------------------------------------------------------------

    @classmethod
    def poisson(cls, mean: float, tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> 'DiscreteMarginal':
        if not float(mean) > 0:
            raise ParameterError(f"Poisson mean 은 양수여야 합니다: {mean}")
        return cls(MarginalKind.POISSON, (float(mean),), tail_epsilon)

    @classmethod
    def negative_binomial(cls, r: float, p: float,
                          tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> 'DiscreteMarginal':
        """실패 횟수 분포 NB(r, p) (scipy.stats.nbinom 과 같은 모수화)"""
        if not float(r) > 0 or not 0.0 < float(p) <= 1.0:
            raise ParameterError(f"NegativeBinomial 모수 오류: r={r}, p={p}")
        return cls(MarginalKind.NEGATIVE_BINOMIAL, (float(r), float(p)), tail_epsilon)

    @classmethod
    def binomial(cls, n: int, p: float, tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> 'DiscreteMarginal':
        if int(n) != n or n < 1 or not 0.0 < float(p) <= 1.0:
            raise ParameterError(f"Binomial 모수 오류: n={n}, p={p}")
        return cls(MarginalKind.BINOMIAL, (int(n), float(p)), tail_epsilon)

    @classmethod
    def explicit(cls, pmf, tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> 'DiscreteMarginal':
        """0..κ₀ 위의 유한 pmf 벡터"""
        return cls(MarginalKind.EXPLICIT, tuple(float(p) for p in pmf), tail_epsilon)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'DiscreteMarginal':
        """{'kind': 'poisson', 'mean': 1.0} 형식의 설정에서 생성"""
        kind = str(data.get('kind', 'poisson')).lower().replace('-', '_')
        epsilon = float(data.get('tail_epsilon', DEFAULT_TAIL_EPSILON))
        try:
            if kind == 'poisson':
                return cls.poisson(data['mean'], epsilon)
            if kind in ('negative_binomial', 'nbinom'):
                return cls.negative_binomial(data['r'], data['p'], epsilon)
            if kind == 'binomial':
                return cls.binomial(data['n'], data['p'], epsilon)
            if kind == 'explicit':
                return cls.explicit(data['pmf'], epsilon)
        except KeyError as e:
            raise ParameterError(f"{kind} 분포 설정에 {e} 항목이 없습니다.")
        raise ParameterError(f"알 수 없는 이산 분포 종류: {kind}")

    # ------------------------------------------------------------------
    # 표 계산
    # ------------------------------------------------------------------

    @property
    def frozen(self):
        """scipy frozen 분포 (EXPLICIT 은 None)"""
        if self.kind is MarginalKind.POISSON:
            return stats.poisson(self.params[0])
        if self.kind is MarginalKind.NEGATIVE_BINOMIAL:
            return stats.nbinom(self.params[0], self.params[1])
        if self.kind is MarginalKind.BINOMIAL:
            return stats.binom(int(self.params[0]), self.params[1])
        return None

    def _explicit_tables(self) -> Tuple[np.ndarray, np.ndarray]:
        pmf = np.asarray(self.params, dtype=float)
        if pmf.size == 0 or np.any(pmf < 0) or not np.all(np.isfinite(pmf)):
            raise ParameterError("Explicit pmf 는 비어 있지 않은 음이 아닌 유한 벡터여야 합니다.")
        if abs(float(pmf.sum()) - 1.0) > _PMF_SUM_TOLERANCE:
            raise ParameterError(f"Explicit pmf 합이 1 이 아닙니다: {pmf.sum():.15f}")
        kappa0 = int(np.flatnonzero(pmf > 0)[-1])
        pmf = pmf[:kappa0 + 1].copy()
        cdf = np.cumsum(pmf)
        cdf[kappa0] = 1.0
        cdf = np.minimum(cdf, 1.0)
        return pmf, cdf

    def _scipy_tables(self) -> Tuple[np.ndarray, np.ndarray]:
        dist = self.frozen
        if self.kind is MarginalKind.BINOMIAL:
            bound = int(self.params[0])
        else:
            bound = int(dist.isf(self.tail_epsilon))
            while dist.sf(bound) >= self.tail_epsilon:
                bound += 1
            while bound > 0 and dist.sf(bound - 1) < self.tail_epsilon:
                bound -= 1
        support = np.arange(bound + 1)
        pmf = dist.pmf(support)
        cdf = np.maximum.accumulate(dist.cdf(support))
        if self.kind is MarginalKind.BINOMIAL:
            cdf[-1] = 1.0
        return pmf, cdf

    # ------------------------------------------------------------------
    # 속성
    # ------------------------------------------------------------------

    @property
    def support_bound(self) -> int:
        """절단 인덱스 N* (1 - F(N*) < tail_epsilon, 유한 지지면 κ₀)"""
        return int(self._cdf_table.size - 1)

    @property
    def essential_supremum(self) -> Optional[int]:
        """유한 지지의 최댓값 κ₀ (무한 지지면 None)"""
        if self.kind in (MarginalKind.EXPLICIT, MarginalKind.BINOMIAL):
            return int(np.flatnonzero(self._pmf_table > 0)[-1])
        return None

    @property
    def has_finite_support(self) -> bool:
        return self.essential_supremum is not None

    @property
    def tail_mass(self) -> float:
        """절단 이후 꼬리 확률 1 - F(N*)"""
        return float(1.0 - self._cdf_table[-1])

    @property
    def support(self) -> np.ndarray:
        """0..N*"""
        return np.arange(self.support_bound + 1)

    @property
    def pmf_table(self) -> np.ndarray:
        return self._pmf_table

    @property
    def cdf_table(self) -> np.ndarray:
        return self._cdf_table

    def mean(self) -> float:
        dist = self.frozen
        if dist is not None:
            return float(dist.mean())
        return float(np.dot(self.support, self._pmf_table))

    def variance(self) -> float:
        dist = self.frozen
        if dist is not None:
            return float(dist.var())
        n = self.support
        mu = self.mean()
        return float(np.dot((n - mu) ** 2, self._pmf_table))

    @property
    def label(self) -> str:
        if self.kind is MarginalKind.EXPLICIT:
            return f"explicit(κ₀={self.essential_supremum})"
        names = {
            MarginalKind.POISSON: ('λ',),
            MarginalKind.NEGATIVE_BINOMIAL: ('r', 'p'),
            MarginalKind.BINOMIAL: ('n', 'p'),
        }[self.kind]
        args = ', '.join(f"{k}={v:g}" for k, v in zip(names, self.params))
        return f"{self.kind.value}({args})"

    # ------------------------------------------------------------------
    # 분포 함수
    # ------------------------------------------------------------------

    def _check_counts(self, n) -> np.ndarray:
        array = np.asarray(n)
        if array.dtype.kind == 'f':
            if np.any(array != np.floor(array)):
                raise ParameterError(f"n 은 정수여야 합니다: {n}")
            array = array.astype(np.int64)
        return array.astype(np.int64)

    def _cdf_values(self, n: np.ndarray) -> np.ndarray:
        out = np.zeros(n.shape, dtype=float)
        inside = (n >= 0) & (n <= self.support_bound)
        out[inside] = self._cdf_table[n[inside]]
        beyond = n > self.support_bound
        if np.any(beyond):
            dist = self.frozen
            if dist is None or self.kind is MarginalKind.BINOMIAL:
                out[beyond] = 1.0
            else:
                out[beyond] = np.maximum(dist.cdf(n[beyond]), self._cdf_table[-1])
        return out

    def pmf(self, n):
        """P[N = n] (n ≥ 0)"""
        counts = self._check_counts(n)
        if np.any(counts < 0):
            raise ParameterError(f"pmf 의 n 은 0 이상이어야 합니다: {n}")
        out = np.zeros(counts.shape, dtype=float)
        inside = counts <= self.support_bound
        out[inside] = self._pmf_table[counts[inside]]
        beyond = ~inside
        if np.any(beyond) and self.frozen is not None:
            out[beyond] = self.frozen.pmf(counts[beyond])
        return float(out) if out.ndim == 0 else out

    def cdf(self, n):
        """F(n), n ≥ -1, F(-1) = 0"""
        counts = self._check_counts(n)
        if np.any(counts < -1):
            raise ParameterError(f"cdf 의 n 은 -1 이상이어야 합니다: {n}")
        out = self._cdf_values(counts)
        return float(out) if out.ndim == 0 else out

    def f_alpha(self, alpha: float, n):
        """F_α(n) = (1-α)F(n-1) + αF(n)"""
        alpha = validate_alpha(alpha)
        counts = self._check_counts(n)
        if np.any(counts < 0):
            raise ParameterError(f"f_alpha 의 n 은 0 이상이어야 합니다: {n}")
        out = self._f_alpha_values(alpha, counts)
        return float(out) if out.ndim == 0 else out

    def _f_alpha_values(self, alpha: float, counts: np.ndarray) -> np.ndarray:
        return (1.0 - alpha) * self._cdf_values(counts - 1) + alpha * self._cdf_values(counts)

    def _check_unit(self, u, name: str) -> np.ndarray:
        array = np.asarray(u, dtype=float)
        if np.any(np.isnan(array)) or np.any(array < 0.0) or np.any(array > 1.0):
            raise ParameterError(f"{name} 의 u 는 [0, 1] 안에 있어야 합니다.")
        return array

    def _pseudo_inverse_values(self, u: np.ndarray) -> np.ndarray:
        counts = np.searchsorted(self._cdf_table, u, side='left').astype(np.int64)
        beyond = counts > self.support_bound
        if np.any(beyond):
            dist = self.frozen
            tail = dist.ppf(u[beyond]) if dist is not None else np.full(int(beyond.sum()), np.nan)
            tail = np.where(np.isfinite(tail), tail, self.support_bound + 1)
            counts[beyond] = np.maximum(tail.astype(np.int64), self.support_bound + 1)
        return counts

    def pseudo_inverse(self, u):
        """F^←(u) = inf{n : F(n) ≥ u}"""
        array = self._check_unit(u, 'pseudo_inverse')
        out = self._pseudo_inverse_values(np.atleast_1d(array))
        return int(out[0]) if array.ndim == 0 else out

    def ceiling(self, alpha: float, u):
        """⌈u⌉_{α,F} = F_α(F^←(u)), ⌈0⌉ = 0"""
        alpha = validate_alpha(alpha)
        array = np.atleast_1d(self._check_unit(u, 'ceiling'))
        out = self._f_alpha_values(alpha, self._pseudo_inverse_values(array))
        out[array == 0.0] = 0.0
        return float(out[0]) if np.ndim(u) == 0 else out

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """N ~ F 표본 (역변환)"""
        u = 1.0 - rng.random(int(count))
        return self._pseudo_inverse_values(u)

    def describe(self) -> Dict[str, Any]:
        return {
            'kind': self.kind.value,
            'params': list(self.params) if self.kind is not MarginalKind.EXPLICIT else None,
            'support_bound': self.support_bound,
            'tail_mass': self.tail_mass,
            'mean': self.mean(),
        }
