"""
변환 코퓰라 기반 집단위험모형 (CRM)

N ~ F, (Y_1..Y_N) | N=n ~ MVN((ξ + σρ1Φ⁻¹(F_α(n)))·1_n, σ²(Σ_{ρ2}^{[n,l]} - ρ1²J))
S = Y_1 + ... + Y_N,  S | N=n ~ N(n·μ_n, n²·σ_n²)
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy import optimize

from errors import NotPositiveDefiniteError, ParameterError, UndefinedConditionalError
from margins import DiscreteMarginal
from numerics import norm_cdf, norm_pdf, norm_ppf

from .structure import CorrelationStructure, StructureKind

logger = logging.getLogger(__name__)

# 절단 꼬리 경고 임계값
TAIL_WARNING_THRESHOLD = 1e-9
# 두 단계 CRM 동치 판정 허용오차
EQUIVALENCE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SeverityLaw:
    """N=n 조건부 심도 벡터의 정규분포"""
    n: int
    mean_vector: np.ndarray
    covariance: np.ndarray


@dataclass(frozen=True)
class CrmSpec:
    """
    변환 코퓰라 기반 CRM 설정.

    - 교환가능 구조: ρ1² ≤ ρ2 < 1 (모든 n 에서 PD, 등호는 두 단계 CRM 동치)
    - 자기회귀 구조: F 가 유한 지지 κ₀ 를 갖고 k=κ₀ 에서 테두리 행렬이 PD
    - α ∈ (0, 1)
    """
    marginal: DiscreteMarginal
    xi: float
    sigma: float
    structure: CorrelationStructure
    alpha: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, 'xi', float(self.xi))
        object.__setattr__(self, 'sigma', float(self.sigma))
        object.__setattr__(self, 'alpha', float(self.alpha))
        if not self.sigma > 0:
            raise ParameterError(f"sigma 는 양수여야 합니다: {self.sigma}")
        if not 0.0 < self.alpha < 1.0:
            raise ParameterError(f"CRM 의 α 는 (0, 1) 이어야 합니다: {self.alpha}")

        structure = self.structure
        if structure.kind is StructureKind.EXCHANGEABLE:
            if not structure.rho1 ** 2 <= structure.rho2:
                raise NotPositiveDefiniteError(
                    f"교환가능 구조는 ρ1² ≤ ρ2 가 필요합니다: "
                    f"ρ1²={structure.rho1 ** 2:.6f}, ρ2={structure.rho2:.6f}",
                    {'rho1_sq': structure.rho1 ** 2, 'rho2': structure.rho2},
                )
            if self.marginal.tail_mass > TAIL_WARNING_THRESHOLD:
                logger.warning("%s 절단 꼬리 질량 %.3e", self.marginal.label, self.marginal.tail_mass)
        else:
            kappa0 = self.marginal.essential_supremum
            if kappa0 is None:
                raise ParameterError("자기회귀 구조는 유한 지지를 갖는 빈도 분포가 필요합니다.")
            diagnostic = structure.check_pd(kappa0)
            if not diagnostic.is_pd:
                raise NotPositiveDefiniteError(
                    f"{structure.label}: k=κ₀={kappa0} 에서 테두리 행렬이 PD 가 아닙니다.",
                    diagnostic.to_dict(),
                )

    @property
    def max_claims(self) -> int:
        return self.marginal.support_bound

    @property
    def label(self) -> str:
        return (f"CRM[{self.marginal.label}, ξ={self.xi:g}, σ={self.sigma:g}, "
                f"{self.structure.label}, α={self.alpha:g}]")

    @cached_property
    def severity_table(self) -> Dict[str, np.ndarray]:
        """n = 1..N* 에 대한 pmf, μ_n, σ_n²"""
        counts = np.arange(1, self.max_claims + 1)
        weights = self.marginal.pmf(counts) if counts.size else np.zeros(0)
        mus = np.array([average_severity_params(self, int(n))[0] for n in counts])
        variances = np.array([average_severity_params(self, int(n))[1] for n in counts])
        return {'n': counts, 'pmf': weights, 'mu': mus, 'var': variances}

    def describe(self) -> Dict[str, Any]:
        return {
            'marginal': self.marginal.describe(),
            'xi': self.xi,
            'sigma': self.sigma,
            'structure': self.structure.kind.value,
            'rho1': self.structure.rho1,
            'rho2': self.structure.rho2,
            'alpha': self.alpha,
        }


def _check_claims(spec: CrmSpec, n: int) -> int:
    if int(n) != n or n < 1:
        raise ParameterError(f"청구 건수 n 은 1 이상의 정수여야 합니다: {n}")
    return int(n)


def frequency_location(spec: CrmSpec, n: int) -> float:
    """μ_n = ξ + σρ1Φ⁻¹(F_α(n))"""
    anchor = spec.marginal.f_alpha(spec.alpha, n)
    return spec.xi + spec.sigma * spec.structure.rho1 * float(norm_ppf(anchor))


def conditional_severity_law(spec: CrmSpec, n: int) -> SeverityLaw:
    """
    N=n 조건부 (Y_1..Y_n) 의 정규분포.

    Raises:
        UndefinedConditionalError: P[N=n] = 0
    """
    n = _check_claims(spec, n)
    if spec.marginal.pmf(n) <= 0.0:
        raise UndefinedConditionalError(f"P[N={n}] = 0 이므로 조건부 심도 분포가 정의되지 않습니다.")
    rho1 = spec.structure.rho1
    mean = np.full(n, frequency_location(spec, n))
    covariance = spec.sigma ** 2 * (spec.structure.block(n) - rho1 ** 2 * np.ones((n, n)))
    return SeverityLaw(n, mean, covariance)


def ar_variance_literal(spec: CrmSpec, n: int) -> float:
    """
    자기회귀 구조 평균 심도 분산의 축약식 값
    (1 - nρ1²)/n + (2/n²)·ρ2²/(1-ρ2²)·(ρ2^{n-1} - 1)

    σ² 인자가 없고 행렬합과 일치하지 않으므로 불일치 기록에만 씁니다.
    """
    n = _check_claims(spec, n)
    rho1, rho2 = spec.structure.rho1, spec.structure.rho2
    return ((1.0 - n * rho1 ** 2) / n
            + 2.0 / n ** 2 * rho2 ** 2 / (1.0 - rho2 ** 2) * (rho2 ** (n - 1) - 1.0))


def average_severity_params(spec: CrmSpec, n: int) -> Tuple[float, float]:
    """
    (Y_1 + ... + Y_n)/n | N=n ~ N(μ_n, σ_n²) 의 (μ_n, σ_n²).

    교환가능: σ_n² = σ²((n-1)ρ2 - nρ1² + 1)/n
    자기회귀: σ_n² = 1ᵀ Cov 1 / n² (공분산 행렬합)
    """
    n = _check_claims(spec, n)
    mu = frequency_location(spec, n)
    rho1, rho2 = spec.structure.rho1, spec.structure.rho2
    if spec.structure.kind is StructureKind.EXCHANGEABLE:
        variance = spec.sigma ** 2 * ((n - 1) * rho2 - n * rho1 ** 2 + 1.0) / n
    else:
        variance = spec.sigma ** 2 * (spec.structure.block_sum(n) - n * n * rho1 ** 2) / (n * n)
    return mu, float(variance)


def ar_discrepancy_log(spec: CrmSpec) -> List[Dict[str, float]]:
    """자기회귀 σ_n² 의 행렬합 값과 축약식 값을 n 별로 비교합니다."""
    if spec.structure.kind is not StructureKind.AUTOREGRESSIVE:
        return []
    rows = []
    for n in range(1, spec.max_claims + 1):
        exact = average_severity_params(spec, n)[1]
        literal = ar_variance_literal(spec, n)
        rows.append({'n': n, 'matrix_sum': exact, 'literal': literal, 'difference': literal - exact})
    mismatched = [row['n'] for row in rows if abs(row['difference']) > 1e-12]
    if mismatched:
        logger.warning(
            "%s: 자기회귀 σ_n² 축약식 값이 행렬합과 다릅니다 (n=%s). 행렬합 값을 사용합니다.",
            spec.label, mismatched,
        )
    return rows


def _warn_tail(spec: CrmSpec) -> None:
    if spec.marginal.tail_mass > TAIL_WARNING_THRESHOLD:
        logger.warning("%s: 절단 꼬리 질량 %.3e 이 집계에서 빠집니다.",
                       spec.label, spec.marginal.tail_mass)


def aggregate_cdf(spec: CrmSpec, s):
    """
    P[S ≤ s] = F(0)·1{s ≥ 0} + Σ_{n≥1} Φ((s/n - μ_n)/σ_n)·P[N=n]

    s=0 에 크기 F(0) 인 원자를 갖고 우연속입니다.
    """
    _warn_tail(spec)
    values = np.atleast_1d(np.asarray(s, dtype=float))
    table = spec.severity_table
    out = np.where(values >= 0.0, spec.marginal.pmf(0), 0.0)
    if table['n'].size:
        counts = table['n'][np.newaxis, :]
        z = (values[:, np.newaxis] / counts - table['mu']) / np.sqrt(table['var'])
        out = out + norm_cdf(z) @ table['pmf']
    out = np.clip(out, 0.0, 1.0)
    return float(out[0]) if np.ndim(s) == 0 else out


def aggregate_density(spec: CrmSpec, s):
    """S 분포의 연속 부분 밀도 Σ_{n≥1} P[N=n]·φ((s/n - μ_n)/σ_n)/(n σ_n)"""
    values = np.atleast_1d(np.asarray(s, dtype=float))
    table = spec.severity_table
    out = np.zeros(values.shape)
    if table['n'].size:
        counts = table['n'][np.newaxis, :]
        scale = np.sqrt(table['var'])
        z = (values[:, np.newaxis] / counts - table['mu']) / scale
        out = (norm_pdf(z) / (counts * scale)) @ table['pmf']
    return float(out[0]) if np.ndim(s) == 0 else out


def aggregate_mean(spec: CrmSpec) -> float:
    """E[S] = Σ n μ_n P[N=n]"""
    _warn_tail(spec)
    table = spec.severity_table
    return float(np.sum(table['n'] * table['mu'] * table['pmf']))


def aggregate_var(spec: CrmSpec) -> float:
    """Var[S] = Σ (n²σ_n² + n²μ_n²) P[N=n] - E[S]²"""
    table = spec.severity_table
    n_sq = table['n'].astype(float) ** 2
    second = float(np.sum(n_sq * (table['var'] + table['mu'] ** 2) * table['pmf']))
    return max(second - aggregate_mean(spec) ** 2, 0.0)


def aggregate_quantile(spec: CrmSpec, p: float) -> float:
    """
    VaR_p(S) = inf{s : P[S ≤ s] ≥ p}

    p 가 0 의 원자 구간 (P[S<0], P[S≤0]] 에 있으면 0 을 돌려줍니다.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ParameterError(f"분위수 수준 p 는 (0, 1) 이어야 합니다: {p}")
    at_zero = aggregate_cdf(spec, 0.0)
    below_zero = at_zero - spec.marginal.pmf(0)
    if below_zero < p <= at_zero:
        return 0.0

    spread = np.sqrt(aggregate_var(spec)) + abs(aggregate_mean(spec)) + 1.0
    lo, hi = -spread, spread
    while aggregate_cdf(spec, lo) > p:
        lo *= 2.0
    while aggregate_cdf(spec, hi) < p:
        hi *= 2.0
    if p <= at_zero:
        hi = min(hi, -1e-300)
    else:
        lo = max(lo, 0.0)
    return float(optimize.brentq(lambda s: aggregate_cdf(spec, s) - p, lo, hi, xtol=1e-12))


@dataclass(frozen=True)
class EquivalenceReport:
    """두 단계 CRM 동치성 검사 결과"""
    is_equivalent: bool
    offdiag_max: float
    probe_bound: int
    sigma0_sq: Optional[float] = None
    mu: Dict[int, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'is_equivalent': self.is_equivalent,
            'offdiag_max': self.offdiag_max,
            'probe_bound': self.probe_bound,
            'sigma0_sq': self.sigma0_sq,
            'mu': dict(self.mu),
        }


def two_part_equivalence_check(spec: CrmSpec, probe_bound: Optional[int] = None) -> EquivalenceReport:
    """
    n ≤ probe_bound 에서 조건부 공분산 σ²(Σ_{ρ2}^{[n,1]} - ρ1²J) 가 대각인지 검사합니다.

    대각이면 (ρ2 = ρ1²) 심도가 조건부 i.i.d. N(μ_n, σ²(1-ρ1²)) 인 두 단계 CRM 과 같습니다.
    """
    if spec.structure.kind is not StructureKind.EXCHANGEABLE:
        raise ParameterError("두 단계 CRM 동치 검사는 교환가능 구조에서만 정의됩니다.")
    bound = spec.max_claims if probe_bound is None else min(int(probe_bound), spec.max_claims)
    rho1 = spec.structure.rho1

    offdiag_max = 0.0
    for n in range(2, bound + 1):
        covariance = spec.sigma ** 2 * (spec.structure.block(n) - rho1 ** 2 * np.ones((n, n)))
        off = covariance[~np.eye(n, dtype=bool)]
        offdiag_max = max(offdiag_max, float(np.max(np.abs(off))))

    equivalent = offdiag_max <= EQUIVALENCE_TOLERANCE
    if not equivalent:
        return EquivalenceReport(False, offdiag_max, bound)
    mus = {n: frequency_location(spec, n) for n in range(1, bound + 1)}
    return EquivalenceReport(True, offdiag_max, bound, spec.sigma ** 2 * (1.0 - rho1 ** 2), mus)
