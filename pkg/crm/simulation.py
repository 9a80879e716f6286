"""
CRM Monte Carlo 시뮬레이터
- simulate_crm: 조건부 다변량정규 직접 표본
- simulate_two_part: 조건부 i.i.d. N(μ_n, σ²(1-ρ1²)) 심도 (두 단계 CRM)
- simulate_crm_via_copula: n 별 테두리 Gaussian 코퓰라 + MixedModel 조건부 표본
"""

import logging
from typing import Callable, Dict, Tuple

import numpy as np

from copulas import CopulaSpec, Family
from margins import NormalMarginal
from numerics import batch_sizes, seed_stream
from transform import MixedModel

from .model import CrmSpec, conditional_severity_law, frequency_location

logger = logging.getLogger(__name__)

DEFAULT_PATH_BATCH = 50_000

ClaimSampler = Callable[[int, np.random.Generator, int], np.ndarray]


def _simulate(spec: CrmSpec, seed: int, path_count: int, stream: int,
              claim_totals: ClaimSampler, batch_size: int) -> np.ndarray:
    out = np.zeros(int(path_count))
    offset = 0
    for batch, size in batch_sizes(path_count, batch_size):
        rng = seed_stream(seed, stream, batch)
        counts = spec.marginal.sample(rng, size)
        totals = np.zeros(size)
        for n in np.unique(counts):
            if n == 0:
                continue
            rows = counts == n
            totals[rows] = claim_totals(int(n), rng, int(rows.sum()))
        out[offset:offset + size] = totals
        offset += size
        logger.debug("CRM simulation stream %d batch %d done", stream, batch)
    return out


def simulate_crm(spec: CrmSpec, seed: int, path_count: int,
                 batch_size: int = DEFAULT_PATH_BATCH) -> np.ndarray:
    """N ~ F, (Y_1..Y_N) | N ~ conditional_severity_law, S = ΣY"""
    factors: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}

    def claim_totals(n: int, rng: np.random.Generator, rows: int) -> np.ndarray:
        if n not in factors:
            law = conditional_severity_law(spec, n)
            factors[n] = (law.mean_vector, np.linalg.cholesky(law.covariance))
        mean, chol = factors[n]
        claims = mean + rng.standard_normal((rows, n)) @ chol.T
        return claims.sum(axis=1)

    return _simulate(spec, seed, path_count, 0, claim_totals, batch_size)


def simulate_two_part(spec: CrmSpec, seed: int, path_count: int,
                      batch_size: int = DEFAULT_PATH_BATCH) -> np.ndarray:
    """N ~ F, Y_i | N=n i.i.d. N(μ_n, σ²(1-ρ1²))"""
    scale = spec.sigma * np.sqrt(1.0 - spec.structure.rho1 ** 2)

    def claim_totals(n: int, rng: np.random.Generator, rows: int) -> np.ndarray:
        claims = rng.normal(frequency_location(spec, n), scale, (rows, n))
        return claims.sum(axis=1)

    return _simulate(spec, seed, path_count, 1, claim_totals, batch_size)


def simulate_crm_via_copula(spec: CrmSpec, seed: int, path_count: int,
                            batch_size: int = DEFAULT_PATH_BATCH) -> np.ndarray:
    """
    일반 변환 코퓰라 경로로 S 를 뽑습니다.

    N=n 이면 (n+1)차원 Gaussian 코퓰라 (상관행렬 build_sigma(n)) 와
    N(ξ, σ²) 주변분포로 MixedModel 을 만들고 sample_conditional 로 심도를 뽑습니다.
    """
    models: Dict[int, MixedModel] = {}
    severity = NormalMarginal(spec.xi, spec.sigma)

    def claim_totals(n: int, rng: np.random.Generator, rows: int) -> np.ndarray:
        if n not in models:
            copula = CopulaSpec(Family.GAUSSIAN, n + 1, correlation=spec.structure.build_sigma(n))
            models[n] = MixedModel(spec.marginal, [severity] * n, copula, spec.alpha)
        return models[n].sample_conditional(n, rng, rows).sum(axis=1)

    return _simulate(spec, seed, path_count, 2, claim_totals, batch_size)


def empirical_cdf(samples: np.ndarray, probes) -> Tuple[np.ndarray, np.ndarray]:
    """probe 점에서의 경험 CDF 와 이항 표준오차"""
    samples = np.sort(np.asarray(samples, dtype=float))
    probes = np.atleast_1d(np.asarray(probes, dtype=float))
    values = np.searchsorted(samples, probes, side='right') / samples.size
    errors = np.sqrt(values * (1.0 - values) / samples.size)
    return values, errors
