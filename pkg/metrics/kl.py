"""
KL divergence D(P, Q) = E_P[log p - log q]
- kl_divergence: 임의의 (P 표본기, log p, log q) 에 대한 Monte Carlo 추정
- kl_transformed: P = C, Q = 𝔠_{α,F,C}
- kl_transformed_quadrature: 2차원 텐서곱 Gauss-Legendre 교차검증
"""

import logging
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from errors import NumericalError, UnsupportedOperationError
from numerics import BatchMoments, batch_sizes, seed_stream, tensor_rule
from transform import TransformedCopula

from .estimates import EstimationMethod, KlEstimate, exact_kl_zero

logger = logging.getLogger(__name__)

DEFAULT_BATCH_SIZE = 100_000
DEFAULT_QUADRATURE_ORDER = 256

Sampler = Callable[[np.random.Generator, int], np.ndarray]
LogDensity = Callable[[np.ndarray], np.ndarray]


def kl_divergence(
    p_log_density: LogDensity,
    p_sampler: Sampler,
    q_log_density: LogDensity,
    sample_count: int,
    seed: int,
    cell: Sequence[int] = (),
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> KlEstimate:
    """
    P 에서 표본을 뽑아 log(p/q) 의 평균을 구합니다.

    배치마다 seed_stream(seed, *cell, batch) 로 독립 Generator 를 쓰므로
    결과는 배치 실행 순서와 무관합니다.

    Raises:
        NumericalError: 표본점에서 q 가 0 이하이거나 log-ratio 가 유한하지 않을 때
    """
    moments = BatchMoments()
    for batch, size in batch_sizes(sample_count, batch_size):
        rng = seed_stream(seed, *cell, batch)
        points = p_sampler(rng, size)
        log_p = np.asarray(p_log_density(points), dtype=float)
        log_q = np.asarray(q_log_density(points), dtype=float)
        if not np.all(np.isfinite(log_q)):
            bad = int(np.count_nonzero(~np.isfinite(log_q)))
            raise NumericalError(f"Q 밀도가 {bad} 개 표본점에서 0 이하이거나 유한하지 않습니다.")
        ratio = log_p - log_q
        if not np.all(np.isfinite(ratio)):
            raise NumericalError("log(p/q) 가 유한하지 않은 표본이 있습니다.")
        moments.add(ratio)
        logger.debug("kl batch %d/%s: running mean %.6f", batch, cell, moments.mean)

    if moments.count == 0:
        return KlEstimate(0.0, 0.0, 0, EstimationMethod.MONTE_CARLO)
    return KlEstimate(moments.mean, moments.std_error, moments.count, EstimationMethod.MONTE_CARLO)


def kl_transformed(
    transformed: TransformedCopula,
    sample_count: int,
    seed: int,
    cell: Sequence[int] = (),
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> KlEstimate:
    """D(C, 𝔠_{α,F,C}). 기본 코퓰라가 독립이면 정확히 0."""
    copula = transformed.base.evaluator
    if copula.is_independence():
        return exact_kl_zero()

    def q_log_density(points: np.ndarray) -> np.ndarray:
        return transformed.log_density(points[:, 0], points[:, 1:])

    return kl_divergence(
        copula.log_density, copula.sample, q_log_density,
        sample_count, seed, cell, batch_size,
    )


def kl_transformed_quadrature(
    transformed: TransformedCopula,
    order: int = DEFAULT_QUADRATURE_ORDER,
) -> KlEstimate:
    """
    ∫∫ c(u,v) (log c(u,v) - log c(⌈u⌉,v)) du dv 를 텐서곱 Gauss-Legendre 로 계산합니다.

    u 축은 F 의 점프 위치 F(n) 에서 나눠 각 조각에서 ⌈u⌉ 가 상수가 되게 합니다.
    2차원 전용.
    """
    if transformed.dimension != 2:
        raise UnsupportedOperationError("구적 KL 은 2차원 변환 코퓰라만 지원합니다.")
    copula = transformed.base.evaluator
    if copula.is_independence():
        return exact_kl_zero()

    marginal = transformed.marginal
    breaks = marginal.cdf_table[(marginal.cdf_table > 0.0) & (marginal.cdf_table < 1.0)]
    u_pieces, (v_nodes, v_weights) = tensor_rule(order, order, breaks)

    total = 0.0
    for u_nodes, u_weights in u_pieces:
        lifted = marginal.ceiling(transformed.alpha, float(np.median(u_nodes)))
        log_q = copula.log_density(np.column_stack([np.full(v_nodes.size, lifted), v_nodes]))
        uu, vv = np.meshgrid(u_nodes, v_nodes, indexing='ij')
        log_p = copula.log_density(np.column_stack([uu.ravel(), vv.ravel()])).reshape(uu.shape)
        integrand = np.exp(log_p) * (log_p - log_q[np.newaxis, :])
        total += float(u_weights @ integrand @ v_weights)

    if not np.isfinite(total):
        raise NumericalError("구적 KL 값이 유한하지 않습니다.")
    return KlEstimate(total, 0.0, order * order * len(u_pieces), EstimationMethod.QUADRATURE)


def empirical_kendall_tau(points: np.ndarray) -> float:
    """2차원 표본의 Kendall τ (표본기 검증용)"""
    points = np.asarray(points, dtype=float)
    tau, _ = stats.kendalltau(points[:, 0], points[:, 1])
    return float(tau)
