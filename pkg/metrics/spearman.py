"""
Spearman ρ
- ρ(P) = 12·E[U V] - 3 (코퓰라, 주변분포 균일)
- ρ(Q) = 12·E[U·F_T(V)] - 3 (변환 분포 𝔈, 둘째 주변분포 F_T 는 해석적으로 계산)
"""

import logging
from typing import Sequence

import numpy as np

from copulas import CopulaSpec
from errors import NumericalError, UnsupportedOperationError
from numerics import BatchMoments, batch_sizes, seed_stream
from transform import TransformedCopula

from .estimates import EstimationMethod, RhoEstimate, exact_rho_zero
from .kl import DEFAULT_BATCH_SIZE

logger = logging.getLogger(__name__)


def _finish(moments: BatchMoments) -> RhoEstimate:
    value = 12.0 * moments.mean - 3.0
    if not np.isfinite(value):
        raise NumericalError("Spearman ρ 추정치가 유한하지 않습니다.")
    return RhoEstimate(
        float(np.clip(value, -1.0, 1.0)), 12.0 * moments.std_error,
        moments.count, EstimationMethod.MONTE_CARLO,
    )


def spearman_rho_copula(
    spec: CopulaSpec,
    sample_count: int,
    seed: int,
    cell: Sequence[int] = (),
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> RhoEstimate:
    """2차원 코퓰라의 ρ = 12·E[UV] - 3"""
    if spec.dimension != 2:
        raise UnsupportedOperationError("Spearman ρ 는 2차원 코퓰라만 지원합니다.")
    copula = spec.evaluator
    if copula.is_independence():
        return exact_rho_zero()

    moments = BatchMoments()
    for batch, size in batch_sizes(sample_count, batch_size):
        points = copula.sample(seed_stream(seed, *cell, batch), size)
        moments.add(points[:, 0] * points[:, 1])
    return _finish(moments)


def spearman_rho_transformed(
    transformed: TransformedCopula,
    sample_count: int,
    seed: int,
    cell: Sequence[int] = (),
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> RhoEstimate:
    """
    변환 분포 𝔈 의 ρ = 12·E[U·F_T(V)] - 3.

    (U, V) 는 𝔈 에서 뽑고 F_T 는 second_margin_cdf 로 계산합니다.
    """
    if transformed.dimension != 2:
        raise UnsupportedOperationError("Spearman ρ 는 2차원 변환 코퓰라만 지원합니다.")
    if transformed.base.evaluator.is_independence():
        return exact_rho_zero()

    moments = BatchMoments()
    for batch, size in batch_sizes(sample_count, batch_size):
        points = transformed.sample(seed_stream(seed, *cell, batch), size)
        margin = transformed.second_margin_cdf(points[:, 1:])
        moments.add(points[:, 0] * margin)
        logger.debug("rho(Q) batch %d/%s", batch, cell)
    return _finish(moments)
