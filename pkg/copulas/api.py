"""
CopulaSpec 을 받는 모듈 수준 함수들
seed 인자는 정수 또는 numpy Generator 를 받습니다.
"""

from typing import Union

import numpy as np

from .spec import CopulaSpec

SeedLike = Union[int, np.random.Generator, None]


def as_generator(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def copula_cdf(spec: CopulaSpec, point):
    """C(w), w ∈ [0,1]^dim (단일 점 또는 (m, dim))"""
    return spec.evaluator.cdf(point)


def copula_density(spec: CopulaSpec, point):
    """c(w). 좌표는 (1e-12, 1-1e-12) 밴드로 잘려 평가됩니다."""
    return spec.evaluator.density(point)


def log_density(spec: CopulaSpec, point):
    return spec.evaluator.log_density(point)


def partial1(spec: CopulaSpec, u, v):
    """∂C/∂u (u, v) = P[V ≤ v | U = u]"""
    return spec.evaluator.partial1(u, v)


def sample_copula(spec: CopulaSpec, seed: SeedLike, count: int) -> np.ndarray:
    """C 로부터 (count, dim) 표본"""
    return spec.evaluator.sample(as_generator(seed), count)


def conditional_sample(spec: CopulaSpec, u0, seed: SeedLike, count: int = None) -> np.ndarray:
    """
    U = u0 조건부 표본 (count, dim-1).

    u0 가 스칼라면 count 개를 같은 조건에서 뽑고, 배열이면 원소마다 한 개씩 뽑습니다.
    """
    u_array = np.asarray(u0, dtype=float)
    if u_array.ndim == 0:
        u_array = np.full(1 if count is None else int(count), float(u_array))
    return spec.evaluator.conditional_sample(u_array, as_generator(seed))
