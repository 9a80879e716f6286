"""
Gauss-Legendre 구적법
- gauss_legendre: [a, b] 위의 n점 규칙
- adaptive_gauss_legendre: 구간 이분 적응 구적 (불연속점에서 미리 분할)
- tensor_rule: 단위 정사각형 위의 텐서곱 규칙 (u축 분할점 지원)
"""

import logging
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import legendre

from errors import QuadratureError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=32)
def _reference_rule(n: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n: int, a: float = 0.0, b: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """[a, b] 위의 n점 Gauss-Legendre 노드와 가중치"""
    x, w = _reference_rule(int(n))
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def _split_points(a: float, b: float, breakpoints: Optional[Iterable[float]]) -> List[float]:
    points = [a, b]
    if breakpoints is not None:
        points.extend(float(p) for p in breakpoints if a < p < b)
    return sorted(set(points))


def adaptive_gauss_legendre(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rtol: float = 1e-8,
    atol: float = 1e-14,
    breakpoints: Optional[Iterable[float]] = None,
    order: int = 20,
    max_depth: int = 40,
    max_intervals: int = 20000,
) -> float:
    """
    ∫_a^b f(x) dx 를 적응 Gauss-Legendre 로 계산합니다.

    각 부분구간에서 order점과 2·order점 규칙의 차이를 오차 추정으로 쓰고,
    전체 허용오차를 넘는 구간만 이분합니다. f 는 벡터화되어 있어야 합니다.

    Raises:
        QuadratureError: 최대 깊이/구간 수에 도달해도 수렴하지 못한 경우
    """
    if b <= a:
        return 0.0

    def estimate(lo: float, hi: float) -> Tuple[float, float]:
        x1, w1 = gauss_legendre(order, lo, hi)
        x2, w2 = gauss_legendre(2 * order, lo, hi)
        coarse = float(np.dot(w1, f(x1)))
        fine = float(np.dot(w2, f(x2)))
        return fine, abs(fine - coarse)

    pending = []
    edges = _split_points(a, b, breakpoints)
    for lo, hi in zip(edges[:-1], edges[1:]):
        value, err = estimate(lo, hi)
        pending.append((lo, hi, value, err, 0))

    accepted_value = 0.0
    accepted_error = 0.0
    evaluated = len(pending)
    while pending:
        total = accepted_value + sum(item[2] for item in pending)
        tolerance = max(atol, rtol * abs(total))
        budget = tolerance * 0.5
        # 허용오차를 (구간 길이 비율로) 만족하는 구간은 확정
        still = []
        for lo, hi, value, err, depth in pending:
            share = budget * (hi - lo) / (b - a)
            if err <= max(share, atol):
                accepted_value += value
                accepted_error += err
            else:
                still.append((lo, hi, value, err, depth))
        if not still:
            break
        pending = []
        for lo, hi, value, err, depth in still:
            if depth >= max_depth or evaluated >= max_intervals:
                achieved = accepted_error + sum(item[3] for item in still)
                rel = achieved / max(abs(total), atol)
                raise QuadratureError(
                    f"adaptive Gauss-Legendre did not converge on [{a}, {b}]", rel
                )
            mid = 0.5 * (lo + hi)
            for sub_lo, sub_hi in ((lo, mid), (mid, hi)):
                sub_value, sub_err = estimate(sub_lo, sub_hi)
                pending.append((sub_lo, sub_hi, sub_value, sub_err, depth + 1))
                evaluated += 1
        logger.debug("quadrature refine: %d intervals pending", len(pending))

    return accepted_value


def tensor_rule(
    order_u: int,
    order_v: int,
    u_breakpoints: Optional[Sequence[float]] = None,
) -> Tuple[List[Tuple[np.ndarray, np.ndarray]], Tuple[np.ndarray, np.ndarray]]:
    """
    [0,1]² 텐서곱 규칙. u축은 분할점마다 order_u 점 규칙을 따로 둡니다.

    Returns:
        (u 조각별 (nodes, weights) 리스트, v축 (nodes, weights))
    """
    edges = _split_points(0.0, 1.0, u_breakpoints)
    u_pieces = [gauss_legendre(order_u, lo, hi) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]
    return u_pieces, gauss_legendre(order_v, 0.0, 1.0)
