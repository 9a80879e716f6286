"""
코퓰라 평가기 베이스 클래스
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Tuple

import numpy as np

from errors import ParameterError, UnsupportedOperationError
from numerics import clamp_unit

# partial1 유한차분 간격
_FD_STEP = 1e-6
# 조건부 분포 이분법 종료 폭
_BISECTION_TOL = 1e-12


def as_points(points, dimension: int) -> Tuple[np.ndarray, bool]:
    """
    (dim,) 또는 (m, dim) 입력을 (m, dim) 배열로 바꿉니다.

    Returns:
        (2차원 배열, 입력이 단일 점이었는지 여부)
    """
    array = np.asarray(points, dtype=float)
    single = array.ndim == 1
    if single:
        array = array[np.newaxis, :]
    if array.ndim != 2 or array.shape[1] != dimension:
        raise ParameterError(
            f"점의 차원이 맞지 않습니다: shape {np.shape(points)}, 기대 차원 {dimension}"
        )
    if np.any(np.isnan(array)) or np.any(array < 0.0) or np.any(array > 1.0):
        raise ParameterError("코퓰라 좌표는 [0, 1] 안에 있어야 합니다.")
    return array, single


def _unwrap(values: np.ndarray, single: bool):
    return float(values[0]) if single else values


class CopulaBase(ABC):
    """
    코퓰라 평가기 베이스 클래스.

    공개 메서드(cdf, density, log_density, partial1, sample, conditional_sample)는
    입력 검증과 경계 규칙을 처리하고, 하위 클래스는 _cdf, _log_density 등
    배열 단위 구현만 제공합니다.
    """

    def __init__(self, spec):
        self.spec = spec
        self.dimension = spec.dimension
        self.theta = spec.theta

    @abstractmethod
    def get_family_name(self) -> str:
        """패밀리 이름 반환 (예: 'gaussian', 'clayton')"""
        pass

    @abstractmethod
    def _cdf(self, points: np.ndarray) -> np.ndarray:
        """(m, dim) → (m,) 결합 CDF. 0 좌표가 없는 행만 들어옵니다."""
        pass

    @abstractmethod
    def _log_density(self, points: np.ndarray) -> np.ndarray:
        """(m, dim) → (m,) 로그 밀도. 좌표는 이미 밴드 안으로 잘려 있습니다."""
        pass

    @abstractmethod
    def _sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """(count, dim) 표본"""
        pass

    def _partial1(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """∂C/∂u 기본 구현: CDF 중심 유한차분"""
        h = np.minimum(_FD_STEP, 0.5 * np.minimum(u, 1.0 - u))
        upper = np.column_stack([u + h, v])
        lower = np.column_stack([u - h, v])
        return (self._cdf(upper) - self._cdf(lower)) / (2.0 * h)

    def _conditional_sample(self, u0: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """기본 구현: 2차원에서 partial1(u0, ·) 을 이분법으로 역변환"""
        if self.dimension != 2:
            raise UnsupportedOperationError(
                f"{self.get_family_name()} 조건부 표본은 dimension {self.dimension} 을 지원하지 않습니다."
            )
        target = rng.random(u0.shape[0])
        lo = np.zeros_like(target)
        hi = np.ones_like(target)
        while np.max(hi - lo) > _BISECTION_TOL:
            mid = 0.5 * (lo + hi)
            below = self._partial1(u0, mid[:, np.newaxis]) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return (0.5 * (lo + hi))[:, np.newaxis]

    # ------------------------------------------------------------------
    # 공개 API
    # ------------------------------------------------------------------

    def cdf(self, points):
        """C(w). 어느 좌표든 0 이면 정확히 0."""
        array, single = as_points(points, self.dimension)
        out = np.zeros(array.shape[0])
        live = np.all(array > 0.0, axis=1)
        if np.any(live):
            with np.errstate(divide='ignore', over='ignore', invalid='ignore'):
                out[live] = self._cdf(array[live])
        return _unwrap(np.clip(out, 0.0, 1.0), single)

    def log_density(self, points):
        """log c(w). 좌표는 (1e-12, 1-1e-12) 로 잘라서 평가합니다."""
        array, single = as_points(points, self.dimension)
        with np.errstate(divide='ignore', over='ignore', invalid='ignore'):
            values = self._log_density(clamp_unit(array))
        return _unwrap(values, single)

    def density(self, points):
        """c(w) = exp(log c(w))"""
        return np.exp(self.log_density(points))

    def partial1(self, u, v):
        """
        ∂C/∂u (u, v) = P[V ≤ v | U = u].

        Args:
            u: 스칼라 또는 (m,)
            v: (dim-1,) 또는 (m, dim-1)

        Returns:
            스칼라 또는 (m,). v=1 에서 정확히 1, 어느 v_i 가 0 이면 정확히 0.
        """
        u_array = np.atleast_1d(np.asarray(u, dtype=float))
        v_array, single = as_points(v, self.dimension - 1)
        single = single and np.ndim(u) == 0
        if u_array.shape[0] == 1 and v_array.shape[0] > 1:
            u_array = np.repeat(u_array, v_array.shape[0])
        if v_array.shape[0] == 1 and u_array.shape[0] > 1:
            v_array = np.repeat(v_array, u_array.shape[0], axis=0)
        if u_array.shape[0] != v_array.shape[0]:
            raise ParameterError("partial1 의 u 와 v 개수가 다릅니다.")
        if np.any(np.isnan(u_array)) or np.any(u_array < 0.0) or np.any(u_array > 1.0):
            raise ParameterError("partial1 의 u 는 [0, 1] 안에 있어야 합니다.")

        out = np.zeros(u_array.shape[0])
        zero = np.any(v_array <= 0.0, axis=1)
        one = np.all(v_array >= 1.0, axis=1)
        out[one] = 1.0
        live = ~(zero | one)
        if np.any(live):
            with np.errstate(divide='ignore', over='ignore', invalid='ignore'):
                out[live] = self._partial1(clamp_unit(u_array[live]), v_array[live])
        return _unwrap(np.clip(out, 0.0, 1.0), single)

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """(count, dim) 표본"""
        if count < 0:
            raise ParameterError(f"표본 수는 음수일 수 없습니다: {count}")
        if count == 0:
            return np.empty((0, self.dimension))
        with np.errstate(divide='ignore', over='ignore', invalid='ignore'):
            return self._sample(rng, int(count))

    def conditional_sample(self, u0, rng: np.random.Generator) -> np.ndarray:
        """
        U=u0 조건부로 나머지 dim-1 좌표를 뽑습니다.

        Args:
            u0: (m,) 조건값 배열 (행마다 하나의 표본)

        Returns:
            (m, dim-1)
        """
        u_array = np.atleast_1d(np.asarray(u0, dtype=float))
        if u_array.ndim != 1:
            raise ParameterError("conditional_sample 의 u0 는 1차원 배열이어야 합니다.")
        if np.any(np.isnan(u_array)) or np.any(u_array < 0.0) or np.any(u_array > 1.0):
            raise ParameterError("conditional_sample 의 u0 는 [0, 1] 안에 있어야 합니다.")
        if u_array.size == 0:
            return np.empty((0, self.dimension - 1))
        with np.errstate(divide='ignore', over='ignore', invalid='ignore'):
            return self._conditional_sample(clamp_unit(u_array), rng)

    def is_independence(self) -> bool:
        return False

    def describe(self) -> Dict[str, Any]:
        """로그/리포트용 메타데이터"""
        return {
            'family': self.get_family_name(),
            'dimension': self.dimension,
            'theta': self.theta,
            'dof': self.spec.dof,
            'independence': self.is_independence(),
        }
