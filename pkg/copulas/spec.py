"""
CopulaSpec - 파라메트릭 코퓰라 인스턴스 (family, dimension, parameters)
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Optional

import numpy as np

from errors import NotPositiveDefiniteError, ParameterError


class Family(Enum):
    """지원하는 코퓰라 패밀리"""
    INDEPENDENCE = 'independence'
    GAUSSIAN = 'gaussian'
    STUDENT_T = 'student_t'
    CLAYTON = 'clayton'
    GUMBEL = 'gumbel'
    FGM_PERTURBED = 'fgm_perturbed'

    @classmethod
    def parse(cls, value) -> 'Family':
        """'Gaussian', 'student-t', 'studentt' 같은 표기도 허용합니다."""
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace('-', '_').replace(' ', '_')
        aliases = {
            'studentt': 'student_t', 't': 'student_t', 'student': 'student_t',
            'normal': 'gaussian', 'fgm': 'fgm_perturbed', 'fgmperturbed': 'fgm_perturbed',
            'pi': 'independence', 'product': 'independence',
        }
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            valid = ', '.join(f.value for f in cls)
            raise ParameterError(f"알 수 없는 코퓰라 패밀리: {value} (사용 가능: {valid})")

    @property
    def is_elliptical(self) -> bool:
        return self in (Family.GAUSSIAN, Family.STUDENT_T)


def exchangeable_correlation(dimension: int, theta: float) -> np.ndarray:
    """대각 1, 비대각 theta 인 상관행렬"""
    matrix = np.full((dimension, dimension), float(theta))
    np.fill_diagonal(matrix, 1.0)
    return matrix


def validate_correlation(matrix: np.ndarray, dimension: int) -> np.ndarray:
    """대칭, 단위 대각, Cholesky 성공 여부를 검사하고 읽기 전용 사본을 돌려줍니다."""
    matrix = np.array(matrix, dtype=float)
    if matrix.shape != (dimension, dimension):
        raise ParameterError(
            f"상관행렬 크기 {matrix.shape} 가 차원 {dimension} 과 맞지 않습니다."
        )
    if not np.allclose(matrix, matrix.T, atol=1e-12):
        raise ParameterError("상관행렬이 대칭이 아닙니다.")
    if not np.allclose(np.diag(matrix), 1.0, atol=1e-12):
        raise ParameterError("상관행렬의 대각 성분이 1 이 아닙니다.")
    try:
        np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError:
        eigmin = float(np.linalg.eigvalsh(matrix).min())
        raise NotPositiveDefiniteError(
            "상관행렬이 양의 정부호가 아닙니다.", {'min_eigenvalue': eigmin}
        )
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True)
class CopulaSpec:
    """
    파라메트릭 코퓰라 인스턴스.

    dimension 은 전체 차원 d+1 (첫 좌표는 이산 변수 자리).
    theta: Gaussian/StudentT 상관, Clayton/Gumbel 모수, FGM 섭동 모수.
    correlation: 교환가능하지 않은 Gaussian/StudentT 용 전체 상관행렬.
    """
    family: Family
    dimension: int = 2
    theta: float = 0.0
    correlation: Optional[np.ndarray] = field(default=None, compare=False, repr=False)
    dof: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, 'family', Family.parse(self.family))
        object.__setattr__(self, 'theta', float(self.theta))
        if int(self.dimension) != self.dimension or self.dimension < 2:
            raise ParameterError(f"dimension 은 2 이상의 정수여야 합니다: {self.dimension}")
        object.__setattr__(self, 'dimension', int(self.dimension))

        family = self.family
        theta = self.theta
        if family.is_elliptical:
            if self.correlation is None:
                if not -1.0 < theta < 1.0:
                    raise ParameterError(f"{family.value} theta 는 (-1, 1) 이어야 합니다: {theta}")
                matrix = exchangeable_correlation(self.dimension, theta)
            else:
                matrix = self.correlation
            object.__setattr__(self, 'correlation', validate_correlation(matrix, self.dimension))
        elif self.correlation is not None:
            raise ParameterError(f"{family.value} 패밀리는 correlation 을 받지 않습니다.")

        if family is Family.CLAYTON and theta < 0:
            raise ParameterError(f"Clayton theta 는 0 이상이어야 합니다: {theta}")
        if family is Family.GUMBEL and theta < 1:
            raise ParameterError(f"Gumbel theta 는 1 이상이어야 합니다: {theta}")
        if family is Family.FGM_PERTURBED and not -1.0 <= theta <= 1.0:
            raise ParameterError(f"FGM theta 는 [-1, 1] 이어야 합니다: {theta}")

        if family is Family.STUDENT_T:
            if self.dof is None or not self.dof > 0:
                raise ParameterError("Student t 코퓰라는 양수 dof 가 필요합니다.")
            object.__setattr__(self, 'dof', float(self.dof))
        elif self.dof is not None:
            raise ParameterError("dof 는 Student t 코퓰라에서만 사용합니다.")

    @cached_property
    def evaluator(self):
        """패밀리별 평가기 (CopulaBase 하위 클래스) 인스턴스"""
        from .registry import build_copula
        return build_copula(self)

    def with_dimension(self, dimension: int) -> 'CopulaSpec':
        """같은 패밀리/모수의 교환가능 코퓰라를 다른 차원으로 만듭니다."""
        return CopulaSpec(self.family, dimension, self.theta, dof=self.dof)

    @property
    def label(self) -> str:
        text = f"{self.family.value}(d={self.dimension}, θ={self.theta:g}"
        if self.dof is not None:
            text += f", ν={self.dof:g}"
        return text + ")"
