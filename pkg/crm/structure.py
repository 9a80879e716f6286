"""
심도 상관 구조와 테두리 상관행렬
Σ^{[k,l]}_{ρ1,ρ2} = [[1, ρ1·1ᵀ], [ρ1·1, Σ^{[k,l]}_{ρ2}]]
- l=1 교환가능: 비대각 ρ2
- l=2 자기회귀: (i, j) 성분 ρ2^|i-j|
"""

import logging
from dataclasses import dataclass, asdict, field
from enum import Enum
from typing import Any, Dict

import numpy as np

from errors import NotPositiveDefiniteError, ParameterError

logger = logging.getLogger(__name__)


class StructureKind(Enum):
    EXCHANGEABLE = 'exchangeable'
    AUTOREGRESSIVE = 'autoregressive'

    @classmethod
    def parse(cls, value) -> 'StructureKind':
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {'exch': 'exchangeable', 'l1': 'exchangeable', '1': 'exchangeable',
                   'ar': 'autoregressive', 'ar1': 'autoregressive', 'l2': 'autoregressive',
                   '2': 'autoregressive'}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ParameterError(f"알 수 없는 상관 구조: {value} (exchangeable | autoregressive)")


@dataclass(frozen=True)
class PdDiagnostic:
    """
    check_pd 결과.

    is_pd: 정확한 Schur 여조건과 Cholesky 가 모두 통과
    schur_value: 1 - ρ1²·1ᵀ B⁻¹ 1 (B 는 심도 블록), 양수여야 PD
    uniform_condition: k 와 무관한 충분조건 (교환가능 ρ1² < ρ2 < 1)
    literal_value: 자기회귀 조건식을 축약식 그대로 계산한 값 1 - ρ1²(k(1-ρ2)+2ρ2)(1-ρ2)
    """
    k: int
    is_pd: bool
    schur_value: float
    block_pd: bool
    cholesky_ok: bool
    min_eigenvalue: float
    uniform_condition: bool
    literal_value: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class CorrelationStructure:
    """
    심도 상관 구조 (kind, ρ1, ρ2)

    교환가능 구조는 생성 시 ρ1² ≤ ρ2 를 요구합니다 (등호는 두 단계 CRM 경계).
    PD 진단 격자처럼 조건 밖의 쌍이 필요하면 unchecked() 를 사용합니다.
    """
    kind: StructureKind
    rho1: float
    rho2: float
    gated: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'kind', StructureKind.parse(self.kind))
        for name in ('rho1', 'rho2'):
            value = float(getattr(self, name))
            if not -1.0 < value < 1.0:
                raise ParameterError(f"{name} 는 (-1, 1) 이어야 합니다: {value}")
            object.__setattr__(self, name, value)
        if self.gated and self.violates_exchangeable_gate:
            raise NotPositiveDefiniteError(
                f"교환가능 구조는 ρ1² ≤ ρ2 가 필요합니다: "
                f"ρ1²={self.rho1 ** 2:.6f}, ρ2={self.rho2:.6f}",
                {'rho1_sq': self.rho1 ** 2, 'rho2': self.rho2},
            )

    @classmethod
    def unchecked(cls, kind, rho1: float, rho2: float) -> 'CorrelationStructure':
        """교환가능 ρ1² ≤ ρ2 검사 없이 생성 (check_pd 진단용)"""
        return cls(kind, rho1, rho2, gated=False)

    @property
    def violates_exchangeable_gate(self) -> bool:
        return self.kind is StructureKind.EXCHANGEABLE and self.rho1 ** 2 > self.rho2

    @property
    def label(self) -> str:
        return f"{self.kind.value}(ρ1={self.rho1:g}, ρ2={self.rho2:g})"

    def block(self, k: int) -> np.ndarray:
        """심도 블록 Σ^{[k,l]}_{ρ2} (k×k)"""
        k = int(k)
        if k < 0:
            raise ParameterError(f"k 는 0 이상이어야 합니다: {k}")
        if self.kind is StructureKind.EXCHANGEABLE:
            matrix = np.full((k, k), self.rho2)
            np.fill_diagonal(matrix, 1.0)
            return matrix
        lags = np.abs(np.subtract.outer(np.arange(k), np.arange(k)))
        return self.rho2 ** lags

    def block_sum(self, k: int) -> float:
        """1ᵀ Σ_{ρ2} 1"""
        return float(self.block(k).sum())

    def inverse_block_sum(self, k: int) -> float:
        """1ᵀ Σ_{ρ2}⁻¹ 1 (닫힌 꼴)"""
        rho2 = self.rho2
        if k == 0:
            return 0.0
        if self.kind is StructureKind.EXCHANGEABLE:
            return k / (1.0 + (k - 1) * rho2)
        return (k * (1.0 - rho2) + 2.0 * rho2) / (1.0 + rho2)

    def block_is_pd(self, k: int) -> bool:
        if self.kind is StructureKind.EXCHANGEABLE:
            return k <= 1 or (self.rho2 < 1.0 and 1.0 + (k - 1) * self.rho2 > 0.0)
        return True

    def assemble(self, k: int) -> np.ndarray:
        """검사 없이 테두리 행렬을 조립합니다."""
        k = int(k)
        matrix = np.eye(k + 1)
        if k == 0:
            return matrix
        matrix[0, 1:] = self.rho1
        matrix[1:, 0] = self.rho1
        matrix[1:, 1:] = self.block(k)
        return matrix

    def literal_ar_condition(self, k: int) -> float:
        """자기회귀 조건식의 축약식 값 1 - ρ1²(k(1-ρ2)+2ρ2)(1-ρ2)"""
        rho1, rho2 = self.rho1, self.rho2
        return 1.0 - rho1 ** 2 * (k * (1.0 - rho2) + 2.0 * rho2) * (1.0 - rho2)

    def check_pd(self, k: int) -> PdDiagnostic:
        """
        Σ^{[k,l]}_{ρ1,ρ2} 의 양의 정부호 여부.

        판정은 정확한 k-별 Schur 여조건 1 - ρ1²·1ᵀB⁻¹1 > 0 과 B 의 PD 여부이며,
        조립한 행렬의 Cholesky 로 교차검증합니다.
        """
        k = int(k)
        if k < 0:
            raise ParameterError(f"k 는 0 이상이어야 합니다: {k}")
        block_pd = self.block_is_pd(k)
        schur = 1.0 - self.rho1 ** 2 * self.inverse_block_sum(k) if block_pd else float('-inf')
        analytic = block_pd and schur > 0.0

        matrix = self.assemble(k)
        try:
            np.linalg.cholesky(matrix)
            cholesky_ok = True
        except np.linalg.LinAlgError:
            cholesky_ok = False
        min_eig = float(np.linalg.eigvalsh(matrix).min())
        if analytic != cholesky_ok:
            logger.warning(
                "%s k=%d: 해석적 PD 판정(%s)과 Cholesky(%s)가 다릅니다 (Schur %.3e)",
                self.label, k, analytic, cholesky_ok, schur,
            )

        if self.kind is StructureKind.EXCHANGEABLE:
            uniform = self.rho1 ** 2 < self.rho2 < 1.0
            literal = self.rho2 - self.rho1 ** 2
        else:
            literal = self.literal_ar_condition(k)
            uniform = literal > 0.0
            if uniform != analytic:
                logger.warning(
                    "%s k=%d: 축약 조건식 값 %.6f 와 정확한 Schur 판정(%s)이 다릅니다.",
                    self.label, k, literal, analytic,
                )

        return PdDiagnostic(
            k=k,
            is_pd=analytic and cholesky_ok,
            schur_value=float(schur),
            block_pd=block_pd,
            cholesky_ok=cholesky_ok,
            min_eigenvalue=min_eig,
            uniform_condition=uniform,
            literal_value=float(literal),
        )

    def build_sigma(self, k: int) -> np.ndarray:
        """
        (k+1)×(k+1) 테두리 상관행렬. k=0 이면 [[1]].

        Raises:
            NotPositiveDefiniteError: check_pd(k) 가 거짓이거나 교환가능 ρ1² > ρ2 일 때
        """
        diagnostic = self.check_pd(k)
        if self.violates_exchangeable_gate:
            raise NotPositiveDefiniteError(
                f"{self.label}: 교환가능 구조는 ρ1² ≤ ρ2 가 필요합니다 (k={k})",
                diagnostic.to_dict(),
            )
        if not diagnostic.is_pd:
            raise NotPositiveDefiniteError(
                f"{self.label} k={k}: 테두리 상관행렬이 양의 정부호가 아닙니다 "
                f"(Schur {diagnostic.schur_value:.6f})",
                diagnostic.to_dict(),
            )
        return self.assemble(k)


def build_sigma(structure: CorrelationStructure, k: int) -> np.ndarray:
    return structure.build_sigma(k)


def check_pd(structure: CorrelationStructure, k: int) -> PdDiagnostic:
    return structure.check_pd(k)
