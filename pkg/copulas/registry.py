"""
패밀리 → 평가기 클래스 매핑
"""

from typing import Dict, Type

from .base import CopulaBase
from .clayton import ClaytonCopula
from .fgm import FGMPerturbedCopula
from .gaussian import GaussianCopula
from .gumbel import GumbelCopula
from .independence import IndependenceCopula
from .spec import CopulaSpec, Family
from .student_t import StudentTCopula

COPULA_CLASSES: Dict[Family, Type[CopulaBase]] = {
    Family.INDEPENDENCE: IndependenceCopula,
    Family.GAUSSIAN: GaussianCopula,
    Family.STUDENT_T: StudentTCopula,
    Family.CLAYTON: ClaytonCopula,
    Family.GUMBEL: GumbelCopula,
    Family.FGM_PERTURBED: FGMPerturbedCopula,
}


def build_copula(spec: CopulaSpec) -> CopulaBase:
    """CopulaSpec 으로 평가기 인스턴스를 만듭니다."""
    return COPULA_CLASSES[spec.family](spec)
