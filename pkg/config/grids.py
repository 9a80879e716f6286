"""
수치 실험 격자 (α, Poisson 평균 λ, Kendall τ) 와 패밀리 표시 이름
"""

from typing import Dict, List

from copulas import Family, theta_from_tau

# α 격자
STANDARD_ALPHAS = [0.25, 0.5, 0.75, 1.0]

# Poisson 평균 λ 격자
STANDARD_POISSON_MEANS = [0.1, 0.5, 1.0, 5.0, 10.0]

# Kendall τ 격자 (Clayton/Gumbel 은 τ ≥ 0 만)
STANDARD_TAUS = [-0.8, -0.3, -0.1, 0.0, 0.1, 0.3, 0.8]

# 실험별 지원 패밀리
TABLE_FAMILIES: Dict[str, List[Family]] = {
    'kl-table': [Family.GAUSSIAN, Family.STUDENT_T, Family.CLAYTON, Family.GUMBEL],
    'rho-table': [Family.GAUSSIAN, Family.STUDENT_T, Family.CLAYTON, Family.GUMBEL],
    'kl3d-table': [Family.GAUSSIAN, Family.CLAYTON],
}

# 실험별 코퓰라 차원
TABLE_DIMENSIONS: Dict[str, int] = {
    'kl-table': 2,
    'rho-table': 2,
    'kl3d-table': 3,
}

DEFAULT_STUDENT_T_DOF = 4.0


def get_family_display_name(family) -> str:
    """패밀리의 표시 이름 반환"""
    names = {
        Family.INDEPENDENCE: 'Independence',
        Family.GAUSSIAN: 'Gaussian',
        Family.STUDENT_T: 'Student t',
        Family.CLAYTON: 'Clayton',
        Family.GUMBEL: 'Gumbel',
        Family.FGM_PERTURBED: 'FGM (perturbed)',
    }
    return names.get(Family.parse(family), str(family))


def is_table_family(experiment: str, family) -> bool:
    """실험이 해당 패밀리를 지원하는지 확인"""
    return Family.parse(family) in TABLE_FAMILIES.get(experiment, [])


def get_default_taus(family, positive_only: bool = False) -> List[float]:
    """패밀리가 표현할 수 있는 기본 τ 격자"""
    family = Family.parse(family)
    if positive_only or family in (Family.CLAYTON, Family.GUMBEL):
        return [tau for tau in STANDARD_TAUS if tau >= 0.0]
    return STANDARD_TAUS.copy()


def get_thetas(family, taus: List[float]) -> List[float]:
    """τ 격자를 θ 격자로 변환"""
    return [theta_from_tau(family, tau) for tau in taus]
