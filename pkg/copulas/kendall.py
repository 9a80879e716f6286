"""
Kendall τ ↔ 코퓰라 모수 변환, Gaussian Spearman ρ
"""

import math

from errors import ParameterError, UnsupportedOperationError

from .spec import CopulaSpec, Family


def theta_from_tau(family, tau: float) -> float:
    """
    Kendall τ 로부터 코퓰라 모수 θ 를 구합니다.

    Gaussian/StudentT: sin(πτ/2), Clayton: 2τ/(1-τ), Gumbel: 1/(1-τ), FGM: 9τ/2

    Raises:
        ParameterError: 해당 패밀리가 표현할 수 없는 τ
    """
    family = Family.parse(family)
    tau = float(tau)
    if not -1.0 < tau < 1.0:
        raise ParameterError(f"Kendall τ 는 (-1, 1) 이어야 합니다: {tau}")

    if family.is_elliptical:
        return math.sin(math.pi * tau / 2.0)
    if family is Family.CLAYTON:
        if tau < 0:
            raise ParameterError(f"Clayton 은 음의 τ 를 표현할 수 없습니다: {tau}")
        return 2.0 * tau / (1.0 - tau)
    if family is Family.GUMBEL:
        if tau < 0:
            raise ParameterError(f"Gumbel 은 음의 τ 를 표현할 수 없습니다: {tau}")
        return 1.0 / (1.0 - tau)
    if family is Family.FGM_PERTURBED:
        if abs(tau) > 2.0 / 9.0:
            raise ParameterError(f"FGM 의 τ 는 [-2/9, 2/9] 범위입니다: {tau}")
        return 4.5 * tau
    if family is Family.INDEPENDENCE:
        if tau != 0.0:
            raise ParameterError("독립 코퓰라의 τ 는 0 뿐입니다.")
        return 0.0
    raise UnsupportedOperationError(f"τ 변환을 지원하지 않는 패밀리: {family.value}")


def tau_from_theta(family, theta: float) -> float:
    """theta_from_tau 의 역변환"""
    family = Family.parse(family)
    theta = float(theta)
    if family.is_elliptical:
        return 2.0 * math.asin(theta) / math.pi
    if family is Family.CLAYTON:
        return theta / (theta + 2.0)
    if family is Family.GUMBEL:
        return 1.0 - 1.0 / theta
    if family is Family.FGM_PERTURBED:
        return 2.0 * theta / 9.0
    if family is Family.INDEPENDENCE:
        return 0.0
    raise UnsupportedOperationError(f"τ 변환을 지원하지 않는 패밀리: {family.value}")


def spearman_rho_gaussian(theta: float) -> float:
    """Gaussian 코퓰라의 Spearman ρ = (6/π)·arcsin(θ/2)"""
    return 6.0 / math.pi * math.asin(float(theta) / 2.0)


def is_independence(spec: CopulaSpec) -> bool:
    """
    코퓰라가 정확히 독립인지 판정합니다.

    Independence, θ=0 인 Gaussian/Clayton/FGM, θ=1 인 Gumbel 이 해당합니다.
    Student t 는 θ=0 이어도 꼬리 의존성이 남으므로 독립이 아닙니다.
    """
    return spec.evaluator.is_independence()
