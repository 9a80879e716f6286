"""
코퓰라 패밀리 모듈들
"""

from .spec import CopulaSpec, Family, exchangeable_correlation
from .base import CopulaBase
from .independence import IndependenceCopula
from .gaussian import GaussianCopula
from .student_t import StudentTCopula
from .clayton import ClaytonCopula
from .gumbel import GumbelCopula
from .fgm import FGMPerturbedCopula
from .registry import build_copula
from .kendall import theta_from_tau, tau_from_theta, spearman_rho_gaussian, is_independence
from .api import (
    as_generator, copula_cdf, copula_density, log_density, partial1,
    sample_copula, conditional_sample,
)

__all__ = [
    'CopulaSpec', 'Family', 'exchangeable_correlation', 'CopulaBase', 'build_copula',
    'IndependenceCopula', 'GaussianCopula', 'StudentTCopula',
    'ClaytonCopula', 'GumbelCopula', 'FGMPerturbedCopula',
    'theta_from_tau', 'tau_from_theta', 'spearman_rho_gaussian', 'is_independence',
    'as_generator', 'copula_cdf', 'copula_density', 'log_density', 'partial1',
    'sample_copula', 'conditional_sample',
]
