"""
의존성 지표 (KL divergence, Spearman ρ)
"""

from .estimates import EstimationMethod, KlEstimate, RhoEstimate, exact_kl_zero, exact_rho_zero
from .kl import (
    DEFAULT_BATCH_SIZE, DEFAULT_QUADRATURE_ORDER,
    kl_divergence, kl_transformed, kl_transformed_quadrature, empirical_kendall_tau,
)
from .spearman import spearman_rho_copula, spearman_rho_transformed

__all__ = [
    'EstimationMethod', 'KlEstimate', 'RhoEstimate', 'exact_kl_zero', 'exact_rho_zero',
    'DEFAULT_BATCH_SIZE', 'DEFAULT_QUADRATURE_ORDER',
    'kl_divergence', 'kl_transformed', 'kl_transformed_quadrature', 'empirical_kendall_tau',
    'spearman_rho_copula', 'spearman_rho_transformed',
]
