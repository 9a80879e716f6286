"""
수치 계산 유틸리티 모듈들
"""

from .special import norm_cdf, norm_ppf, norm_pdf, bvn_cdf, clamp_unit, UNIT_BAND
from .quadrature import gauss_legendre, adaptive_gauss_legendre, tensor_rule
from .streams import seed_stream, batch_sizes, BatchMoments

__all__ = [
    # Special functions
    'norm_cdf', 'norm_ppf', 'norm_pdf', 'bvn_cdf', 'clamp_unit', 'UNIT_BAND',

    # Quadrature
    'gauss_legendre', 'adaptive_gauss_legendre', 'tensor_rule',

    # Seed streams
    'seed_stream', 'batch_sizes', 'BatchMoments'
]
