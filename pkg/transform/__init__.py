"""
변환 코퓰라와 혼합 모델
"""

from .transformed_copula import (
    TransformedCopula, CopulaCheckReport, COPULA_CHECK_THRESHOLD,
    transformed_density, transformed_cdf, second_margin_cdf, is_copula_check,
    sample_transformed_copula,
)
from .mixed_model import (
    MixedModel, mixed_density_h, transformed_joint_density, conditional_density,
    mixed_conditional_density, joint_cdf, transformed_joint_cdf,
    sample_transformed, sample_conditional,
)

__all__ = [
    'TransformedCopula', 'CopulaCheckReport', 'COPULA_CHECK_THRESHOLD',
    'transformed_density', 'transformed_cdf', 'second_margin_cdf', 'is_copula_check',
    'sample_transformed_copula',
    'MixedModel', 'mixed_density_h', 'transformed_joint_density', 'conditional_density',
    'mixed_conditional_density', 'joint_cdf', 'transformed_joint_cdf',
    'sample_transformed', 'sample_conditional',
]
