"""
주변분포 모듈들
"""

from .discrete import DiscreteMarginal, MarginalKind, validate_alpha, DEFAULT_TAIL_EPSILON
from .continuous import (
    ContinuousMarginal, NormalMarginal, UniformMarginal, FrozenMarginal,
    log_density_sum, to_uniform, from_uniform,
)

__all__ = [
    'DiscreteMarginal', 'MarginalKind', 'validate_alpha', 'DEFAULT_TAIL_EPSILON',
    'ContinuousMarginal', 'NormalMarginal', 'UniformMarginal', 'FrozenMarginal',
    'log_density_sum', 'to_uniform', 'from_uniform',
]
