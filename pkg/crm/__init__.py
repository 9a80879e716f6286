"""
변환 코퓰라 기반 집단위험모형 (CRM)
"""

from .structure import StructureKind, CorrelationStructure, PdDiagnostic, build_sigma, check_pd
from .model import (
    CrmSpec, SeverityLaw, EquivalenceReport,
    conditional_severity_law, average_severity_params, frequency_location,
    ar_variance_literal, ar_discrepancy_log,
    aggregate_cdf, aggregate_density, aggregate_mean, aggregate_var, aggregate_quantile,
    two_part_equivalence_check,
)
from .simulation import simulate_crm, simulate_two_part, simulate_crm_via_copula, empirical_cdf

__all__ = [
    # Structures
    'StructureKind', 'CorrelationStructure', 'PdDiagnostic', 'build_sigma', 'check_pd',

    # Closed forms
    'CrmSpec', 'SeverityLaw', 'EquivalenceReport',
    'conditional_severity_law', 'average_severity_params', 'frequency_location',
    'ar_variance_literal', 'ar_discrepancy_log',
    'aggregate_cdf', 'aggregate_density', 'aggregate_mean', 'aggregate_var', 'aggregate_quantile',
    'two_part_equivalence_check',

    # Simulation
    'simulate_crm', 'simulate_two_part', 'simulate_crm_via_copula', 'empirical_cdf'
]
