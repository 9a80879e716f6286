"""
실험 모듈들 (CLI 서브커맨드 하나당 클래스 하나)
"""

from config import ExperimentConfig
from errors import ConfigError

from .base import ExperimentBase, Cell, TOOL_NAME, TOOL_VERSION, raise_on_failures
from .result import Panel, TableResult, EXACT_TAG, QUADRATURE_TAG, format_number
from .kl_table import KlTableExperiment, Kl3dTableExperiment
from .rho_table import RhoTableExperiment
from .crm_report import CrmReportExperiment
from .selfcheck import SelfCheckExperiment, SELF_CHECKS, CheckOutcome

EXPERIMENT_CLASSES = {
    'kl-table': KlTableExperiment,
    'rho-table': RhoTableExperiment,
    'kl3d-table': Kl3dTableExperiment,
    'crm-report': CrmReportExperiment,
    'selfcheck': SelfCheckExperiment,
}


def build_experiment(config: ExperimentConfig, quiet: bool = False) -> ExperimentBase:
    """설정의 experiment 이름으로 실험 인스턴스를 만듭니다."""
    try:
        return EXPERIMENT_CLASSES[config.experiment](config, quiet=quiet)
    except KeyError:
        raise ConfigError(f"알 수 없는 experiment: {config.experiment}")


def run_kl_table(config: ExperimentConfig, quiet: bool = True) -> TableResult:
    return KlTableExperiment(config, quiet=quiet).run()


def run_rho_table(config: ExperimentConfig, quiet: bool = True) -> TableResult:
    return RhoTableExperiment(config, quiet=quiet).run()


def run_kl3d_table(config: ExperimentConfig, quiet: bool = True) -> TableResult:
    return Kl3dTableExperiment(config, quiet=quiet).run()


def run_crm_report(config: ExperimentConfig, quiet: bool = True) -> TableResult:
    return CrmReportExperiment(config, quiet=quiet).run()


__all__ = [
    'ExperimentBase', 'Cell', 'TOOL_NAME', 'TOOL_VERSION', 'raise_on_failures',
    'Panel', 'TableResult', 'EXACT_TAG', 'QUADRATURE_TAG', 'format_number',
    'KlTableExperiment', 'Kl3dTableExperiment', 'RhoTableExperiment',
    'CrmReportExperiment', 'SelfCheckExperiment', 'SELF_CHECKS', 'CheckOutcome',
    'EXPERIMENT_CLASSES', 'build_experiment',
    'run_kl_table', 'run_rho_table', 'run_kl3d_table', 'run_crm_report',
]
