"""
설정 관리 모듈
기본값, 환경변수, YAML 설정 파일, CLI 플래그에서 실험 설정을 로드합니다.
"""

from .config import (
    ExperimentConfig, CrmConfig, EXPERIMENTS, OUTPUT_FORMATS, MIN_TABLE_SAMPLES,
    get_config, reload_config, validate_config, print_config_help,
)
from .config_file import load_config_file, merge_config_with_file, normalize_keys, create_config_example
from .grids import (
    STANDARD_ALPHAS, STANDARD_POISSON_MEANS, STANDARD_TAUS, TABLE_FAMILIES, TABLE_DIMENSIONS,
    DEFAULT_STUDENT_T_DOF, get_family_display_name, is_table_family, get_default_taus, get_thetas,
)

__all__ = [
    # Config classes
    'ExperimentConfig', 'CrmConfig', 'EXPERIMENTS', 'OUTPUT_FORMATS', 'MIN_TABLE_SAMPLES',
    'get_config', 'reload_config', 'validate_config', 'print_config_help',

    # Config file
    'load_config_file', 'merge_config_with_file', 'normalize_keys', 'create_config_example',

    # Grids
    'STANDARD_ALPHAS', 'STANDARD_POISSON_MEANS', 'STANDARD_TAUS', 'TABLE_FAMILIES', 'TABLE_DIMENSIONS',
    'DEFAULT_STUDENT_T_DOF', 'get_family_display_name', 'is_table_family', 'get_default_taus',
    'get_thetas'
]
