"""
선언적 설정 파일 (YAML) 연동 모듈
설정 파일 값은 환경변수보다 우선하고, CLI 플래그보다 낮은 우선순위를 가집니다.
"""

import os
from typing import Any, Dict, Optional

import yaml

from errors import ConfigError

# 파일 키 별칭 → 표준 키
KEY_ALIASES = {
    'lambdas': 'poisson_means',
    'samples': 'sample_count',
    'out': 'output_dir',
    'format': 'output_format',
}


def load_config_file(path: str) -> Dict[str, Any]:
    """
    YAML 설정 파일을 읽습니다.

    Args:
        path: 설정 파일 경로

    Returns:
        별칭이 표준 키로 바뀐 설정 딕셔너리

    Raises:
        ConfigError: 파일이 없거나 YAML 이 아니거나 최상위가 매핑이 아닐 때
    """
    if not os.path.exists(path):
        raise ConfigError(f"설정 파일을 찾을 수 없습니다: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            data = yaml.safe_load(handle)
    except yaml.YAMLError as e:
        raise ConfigError(f"설정 파일 파싱 실패 ({path}): {e}")

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"설정 파일 최상위는 key: value 매핑이어야 합니다: {path}")
    return normalize_keys(data)


def normalize_keys(data: Dict[str, Any]) -> Dict[str, Any]:
    """'poisson-means' → 'poisson_means', 별칭 → 표준 키"""
    normalized = {}
    for key, value in data.items():
        name = str(key).strip().lower().replace('-', '_')
        name = KEY_ALIASES.get(name, name)
        if isinstance(value, dict) and name == 'crm':
            value = {str(k).strip().lower().replace('-', '_'): v for k, v in value.items()}
        normalized[name] = value
    return normalized


def _is_present(value: Any) -> bool:
    if value is None:
        return False
    if isinstance(value, (str, list, tuple, dict)) and len(value) == 0:
        return False
    return True


def merge_config_with_file(base_config: Dict[str, Any], file_config: Dict[str, Any],
                           source: str = '설정 파일', quiet: bool = True) -> Dict[str, Any]:
    """
    기존 설정에 다른 출처의 설정을 병합합니다.
    값이 있고 비어 있지 않은 키만 덮어씁니다. crm 블록은 키 단위로 병합합니다.

    Args:
        base_config: 기본 설정 (환경변수 등)
        file_config: 덮어쓸 설정 (설정 파일, CLI 플래그)
        source: 로그에 표시할 출처 이름
        quiet: False 면 덮어쓴 키를 출력

    Returns:
        병합된 설정
    """
    merged = dict(base_config)
    for key, value in file_config.items():
        if not _is_present(value):
            continue
        if key == 'crm' and isinstance(value, dict):
            block = dict(merged.get('crm') or {})
            block.update({k: v for k, v in value.items() if _is_present(v)})
            merged['crm'] = block
        else:
            merged[key] = value
        if not quiet:
            print(f"   {key}: {source}에서 로드")
    return merged


def create_config_example(experiment: Optional[str] = None) -> str:
    """설정 파일 예시 (YAML) 를 생성합니다."""
    if experiment == 'crm-report':
        return """\
experiment: crm-report
seed: 12345
output_dir: output
output_format: csv
crm:
  frequency:
    kind: poisson      # poisson | negative_binomial | binomial | explicit
    mean: 1.0
  xi: 1.0
  sigma: 0.5
  rho1: 0.3
  rho2: 0.2
  structure: exchangeable   # exchangeable | autoregressive
  alpha: 0.5
  quantile_probes: [0.5, 0.9, 0.95, 0.99]
  mc_paths: 200000
"""
    return """\
experiment: kl-table      # kl-table | rho-table | kl3d-table | crm-report
family: gaussian          # gaussian | student_t | clayton | gumbel
alphas: [0.25, 0.5, 0.75, 1.0]
lambdas: [0.1, 0.5, 1.0, 5.0, 10.0]
taus: [-0.8, -0.3, -0.1, 0.0, 0.1, 0.3, 0.8]
dof: 4
sample_count: 1000000
batch_size: 100000
seed: 12345
workers: 4
quadrature: false
output_dir: output
output_format: csv        # csv | md | xlsx
"""
