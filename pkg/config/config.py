"""
실험 공통 설정 관리
기본값(격자) → 환경변수 → 설정 파일 → CLI 플래그 순으로 병합하고 검증합니다.
"""

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from copulas import CopulaSpec, Family
from errors import ConfigError, TransformError

from .config_file import load_config_file, merge_config_with_file, normalize_keys
from .grids import (
    DEFAULT_STUDENT_T_DOF, STANDARD_ALPHAS, STANDARD_POISSON_MEANS, TABLE_DIMENSIONS, TABLE_FAMILIES,
    get_default_taus, get_thetas,
)

EXPERIMENTS = ['kl-table', 'rho-table', 'kl3d-table', 'crm-report', 'selfcheck']
OUTPUT_FORMATS = ['csv', 'md', 'xlsx']
MIN_TABLE_SAMPLES = 10_000

# 결과에 영향을 주지 않아 config hash 에서 빼는 키
_HASH_EXCLUDED = ('output_dir', 'output_format', 'workers', 'verbose', 'batch_size')


def _env_bool(name: str, default: str = 'false') -> bool:
    return os.getenv(name, default).lower() in ('1', 'true', 'yes')


@dataclass
class CrmConfig:
    """CRM 보고서 설정"""
    frequency: Dict[str, Any] = field(default_factory=lambda: {'kind': 'poisson', 'mean': 1.0})
    xi: float = 1.0
    sigma: float = 0.5
    rho1: float = 0.3
    rho2: float = 0.2
    structure: str = 'exchangeable'
    alpha: float = 0.5
    max_claims: Optional[int] = None
    s_probes: List[float] = field(default_factory=list)
    quantile_probes: List[float] = field(default_factory=lambda: [0.5, 0.9, 0.95, 0.99])
    mc_paths: int = 200_000

    @classmethod
    def from_dict(cls, config_dict: Optional[Dict[str, Any]]) -> 'CrmConfig':
        """딕셔너리에서 CRM 설정을 로드합니다."""
        data = dict(config_dict or {})
        default = cls()
        return cls(
            frequency=dict(data.get('frequency') or default.frequency),
            xi=float(data.get('xi', default.xi)),
            sigma=float(data.get('sigma', default.sigma)),
            rho1=float(data.get('rho1', default.rho1)),
            rho2=float(data.get('rho2', default.rho2)),
            structure=str(data.get('structure', default.structure)),
            alpha=float(data.get('alpha', default.alpha)),
            max_claims=None if data.get('max_claims') is None else int(data['max_claims']),
            s_probes=[float(s) for s in data.get('s_probes') or []],
            quantile_probes=[float(p) for p in data.get('quantile_probes') or default.quantile_probes],
            mc_paths=int(data.get('mc_paths', default.mc_paths)),
        )

    def to_spec(self):
        """CrmSpec 생성 (파라미터 오류는 ConfigError 로 감쌉니다)"""
        from crm import CorrelationStructure, CrmSpec
        from margins import DiscreteMarginal

        try:
            marginal = DiscreteMarginal.from_dict(self.frequency)
            structure = CorrelationStructure(self.structure, self.rho1, self.rho2)
            return CrmSpec(marginal, self.xi, self.sigma, structure, self.alpha)
        except TransformError as e:
            raise ConfigError(f"CRM 설정 오류: {e}") from e


@dataclass
class ExperimentConfig:
    """실험 전체 설정"""
    experiment: str = 'kl-table'
    family: str = 'gaussian'
    dimension: Optional[int] = None
    alphas: List[float] = field(default_factory=lambda: STANDARD_ALPHAS.copy())
    poisson_means: List[float] = field(default_factory=lambda: STANDARD_POISSON_MEANS.copy())
    taus: Optional[List[float]] = None
    thetas: Optional[List[float]] = None
    dof: float = DEFAULT_STUDENT_T_DOF
    sample_count: int = 1_000_000
    batch_size: int = 100_000
    seed: int = 12345
    workers: int = 4
    quadrature: bool = False
    quadrature_order: int = 256
    output_dir: str = 'output'
    output_format: str = 'csv'
    verbose: bool = False
    crm: CrmConfig = field(default_factory=CrmConfig)

    @classmethod
    def from_environment(cls) -> 'ExperimentConfig':
        """환경변수에서 설정을 로드합니다."""
        config = cls()
        config.seed = int(os.getenv('CTX_SEED', config.seed))
        config.sample_count = int(os.getenv('CTX_SAMPLES', config.sample_count))
        config.workers = int(os.getenv('CTX_WORKERS', config.workers))
        config.verbose = _env_bool('CTX_VERBOSE')
        config.output_format = os.getenv('CTX_OUTPUT_FORMAT', config.output_format)
        return config

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> 'ExperimentConfig':
        """딕셔너리에서 설정을 로드합니다. (알 수 없는 키는 ConfigError)"""
        data = normalize_keys(config_dict)
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"알 수 없는 설정 키: {', '.join(unknown)}")

        default = cls()

        def floats(key: str) -> Optional[List[float]]:
            value = data.get(key)
            if value is None:
                return None
            if not isinstance(value, (list, tuple)):
                value = [value]
            try:
                return [float(v) for v in value]
            except (TypeError, ValueError):
                raise ConfigError(f"{key} 는 숫자 목록이어야 합니다: {value}")

        try:
            return cls(
                experiment=str(data.get('experiment', default.experiment)),
                family=str(data.get('family', default.family)),
                dimension=None if data.get('dimension') is None else int(data['dimension']),
                alphas=floats('alphas') or default.alphas,
                poisson_means=floats('poisson_means') or default.poisson_means,
                taus=floats('taus'),
                thetas=floats('thetas'),
                dof=float(data.get('dof', default.dof)),
                sample_count=int(data.get('sample_count', default.sample_count)),
                batch_size=int(data.get('batch_size', default.batch_size)),
                seed=int(data.get('seed', default.seed)),
                workers=int(data.get('workers', default.workers)),
                quadrature=bool(data.get('quadrature', default.quadrature)),
                quadrature_order=int(data.get('quadrature_order', default.quadrature_order)),
                output_dir=str(data.get('output_dir', default.output_dir)),
                output_format=str(data.get('output_format', default.output_format)).lower(),
                verbose=bool(data.get('verbose', default.verbose)),
                crm=data['crm'] if isinstance(data.get('crm'), CrmConfig) else CrmConfig.from_dict(data.get('crm')),
            )
        except (TypeError, ValueError) as e:
            raise ConfigError(f"설정 값 형식 오류: {e}") from e

    @classmethod
    def load(cls, path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None,
             validate: bool = True, quiet: bool = True) -> 'ExperimentConfig':
        """
        설정을 로드합니다. (환경변수 + 설정 파일 + CLI 플래그)

        Args:
            path: YAML 설정 파일 경로
            overrides: CLI 플래그 값 (None 인 항목은 무시)
            validate: False 면 검증을 건너뜁니다 (테스트에서 작은 표본 수를 쓸 때)
        """
        merged = cls.from_environment().to_dict()
        if path:
            merged = merge_config_with_file(merged, load_config_file(path), '설정 파일', quiet)
        if overrides:
            merged = merge_config_with_file(merged, normalize_keys(overrides), 'CLI', quiet)
        config = cls.from_dict(merged)
        if validate:
            config.validate()
        return config

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @property
    def copula_dimension(self) -> int:
        if self.dimension is not None:
            return self.dimension
        return TABLE_DIMENSIONS.get(self.experiment, 2)

    @property
    def family_enum(self) -> Family:
        return Family.parse(self.family)

    def resolved_taus(self) -> Optional[List[float]]:
        """thetas 가 주어지지 않았을 때 쓰는 τ 격자"""
        if self.thetas:
            return None
        if self.taus:
            return list(self.taus)
        return get_default_taus(self.family_enum, positive_only=self.experiment == 'kl3d-table')

    def resolved_thetas(self) -> List[float]:
        """θ 격자 (taus 가 주어지면 theta_from_tau 로 변환)"""
        if self.thetas:
            return list(self.thetas)
        return get_thetas(self.family_enum, self.resolved_taus())

    def copula_spec(self, theta: float) -> CopulaSpec:
        family = self.family_enum
        dof = self.dof if family is Family.STUDENT_T else None
        return CopulaSpec(family, self.copula_dimension, theta, dof=dof)

    def config_hash(self) -> str:
        """결과에 영향을 주는 설정 값의 SHA-256 앞 12자리"""
        data = {k: v for k, v in self.to_dict().items() if k not in _HASH_EXCLUDED}
        if self.experiment != 'crm-report':
            data.pop('crm', None)
        canonical = json.dumps(data, sort_keys=True, default=str)
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:12]

    def validate(self) -> None:
        """설정을 검증하고 오류가 있으면 ConfigError 를 발생시킵니다."""
        errors = validate_config(self)
        if errors:
            raise ConfigError('설정 오류:\n  - ' + '\n  - '.join(errors))


def print_config_help():
    """설정 도움말을 출력합니다."""
    print("""
Copula Transform 실험 설정 가이드
==================================================

## 환경변수
export CTX_SEED='12345'            # master seed
export CTX_SAMPLES='1000000'       # 셀당 Monte Carlo 표본 수
export CTX_WORKERS='4'             # 셀 병렬 작업자 수 (결과에는 영향 없음)
export CTX_OUTPUT_FORMAT='csv'     # csv, md, xlsx
export CTX_VERBOSE='true'          # DEBUG 로그 출력

## 설정 파일 (--config experiment.yaml)
python main.py kl-table --config experiment.yaml

## 우선순위
기본값 < 환경변수 < 설정 파일 < CLI 플래그
""")


def validate_config(config: ExperimentConfig) -> List[str]:
    """전체 설정을 검증하고 오류 메시지를 반환합니다."""
    errors = []

    if config.experiment not in EXPERIMENTS:
        errors.append(f"알 수 없는 experiment: {config.experiment} (사용 가능: {', '.join(EXPERIMENTS)})")
    if config.output_format not in OUTPUT_FORMATS:
        errors.append(f"output_format 은 {', '.join(OUTPUT_FORMATS)} 중 하나여야 합니다: {config.output_format}")
    if config.workers < 1:
        errors.append(f"workers 는 1 이상이어야 합니다: {config.workers}")
    if config.batch_size < 1:
        errors.append(f"batch_size 는 1 이상이어야 합니다: {config.batch_size}")
    if config.seed < 0:
        errors.append(f"seed 는 0 이상이어야 합니다: {config.seed}")

    if config.experiment in TABLE_FAMILIES:
        try:
            family = Family.parse(config.family)
        except TransformError as e:
            errors.append(str(e))
            return errors
        if family not in TABLE_FAMILIES[config.experiment]:
            supported = ', '.join(f.value for f in TABLE_FAMILIES[config.experiment])
            errors.append(f"{config.experiment} 는 {family.value} 패밀리를 지원하지 않습니다 (지원: {supported})")
        if config.sample_count < MIN_TABLE_SAMPLES:
            errors.append(f"sample_count 는 {MIN_TABLE_SAMPLES} 이상이어야 합니다: {config.sample_count}")
        if not config.alphas:
            errors.append("alphas 격자가 비어 있습니다.")
        if any(not 0.0 < a <= 1.0 for a in config.alphas):
            errors.append(f"alphas 는 (0, 1] 안에 있어야 합니다: {config.alphas}")
        if not config.poisson_means:
            errors.append("poisson_means 격자가 비어 있습니다.")
        if any(not lam > 0.0 for lam in config.poisson_means):
            errors.append(f"poisson_means 는 양수여야 합니다: {config.poisson_means}")
        if config.dof <= 0:
            errors.append(f"dof 는 양수여야 합니다: {config.dof}")
        if config.taus is not None and config.thetas is not None:
            errors.append("taus 와 thetas 는 동시에 지정할 수 없습니다.")
        if config.quadrature and config.copula_dimension != 2:
            errors.append("quadrature 교차검증은 2차원에서만 사용할 수 있습니다.")
        try:
            thetas = config.resolved_thetas()
            if not thetas:
                errors.append("θ 격자가 비어 있습니다.")
            for theta in thetas:
                config.copula_spec(theta)
            if config.experiment == 'kl3d-table' and any(t < 0 for t in thetas):
                errors.append("kl3d-table 은 양의 의존성 (θ ≥ 0) 만 지원합니다.")
        except TransformError as e:
            errors.append(f"θ 격자 오류: {e}")

    if config.experiment == 'crm-report':
        crm = config.crm
        if crm.mc_paths < 0:
            errors.append(f"crm.mc_paths 는 0 이상이어야 합니다: {crm.mc_paths}")
        if any(not 0.0 < p < 1.0 for p in crm.quantile_probes):
            errors.append(f"crm.quantile_probes 는 (0, 1) 안에 있어야 합니다: {crm.quantile_probes}")
        try:
            crm.to_spec()
        except ConfigError as e:
            errors.append(str(e))

    return errors


# 전역 설정 인스턴스
_config_instance: Optional[ExperimentConfig] = None


def get_config() -> ExperimentConfig:
    """전역 설정 인스턴스를 반환합니다."""
    global _config_instance
    if _config_instance is None:
        _config_instance = ExperimentConfig.load(validate=False)
    return _config_instance


def reload_config(path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """설정을 다시 로드합니다."""
    global _config_instance
    _config_instance = ExperimentConfig.load(path, overrides)
    return _config_instance
