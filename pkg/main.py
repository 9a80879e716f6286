#!/usr/bin/env python3
"""
Copula Transform Toolkit - 변환 코퓰라 수치 실험 및 CRM 보고서
KL divergence, Spearman ρ, 3차원 KL 표 계산과 변환 Gaussian CRM 분석을 실행합니다.

사용 예:
  python main.py kl-table --family gaussian --alpha 0.25 --samples 1000000
  python main.py rho-table --family clayton --tau 0.8 --lambda 0.1 --lambda 10
  python main.py crm-report --config crm.yaml --format xlsx
  python main.py selfcheck

종료 코드: 0 성공, 1 설정/모수 오류, 2 수치 오류 또는 selfcheck 실패
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from config import EXPERIMENTS, OUTPUT_FORMATS, ExperimentConfig, create_config_example, print_config_help
from errors import ConfigError, NumericalError, ParameterError, UnsupportedOperationError
from experiments import TOOL_NAME, TOOL_VERSION, build_experiment
from exporters import TableExporter

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2


def build_parser() -> argparse.ArgumentParser:
    """서브커맨드와 플래그를 정의합니다. 모든 플래그는 설정 키와 1:1 대응합니다."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='YAML 설정 파일 경로')
    common.add_argument('--family', help='gaussian | student_t | clayton | gumbel')
    common.add_argument('--alpha', dest='alphas', type=float, action='append', help='α (반복 가능)')
    common.add_argument('--lambda', dest='poisson_means', type=float, action='append',
                        help='Poisson 평균 λ (반복 가능)')
    common.add_argument('--tau', dest='taus', type=float, action='append', help='Kendall τ (반복 가능)')
    common.add_argument('--theta', dest='thetas', type=float, action='append', help='코퓰라 모수 θ (반복 가능)')
    common.add_argument('--dof', type=float, help='Student t 자유도 ν')
    common.add_argument('--dimension', type=int, help='코퓰라 차원 (기본: 실험별)')
    common.add_argument('--samples', dest='sample_count', type=int, help='셀당 Monte Carlo 표본 수')
    common.add_argument('--batch-size', dest='batch_size', type=int, help='배치 크기')
    common.add_argument('--seed', type=int, help='master seed')
    common.add_argument('--workers', type=int, help='셀 병렬 작업자 수')
    common.add_argument('--out', dest='output_dir', help='출력 디렉터리')
    common.add_argument('--format', dest='output_format', choices=OUTPUT_FORMATS, help='출력 형식')
    common.add_argument('--quadrature', action='store_const', const=True, default=None,
                        help='이변량 Gauss-Legendre KL 교차검증')
    common.add_argument('--verbose', action='store_const', const=True, default=None, help='DEBUG 로그')

    parser = argparse.ArgumentParser(
        description=f"{TOOL_NAME} v{TOOL_VERSION}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('--example-config', action='store_true', help='설정 파일 예시 (YAML) 출력')
    parser.add_argument('--config-help', action='store_true', help='설정 도움말 출력')
    subparsers = parser.add_subparsers(dest='command')
    descriptions = {
        'kl-table': 'KL divergence 표 (α 패널, 행 θ, 열 λ)',
        'rho-table': 'Spearman ρ(P) / ρ(Q) 표',
        'kl3d-table': '3차원 교환가능 코퓰라 KL 표 (Gaussian, Clayton)',
        'crm-report': '변환 Gaussian CRM 닫힌 꼴 보고서 + Monte Carlo 교차검증',
        'selfcheck': '불변식 모음 실행',
    }
    for name in EXPERIMENTS:
        subparsers.add_parser(name, parents=[common], help=descriptions[name])
    return parser


def collect_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """CLI 플래그 → 설정 키 (지정되지 않은 플래그는 제외)"""
    keys = ['family', 'alphas', 'poisson_means', 'taus', 'thetas', 'dof', 'dimension', 'sample_count',
            'batch_size', 'seed', 'workers', 'output_dir', 'output_format', 'quadrature', 'verbose']
    overrides = {key: getattr(args, key) for key in keys if getattr(args, key, None) is not None}
    overrides['experiment'] = args.command
    return overrides


def print_config_summary(config: ExperimentConfig) -> None:
    print(f"🎯 실험: {config.experiment}")
    if config.experiment in ('kl-table', 'rho-table', 'kl3d-table'):
        print(f"🧩 패밀리: {config.family} (d={config.copula_dimension})")
        print(f"📐 α: {config.alphas}")
        print(f"📐 λ: {config.poisson_means}")
        print(f"📐 θ: {[round(t, 6) for t in config.resolved_thetas()]}")
        print(f"🎲 표본: {config.sample_count:,}개/셀, batch {config.batch_size:,}, seed {config.seed}")
    else:
        print(f"🎲 seed {config.seed}")
    print(f"⚙️  workers: {config.workers}, 출력: {config.output_dir} ({config.output_format})")
    print(f"🔑 config hash: {config.config_hash()}")


def run(argv: Optional[List[str]] = None) -> int:
    """CLI 실행 후 종료 코드를 반환합니다."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.config_help:
        print_config_help()
        return EXIT_OK
    if args.example_config:
        print(create_config_example(args.command))
        return EXIT_OK
    if not args.command:
        parser.print_help()
        return EXIT_CONFIG

    print(f"🚀 {TOOL_NAME} v{TOOL_VERSION}")
    print("=" * 60)

    try:
        config = ExperimentConfig.load(args.config, collect_overrides(args), quiet=not args.verbose)
        logging.basicConfig(
            level=logging.DEBUG if config.verbose else logging.INFO,
            format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        )
        print_config_summary(config)

        experiment = build_experiment(config)
        data = experiment.get_data_with_metadata()
        result = data['result']

        print("\n" + "=" * 70)
        print(f"✅ {data['experiment']} 완료! ({data['wall_time']:.1f}초, {data['count']:,}개 셀)")

        print(f"\n💾 {config.output_format.upper()} 내보내는 중...")
        paths = TableExporter(config.output_dir).export(result, config.output_format)
        for path in paths:
            print(f"   - {path}")

        if result.notes:
            print("\n📝 노트:")
            for note in result.notes:
                print(f"   - {note}")

        if result.failures:
            print(f"\n❌ 실패 {len(result.failures)}개:")
            for failure in result.failures:
                print(f"   - {failure}")
            return EXIT_NUMERICAL

        print("=" * 70)
        return EXIT_OK

    except ConfigError as e:
        print(f"\n❌ 설정 오류: {e}")
        print("   💡 python main.py --config-help 로 설정 방법을 확인하세요.")
        return EXIT_CONFIG
    except (ParameterError, UnsupportedOperationError) as e:
        print(f"\n❌ 모수 오류: {e}")
        return EXIT_CONFIG
    except NumericalError as e:
        print(f"\n❌ 수치 오류: {e}")
        return EXIT_NUMERICAL
    except KeyboardInterrupt:
        print("\n\n⚠️ 사용자에 의해 중단되었습니다.")
        return EXIT_CONFIG


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
