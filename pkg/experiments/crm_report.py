"""
CRM 보고서 실험
닫힌 꼴 통계량 (μ_n, σ_n², E[S], Var[S], F_S, VaR), PD 진단, 두 단계 CRM 동치 검사,
Monte Carlo 교차검증 (직접 MVN 경로, 일반 변환 코퓰라 경로, 두 단계 경로).
"""

import logging
from typing import Dict, List, Optional

import numpy as np

from crm import (
    CrmSpec, StructureKind, aggregate_cdf, aggregate_mean, aggregate_quantile, aggregate_var,
    ar_discrepancy_log, empirical_cdf, simulate_crm, simulate_crm_via_copula, simulate_two_part,
    two_part_equivalence_check,
)

from .base import ExperimentBase
from .result import EXACT_TAG, Panel, TableResult, format_number

logger = logging.getLogger(__name__)

# |Δ| 허용 폭 (표준오차 배수)
DELTA_SE_MULTIPLE = 3.0


def sample_moment_errors(samples: np.ndarray) -> Dict[str, float]:
    """표본 평균/분산과 각각의 표준오차"""
    count = samples.size
    mean = float(samples.mean())
    centered = samples - mean
    variance = float(centered.var(ddof=1))
    fourth = float(np.mean(centered ** 4))
    return {
        'mean': mean,
        'mean_se': float(np.sqrt(variance / count)),
        'var': variance,
        'var_se': float(np.sqrt(max(fourth - variance ** 2, 0.0) / count)),
    }


class CrmReportExperiment(ExperimentBase):
    """변환 Gaussian CRM 보고서"""

    def get_experiment_name(self) -> str:
        return 'crm-report'

    def get_sheet_name(self) -> str:
        return 'CRM'

    def _claim_bound(self, spec: CrmSpec) -> int:
        bound = self.config.crm.max_claims
        return spec.max_claims if bound is None else min(int(bound), spec.max_claims)

    def _severity_panel(self, spec: CrmSpec, bound: int) -> Panel:
        table = spec.severity_table
        rows = [int(n) for n in table['n'][:bound]]
        columns = ['pmf', 'F_alpha', 'mu_n', 'sigma_n_sq']
        panel = Panel.empty('severity', f"{spec.label} 조건부 평균 심도", 'n', rows, columns)
        for i, n in enumerate(rows):
            values = [table['pmf'][i], spec.marginal.f_alpha(spec.alpha, n), table['mu'][i], table['var'][i]]
            for j, value in enumerate(values):
                panel.set_cell(i, j, float(value), tag=EXACT_TAG)
        return panel

    def _pd_panel(self, spec: CrmSpec, bound: int) -> Panel:
        rows = list(range(1, bound + 1))
        columns = ['is_pd', 'schur_value', 'min_eigenvalue', 'uniform_condition', 'literal_value']
        panel = Panel.empty('pd', f"{spec.structure.label} 양의 정부호 진단", 'k', rows, columns)
        for i, k in enumerate(rows):
            diagnostic = spec.structure.check_pd(k)
            values = [float(diagnostic.is_pd), diagnostic.schur_value, diagnostic.min_eigenvalue,
                      float(diagnostic.uniform_condition), diagnostic.literal_value]
            for j, value in enumerate(values):
                panel.set_cell(i, j, value, tag=EXACT_TAG)
        return panel

    def _ar_panel(self, spec: CrmSpec, bound: int) -> Optional[Panel]:
        rows = ar_discrepancy_log(spec)[:bound]
        if not rows:
            return None
        columns = ['matrix_sum', 'literal', 'difference']
        panel = Panel.empty('ar_variance', f"{spec.structure.label} σ_n² 행렬합 vs 축약식",
                            'n', [row['n'] for row in rows], columns)
        for i, row in enumerate(rows):
            for j, column in enumerate(columns):
                panel.set_cell(i, j, row[column], tag=EXACT_TAG)
        return panel

    def _probe_points(self, spec: CrmSpec) -> List[float]:
        probes = [float(s) for s in self.config.crm.s_probes]
        probes.extend(aggregate_quantile(spec, p) for p in self.config.crm.quantile_probes)
        return sorted(set(probes))

    def run(self) -> TableResult:
        config = self.config
        crm = config.crm
        spec = crm.to_spec()
        result = self.new_result(None)
        result.metadata.update({'crm': spec.describe(), 'mc_paths': crm.mc_paths})
        result.metadata['sample_count'] = crm.mc_paths
        bound = self._claim_bound(spec)

        self._print(f"🎯 crm-report: {spec.label}")
        self._print(f"   N* = {spec.max_claims}, 꼬리 질량 {spec.marginal.tail_mass:.3e}")

        result.add_panel(self._severity_panel(spec, bound))
        result.add_panel(self._pd_panel(spec, bound))
        ar_panel = self._ar_panel(spec, bound)
        if ar_panel is not None:
            result.add_panel(ar_panel)
            result.notes.append("자기회귀 σ_n² 는 공분산 행렬합으로 계산합니다. 축약식 값은 비교용입니다.")

        mean, variance = aggregate_mean(spec), aggregate_var(spec)
        probes = self._probe_points(spec)
        closed_cdf = np.atleast_1d(aggregate_cdf(spec, np.array(probes)))

        quantiles = result.add_panel(Panel.empty(
            'quantiles', 'VaR_p(S) (aggregate_cdf 근 찾기)', 'p', list(crm.quantile_probes), ['var_p'],
        ))
        for i, p in enumerate(crm.quantile_probes):
            quantiles.set_cell(i, 0, aggregate_quantile(spec, p), tag=EXACT_TAG)

        if spec.structure.rho1 == 0.0:
            table = spec.severity_table
            expected_count = float(np.sum(table['n'] * table['pmf']))
            identity = result.add_panel(Panel.empty(
                'identity', 'ρ1 = 0 해석적 항등식 E[S] = ξ·E[N]', 'quantity', ['E[S]', 'xi*E[N]'], ['value'],
            ))
            identity.set_cell(0, 0, mean, tag=EXACT_TAG)
            identity.set_cell(1, 0, spec.xi * expected_count, tag=EXACT_TAG)
            result.notes.append("ρ1 = 0: E[S] = ξ·E[N] (해석적 항등식)")

        equivalent = self._equivalence(spec, bound, result)

        samplers = {'monte_carlo': simulate_crm, 'monte_carlo_copula': simulate_crm_via_copula}
        if equivalent:
            samplers['monte_carlo_two_part'] = simulate_two_part

        columns = ['closed_form']
        if crm.mc_paths > 0:
            columns += list(samplers) + [f"abs_delta_{name}" for name in samplers]
        moments = result.add_panel(Panel.empty('moments', 'E[S], Var[S]', 'quantity', ['E[S]', 'Var[S]'], columns))
        cdf_panel = result.add_panel(Panel.empty('aggregate_cdf', 'P[S ≤ s]', 's', probes, columns))
        moments.set_cell(0, 0, mean, tag=EXACT_TAG)
        moments.set_cell(1, 0, variance, tag=EXACT_TAG)
        for i, value in enumerate(closed_cdf):
            cdf_panel.set_cell(i, 0, float(value), tag=EXACT_TAG)

        if crm.mc_paths > 0:
            self._cross_validate(spec, samplers, mean, variance, probes, closed_cdf, moments, cdf_panel, result)
        return result

    def _equivalence(self, spec: CrmSpec, bound: int, result: TableResult) -> bool:
        if spec.structure.kind is not StructureKind.EXCHANGEABLE:
            result.notes.append("두 단계 CRM 동치 검사: 자기회귀 구조에는 적용되지 않음")
            return False
        report = two_part_equivalence_check(spec, bound)
        panel = result.add_panel(Panel.empty(
            'equivalence', '두 단계 CRM 동치 검사', 'quantity',
            ['is_equivalent', 'offdiag_max', 'sigma0_sq'], ['value'],
        ))
        panel.set_cell(0, 0, float(report.is_equivalent), tag=EXACT_TAG)
        panel.set_cell(1, 0, report.offdiag_max, tag=EXACT_TAG)
        panel.set_cell(2, 0, np.nan if report.sigma0_sq is None else report.sigma0_sq, tag=EXACT_TAG)
        if report.is_equivalent:
            result.notes.append(
                f"두 단계 CRM 과 동치: σ₀² = σ²(1-ρ1²) = {format_number(report.sigma0_sq)}"
            )
        else:
            result.notes.append(
                f"두 단계 CRM 과 동치가 아님: 비대각 최대 |σ²(ρ2-ρ1²)| = {format_number(report.offdiag_max)}"
            )
        return report.is_equivalent

    def _cross_validate(self, spec, samplers, mean, variance, probes, closed_cdf,
                        moments: Panel, cdf_panel: Panel, result: TableResult) -> None:
        config = self.config
        names = list(samplers)
        outside = []
        for j, name in enumerate(names, start=1):
            self._print(f"   📋 {name} ({config.crm.mc_paths:,} 경로) 시뮬레이션 중...", end=' ', flush=True)
            samples = samplers[name](spec, config.seed, config.crm.mc_paths)
            self._print("✅")

            stats = sample_moment_errors(samples)
            delta_column = len(names) + j
            for i, (closed, estimate, error) in enumerate([
                (mean, stats['mean'], stats['mean_se']),
                (variance, stats['var'], stats['var_se']),
            ]):
                moments.set_cell(i, j, estimate, error)
                moments.set_cell(i, delta_column, abs(estimate - closed), error)
                if abs(estimate - closed) > DELTA_SE_MULTIPLE * error:
                    outside.append(f"{name} {moments.row_labels[i]}")

            values, errors = empirical_cdf(samples, probes)
            for i, (closed, estimate, error) in enumerate(zip(closed_cdf, values, errors)):
                cdf_panel.set_cell(i, j, float(estimate), float(error))
                cdf_panel.set_cell(i, delta_column, abs(float(estimate) - float(closed)), float(error))
                if abs(estimate - closed) > DELTA_SE_MULTIPLE * max(error, 1.0 / samples.size):
                    outside.append(f"{name} F_S({format_number(probes[i])})")

        if outside:
            logger.warning("MC 교차검증 |Δ| > 3 s.e.: %s", ', '.join(outside))
            result.notes.append(f"MC 교차검증: |Δ| > 3 s.e. 인 셀 {len(outside)}개 ({', '.join(outside)})")
        else:
            result.notes.append("MC 교차검증: 모든 |Δ| < 3 s.e.")
