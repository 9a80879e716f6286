"""
selfcheck - 불변식 모음
닫힌 꼴 예제, 주변분포 법칙, PD 판정, 정규화, CRM 동치 등을 빠르게 검사합니다.
실패한 검사가 하나라도 있으면 CLI 는 종료 코드 2 를 돌려줍니다.
"""

from dataclasses import dataclass
from functools import partial
from typing import Callable, List, Tuple

import numpy as np
from scipy import stats

from config import ExperimentConfig
from copulas import CopulaSpec, Family, spearman_rho_gaussian, tau_from_theta, theta_from_tau
from crm import CorrelationStructure, CrmSpec, StructureKind, conditional_severity_law, two_part_equivalence_check
from margins import DiscreteMarginal, NormalMarginal, UniformMarginal
from metrics import spearman_rho_copula
from numerics import adaptive_gauss_legendre, seed_stream
from transform import MixedModel, TransformedCopula

from .base import Cell, ExperimentBase
from .result import EXACT_TAG, Panel, TableResult

STREAM = 9
THREE_ATOM_PMF = [0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]
PD_GRID = np.linspace(-0.96, 0.96, 20)
PD_ORDERS = (1, 2, 5, 10)


@dataclass(frozen=True)
class CheckOutcome:
    observed: float
    tolerance: float
    passed: bool
    std_error: float = 0.0


def _within(observed: float, tolerance: float) -> CheckOutcome:
    return CheckOutcome(float(observed), float(tolerance), bool(observed <= tolerance))


def fgm_step_factor(u: np.ndarray, alpha: float) -> np.ndarray:
    """세 원자 F 에서 1 - 2⌈u⌉ (구간 (0,1/3], (1/3,2/3], (2/3,1])"""
    return np.select(
        [u <= 1.0 / 3.0, u <= 2.0 / 3.0],
        [(3.0 - 2.0 * alpha) / 3.0, (1.0 - 2.0 * alpha) / 3.0],
        (-1.0 - 2.0 * alpha) / 3.0,
    )


def fgm_step_integral(u: np.ndarray, alpha: float) -> np.ndarray:
    """∫_0^u (1 - 2⌈s⌉) ds"""
    steps = ((0.0, (3.0 - 2.0 * alpha) / 3.0),
             (1.0 / 3.0, (1.0 - 2.0 * alpha) / 3.0),
             (2.0 / 3.0, (-1.0 - 2.0 * alpha) / 3.0))
    total = np.zeros_like(u)
    for lo, value in steps:
        total += value * np.clip(u - lo, 0.0, 1.0 / 3.0)
    return total


def check_fgm_closed_form(config: ExperimentConfig) -> CheckOutcome:
    """FGM 섭동 코퓰라 + 세 원자 F 의 𝔠, 𝔈 를 닫힌 꼴과 비교"""
    rng = seed_stream(config.seed, STREAM, 0)
    marginal = DiscreteMarginal.explicit(THREE_ATOM_PMF)
    worst = 0.0
    for _ in range(20):
        alpha = 1.0 - rng.random()
        theta = rng.uniform(-1.0, 1.0)
        transformed = TransformedCopula(CopulaSpec(Family.FGM_PERTURBED, 2, theta), marginal, alpha)
        u = 1.0 - rng.random(500)
        v = rng.random(500)
        density = 1.0 + theta * (1.0 - 2.0 * v) * fgm_step_factor(u, alpha)
        cdf = u * v + theta * v * (1.0 - v) * fgm_step_integral(u, alpha)
        worst = max(
            worst,
            float(np.max(np.abs(transformed.density(u, v[:, np.newaxis]) - density))),
            float(np.max(np.abs(transformed.cdf(u, v[:, np.newaxis]) - cdf))),
        )
    return _within(worst, 1e-12)


def check_margin_law(config: ExperimentConfig) -> CheckOutcome:
    """𝔈(u, 1) = u (첫 주변분포는 항상 균일)"""
    specs = [
        CopulaSpec(Family.GAUSSIAN, 2, 0.454),
        CopulaSpec(Family.STUDENT_T, 2, -0.454, dof=config.dof),
        CopulaSpec(Family.CLAYTON, 2, 0.857),
        CopulaSpec(Family.GUMBEL, 2, 1.429),
    ]
    probes = np.arange(1, 1001) / 1001.0
    worst = 0.0
    for spec in specs:
        for alpha in (0.25, 1.0):
            for mean in (0.1, 10.0):
                transformed = TransformedCopula(spec, DiscreteMarginal.poisson(mean), alpha)
                worst = max(worst, float(np.max(np.abs(transformed.cdf(probes, np.ones(1)) - probes))))
    return _within(worst, 1e-10)


def check_fgm_copula_margin(config: ExperimentConfig) -> CheckOutcome:
    """α=0.25 에서 둘째 주변분포 위반 = θ v(1-v)(1-2α)/3, α=0.5 에서는 균일"""
    marginal = DiscreteMarginal.explicit(THREE_ATOM_PMF)
    spec = CopulaSpec(Family.FGM_PERTURBED, 2, 1.0)
    skewed = TransformedCopula(spec, marginal, 0.25).is_copula_check()
    balanced = TransformedCopula(spec, marginal, 0.5).is_copula_check()
    error = abs(skewed.max_margin_violation - 0.5 * 0.5 * 0.5 / 3.0)
    error = max(error, balanced.max_margin_violation)
    outcome = _within(error, 1e-12)
    return CheckOutcome(outcome.observed, outcome.tolerance,
                        outcome.passed and balanced.is_copula and not skewed.is_copula)


def check_pd_gates(config: ExperimentConfig) -> CheckOutcome:
    """해석적 PD 조건과 Cholesky 성공 여부의 불일치 개수"""
    disagreements = 0
    for kind in StructureKind:
        for rho1 in PD_GRID:
            for rho2 in PD_GRID:
                structure = CorrelationStructure.unchecked(kind, rho1, rho2)
                for k in PD_ORDERS:
                    diagnostic = structure.check_pd(k)
                    analytic = diagnostic.block_pd and diagnostic.schur_value > 0.0
                    disagreements += int(analytic != diagnostic.cholesky_ok)
    return _within(disagreements, 0)


def check_kendall_round_trip(config: ExperimentConfig) -> CheckOutcome:
    cases = [(Family.GAUSSIAN, -0.8), (Family.STUDENT_T, 0.3), (Family.CLAYTON, 0.8),
             (Family.GUMBEL, 0.1), (Family.FGM_PERTURBED, -0.2)]
    worst = max(abs(tau_from_theta(f, theta_from_tau(f, tau)) - tau) for f, tau in cases)
    return _within(worst, 1e-12)


def _joint_mass(model: MixedModel, low: float, high: float) -> float:
    total = 0.0
    for n in model.marginal.support:
        if model.marginal.pmf(int(n)) <= 0.0:
            continue
        total += adaptive_gauss_legendre(
            lambda y, n=int(n): model.transformed_joint_density(n, y[:, np.newaxis]),
            low, high, rtol=1e-9,
        )
    return total


def check_joint_normalization(config: ExperimentConfig) -> CheckOutcome:
    """Σ_n ∫ h*(n, y) dy = 1 (균일 G, 정규 G)"""
    copula = CopulaSpec(Family.GAUSSIAN, 2, 0.454)
    marginal = DiscreteMarginal.poisson(1.0)
    uniform = MixedModel(marginal, [UniformMarginal()], copula, 0.25)
    normal = MixedModel(marginal, [NormalMarginal(1.0, 0.5)], copula, 0.25)
    error = max(abs(_joint_mass(uniform, 0.0, 1.0) - 1.0), abs(_joint_mass(normal, -5.0, 7.0) - 1.0))
    return _within(error, 1e-5)


def check_conditional_normalization(config: ExperimentConfig) -> CheckOutcome:
    """n ≤ 5 에서 ∫ h*(y | n) dy = 1"""
    model = MixedModel(DiscreteMarginal.poisson(1.0), [NormalMarginal(0.0, 1.0)],
                       CopulaSpec(Family.CLAYTON, 2, 0.857), 0.5)
    worst = 0.0
    for n in range(6):
        mass = adaptive_gauss_legendre(
            lambda y, n=n: model.conditional_density(n, y[:, np.newaxis]), -12.0, 12.0, rtol=1e-10,
        )
        worst = max(worst, abs(mass - 1.0))
    return _within(worst, 1e-6)


def check_crm_copula_equivalence(config: ExperimentConfig) -> CheckOutcome:
    """코퓰라 경로 조건부 밀도 = 닫힌 꼴 조건부 다변량정규 밀도"""
    rng = seed_stream(config.seed, STREAM, 1)
    worst = 0.0
    for _ in range(5):
        rho1 = rng.uniform(-0.6, 0.6)
        rho2 = rng.uniform(rho1 ** 2, 0.9)
        alpha = rng.uniform(0.05, 0.95)
        xi, sigma = rng.normal(), rng.uniform(0.5, 2.0)
        spec = CrmSpec(DiscreteMarginal.poisson(2.0), xi, sigma,
                       CorrelationStructure(StructureKind.EXCHANGEABLE, rho1, rho2), alpha)
        for n in range(1, 5):
            law = conditional_severity_law(spec, n)
            model = MixedModel(spec.marginal, [NormalMarginal(xi, sigma)] * n,
                               CopulaSpec(Family.GAUSSIAN, n + 1, correlation=spec.structure.build_sigma(n)), alpha)
            y = xi + sigma * rng.normal(size=(5, n))
            expected = stats.multivariate_normal(law.mean_vector, law.covariance).pdf(y)
            actual = model.conditional_density(n, y)
            worst = max(worst, float(np.max(np.abs(actual - expected) / expected)))
    return _within(worst, 1e-8)


def check_two_part_equivalence(config: ExperimentConfig) -> CheckOutcome:
    """ρ2 = ρ1² 이면 σ₀² = σ²(1-ρ1²), 아니면 비대각 크기 σ²|ρ2-ρ1²|"""
    marginal = DiscreteMarginal.poisson(1.0)
    sigma = 0.8
    equal = CrmSpec(marginal, 1.0, sigma, CorrelationStructure(StructureKind.EXCHANGEABLE, 0.5, 0.25))
    other = CrmSpec(marginal, 1.0, sigma, CorrelationStructure(StructureKind.EXCHANGEABLE, 0.5, 0.4))
    equal_report = two_part_equivalence_check(equal)
    other_report = two_part_equivalence_check(other)
    error = max(
        abs(equal_report.sigma0_sq - sigma ** 2 * 0.75) if equal_report.is_equivalent else 1.0,
        abs(other_report.offdiag_max - sigma ** 2 * 0.15),
    )
    outcome = _within(error, 1e-12)
    return CheckOutcome(outcome.observed, outcome.tolerance, outcome.passed and not other_report.is_equivalent)


def check_gaussian_spearman(config: ExperimentConfig) -> CheckOutcome:
    """Monte Carlo ρ(P) 와 (6/π)arcsin(θ/2) 비교 (4 s.e.)"""
    theta = 0.951
    estimate = spearman_rho_copula(CopulaSpec(Family.GAUSSIAN, 2, theta), min(config.sample_count, 200_000),
                                   config.seed, (STREAM, 2), config.batch_size)
    error = abs(estimate.value - spearman_rho_gaussian(theta))
    tolerance = 4.0 * estimate.std_error + 1e-3
    return CheckOutcome(error, tolerance, error <= tolerance, estimate.std_error)


SELF_CHECKS: List[Tuple[str, Callable[[ExperimentConfig], CheckOutcome]]] = [
    ('fgm_closed_form', check_fgm_closed_form),
    ('margin_law', check_margin_law),
    ('fgm_copula_margin', check_fgm_copula_margin),
    ('pd_gates', check_pd_gates),
    ('kendall_round_trip', check_kendall_round_trip),
    ('joint_normalization', check_joint_normalization),
    ('conditional_normalization', check_conditional_normalization),
    ('crm_copula_equivalence', check_crm_copula_equivalence),
    ('two_part_equivalence', check_two_part_equivalence),
    ('gaussian_spearman', check_gaussian_spearman),
]


class SelfCheckExperiment(ExperimentBase):
    """불변식 모음 실행"""

    def get_experiment_name(self) -> str:
        return 'selfcheck'

    def get_sheet_name(self) -> str:
        return 'CHECK'

    def run(self) -> TableResult:
        result = self.new_result(None)
        self._print(f"🎯 selfcheck: {len(SELF_CHECKS)}개 검사")

        cells = [
            Cell((STREAM, i), name, partial(check, self.config))
            for i, (name, check) in enumerate(SELF_CHECKS)
        ]
        outputs = self.run_cells(cells, result)

        names = [name for name, _ in SELF_CHECKS]
        panel = result.add_panel(Panel.empty('checks', 'selfcheck', 'check', names, ['observed', 'tolerance', 'passed']))
        for i, name in enumerate(names):
            outcome = outputs.get((STREAM, i))
            if outcome is None:
                continue
            tag = '' if outcome.std_error > 0 else EXACT_TAG
            panel.set_cell(i, 0, outcome.observed, outcome.std_error, tag)
            panel.set_cell(i, 1, outcome.tolerance, tag=EXACT_TAG)
            panel.set_cell(i, 2, float(outcome.passed), tag=EXACT_TAG)
            if not outcome.passed:
                result.failures.append(f"{name}: {outcome.observed:.3e} > {outcome.tolerance:.3e}")
        return result
