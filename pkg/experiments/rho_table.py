"""
Spearman ρ 표 실험
ρ(P) 는 θ 마다 한 번 계산해 λ 열에 펼치고, ρ(Q) 는 α 마다 패널 하나 (행 θ, 열 λ).
"""

from functools import partial
from typing import Tuple

from config import get_family_display_name
from copulas import Family, spearman_rho_gaussian
from margins import DiscreteMarginal
from metrics import RhoEstimate, spearman_rho_copula, spearman_rho_transformed
from transform import TransformedCopula

from .base import Cell, ExperimentBase
from .result import Panel, TableResult, format_number


class RhoTableExperiment(ExperimentBase):
    """Spearman ρ(P) / ρ(Q) 표"""

    STREAM = 2

    def get_experiment_name(self) -> str:
        return 'rho-table'

    def get_sheet_name(self) -> str:
        return 'RHO'

    def compute_rho_p(self, theta: float, coords: Tuple[int, ...]) -> RhoEstimate:
        config = self.config
        return spearman_rho_copula(config.copula_spec(theta), config.sample_count,
                                   config.seed, coords, config.batch_size)

    def compute_rho_q(self, alpha: float, theta: float, mean: float, coords: Tuple[int, ...]) -> RhoEstimate:
        config = self.config
        transformed = TransformedCopula(config.copula_spec(theta), DiscreteMarginal.poisson(mean), alpha)
        return spearman_rho_transformed(transformed, config.sample_count, config.seed, coords, config.batch_size)

    def run(self) -> TableResult:
        config = self.config
        family = config.family_enum
        name = get_family_display_name(family)
        thetas = config.resolved_thetas()
        means = list(config.poisson_means)
        result = self.new_result(family.value)
        result.metadata.update({'dimension': 2, 'taus': config.resolved_taus(), 'thetas': thetas})

        self._print(f"🎯 {self.get_experiment_name()}: {name} (표본 {config.sample_count:,}개/셀)")

        cells = []
        for t, theta in enumerate(thetas):
            coords = (self.STREAM, t)
            cells.append(Cell(coords, f"{family.name:10} θ={theta:.3f} ρ(P)",
                              partial(self.compute_rho_p, theta, coords)))
        for a, alpha in enumerate(config.alphas):
            for t, theta in enumerate(thetas):
                for m, mean in enumerate(means):
                    coords = (self.STREAM, a, t, m)
                    label = f"{family.name:10} θ={theta:.3f} α={alpha:g} λ={mean:g} ρ(Q)"
                    cells.append(Cell(coords, label, partial(self.compute_rho_q, alpha, theta, mean, coords)))
        outputs = self.run_cells(cells, result)

        rho_p = result.add_panel(Panel.empty('rho_p', f"{name} Spearman ρ(P)", 'theta', thetas, means))
        for t in range(len(thetas)):
            estimate = outputs.get((self.STREAM, t))
            if estimate is not None:
                for m in range(len(means)):
                    rho_p.set_estimate(t, m, estimate)

        for a, alpha in enumerate(config.alphas):
            panel = result.add_panel(Panel.empty(
                f"alpha_{format_number(alpha)}_rho_q",
                f"{name} Spearman ρ(Q), α={format_number(alpha)}", 'theta', thetas, means,
            ))
            for t in range(len(thetas)):
                for m in range(len(means)):
                    estimate = outputs.get((self.STREAM, a, t, m))
                    if estimate is not None:
                        panel.set_estimate(t, m, estimate)

        if family is Family.GAUSSIAN:
            for theta in thetas:
                result.notes.append(
                    f"θ={format_number(theta)}: 해석적 ρ(P) = (6/π)·arcsin(θ/2) = "
                    f"{format_number(spearman_rho_gaussian(theta))}"
                )
        if family is Family.STUDENT_T:
            result.notes.append(f"Student t 자유도 ν={format_number(config.dof)}")
        return result
