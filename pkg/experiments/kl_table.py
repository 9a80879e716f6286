"""
KL divergence 표 실험
α 마다 패널 하나, 행 θ, 열 Poisson 평균 λ. 각 셀은 D(C, 𝔠_{α,F,C}) 추정치입니다.
"""

from functools import partial
from typing import Optional, Tuple

from config import get_family_display_name
from copulas import Family
from margins import DiscreteMarginal
from metrics import KlEstimate, kl_transformed, kl_transformed_quadrature
from transform import TransformedCopula

from .base import Cell, ExperimentBase
from .result import Panel, TableResult, format_number


class KlTableExperiment(ExperimentBase):
    """이변량 KL 표 (Gaussian, Student t, Clayton, Gumbel)"""

    # seed stream 첫 좌표
    STREAM = 1

    def get_experiment_name(self) -> str:
        return 'kl-table'

    def get_sheet_name(self) -> str:
        return 'KL'

    def panel_title(self, alpha: float) -> str:
        config = self.config
        name = get_family_display_name(config.family)
        if config.family_enum is Family.STUDENT_T:
            name = f"{name} (ν={format_number(config.dof)})"
        return f"{name} d={config.copula_dimension} KL D(P,Q), α={format_number(alpha)}"

    def compute_cell(self, alpha: float, theta: float, mean: float,
                     coords: Tuple[int, ...]) -> Tuple[KlEstimate, Optional[KlEstimate]]:
        config = self.config
        transformed = TransformedCopula(config.copula_spec(theta), DiscreteMarginal.poisson(mean), alpha)
        estimate = kl_transformed(transformed, config.sample_count, config.seed, coords, config.batch_size)
        quadrature = None
        if config.quadrature:
            quadrature = kl_transformed_quadrature(transformed, config.quadrature_order)
        return estimate, quadrature

    def run(self) -> TableResult:
        config = self.config
        family = config.family_enum
        thetas = config.resolved_thetas()
        means = list(config.poisson_means)
        result = self.new_result(family.value)
        result.metadata.update({
            'dimension': config.copula_dimension,
            'taus': config.resolved_taus(),
            'thetas': thetas,
        })

        self._print(f"🎯 {self.get_experiment_name()}: {get_family_display_name(family)} "
                    f"(d={config.copula_dimension}, 표본 {config.sample_count:,}개/셀)")

        cells = []
        for a, alpha in enumerate(config.alphas):
            for t, theta in enumerate(thetas):
                for m, mean in enumerate(means):
                    coords = (self.STREAM, a, t, m)
                    label = f"{family.name:10} θ={theta:.3f} α={alpha:g} λ={mean:g}"
                    cells.append(Cell(coords, label, partial(self.compute_cell, alpha, theta, mean, coords)))
        outputs = self.run_cells(cells, result)

        for a, alpha in enumerate(config.alphas):
            key = f"alpha_{format_number(alpha)}"
            panel = result.add_panel(Panel.empty(key, self.panel_title(alpha), 'theta', thetas, means))
            quadrature_panel = None
            if config.quadrature:
                quadrature_panel = result.add_panel(Panel.empty(
                    f"{key}_quadrature", f"{self.panel_title(alpha)} (Gauss-Legendre)", 'theta', thetas, means,
                ))
            for t in range(len(thetas)):
                for m in range(len(means)):
                    output = outputs.get((self.STREAM, a, t, m))
                    if output is None:
                        continue
                    estimate, quadrature = output
                    panel.set_estimate(t, m, estimate)
                    if quadrature_panel is not None and quadrature is not None:
                        quadrature_panel.set_estimate(t, m, quadrature)

        if family is Family.STUDENT_T:
            result.notes.append(f"Student t 자유도 ν={format_number(config.dof)}")
        return result


class Kl3dTableExperiment(KlTableExperiment):
    """3차원 교환가능 코퓰라 KL 표 (Gaussian, Clayton, θ ≥ 0)"""

    STREAM = 3

    def get_experiment_name(self) -> str:
        return 'kl3d-table'

    def get_sheet_name(self) -> str:
        return 'KL3D'
