import math

import numpy as np
import pytest

from copulas import CopulaSpec, Family
from errors import NumericalError, UnsupportedOperationError
from margins import DiscreteMarginal
from metrics import (
    EstimationMethod, KlEstimate, empirical_kendall_tau, kl_divergence, kl_transformed,
    kl_transformed_quadrature, spearman_rho_copula, spearman_rho_transformed,
)
from transform import TransformedCopula


def transformed_for(family, theta, mean, alpha, dimension=2):
    return TransformedCopula(CopulaSpec(family, dimension, theta), DiscreteMarginal.poisson(mean), alpha)


class TestIndependenceIsExact:
    def test_kl_monte_carlo(self):
        estimate = kl_transformed(transformed_for(Family.GAUSSIAN, 0.0, 1.0, 0.5), 1000, seed=3)
        assert estimate.value == 0.0
        assert estimate.std_error == 0.0
        assert estimate.method is EstimationMethod.EXACT

    def test_kl_quadrature(self):
        estimate = kl_transformed_quadrature(transformed_for(Family.CLAYTON, 0.0, 1.0, 0.5), order=8)
        assert estimate.is_exact
        assert estimate.value == 0.0

    def test_spearman(self):
        assert spearman_rho_copula(CopulaSpec(Family.GUMBEL, 2, 1.0), 1000, seed=3).is_exact
        rho_q = spearman_rho_transformed(transformed_for(Family.GAUSSIAN, 0.0, 0.5, 0.25), 1000, seed=3)
        assert rho_q.is_exact
        assert rho_q.value == 0.0


class TestKlDivergence:
    def test_normal_shift(self):
        # KL(N(0,1) || N(1,1)) = 1/2
        estimate = kl_divergence(
            lambda x: -0.5 * x[:, 0] ** 2,
            lambda rng, n: rng.standard_normal((n, 1)),
            lambda x: -0.5 * (x[:, 0] - 1.0) ** 2,
            20_000, seed=11, batch_size=5000,
        )
        assert estimate.value == pytest.approx(0.5, abs=0.03)
        assert estimate.std_error == pytest.approx(1.0 / math.sqrt(20_000), rel=0.05)
        assert estimate.sample_count == 20_000

    def test_zero_q_density_raises(self):
        with pytest.raises(NumericalError):
            kl_divergence(
                lambda p: np.zeros(len(p)),
                lambda rng, n: rng.random((n, 2)),
                lambda p: np.full(len(p), -np.inf),
                10, seed=1,
            )

    def test_empty_sample(self):
        estimate = kl_divergence(np.log, lambda rng, n: rng.random((n, 1)), np.log, 0, seed=1)
        assert estimate.value == 0.0
        assert estimate.sample_count == 0

    def test_same_seed_same_estimate(self):
        transformed = transformed_for(Family.CLAYTON, 0.857, 1.0, 0.5)
        first = kl_transformed(transformed, 3000, seed=5, cell=(1, 0, 2), batch_size=1000)
        second = kl_transformed(transformed, 3000, seed=5, cell=(1, 0, 2), batch_size=1000)
        other = kl_transformed(transformed, 3000, seed=5, cell=(1, 0, 3), batch_size=1000)
        assert first == second
        assert first.value != other.value

    def test_decreases_with_poisson_mean(self):
        small = kl_transformed(transformed_for(Family.GAUSSIAN, 0.951, 0.5, 0.25), 4000, seed=2)
        large = kl_transformed(transformed_for(Family.GAUSSIAN, 0.951, 5.0, 0.25), 4000, seed=2)
        assert small.value > 1.0
        assert large.value < 0.5
        assert small.value > large.value

    def test_three_dimensional(self):
        estimate = kl_transformed(transformed_for(Family.CLAYTON, 0.857, 1.0, 0.5, dimension=3), 2000, seed=4)
        assert np.isfinite(estimate.value)
        assert estimate.sample_count == 2000

    def test_estimate_dict(self):
        data = KlEstimate(0.1, 0.01, 10).to_dict()
        assert data == {'value': 0.1, 'std_error': 0.01, 'sample_count': 10, 'method': 'monte_carlo'}


class TestQuadrature:
    def test_agrees_with_monte_carlo(self):
        transformed = transformed_for(Family.GAUSSIAN, 0.454, 1.0, 1.0)
        quadrature = kl_transformed_quadrature(transformed, order=64)
        monte_carlo = kl_transformed(transformed, 40_000, seed=9, batch_size=10_000)
        assert quadrature.method is EstimationMethod.QUADRATURE
        assert quadrature.std_error == 0.0
        assert quadrature.value == pytest.approx(monte_carlo.value, abs=5 * monte_carlo.std_error + 2e-3)

    def test_order_refinement_is_stable(self):
        transformed = transformed_for(Family.GAUSSIAN, 0.454, 0.5, 0.5)
        coarse = kl_transformed_quadrature(transformed, order=48).value
        fine = kl_transformed_quadrature(transformed, order=96).value
        assert coarse == pytest.approx(fine, abs=1e-3)
        assert fine > 0.0

    def test_three_dimensional_unsupported(self):
        with pytest.raises(UnsupportedOperationError):
            kl_transformed_quadrature(transformed_for(Family.GAUSSIAN, 0.3, 1.0, 0.5, dimension=3))


class TestKlShape:
    """θ 부호 대칭, α=0.5 최소"""

    def test_gaussian_sign_symmetry(self):
        positive = kl_transformed_quadrature(transformed_for(Family.GAUSSIAN, 0.454, 0.5, 0.5), order=64)
        negative = kl_transformed_quadrature(transformed_for(Family.GAUSSIAN, -0.454, 0.5, 0.5), order=64)
        assert positive.value > 0.0
        assert negative.value == pytest.approx(positive.value, rel=1e-6)

    def test_student_t_sign_symmetry(self):
        def estimate(theta):
            spec = CopulaSpec(Family.STUDENT_T, 2, theta, dof=4.0)
            transformed = TransformedCopula(spec, DiscreteMarginal.poisson(1.0), 0.5)
            return kl_transformed(transformed, 20_000, seed=21, batch_size=5000)

        positive, negative = estimate(0.454), estimate(-0.454)
        spread = math.hypot(positive.std_error, negative.std_error)
        assert positive.value == pytest.approx(negative.value, abs=4 * spread)

    @pytest.mark.parametrize("theta", [0.454, -0.454])
    def test_gaussian_alpha_half_is_minimum(self, theta):
        values = {
            alpha: kl_transformed_quadrature(transformed_for(Family.GAUSSIAN, theta, 0.5, alpha), order=64).value
            for alpha in (0.25, 0.5, 0.75, 1.0)
        }
        assert min(values, key=values.get) == 0.5
        assert values[1.0] > values[0.75] > values[0.5]


class TestSpearman:
    @pytest.mark.parametrize("theta", [-0.454, 0.156, 0.951])
    def test_gaussian_closed_form(self, theta):
        estimate = spearman_rho_copula(CopulaSpec(Family.GAUSSIAN, 2, theta), 40_000, seed=17, batch_size=10_000)
        expected = 6.0 / math.pi * math.asin(theta / 2.0)
        assert estimate.value == pytest.approx(expected, abs=max(5 * estimate.std_error, 0.01))

    def test_transformed_estimate(self):
        transformed = transformed_for(Family.GAUSSIAN, 0.951, 10.0, 0.25)
        estimate = spearman_rho_transformed(transformed, 20_000, seed=8, batch_size=5000)
        assert estimate.sample_count == 20_000
        assert estimate.std_error > 0.0
        assert 0.8 < estimate.value <= 1.0

    def test_discreteness_weakens_rank_correlation(self):
        spec = CopulaSpec(Family.GAUSSIAN, 2, 0.951)
        rho_p = spearman_rho_copula(spec, 20_000, seed=8)
        rho_q = spearman_rho_transformed(TransformedCopula(spec, DiscreteMarginal.poisson(0.1), 0.25), 20_000, seed=8)
        assert rho_q.value < rho_p.value - 0.3

    def test_three_dimensional_unsupported(self):
        with pytest.raises(UnsupportedOperationError):
            spearman_rho_copula(CopulaSpec(Family.CLAYTON, 3, 2.0), 100, seed=1)
        with pytest.raises(UnsupportedOperationError):
            spearman_rho_transformed(transformed_for(Family.CLAYTON, 2.0, 1.0, 0.5, dimension=3), 100, seed=1)


def test_empirical_kendall_tau():
    points = np.column_stack([np.arange(10.0), np.arange(10.0) ** 2])
    assert empirical_kendall_tau(points) == pytest.approx(1.0)
