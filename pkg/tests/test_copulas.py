import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from copulas import (
    CopulaSpec, Family, conditional_sample, copula_cdf, copula_density, exchangeable_correlation,
    is_independence, log_density, partial1, sample_copula, spearman_rho_gaussian, tau_from_theta,
    theta_from_tau,
)
from errors import NotPositiveDefiniteError, ParameterError, UnsupportedOperationError
from metrics import empirical_kendall_tau

unit = st.floats(min_value=0.01, max_value=0.99)

BIVARIATE_SPECS = [
    CopulaSpec(Family.GAUSSIAN, 2, 0.454),
    CopulaSpec(Family.GAUSSIAN, 2, -0.951),
    CopulaSpec(Family.STUDENT_T, 2, 0.454, dof=4.0),
    CopulaSpec(Family.CLAYTON, 2, 0.857),
    CopulaSpec(Family.GUMBEL, 2, 1.429),
    CopulaSpec(Family.FGM_PERTURBED, 2, -0.7),
]

CLOSED_FORM_CDF_SPECS = [spec for spec in BIVARIATE_SPECS if spec.family is not Family.STUDENT_T]


def spec_id(spec):
    return spec.label


class TestCopulaSpec:
    def test_family_aliases(self):
        assert Family.parse('Student-t') is Family.STUDENT_T
        assert Family.parse('normal') is Family.GAUSSIAN
        assert Family.parse('fgm') is Family.FGM_PERTURBED

    def test_unknown_family(self):
        with pytest.raises(ParameterError):
            Family.parse('frank')

    @pytest.mark.parametrize("family, theta", [
        (Family.GAUSSIAN, 1.0),
        (Family.CLAYTON, -0.5),
        (Family.GUMBEL, 0.9),
        (Family.FGM_PERTURBED, 1.5),
    ])
    def test_parameter_ranges(self, family, theta):
        with pytest.raises(ParameterError):
            CopulaSpec(family, 2, theta)

    def test_student_t_requires_dof(self):
        with pytest.raises(ParameterError):
            CopulaSpec(Family.STUDENT_T, 2, 0.3)
        with pytest.raises(ParameterError):
            CopulaSpec(Family.GAUSSIAN, 2, 0.3, dof=4.0)

    def test_dimension_at_least_two(self):
        with pytest.raises(ParameterError):
            CopulaSpec(Family.GAUSSIAN, 1, 0.3)

    def test_exchangeable_not_pd(self):
        # 3차원 교환가능 상관 -0.6 < -1/2
        with pytest.raises(NotPositiveDefiniteError) as info:
            CopulaSpec(Family.GAUSSIAN, 3, -0.6)
        assert info.value.diagnostic['min_eigenvalue'] < 0

    def test_explicit_correlation(self):
        matrix = np.array([[1.0, 0.3, 0.1], [0.3, 1.0, 0.2], [0.1, 0.2, 1.0]])
        spec = CopulaSpec(Family.GAUSSIAN, 3, correlation=matrix)
        np.testing.assert_array_equal(spec.correlation, matrix)
        with pytest.raises(ParameterError):
            CopulaSpec(Family.CLAYTON, 3, 1.0, correlation=matrix)

    def test_exchangeable_correlation(self):
        matrix = exchangeable_correlation(3, 0.4)
        assert np.all(np.diag(matrix) == 1.0)
        assert matrix[0, 2] == 0.4


class TestKendall:
    @pytest.mark.parametrize("family, tau, theta", [
        (Family.GAUSSIAN, 0.8, 0.951056516),
        (Family.GAUSSIAN, 0.3, 0.453990500),
        (Family.GAUSSIAN, -0.1, -0.156434465),
        (Family.CLAYTON, 0.1, 0.222222222),
        (Family.CLAYTON, 0.3, 0.857142857),
        (Family.CLAYTON, 0.8, 8.0),
        (Family.GUMBEL, 0.1, 1.111111111),
        (Family.GUMBEL, 0.3, 1.428571429),
        (Family.GUMBEL, 0.8, 5.0),
    ])
    def test_grid_values(self, family, tau, theta):
        assert theta_from_tau(family, tau) == pytest.approx(theta, abs=1e-8)

    @pytest.mark.parametrize("family", [Family.CLAYTON, Family.GUMBEL])
    def test_negative_tau_rejected(self, family):
        with pytest.raises(ParameterError):
            theta_from_tau(family, -0.3)

    def test_fgm_tau_range(self):
        with pytest.raises(ParameterError):
            theta_from_tau(Family.FGM_PERTURBED, 0.3)

    @given(st.floats(min_value=-0.95, max_value=0.95))
    def test_elliptical_round_trip(self, tau):
        assert tau_from_theta(Family.GAUSSIAN, theta_from_tau(Family.GAUSSIAN, tau)) == pytest.approx(tau, abs=1e-12)

    @given(st.floats(min_value=0.0, max_value=0.95))
    def test_archimedean_round_trip(self, tau):
        for family in (Family.CLAYTON, Family.GUMBEL):
            assert tau_from_theta(family, theta_from_tau(family, tau)) == pytest.approx(tau, abs=1e-12)

    def test_gaussian_spearman(self):
        assert spearman_rho_gaussian(0.951) == pytest.approx(0.946, abs=5e-4)
        assert spearman_rho_gaussian(0.0) == 0.0


class TestIndependence:
    @pytest.mark.parametrize("spec", [
        CopulaSpec(Family.INDEPENDENCE, 2),
        CopulaSpec(Family.GAUSSIAN, 2, 0.0),
        CopulaSpec(Family.CLAYTON, 3, 0.0),
        CopulaSpec(Family.GUMBEL, 2, 1.0),
        CopulaSpec(Family.FGM_PERTURBED, 2, 0.0),
    ], ids=spec_id)
    def test_independence_cases(self, spec):
        assert is_independence(spec)
        point = np.array([0.3, 0.6] + [0.5] * (spec.dimension - 2))
        assert copula_cdf(spec, point) == pytest.approx(float(np.prod(point)), abs=1e-14)
        assert copula_density(spec, point) == pytest.approx(1.0, abs=1e-14)

    def test_student_t_zero_is_not_independence(self):
        spec = CopulaSpec(Family.STUDENT_T, 2, 0.0, dof=4.0)
        assert not is_independence(spec)
        assert copula_density(spec, [0.02, 0.02]) > 1.0


class TestFgm:
    def test_closed_form_values(self):
        spec = CopulaSpec(Family.FGM_PERTURBED, 2, 1.0)
        assert copula_cdf(spec, [0.5, 0.5]) == pytest.approx(0.3125, abs=1e-15)
        assert copula_density(spec, [0.25, 0.25]) == pytest.approx(1.25, abs=1e-14)

    def test_partial1_closed_form(self):
        spec = CopulaSpec(Family.FGM_PERTURBED, 2, 0.6)
        u, v = 0.2, 0.7
        expected = v + 0.6 * (1 - 2 * u) * v * (1 - v)
        assert partial1(spec, u, [v]) == pytest.approx(expected, abs=1e-15)

    def test_higher_dimension_cdf(self):
        spec = CopulaSpec(Family.FGM_PERTURBED, 3, 0.5)
        u, v1, v2 = 0.4, 0.3, 0.8
        expected = u * v1 * v2 + 0.5 * u * (1 - u) * v1 * (1 - v1) * v2
        assert copula_cdf(spec, [u, v1, v2]) == pytest.approx(expected, abs=1e-15)


class TestBoundaryRules:
    @pytest.mark.parametrize("spec", BIVARIATE_SPECS, ids=spec_id)
    def test_cdf_grounded(self, spec):
        assert copula_cdf(spec, [0.0, 0.7]) == 0.0
        assert copula_cdf(spec, [0.4, 0.0]) == 0.0

    @pytest.mark.parametrize("spec", BIVARIATE_SPECS, ids=spec_id)
    def test_cdf_uniform_margins(self, spec):
        # Student t CDF 는 준난수 적분이라 1e-4 수준
        assert copula_cdf(spec, [0.37, 1.0]) == pytest.approx(0.37, abs=1e-4)
        assert copula_cdf(spec, [1.0, 0.81]) == pytest.approx(0.81, abs=1e-4)

    @pytest.mark.parametrize("spec", BIVARIATE_SPECS, ids=spec_id)
    def test_partial1_boundaries(self, spec):
        assert partial1(spec, 0.3, [1.0]) == 1.0
        assert partial1(spec, 0.3, [0.0]) == 0.0

    @pytest.mark.parametrize("spec", CLOSED_FORM_CDF_SPECS, ids=spec_id)
    @settings(max_examples=30, deadline=None)
    @given(u=unit, v=unit)
    def test_partial1_matches_cdf_difference(self, spec, u, v):
        h = 1e-5
        difference = (copula_cdf(spec, [u + h, v]) - copula_cdf(spec, [u - h, v])) / (2 * h)
        assert partial1(spec, u, [v]) == pytest.approx(difference, abs=1e-4)

    @pytest.mark.parametrize("spec", BIVARIATE_SPECS, ids=spec_id)
    def test_density_is_positive_and_finite(self, spec):
        grid = np.linspace(0.0, 1.0, 21)
        uu, vv = np.meshgrid(grid, grid)
        values = copula_density(spec, np.column_stack([uu.ravel(), vv.ravel()]))
        assert np.all(np.isfinite(values))
        assert np.all(values >= 0.0)

    def test_coordinates_outside_unit_cube(self):
        spec = CopulaSpec(Family.GAUSSIAN, 2, 0.3)
        with pytest.raises(ParameterError):
            copula_cdf(spec, [1.2, 0.5])
        with pytest.raises(ParameterError):
            copula_cdf(spec, [0.5, 0.5, 0.5])


class TestDensities:
    def test_gaussian_density_matches_scipy(self):
        theta = 0.454
        spec = CopulaSpec(Family.GAUSSIAN, 2, theta)
        points = np.array([[0.2, 0.7], [0.9, 0.95], [0.5, 0.1]])
        z = stats.norm.ppf(points)
        joint = stats.multivariate_normal([0, 0], [[1, theta], [theta, 1]]).pdf(z)
        expected = joint / np.prod(stats.norm.pdf(z), axis=1)
        np.testing.assert_allclose(copula_density(spec, points), expected, rtol=1e-12)

    def test_clayton_density_closed_form(self):
        theta = 0.857
        spec = CopulaSpec(Family.CLAYTON, 2, theta)
        u, v = 0.3, 0.6
        expected = (1 + theta) * (u * v) ** (-theta - 1) * (u ** -theta + v ** -theta - 1) ** (-1 / theta - 2)
        assert copula_density(spec, [u, v]) == pytest.approx(expected, rel=1e-12)

    def test_log_density_consistent(self):
        spec = CopulaSpec(Family.GUMBEL, 2, 1.429)
        point = [0.3, 0.8]
        assert math.exp(log_density(spec, point)) == pytest.approx(copula_density(spec, point), rel=1e-14)

    @pytest.mark.parametrize("spec", BIVARIATE_SPECS, ids=spec_id)
    def test_density_integrates_to_one(self, spec):
        from numerics import gauss_legendre
        nodes, weights = gauss_legendre(200)
        uu, vv = np.meshgrid(nodes, nodes, indexing='ij')
        values = copula_density(spec, np.column_stack([uu.ravel(), vv.ravel()])).reshape(uu.shape)
        assert float(weights @ values @ weights) == pytest.approx(1.0, abs=2e-2)


class TestUnsupported:
    def test_gumbel_density_bivariate_only(self):
        spec = CopulaSpec(Family.GUMBEL, 3, 1.5)
        with pytest.raises(UnsupportedOperationError):
            copula_density(spec, [0.3, 0.4, 0.5])
        with pytest.raises(UnsupportedOperationError):
            sample_copula(spec, 0, 10)

    def test_gumbel_cdf_any_dimension(self):
        spec = CopulaSpec(Family.GUMBEL, 3, 1.5)
        value = copula_cdf(spec, [0.3, 0.4, 0.5])
        assert 0.0 < value < 0.3


class TestSampling:
    @pytest.mark.parametrize("family, theta, dof", [
        (Family.GAUSSIAN, 0.454, None),
        (Family.STUDENT_T, 0.454, 4.0),
        (Family.CLAYTON, 0.857, None),
        (Family.GUMBEL, 1.429, None),
    ])
    def test_kendall_tau_of_samples(self, family, theta, dof):
        spec = CopulaSpec(family, 2, theta, dof=dof)
        points = sample_copula(spec, 2024, 4000)
        assert points.shape == (4000, 2)
        assert np.all((points >= 0.0) & (points <= 1.0))
        assert empirical_kendall_tau(points) == pytest.approx(tau_from_theta(family, theta), abs=0.04)

    def test_zero_samples(self):
        spec = CopulaSpec(Family.CLAYTON, 3, 1.0)
        assert sample_copula(spec, 0, 0).shape == (0, 3)

    def test_seed_reproducibility(self):
        spec = CopulaSpec(Family.CLAYTON, 3, 2.0)
        np.testing.assert_array_equal(sample_copula(spec, 7, 50), sample_copula(spec, 7, 50))

    @pytest.mark.parametrize("spec", [
        CopulaSpec(Family.GAUSSIAN, 2, 0.7),
        CopulaSpec(Family.CLAYTON, 2, 2.0),
        CopulaSpec(Family.FGM_PERTURBED, 2, 0.9),
        CopulaSpec(Family.GUMBEL, 2, 1.5),
    ], ids=spec_id)
    def test_conditional_sample_follows_partial1(self, spec):
        u0 = 0.3
        draws = conditional_sample(spec, u0, 11, 4000)[:, 0]
        for v in (0.2, 0.5, 0.8):
            expected = partial1(spec, u0, [v])
            assert np.mean(draws <= v) == pytest.approx(expected, abs=0.03)

    def test_conditional_sample_shape(self):
        spec = CopulaSpec(Family.CLAYTON, 4, 1.0)
        draws = conditional_sample(spec, np.array([0.1, 0.5, 0.9]), 3)
        assert draws.shape == (3, 3)

    def test_clayton_conditional_sample_higher_dimension(self):
        spec = CopulaSpec(Family.CLAYTON, 3, 2.0)
        u0 = 0.4
        draws = conditional_sample(spec, u0, 5, 4000)
        expected = partial1(spec, u0, [0.5, 0.6])
        assert np.mean((draws[:, 0] <= 0.5) & (draws[:, 1] <= 0.6)) == pytest.approx(expected, abs=0.03)
