"""
10^6 표본 기준값 재현 (pytest -m slow)
허용오차: 4 s.e. + 기준값 반올림 + 상대 3%
"""

import pytest

from copulas import CopulaSpec, Family
from margins import DiscreteMarginal
from metrics import kl_transformed, spearman_rho_copula, spearman_rho_transformed
from transform import TransformedCopula

pytestmark = pytest.mark.slow

SAMPLES = 1_000_000
SEED = 20240611
MEANS = [0.1, 0.5, 1.0, 5.0, 10.0]

KL_REFERENCE = [
    (Family.GAUSSIAN, 0.951, 0.25, [4.526, 1.932, 1.004, 0.149, 0.071]),
    (Family.GAUSSIAN, 0.951, 1.0, [13.074, 4.375, 2.166, 0.335, 0.162]),
    (Family.GAUSSIAN, 0.454, 1.0, [0.358, 0.120, 0.060, 0.009, 0.004]),
    (Family.GAUSSIAN, 0.454, 0.25, [0.124, 0.054, 0.028, 0.004, 0.002]),
    (Family.CLAYTON, 8.0, 0.25, [5.041, 3.459, 2.306, 0.462, 0.224]),
]


def assert_close(estimate, reference):
    tolerance = 4.0 * estimate.std_error + 5e-4 + 0.03 * abs(reference)
    assert estimate.value == pytest.approx(reference, abs=tolerance)


@pytest.mark.parametrize("family, theta, alpha, references", KL_REFERENCE)
def test_bivariate_kl(family, theta, alpha, references):
    for m, (mean, reference) in enumerate(zip(MEANS, references)):
        transformed = TransformedCopula(CopulaSpec(family, 2, theta), DiscreteMarginal.poisson(mean), alpha)
        assert_close(kl_transformed(transformed, SAMPLES, SEED, (1, m)), reference)


@pytest.mark.parametrize("family, theta, alpha, mean, reference", [
    (Family.GAUSSIAN, 0.951, 0.25, 0.1, 6.091),
    (Family.CLAYTON, 8.0, 0.5, 10.0, 0.206),
])
def test_trivariate_kl(family, theta, alpha, mean, reference):
    transformed = TransformedCopula(CopulaSpec(family, 3, theta), DiscreteMarginal.poisson(mean), alpha)
    assert_close(kl_transformed(transformed, SAMPLES, SEED, (3,)), reference)


def test_gaussian_rho_p():
    assert_close(spearman_rho_copula(CopulaSpec(Family.GAUSSIAN, 2, 0.951), SAMPLES, SEED, (2,)), 0.946)


@pytest.mark.parametrize("family, theta, alpha, mean, reference", [
    (Family.GAUSSIAN, 0.951, 0.25, 0.1, 0.258),
    (Family.GAUSSIAN, 0.951, 0.25, 10.0, 0.943),
    (Family.CLAYTON, 8.0, 1.0, 0.1, 0.067),
])
def test_rho_q(family, theta, alpha, mean, reference):
    transformed = TransformedCopula(CopulaSpec(family, 2, theta), DiscreteMarginal.poisson(mean), alpha)
    assert_close(spearman_rho_transformed(transformed, SAMPLES, SEED, (2, 1)), reference)
