"""
공통 fixture
"""

import numpy as np
import pytest

from config import ExperimentConfig
from copulas import CopulaSpec, Family
from margins import DiscreteMarginal

THREE_ATOM_PMF = [0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def three_atom():
    """{1, 2, 3} 위의 균등 pmf"""
    return DiscreteMarginal.explicit(THREE_ATOM_PMF)


@pytest.fixture
def poisson_one():
    return DiscreteMarginal.poisson(1.0)


@pytest.fixture
def gaussian_spec():
    return CopulaSpec(Family.GAUSSIAN, 2, 0.454)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ('CTX_SEED', 'CTX_SAMPLES', 'CTX_WORKERS', 'CTX_VERBOSE', 'CTX_OUTPUT_FORMAT'):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def small_config(tmp_path):
    """작은 격자/표본 수의 설정 (validate=False)"""

    def build(**overrides):
        data = {
            'experiment': 'kl-table',
            'family': 'gaussian',
            'alphas': [0.25, 1.0],
            'poisson_means': [0.5, 5.0],
            'thetas': [0.0, 0.454],
            'sample_count': 4000,
            'batch_size': 1000,
            'seed': 7,
            'workers': 2,
            'output_dir': str(tmp_path / 'out'),
        }
        data.update(overrides)
        return ExperimentConfig.load(overrides=data, validate=False)

    return build
