import pytest
import yaml

from config import (
    STANDARD_ALPHAS, STANDARD_POISSON_MEANS, CrmConfig, ExperimentConfig,
    create_config_example, get_family_display_name, is_table_family, load_config_file,
    merge_config_with_file, normalize_keys, validate_config,
)
from copulas import Family
from errors import ConfigError


class TestDefaults:
    def test_grid_defaults(self):
        config = ExperimentConfig()
        assert config.alphas == STANDARD_ALPHAS
        assert config.poisson_means == STANDARD_POISSON_MEANS
        assert config.copula_dimension == 2
        assert validate_config(config) == []

    def test_default_load_validates(self):
        config = ExperimentConfig.load()
        assert config.experiment == 'kl-table'
        assert config.seed == 12345

    def test_resolved_thetas_from_taus(self):
        config = ExperimentConfig(family='clayton')
        assert config.resolved_taus() == [0.0, 0.1, 0.3, 0.8]
        assert config.resolved_thetas() == pytest.approx([0.0, 2 / 9, 0.6 / 0.7, 8.0])

    def test_three_dimensional_uses_positive_taus(self):
        config = ExperimentConfig(experiment='kl3d-table', family='gaussian')
        assert config.copula_dimension == 3
        assert min(config.resolved_taus()) == 0.0
        assert config.copula_spec(0.951).dimension == 3

    def test_explicit_thetas_win(self):
        config = ExperimentConfig(thetas=[0.454])
        assert config.resolved_taus() is None
        assert config.resolved_thetas() == [0.454]

    def test_student_t_dof(self):
        config = ExperimentConfig(family='student_t', dof=6.0)
        assert config.copula_spec(0.3).dof == 6.0
        assert ExperimentConfig().copula_spec(0.3).dof is None


class TestValidation:
    @pytest.mark.parametrize("overrides, fragment", [
        ({'experiment': 'nope'}, 'experiment'),
        ({'output_format': 'pdf'}, 'output_format'),
        ({'workers': 0}, 'workers'),
        ({'sample_count': 100}, 'sample_count'),
        ({'alphas': [0.0, 0.5]}, 'alphas'),
        ({'poisson_means': [-1.0]}, 'poisson_means'),
        ({'taus': [0.1], 'thetas': [0.2]}, 'taus'),
        ({'experiment': 'kl3d-table', 'family': 'gumbel'}, 'gumbel'),
        ({'family': 'clayton', 'thetas': [-0.5]}, 'θ'),
        ({'quadrature': True, 'experiment': 'kl3d-table'}, 'quadrature'),
    ])
    def test_errors_reported(self, overrides, fragment):
        errors = validate_config(ExperimentConfig(**overrides))
        assert any(fragment in error for error in errors), errors

    def test_validate_raises(self):
        with pytest.raises(ConfigError):
            ExperimentConfig(sample_count=10).validate()

    def test_unknown_key(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict({'bogus': 1})

    def test_bad_value_type(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict({'alphas': ['a']})
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict({'seed': 'abc'})

    def test_crm_spec_errors_wrapped(self):
        with pytest.raises(ConfigError):
            CrmConfig(rho1=0.6, rho2=0.3).to_spec()
        errors = validate_config(ExperimentConfig(experiment='crm-report', crm=CrmConfig(alpha=1.0)))
        assert any('CRM' in error for error in errors)


class TestLoading:
    def test_aliases_normalized(self):
        data = normalize_keys({'lambdas': [1.0], 'Samples': 20000, 'out': 'x', 'format': 'md', 'batch-size': 5})
        assert data == {'poisson_means': [1.0], 'sample_count': 20000, 'output_dir': 'x',
                        'output_format': 'md', 'batch_size': 5}

    def test_environment(self, monkeypatch):
        monkeypatch.setenv('CTX_SEED', '99')
        monkeypatch.setenv('CTX_WORKERS', '3')
        monkeypatch.setenv('CTX_VERBOSE', 'yes')
        monkeypatch.setenv('CTX_OUTPUT_FORMAT', 'md')
        config = ExperimentConfig.load()
        assert (config.seed, config.workers, config.verbose, config.output_format) == (99, 3, True, 'md')

    def test_priority(self, monkeypatch, tmp_path):
        monkeypatch.setenv('CTX_SEED', '99')
        path = tmp_path / 'experiment.yaml'
        path.write_text('seed: 5\nlambdas: [1.0, 5.0]\n', encoding='utf-8')
        assert ExperimentConfig.load(str(path)).seed == 5
        config = ExperimentConfig.load(str(path), overrides={'seed': 7, 'alphas': None})
        assert config.seed == 7
        assert config.poisson_means == [1.0, 5.0]
        assert config.alphas == STANDARD_ALPHAS

    def test_crm_block_merged_per_key(self, tmp_path):
        path = tmp_path / 'crm.yaml'
        path.write_text('experiment: crm-report\ncrm:\n  rho1: 0.2\n  mc-paths: 10\n', encoding='utf-8')
        config = ExperimentConfig.load(str(path))
        assert config.crm.rho1 == 0.2
        assert config.crm.mc_paths == 10
        assert config.crm.rho2 == CrmConfig().rho2

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config_file(str(tmp_path / 'missing.yaml'))

    @pytest.mark.parametrize("text", ['- 1\n- 2\n', 'seed: [1, 2\n'])
    def test_malformed_file(self, tmp_path, text):
        path = tmp_path / 'bad.yaml'
        path.write_text(text, encoding='utf-8')
        with pytest.raises(ConfigError):
            load_config_file(str(path))

    def test_empty_file(self, tmp_path):
        path = tmp_path / 'empty.yaml'
        path.write_text('', encoding='utf-8')
        assert load_config_file(str(path)) == {}

    def test_merge_skips_empty_values(self):
        merged = merge_config_with_file({'seed': 1, 'alphas': [0.5]}, {'seed': None, 'alphas': []})
        assert merged == {'seed': 1, 'alphas': [0.5]}

    @pytest.mark.parametrize("experiment", [None, 'crm-report'])
    def test_example_config_is_valid(self, experiment):
        data = yaml.safe_load(create_config_example(experiment))
        config = ExperimentConfig.from_dict(data)
        config.validate()


class TestConfigHash:
    def test_ignores_output_settings(self):
        first = ExperimentConfig(output_dir='a', workers=1, output_format='csv')
        second = ExperimentConfig(output_dir='b', workers=8, output_format='md')
        assert first.config_hash() == second.config_hash()
        assert len(first.config_hash()) == 12

    def test_tracks_seed_and_grid(self):
        base = ExperimentConfig()
        assert base.config_hash() != ExperimentConfig(seed=1).config_hash()
        assert base.config_hash() != ExperimentConfig(alphas=[0.5]).config_hash()

    def test_crm_only_counts_for_crm_report(self):
        assert ExperimentConfig().config_hash() == ExperimentConfig(crm=CrmConfig(xi=3.0)).config_hash()
        assert (ExperimentConfig(experiment='crm-report').config_hash()
                != ExperimentConfig(experiment='crm-report', crm=CrmConfig(xi=3.0)).config_hash())


def test_grid_helpers():
    assert get_family_display_name('clayton') == 'Clayton'
    assert is_table_family('kl-table', Family.GUMBEL)
    assert not is_table_family('kl3d-table', 'gumbel')
