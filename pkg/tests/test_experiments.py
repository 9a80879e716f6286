import numpy as np
import pytest

from errors import ConfigError, NumericalError, ParameterError
from config import ExperimentConfig
from experiments import (
    EXACT_TAG, QUADRATURE_TAG, CrmReportExperiment, Kl3dTableExperiment, KlTableExperiment, Panel,
    RhoTableExperiment, SelfCheckExperiment, SELF_CHECKS, build_experiment, format_number,
    raise_on_failures,
)
from metrics import KlEstimate, EstimationMethod

CRM_BASE = {
    'frequency': {'kind': 'poisson', 'mean': 1.0},
    'xi': 1.0, 'sigma': 0.5, 'rho1': 0.3, 'rho2': 0.2,
    'structure': 'exchangeable', 'alpha': 0.5, 'mc_paths': 4000,
    'quantile_probes': [0.5, 0.9],
}


def crm_config(small_config, **crm):
    return small_config(experiment='crm-report', crm={**CRM_BASE, **crm})


class TestFormatting:
    def test_format_number(self):
        assert format_number(-0.0) == '0'
        assert format_number(0.0) == '0'
        assert format_number(1234567.0) == '1.23457e+06'
        assert format_number(0.1234564) == '0.123456'
        assert format_number(float('nan')) == 'nan'

    def test_panel_estimate_tags(self):
        panel = Panel.empty('p', 'title', 'theta', [0.0, 0.5], [1.0])
        panel.set_estimate(0, 0, KlEstimate(0.0, 0.0, 0, EstimationMethod.EXACT))
        panel.set_estimate(1, 0, KlEstimate(0.25, 0.01, 100))
        assert panel.std_error_text(0, 0) == EXACT_TAG
        assert panel.std_error_text(1, 0) == '0.01'
        assert list(panel.cell_frame().iloc[:, 1]) == ['0 (exact)', '0.25 ± 0.01']
        assert list(panel.value_frame().columns) == ['theta', '1']


class TestKlTable:
    def test_panels_and_exact_cells(self, small_config):
        result = KlTableExperiment(small_config(), quiet=True).run()
        assert [panel.key for panel in result.panels] == ['alpha_0.25', 'alpha_1']
        assert result.ok
        for panel in result.panels:
            assert panel.shape == (2, 2)
            assert list(panel.tags[0]) == [EXACT_TAG, EXACT_TAG]
            np.testing.assert_array_equal(panel.values[0], [0.0, 0.0])
            assert panel.values[1, 0] > panel.values[1, 1]
            assert panel.values[1, 0] > 0.0
        assert result.metadata['config_hash'] == small_config().config_hash()

    def test_independent_of_worker_count(self, small_config):
        single = KlTableExperiment(small_config(workers=1), quiet=True).run()
        many = KlTableExperiment(small_config(workers=4), quiet=True).run()
        for left, right in zip(single.panels, many.panels):
            np.testing.assert_array_equal(left.values, right.values)
            np.testing.assert_array_equal(left.std_errors, right.std_errors)

    def test_quadrature_panels(self, small_config):
        config = small_config(alphas=[0.5], quadrature=True, quadrature_order=32)
        result = KlTableExperiment(config, quiet=True).run()
        assert [panel.key for panel in result.panels] == ['alpha_0.5', 'alpha_0.5_quadrature']
        quadrature = result.panel('alpha_0.5_quadrature')
        assert quadrature.tags[1, 0] == QUADRATURE_TAG
        assert quadrature.values[1, 0] == pytest.approx(result.panel('alpha_0.5').values[1, 0], abs=0.05)

    def test_clayton_default_taus(self, small_config):
        config = small_config(family='clayton', thetas=None, alphas=[1.0], poisson_means=[1.0], sample_count=1000)
        result = KlTableExperiment(config, quiet=True).run()
        assert result.metadata['taus'] == [0.0, 0.1, 0.3, 0.8]
        assert result.panel('alpha_1').shape == (4, 1)

    def test_student_t_note(self, small_config):
        config = small_config(family='student_t', thetas=[0.454], alphas=[0.5], poisson_means=[1.0], sample_count=1000)
        result = KlTableExperiment(config, quiet=True).run()
        assert 'ν=4' in result.panels[0].title
        assert result.notes

    def test_three_dimensional(self, small_config):
        config = small_config(experiment='kl3d-table', thetas=[0.454], alphas=[0.5], poisson_means=[1.0])
        experiment = build_experiment(config, quiet=True)
        assert isinstance(experiment, Kl3dTableExperiment)
        result = experiment.run()
        assert result.metadata['dimension'] == 3
        assert result.panels[0].values[0, 0] > 0.0


class TestFailures:
    def test_numerical_errors_recorded(self, small_config, monkeypatch):
        def broken(*args, **kwargs):
            raise NumericalError("q 밀도 0")

        monkeypatch.setattr('experiments.kl_table.kl_transformed', broken)
        result = KlTableExperiment(small_config(), quiet=True).run()
        assert len(result.failures) == 8
        assert np.all(np.isnan(result.panels[0].values))
        with pytest.raises(NumericalError):
            raise_on_failures(result)

    def test_parameter_errors_propagate(self, small_config, monkeypatch):
        def broken(*args, **kwargs):
            raise ParameterError("잘못된 모수")

        monkeypatch.setattr('experiments.kl_table.kl_transformed', broken)
        with pytest.raises(ParameterError):
            KlTableExperiment(small_config(), quiet=True).run()

    def test_unknown_experiment(self):
        with pytest.raises(ConfigError):
            build_experiment(ExperimentConfig(experiment='nope'))


class TestRhoTable:
    def test_panels(self, small_config):
        result = RhoTableExperiment(small_config(experiment='rho-table', sample_count=20_000), quiet=True).run()
        assert [panel.key for panel in result.panels] == ['rho_p', 'alpha_0.25_rho_q', 'alpha_1_rho_q']
        rho_p = result.panel('rho_p')
        assert rho_p.values[1, 0] == rho_p.values[1, 1]
        assert rho_p.tags[0, 0] == EXACT_TAG
        assert any('arcsin' in note for note in result.notes)
        rho_q = result.panel('alpha_0.25_rho_q')
        assert rho_q.values[1, 0] < rho_q.values[1, 1]


class TestCrmReport:
    def test_panels(self, small_config):
        result = CrmReportExperiment(crm_config(small_config), quiet=True).run()
        keys = [panel.key for panel in result.panels]
        assert keys == ['severity', 'pd', 'quantiles', 'equivalence', 'moments', 'aggregate_cdf']
        moments = result.panel('moments')
        assert moments.column_labels == ['closed_form', 'monte_carlo', 'monte_carlo_copula',
                                         'abs_delta_monte_carlo', 'abs_delta_monte_carlo_copula']
        assert moments.values[0, 1] == pytest.approx(moments.values[0, 0], abs=5 * moments.std_errors[0, 1])
        assert result.metadata['sample_count'] == 4000
        assert result.panel('equivalence').values[0, 0] == 0.0

    def test_two_part_column_when_equivalent(self, small_config):
        result = CrmReportExperiment(crm_config(small_config, rho1=0.5, rho2=0.25), quiet=True).run()
        assert 'monte_carlo_two_part' in result.panel('moments').column_labels
        assert result.panel('equivalence').values[0, 0] == 1.0

    def test_identity_when_uncorrelated_with_frequency(self, small_config):
        result = CrmReportExperiment(crm_config(small_config, rho1=0.0, mc_paths=0), quiet=True).run()
        identity = result.panel('identity')
        assert identity.values[0, 0] == pytest.approx(identity.values[1, 0], rel=1e-12)
        assert result.panel('moments').column_labels == ['closed_form']

    def test_autoregressive(self, small_config):
        config = crm_config(small_config, frequency={'kind': 'binomial', 'n': 3, 'p': 0.4},
                            structure='autoregressive', rho1=0.5, rho2=0.5, mc_paths=0)
        result = CrmReportExperiment(config, quiet=True).run()
        keys = [panel.key for panel in result.panels]
        assert 'ar_variance' in keys
        assert 'equivalence' not in keys
        assert result.panel('pd').shape == (3, 5)

    def test_max_claims_bound(self, small_config):
        result = CrmReportExperiment(crm_config(small_config, max_claims=4, mc_paths=0), quiet=True).run()
        assert result.panel('severity').row_labels == [1, 2, 3, 4]

    def test_quantile_probes_in_cdf_panel(self, small_config):
        result = CrmReportExperiment(crm_config(small_config, mc_paths=0, s_probes=[0.0]), quiet=True).run()
        cdf = result.panel('aggregate_cdf')
        quantiles = result.panel('quantiles')
        assert 0.0 in cdf.row_labels
        for q, p in zip(quantiles.values[:, 0], [0.5, 0.9]):
            row = cdf.row_labels.index(q)
            assert cdf.values[row, 0] == pytest.approx(p, abs=1e-9)


class TestSelfCheck:
    def test_all_checks_pass(self, small_config):
        result = SelfCheckExperiment(small_config(experiment='selfcheck', sample_count=20_000), quiet=True).run()
        assert result.ok, result.failures
        panel = result.panel('checks')
        assert panel.row_labels == [name for name, _ in SELF_CHECKS]
        np.testing.assert_array_equal(panel.values[:, 2], 1.0)


def test_data_with_metadata(small_config):
    experiment = KlTableExperiment(small_config(alphas=[1.0], poisson_means=[1.0]), quiet=True)
    data = experiment.get_data_with_metadata()
    assert data['experiment'] == 'kl-table'
    assert data['sheet_name'] == 'KL'
    assert data['count'] == 2
    assert data['failures'] == []
    assert data['wall_time'] >= 0.0
    assert data['config_hash'] == experiment.config.config_hash()
