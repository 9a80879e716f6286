import os

import numpy as np
import pytest
from openpyxl import load_workbook

from experiments import KlTableExperiment, Panel, TableResult
from exporters import TableExporter, markdown_table, panel_sheet_names, sanitize_sheet_name


def small_result():
    metadata = {'experiment': 'kl-table', 'family': 'gaussian', 'seed': 1, 'version': '1.0.0'}
    result = TableResult('kl-table', 'gaussian', metadata=metadata)
    panel = result.add_panel(Panel.empty('alpha_0.25', 'Gaussian KL', 'theta', [0.0, 0.454], [0.5, 5.0]))
    panel.set_cell(0, 0, 0.0, tag='exact')
    panel.set_cell(0, 1, -0.0, tag='exact')
    panel.set_cell(1, 0, 0.0541234567, 0.00123)
    panel.set_cell(1, 1, 0.004, 0.0009)
    return result


def read(path):
    with open(path, 'rb') as handle:
        return handle.read()


class TestCsv:
    def test_value_and_error_files(self, tmp_path):
        paths = TableExporter(str(tmp_path)).export(small_result(), 'csv')
        names = [os.path.basename(p) for p in paths]
        assert names == ['kl_table_gaussian_alpha_0.25.csv', 'kl_table_gaussian_alpha_0.25_se.csv']

        values = read(paths[0]).decode('utf-8').splitlines()
        assert values[:5] == ['# experiment=kl-table', '# family=gaussian', '# seed=1', '# version=1.0.0',
                              '# panel=alpha_0.25']
        assert values[6:] == ['theta,0.5,5', '0,0,0', '0.454,0.0541235,0.004']

        errors = read(paths[1]).decode('utf-8').splitlines()
        assert errors[-2:] == ['0,exact,exact', '0.454,0.00123,0.0009']

    def test_notes_file(self, tmp_path):
        result = small_result()
        result.notes.append('참고')
        result.failures.append('cell: 실패')
        paths = TableExporter(str(tmp_path)).export(result, 'csv')
        notes = read(paths[-1]).decode('utf-8')
        assert paths[-1].endswith('kl_table_gaussian_notes.txt')
        assert '참고\n' in notes
        assert 'FAILED cell: 실패\n' in notes

    def test_byte_identical_for_same_seed(self, small_config, tmp_path):
        first_dir, second_dir = tmp_path / 'first', tmp_path / 'second'
        first = KlTableExperiment(small_config(workers=1), quiet=True).run()
        second = KlTableExperiment(small_config(workers=3), quiet=True).run()
        first_paths = TableExporter(str(first_dir)).export(first, 'csv')
        second_paths = TableExporter(str(second_dir)).export(second, 'csv')
        assert [os.path.basename(p) for p in first_paths] == [os.path.basename(p) for p in second_paths]
        for left, right in zip(first_paths, second_paths):
            assert read(left) == read(right)


class TestMarkdown:
    def test_render(self, tmp_path):
        result = small_result()
        result.notes.append('note')
        path = TableExporter(str(tmp_path)).export(result, 'md')[0]
        text = read(path).decode('utf-8')
        assert path.endswith('kl_table_gaussian.md')
        assert text.startswith('# kl-table (gaussian)\n')
        assert '## Gaussian KL' in text
        assert '| 0.454 | 0.0541235 ± 0.00123 | 0.004 ± 0.0009 |' in text
        assert '| 0 | 0 (exact) | 0 (exact) |' in text
        assert '## Notes' in text

    def test_markdown_table(self):
        frame = Panel.empty('k', 't', 'row', ['a'], ['b']).value_frame()
        assert markdown_table(frame) == '| row | b |\n|---|---|\n| a | nan |'


class TestExcel:
    def test_workbook_sheets(self, tmp_path):
        path = TableExporter(str(tmp_path)).export(small_result(), 'xlsx')[0]
        workbook = load_workbook(path)
        assert workbook.sheetnames == ['Summary', 'alpha_0.25']
        sheet = workbook['alpha_0.25']
        assert sheet.cell(row=1, column=1).value == 'theta'
        assert sheet.cell(row=3, column=3).value == pytest.approx(0.004)
        assert sheet.cell(row=5, column=1).value == 'std_error'

    def test_duplicate_sheet_names(self, tmp_path):
        result = small_result()
        result.add_panel(Panel.empty('alpha_0.25', 'again', 'theta', [0.0], [1.0]))
        path = TableExporter(str(tmp_path)).export(result, 'xlsx')[0]
        assert load_workbook(path).sheetnames == ['Summary', 'alpha_0.25', 'alpha_0.25_2']

    def test_summary_lists_written_sheet_names(self, tmp_path):
        result = small_result()
        result.add_panel(Panel.empty('alpha_0.25', 'again', 'theta', [0.0], [1.0]))
        result.add_panel(Panel.empty('Summary', 'clash', 'theta', [0.0], [1.0]))
        assert panel_sheet_names(result) == ['alpha_0.25', 'alpha_0.25_2', 'Summary_2']

        workbook = load_workbook(TableExporter(str(tmp_path)).export(result, 'xlsx')[0])
        summary = workbook['Summary']
        assert summary.cell(row=1, column=2).value == 'Sheet Name'
        listed = [summary.cell(row=row, column=2).value for row in (2, 3, 4)]
        assert listed == ['alpha_0.25', 'alpha_0.25_2', 'Summary_2']
        assert listed == workbook.sheetnames[1:]

    def test_sanitize_sheet_name(self):
        assert sanitize_sheet_name('a/b:c[1]') == 'a_b_c_1_'
        assert len(sanitize_sheet_name('x' * 40)) == 31


class TestErrors:
    def test_no_panels(self, tmp_path):
        with pytest.raises(ValueError):
            TableExporter(str(tmp_path)).export(TableResult('kl-table', None), 'csv')

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError):
            TableExporter(str(tmp_path)).export(small_result(), 'pdf')


def test_nan_cells_written(tmp_path):
    result = TableResult('selfcheck', None)
    result.add_panel(Panel.empty('checks', 'selfcheck', 'check', ['x'], ['observed']))
    paths = TableExporter(str(tmp_path)).export(result, 'csv')
    assert os.path.basename(paths[0]) == 'selfcheck_checks.csv'
    assert read(paths[0]).decode('utf-8').splitlines()[-1] == 'x,nan'
    assert np.isnan(result.panels[0].values[0, 0])
