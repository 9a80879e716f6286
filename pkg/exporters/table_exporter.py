"""
표 내보내기 모듈 (CSV, markdown, Excel)
CSV 가 기계용 계약이며, 같은 설정과 seed 면 바이트 단위로 같은 파일을 만듭니다.
"""

import os
from datetime import datetime
from typing import Any, Dict, List

import pandas as pd

from experiments import TOOL_NAME, TOOL_VERSION, Panel, TableResult, format_number

EXCEL_INVALID_CHARS = ['[', ']', ':', '*', '?', '/', '\\']


def sanitize_sheet_name(name: str) -> str:
    """Excel 시트명 제한 (31자, 특수 문자)"""
    for char in EXCEL_INVALID_CHARS:
        name = name.replace(char, '_')
    return name[:31]


def panel_sheet_names(result: TableResult) -> List[str]:
    """패널별 시트명. 중복이면 _2, _3 ... 을 붙입니다."""
    used = {'Summary'}
    names = []
    for panel in result.panels:
        sheet_name = sanitize_sheet_name(panel.key)
        suffix = 1
        while sheet_name in used:
            suffix += 1
            sheet_name = sanitize_sheet_name(f"{panel.key[:27]}_{suffix}")
        used.add(sheet_name)
        names.append(sheet_name)
    return names


def markdown_table(frame: pd.DataFrame) -> str:
    header = '| ' + ' | '.join(str(c) for c in frame.columns) + ' |'
    divider = '|' + '|'.join(['---'] * len(frame.columns)) + '|'
    rows = ['| ' + ' | '.join(str(v) for v in row) + ' |' for row in frame.itertuples(index=False)]
    return '\n'.join([header, divider] + rows)


class TableExporter:
    """TableResult 를 파일로 내보내는 클래스"""

    def __init__(self, output_dir: str = 'output'):
        self.output_dir = output_dir

    def file_prefix(self, result: TableResult) -> str:
        name = result.experiment.replace('-', '_')
        return f"{name}_{result.family}" if result.family else name

    def _path(self, filename: str) -> str:
        os.makedirs(self.output_dir, exist_ok=True)
        return os.path.join(self.output_dir, filename)

    def export(self, result: TableResult, output_format: str = 'csv') -> List[str]:
        """형식에 맞춰 내보내고 만든 파일 경로를 반환합니다."""
        if not result.panels:
            raise ValueError("내보낼 패널이 없습니다.")
        if output_format == 'csv':
            return self.export_csv(result)
        if output_format == 'md':
            return [self.export_markdown(result)]
        if output_format == 'xlsx':
            return [self.export_excel(result)]
        raise ValueError(f"지원하지 않는 형식: {output_format}")

    # ------------------------------------------------------------------
    # CSV
    # ------------------------------------------------------------------

    def _write_csv(self, path: str, result: TableResult, panel: Panel, frame: pd.DataFrame, kind: str) -> None:
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            for line in result.header_lines():
                handle.write(f"# {line}\n")
            handle.write(f"# panel={panel.key}\n")
            handle.write(f"# table={kind}\n")
            frame.to_csv(handle, index=False, lineterminator='\n')

    def export_csv(self, result: TableResult) -> List[str]:
        """
        패널마다 값 파일과 표준오차 파일 (<prefix>_<panel>.csv, <prefix>_<panel>_se.csv).
        첫 열은 행 라벨, 머리글은 열 라벨입니다.
        """
        prefix = self.file_prefix(result)
        paths = []
        for panel in result.panels:
            value_path = self._path(f"{prefix}_{panel.key}.csv")
            self._write_csv(value_path, result, panel, panel.value_frame(), 'value')
            error_path = self._path(f"{prefix}_{panel.key}_se.csv")
            self._write_csv(error_path, result, panel, panel.std_error_frame(), 'std_error')
            paths.extend([value_path, error_path])

        if result.notes or result.failures:
            notes_path = self._path(f"{prefix}_notes.txt")
            with open(notes_path, 'w', encoding='utf-8', newline='') as handle:
                for line in result.header_lines():
                    handle.write(f"# {line}\n")
                for note in result.notes:
                    handle.write(f"{note}\n")
                for failure in result.failures:
                    handle.write(f"FAILED {failure}\n")
            paths.append(notes_path)
        return paths

    # ------------------------------------------------------------------
    # markdown
    # ------------------------------------------------------------------

    def render_markdown(self, result: TableResult) -> str:
        lines = [f"# {result.experiment}" + (f" ({result.family})" if result.family else ''), '']
        lines.extend(f"- {line}" for line in result.header_lines())
        for panel in result.panels:
            lines.extend(['', f"## {panel.title}", '', markdown_table(panel.cell_frame())])
        if result.notes:
            lines.extend(['', '## Notes', ''])
            lines.extend(f"- {note}" for note in result.notes)
        if result.failures:
            lines.extend(['', '## Failures', ''])
            lines.extend(f"- {failure}" for failure in result.failures)
        return '\n'.join(lines) + '\n'

    def export_markdown(self, result: TableResult) -> str:
        path = self._path(f"{self.file_prefix(result)}.md")
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(self.render_markdown(result))
        return path

    # ------------------------------------------------------------------
    # Excel
    # ------------------------------------------------------------------

    def export_excel(self, result: TableResult, create_summary: bool = True) -> str:
        """Summary 시트 + 패널마다 시트 하나 (값 표 아래에 표준오차 표)"""
        path = self._path(f"{self.file_prefix(result)}.xlsx")
        sheet_names = panel_sheet_names(result)
        with pd.ExcelWriter(path, engine='openpyxl') as writer:
            if create_summary:
                summary = pd.DataFrame(self._create_summary(result, sheet_names))
                summary.to_excel(writer, sheet_name='Summary', index=False)
                self._fit_columns(writer.sheets['Summary'])

            for panel, sheet_name in zip(result.panels, sheet_names):
                values = pd.DataFrame(panel.values, columns=[format_number(c) if isinstance(c, float) else str(c)
                                                             for c in panel.column_labels])
                values.insert(0, panel.row_header, panel.row_labels)
                values.to_excel(writer, sheet_name=sheet_name, index=False)
                errors = panel.std_error_frame()
                errors.to_excel(writer, sheet_name=sheet_name, index=False, startrow=len(values) + 3)
                worksheet = writer.sheets[sheet_name]
                worksheet.cell(row=len(values) + 3, column=1, value='std_error')
                self._fit_columns(worksheet)
        return os.path.abspath(path)

    @staticmethod
    def _fit_columns(worksheet) -> None:
        """열 너비 자동 조정 (최대 50자)"""
        for column in worksheet.columns:
            width = max((len(str(cell.value)) for cell in column if cell.value is not None), default=0)
            worksheet.column_dimensions[column[0].column_letter].width = min(width + 2, 50)

    def _create_summary(self, result: TableResult, sheet_names: List[str]) -> List[Dict[str, Any]]:
        """요약 시트 데이터 생성"""
        summary = []
        for panel, sheet_name in zip(result.panels, sheet_names):
            rows, columns = panel.shape
            summary.append({
                'Panel': panel.title,
                'Sheet Name': sheet_name,
                'Rows': rows,
                'Columns': columns,
                'Cells': rows * columns,
            })
        summary.append({
            'Panel': '** TOTAL **',
            'Sheet Name': f'{len(result.panels)} sheets',
            'Rows': '',
            'Columns': '',
            'Cells': result.cell_count,
        })

        summary.append({})
        summary.append({
            'Panel': 'Report Info',
            'Sheet Name': 'Generated',
            'Rows': datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            'Columns': TOOL_NAME,
            'Cells': f'v{TOOL_VERSION}',
        })
        for line in result.header_lines():
            key, _, value = line.partition('=')
            summary.append({'Panel': key, 'Sheet Name': value})
        for note in result.notes:
            summary.append({'Panel': 'note', 'Sheet Name': note})
        for failure in result.failures:
            summary.append({'Panel': 'FAILED', 'Sheet Name': failure})
        return summary
