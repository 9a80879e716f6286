"""
실험 결과 표 (패널 단위)
모든 숫자 셀은 표준오차 또는 'exact' 태그를 함께 갖습니다.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

EXACT_TAG = 'exact'
QUADRATURE_TAG = 'quadrature'


def format_number(value: float) -> str:
    """유효숫자 6자리. -0 은 0 으로 정규화합니다."""
    value = float(value)
    if np.isnan(value):
        return 'nan'
    if value == 0.0:
        return '0'
    return f"{value:.6g}"


def format_label(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return format_number(value)
    return str(value)


@dataclass
class Panel:
    """
    하나의 표 패널.

    values / std_errors 는 (행 수, 열 수) 배열이고 tags 는 표준오차 대신 쓸 태그
    ('exact', 'quadrature') 또는 빈 문자열입니다.
    """
    key: str
    title: str
    row_header: str
    row_labels: List[Any]
    column_labels: List[Any]
    values: np.ndarray
    std_errors: np.ndarray
    tags: np.ndarray

    def __post_init__(self):
        shape = (len(self.row_labels), len(self.column_labels))
        self.values = np.asarray(self.values, dtype=float).reshape(shape)
        self.std_errors = np.asarray(self.std_errors, dtype=float).reshape(shape)
        self.tags = np.asarray(self.tags, dtype=object).reshape(shape)

    @classmethod
    def empty(cls, key: str, title: str, row_header: str,
              row_labels: Sequence[Any], column_labels: Sequence[Any]) -> 'Panel':
        shape = (len(row_labels), len(column_labels))
        return cls(
            key, title, row_header, list(row_labels), list(column_labels),
            np.full(shape, np.nan), np.zeros(shape), np.full(shape, '', dtype=object),
        )

    @property
    def shape(self):
        return self.values.shape

    def set_cell(self, row: int, column: int, value: float, std_error: float = 0.0, tag: str = '') -> None:
        self.values[row, column] = value
        self.std_errors[row, column] = std_error
        self.tags[row, column] = tag

    def set_estimate(self, row: int, column: int, estimate) -> None:
        """KlEstimate / RhoEstimate 를 셀에 넣습니다."""
        method = estimate.method.value
        if method == 'exact':
            tag = EXACT_TAG
        elif method == 'quadrature':
            tag = QUADRATURE_TAG
        else:
            tag = ''
        self.set_cell(row, column, estimate.value, estimate.std_error, tag)

    def std_error_text(self, row: int, column: int) -> str:
        tag = self.tags[row, column]
        return tag if tag else format_number(self.std_errors[row, column])

    def value_frame(self) -> pd.DataFrame:
        """값 표 (문자열, 6자리 유효숫자)"""
        rows = [[format_number(v) for v in row] for row in self.values]
        return self._frame(rows)

    def std_error_frame(self) -> pd.DataFrame:
        """표준오차 표 (exact 셀은 태그)"""
        rows = [[self.std_error_text(i, j) for j in range(self.shape[1])] for i in range(self.shape[0])]
        return self._frame(rows)

    def cell_frame(self) -> pd.DataFrame:
        """'값 ± 표준오차' 형식 (markdown, Excel 용)"""
        rows = []
        for i in range(self.shape[0]):
            row = []
            for j in range(self.shape[1]):
                value = format_number(self.values[i, j])
                tag = self.tags[i, j]
                row.append(f"{value} ({tag})" if tag else f"{value} ± {format_number(self.std_errors[i, j])}")
            rows.append(row)
        return self._frame(rows)

    def _frame(self, rows: List[List[str]]) -> pd.DataFrame:
        frame = pd.DataFrame(rows, columns=[format_label(c) for c in self.column_labels])
        frame.insert(0, self.row_header, [format_label(r) for r in self.row_labels])
        return frame


@dataclass
class TableResult:
    """실험 하나의 결과 (패널 목록 + 메타데이터 + 노트)"""
    experiment: str
    family: Optional[str]
    panels: List[Panel] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    def add_panel(self, panel: Panel) -> Panel:
        self.panels.append(panel)
        return panel

    def panel(self, key: str) -> Panel:
        for panel in self.panels:
            if panel.key == key:
                return panel
        raise KeyError(key)

    @property
    def cell_count(self) -> int:
        return sum(p.values.size for p in self.panels)

    @property
    def ok(self) -> bool:
        return not self.failures

    def header_lines(self) -> List[str]:
        """재현성 헤더 (config hash, seed, sample count, version)"""
        keys = ('experiment', 'family', 'config_hash', 'seed', 'sample_count', 'version')
        return [f"{key}={self.metadata[key]}" for key in keys if self.metadata.get(key) is not None]
