"""
내보내기 모듈들
"""

from .table_exporter import TableExporter, markdown_table, panel_sheet_names, sanitize_sheet_name

__all__ = [
    'TableExporter', 'markdown_table', 'panel_sheet_names', 'sanitize_sheet_name'
]
