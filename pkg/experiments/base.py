"""
실험 실행을 위한 베이스 클래스
"""

import logging
import time
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

from config import ExperimentConfig
from errors import NumericalError

from .result import TableResult

logger = logging.getLogger(__name__)

TOOL_NAME = 'Copula Transform Toolkit'
TOOL_VERSION = '1.0.0'


@dataclass(frozen=True)
class Cell:
    """표의 셀 하나. coords 는 seed stream 좌표, label 은 진행 표시용."""
    coords: Tuple[int, ...]
    label: str
    compute: Callable[[], Any]


class ExperimentBase(ABC):
    """실험 실행을 위한 베이스 클래스"""

    def __init__(self, config: ExperimentConfig, quiet: bool = False):
        self.config = config
        self.quiet = quiet
        self.wall_time: Optional[float] = None

    @abstractmethod
    def get_experiment_name(self) -> str:
        """실험 이름 반환 (예: 'kl-table', 'crm-report')"""
        pass

    @abstractmethod
    def get_sheet_name(self) -> str:
        """Excel 시트 접두어 반환"""
        pass

    @abstractmethod
    def run(self) -> TableResult:
        """실험 실행"""
        pass

    def _print(self, message: str = '', **kwargs) -> None:
        if not self.quiet:
            print(message, **kwargs)

    def new_result(self, family: Optional[str] = None) -> TableResult:
        return TableResult(
            experiment=self.get_experiment_name(),
            family=family,
            metadata={
                'experiment': self.get_experiment_name(),
                'family': family,
                'config_hash': self.config.config_hash(),
                'seed': self.config.seed,
                'sample_count': self.config.sample_count,
                'version': TOOL_VERSION,
            },
        )

    def run_cells(self, cells: List[Cell], result: TableResult) -> Dict[Tuple[int, ...], Any]:
        """
        셀들을 스레드 풀에서 계산합니다.

        각 셀은 자기 좌표로 seed stream 을 만들기 때문에 결과는 작업자 수와
        완료 순서에 무관합니다. NumericalError 로 실패한 셀은 result.failures 에
        기록하고 계속 진행합니다. 다른 오류는 그대로 전파됩니다.
        """
        total = len(cells)
        outputs: Dict[Tuple[int, ...], Any] = {}
        if total == 0:
            return outputs

        self._print(f"\n🔄 {total}개 셀 계산 중... (workers={self.config.workers})")
        self._print("-" * 70)
        with ThreadPoolExecutor(max_workers=max(1, self.config.workers)) as pool:
            futures = {pool.submit(cell.compute): cell for cell in cells}
            for done, future in enumerate(as_completed(futures), 1):
                cell = futures[future]
                progress = f"[{done:2d}/{total:2d}]"
                try:
                    outputs[cell.coords] = future.result()
                    self._print(f"{progress} 📋 {cell.label} ✅")
                except NumericalError as e:
                    logger.error("셀 %s 실패: %s", cell.label, e)
                    self._print(f"{progress} 📋 {cell.label} ❌ 오류: {e}")
                    result.failures.append(f"{cell.label}: {e}")
        return outputs

    def get_data_with_metadata(self) -> Dict[str, Any]:
        """메타데이터와 함께 결과 반환"""
        started = time.perf_counter()
        result = self.run()
        self.wall_time = time.perf_counter() - started

        return {
            'experiment': self.get_experiment_name(),
            'sheet_name': self.get_sheet_name(),
            'family': result.family,
            'config_hash': result.metadata.get('config_hash'),
            'seed': self.config.seed,
            'sample_count': self.config.sample_count,
            'version': TOOL_VERSION,
            'wall_time': self.wall_time,
            'result': result,
            'count': result.cell_count,
            'failures': list(result.failures),
        }


def raise_on_failures(result: TableResult) -> None:
    """실패한 셀이 있으면 NumericalError 를 발생시킵니다."""
    if result.failures:
        raise NumericalError(
            f"{result.experiment}: {len(result.failures)}개 셀 계산 실패\n  - "
            + '\n  - '.join(result.failures)
        )
