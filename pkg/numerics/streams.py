"""
재현 가능한 난수 스트림
(master seed, 셀 좌표, 배치 번호) → 독립 Generator. 스레드 수와 무관하게 같은 결과를 냅니다.
"""

from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np


def seed_stream(seed: int, *coords: int) -> np.random.Generator:
    """
    master seed 와 좌표로부터 독립 Generator 를 만듭니다.

    Args:
        seed: master seed
        coords: 셀 좌표, 배치 번호 등 음이 아닌 정수들

    Returns:
        numpy Generator (PCG64)
    """
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(c) for c in coords))
    return np.random.default_rng(sequence)


def batch_sizes(count: int, batch_size: int) -> Iterator[Tuple[int, int]]:
    """(배치 번호, 배치 크기) 를 순서대로 돌려줍니다."""
    batch_size = max(1, int(batch_size))
    index = 0
    remaining = int(count)
    while remaining > 0:
        size = min(batch_size, remaining)
        yield index, size
        index += 1
        remaining -= size


@dataclass
class BatchMoments:
    """배치별 합/제곱합을 고정 순서로 누적해 평균과 표준오차를 계산"""
    total: float = 0.0
    total_sq: float = 0.0
    count: int = 0

    def add(self, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=float)
        self.total += float(np.sum(values))
        self.total_sq += float(np.sum(values * values))
        self.count += int(values.size)

    @property
    def mean(self) -> float:
        return self.total / self.count if self.count else float('nan')

    @property
    def std_error(self) -> float:
        if self.count < 2:
            return 0.0
        mean = self.mean
        var = (self.total_sq - self.count * mean * mean) / (self.count - 1)
        return float(np.sqrt(max(var, 0.0) / self.count))
