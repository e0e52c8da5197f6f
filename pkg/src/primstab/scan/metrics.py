"""Counters for a slice scan."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

from primstab.core.types import PixelLabel
from primstab.scan.image import PixelVerdict


@dataclass
class ScanMetrics:
    """Track per-verdict pixel counts and throughput of a scan.

    Attributes:
        counts: Pixels per verdict label, every label present
        rows_done: Rows classified so far
        workers: Worker processes used (1 means inline)
        max_depth: Deepest depth_used reported by any pixel
    """

    counts: dict[str, int] = field(default_factory=lambda: {l.value: 0 for l in PixelLabel})
    rows_done: int = 0
    workers: int = 1
    max_depth: int = 0
    _start_time: float = field(default_factory=time.monotonic)

    def record_row(self, row: list[PixelVerdict]) -> None:
        for v in row:
            self.counts[v.label.value] += 1
            self.max_depth = max(self.max_depth, v.depth)
        self.rows_done += 1

    @property
    def pixels(self) -> int:
        return sum(self.counts.values())

    @property
    def elapsed_s(self) -> float:
        return time.monotonic() - self._start_time

    @property
    def pixels_per_second(self) -> float:
        elapsed = self.elapsed_s
        if elapsed == 0:
            return 0.0
        return self.pixels / elapsed

    def to_dict(self) -> dict[str, Any]:
        """Export metrics for logging."""
        return {
            **self.counts,
            "rows_done": self.rows_done,
            "workers": self.workers,
            "max_depth": self.max_depth,
            "pixels_per_second": round(self.pixels_per_second, 1),
        }

    def reset(self) -> None:
        self.counts = {l.value: 0 for l in PixelLabel}
        self.rows_done = 0
        self.max_depth = 0
        self._start_time = time.monotonic()
