# src/primstab/scan/orchestrator.py
from __future__ import annotations
import asyncio
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any
from primstab.bq.search import WitnessKind, bq_test
from primstab.core import registry
from primstab.core.config import BqConfig, settings
from primstab.core.errors import ElementaryRepresentation
from primstab.core.logging import get_logger
from primstab.core.types import BqLabel, PixelLabel
from primstab.markoff.triples import TraceTriple, is_elementary
from primstab.scan import families as _families  # noqa: F401  (registers slice families)
from primstab.scan.families import ScanWindow, SliceFamily
from primstab.scan.image import PixelVerdict
from primstab.scan.metrics import ScanMetrics

log = get_logger(__name__)


def classify_point(triple: TraceTriple, cfg: BqConfig) -> PixelVerdict:
    if is_elementary(triple):
        return PixelVerdict(PixelLabel.ELEMENTARY)
    try:
        verdict = bq_test(triple, cfg)
    except ElementaryRepresentation:
        return PixelVerdict(PixelLabel.ELEMENTARY)
    if verdict.label is BqLabel.BQ:
        return PixelVerdict(PixelLabel.BQ, verdict.depth_used)
    if verdict.label is BqLabel.NOT_BQ and verdict.witness is not None:
        if verdict.witness.kind is WitnessKind.EXCEPTIONAL_BOUNDARY:
            return PixelVerdict(PixelLabel.NOT_BQ_EXCEPTIONAL, verdict.depth_used)
        return PixelVerdict(PixelLabel.NOT_BQ_INTERVAL, verdict.depth_used)
    return PixelVerdict(PixelLabel.UNKNOWN, verdict.depth_used)


def classify_row(
    family: str,
    params: dict[str, Any],
    window: list[float],
    size: tuple[int, int],
    row: int,
    cfg: dict[str, Any],
) -> list[tuple[str, int]]:
    """One image row; plain tuples so results cross process boundaries cheaply."""
    fam = registry.create(family, params)
    win = ScanWindow(*window)
    bq_cfg = BqConfig(**cfg)
    width, height = size
    out: list[tuple[str, int]] = []
    for i in range(width):
        v = classify_point(fam.triple_at(win.pixel_centre(i, row, width, height)), bq_cfg)
        out.append((v.label.value, v.depth))
    return out


@dataclass
class ScanResult:
    rows: list[list[PixelVerdict]]
    metrics: ScanMetrics
    elapsed_s: float


class ScanOrchestrator:
    """Classifies every pixel of a slice window.

    Rows are independent; with more than one thread they are farmed out to a
    process pool and reassembled in row order, so the result does not depend
    on the worker count.
    """

    def __init__(
        self,
        family: SliceFamily,
        window: ScanWindow,
        size: tuple[int, int],
        cfg: BqConfig | None = None,
        threads: int | None = None,
    ) -> None:
        self.family = family
        self.window = window
        self.size = size
        self.cfg = cfg or settings.bq
        self.threads = threads or settings.scan.threads

    def _args(self, row: int) -> tuple[Any, ...]:
        return (
            self.family.name,
            self.family.params,
            self.window.as_list(),
            self.size,
            row,
            self.cfg.model_dump(),
        )

    async def run(self) -> ScanResult:
        width, height = self.size
        metrics = ScanMetrics(workers=self.threads)
        start = time.monotonic()
        log.info("scan started", family=self.family.name, size=f"{width}x{height}", workers=self.threads)

        raw: list[list[tuple[str, int]]]
        if self.threads <= 1:
            raw = [classify_row(*self._args(j)) for j in range(height)]
        else:
            loop = asyncio.get_running_loop()
            with ProcessPoolExecutor(max_workers=self.threads) as pool:
                futures = [loop.run_in_executor(pool, classify_row, *self._args(j)) for j in range(height)]
                raw = list(await asyncio.gather(*futures))

        rows = [[PixelVerdict(PixelLabel(label), depth) for label, depth in r] for r in raw]
        for row in rows:
            metrics.record_row(row)
        elapsed = time.monotonic() - start
        log.info("scan finished", elapsed_s=round(elapsed, 3), **metrics.counts)
        return ScanResult(rows, metrics, elapsed)
