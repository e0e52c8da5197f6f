"""Parameter-plane slices classified pixel by pixel."""

from primstab.scan.families import (
    CustomAffineSlice,
    DiagonalSlice,
    FixedXYSlice,
    ScanWindow,
    SliceFamily,
    parse_size,
)
from primstab.scan.image import PixelVerdict, decode_pixel, recount, render, write_image
from primstab.scan.metrics import ScanMetrics
from primstab.scan.orchestrator import ScanOrchestrator, ScanResult, classify_point

__all__ = [
    "SliceFamily",
    "DiagonalSlice",
    "FixedXYSlice",
    "CustomAffineSlice",
    "ScanWindow",
    "parse_size",
    "PixelVerdict",
    "decode_pixel",
    "render",
    "write_image",
    "recount",
    "ScanMetrics",
    "ScanOrchestrator",
    "ScanResult",
    "classify_point",
]
