"""Pixel verdicts and their binary PGM/PPM rendering.

Both colour tables are injective, so an emitted image can be decoded back
into verdict counts for sidecar checks.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Sequence

from PIL import Image

from primstab.core.types import PixelLabel

ImageKind = Literal["pgm", "ppm"]

DEPTH_CAP = 24

_GREY: dict[PixelLabel, int] = {
    PixelLabel.BQ: 255,
    PixelLabel.NOT_BQ_EXCEPTIONAL: 192,
    PixelLabel.ELEMENTARY: 128,
    PixelLabel.UNKNOWN: 0,
}

_RGB: dict[PixelLabel, tuple[int, int, int]] = {
    PixelLabel.BQ: (255, 255, 255),
    PixelLabel.NOT_BQ_EXCEPTIONAL: (255, 0, 0),
    PixelLabel.ELEMENTARY: (128, 128, 128),
    PixelLabel.UNKNOWN: (0, 0, 0),
}


@dataclass(frozen=True, slots=True)
class PixelVerdict:
    label: PixelLabel
    depth: int = 0


def grey_value(v: PixelVerdict) -> int:
    if v.label is PixelLabel.NOT_BQ_INTERVAL:
        return 16 + 4 * min(v.depth, DEPTH_CAP)
    return _GREY[v.label]


def rgb_value(v: PixelVerdict) -> tuple[int, int, int]:
    if v.label is PixelLabel.NOT_BQ_INTERVAL:
        return (0, 0, 64 + 8 * min(v.depth, DEPTH_CAP - 1))
    return _RGB[v.label]


def decode_pixel(value: int | tuple[int, ...]) -> PixelLabel:
    """Inverse of the colour tables; grey ints for PGM, RGB tuples for PPM."""
    if isinstance(value, int):
        if 16 <= value <= 16 + 4 * DEPTH_CAP and value % 4 == 0:
            return PixelLabel.NOT_BQ_INTERVAL
        for label, grey in _GREY.items():
            if grey == value:
                return label
        raise ValueError(f"grey value {value} is not in the verdict table")
    rgb = tuple(value[:3])
    if rgb[0] == 0 and rgb[1] == 0 and rgb[2] >= 64:
        return PixelLabel.NOT_BQ_INTERVAL
    for label, colour in _RGB.items():
        if colour == rgb:
            return label
    raise ValueError(f"colour {rgb} is not in the verdict table")


def render(rows: Sequence[Sequence[PixelVerdict]], kind: ImageKind) -> Image.Image:
    """Row-major image; row 0 is the top of the window."""
    height = len(rows)
    width = len(rows[0]) if rows else 0
    if kind == "pgm":
        data = bytes(grey_value(v) for row in rows for v in row)
        return Image.frombytes("L", (width, height), data)
    data = bytes(c for row in rows for v in row for c in rgb_value(v))
    return Image.frombytes("RGB", (width, height), data)


def write_image(img: Image.Image, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    img.save(path, format="PPM")


def recount(path: Path) -> dict[str, int]:
    """Per-verdict pixel counts decoded from an emitted image."""
    with Image.open(path) as img:
        img.load()
        pixels = list(img.getdata())
    counts = Counter(decode_pixel(p).value for p in pixels)
    return {label.value: counts.get(label.value, 0) for label in PixelLabel}
