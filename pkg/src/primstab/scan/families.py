# src/primstab/scan/families.py
from __future__ import annotations
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any
from primstab.core.errors import InvalidGeometry
from primstab.core import registry
from primstab.core.registry import register
from primstab.markoff.triples import TraceTriple


def parse_complex(text: str) -> complex:
    """Complex literal with either i or j as the imaginary unit."""
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise ValueError(f"not a complex number: {text!r}") from exc


@dataclass(frozen=True)
class ScanWindow:
    re0: float
    im0: float
    re1: float
    im1: float

    def __post_init__(self) -> None:
        if not (self.re1 > self.re0 and self.im1 > self.im0):
            raise InvalidGeometry(f"degenerate window {self.as_list()}")

    @classmethod
    def parse(cls, text: str) -> ScanWindow:
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"window needs re0,im0,re1,im1, got {text!r}")
        return cls(*parts)

    def as_list(self) -> list[float]:
        return [self.re0, self.im0, self.re1, self.im1]

    def pixel_centre(self, i: int, j: int, width: int, height: int) -> complex:
        """Row j counts down from im1, column i right from re0."""
        re = self.re0 + (i + 0.5) * (self.re1 - self.re0) / width
        im = self.im1 - (j + 0.5) * (self.im1 - self.im0) / height
        return complex(re, im)


def parse_size(text: str) -> tuple[int, int]:
    w, _, h = text.lower().partition("x")
    width, height = int(w), int(h)
    if width < 1 or height < 1:
        raise InvalidGeometry(f"size must be at least 1x1, got {text!r}")
    return width, height


class SliceFamily(ABC):
    """A one-complex-parameter family t ↦ (x(t), y(t), z(t)) of trace triples."""

    name: str = ""

    def __init__(self, params: dict[str, Any]) -> None:
        if self.name:
            missing = registry.missing_params(self.name, params)
            if missing:
                raise ValueError(f"{self.name} slice is missing {', '.join(missing)}")
        self.params = params

    @abstractmethod
    def triple_at(self, t: complex) -> TraceTriple: ...

    def params_json(self) -> dict[str, list[float]]:
        """Parameters as [re, im] pairs for the sidecar."""
        return {}


@register("diagonal", summary="x = y = z = t")
class DiagonalSlice(SliceFamily):
    name = "diagonal"

    def triple_at(self, t: complex) -> TraceTriple:
        return TraceTriple(t, t, t)


@register("fixed-xy", requires=("x0", "y0"), summary="x = x0, y = y0, z = t")
class FixedXYSlice(SliceFamily):
    name = "fixed-xy"

    def __init__(self, params: dict[str, Any]) -> None:
        super().__init__(params)
        self.x0 = complex(params["x0"])
        self.y0 = complex(params["y0"])

    def triple_at(self, t: complex) -> TraceTriple:
        return TraceTriple(self.x0, self.y0, t)

    def params_json(self) -> dict[str, list[float]]:
        return {"x0": [self.x0.real, self.x0.imag], "y0": [self.y0.real, self.y0.imag]}


_AFFINE_KEYS = ("ax", "bx", "ay", "by", "az", "bz")


@register("custom", requires=_AFFINE_KEYS, summary="affine in t, one (a, b) pair per coordinate")
class CustomAffineSlice(SliceFamily):
    """x = ax·t + bx, and likewise for y and z."""

    name = "custom"

    def __init__(self, params: dict[str, Any]) -> None:
        super().__init__(params)
        self.coeffs = {k: complex(params[k]) for k in _AFFINE_KEYS}

    @classmethod
    def parse_affine(cls, text: str) -> dict[str, complex]:
        parts = [parse_complex(p) for p in text.split(",")]
        if len(parts) != len(_AFFINE_KEYS):
            raise ValueError(f"--affine needs {len(_AFFINE_KEYS)} values, got {len(parts)}")
        return dict(zip(_AFFINE_KEYS, parts))

    def triple_at(self, t: complex) -> TraceTriple:
        c = self.coeffs
        return TraceTriple(c["ax"] * t + c["bx"], c["ay"] * t + c["by"], c["az"] * t + c["bz"])

    def params_json(self) -> dict[str, list[float]]:
        return {k: [v.real, v.imag] for k, v in self.coeffs.items()}
