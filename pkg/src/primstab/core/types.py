# src/primstab/core/types.py
from __future__ import annotations
import math
from enum import Enum
from typing import Literal
from pydantic import BaseModel, Field, field_serializer

SCHEMA_VERSION = 1


def complex_pair(t: complex | None) -> list[float] | None:
    """[re, im]; None for absent or saturated values."""
    if t is None or not (math.isfinite(t.real) and math.isfinite(t.imag)):
        return None
    return [t.real, t.imag]


def finite_or_none(x: float | None) -> float | None:
    if x is None or not math.isfinite(x):
        return None
    return x


# ── Verdicts ──────────────────────────────────────────────────────────────────


class BqLabel(str, Enum):
    BQ = "bq"
    NOT_BQ = "not_bq"
    UNKNOWN = "unknown"


class PsLabel(str, Enum):
    LIKELY_PS = "likely_ps"
    NOT_PS = "not_ps"
    UNKNOWN = "unknown"


class PixelLabel(str, Enum):
    BQ = "bq"
    NOT_BQ_INTERVAL = "not_bq_interval"
    NOT_BQ_EXCEPTIONAL = "not_bq_exceptional"
    UNKNOWN = "unknown"
    ELEMENTARY = "elementary"


# ── Reports ───────────────────────────────────────────────────────────────────


class WitnessModel(BaseModel):
    kind: Literal["primitive_in_interval", "exceptional_boundary"]
    region: str
    trace: complex
    direction: int | None = None

    @field_serializer("trace")
    def _ser_trace(self, v: complex) -> list[float] | None:
        return complex_pair(v)


class BqReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    verdict: BqLabel
    witness: WitnessModel | None = None
    certificate_size: int = Field(0, ge=0)
    depth_used: int = Field(0, ge=0)


class PsReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    min_ratio: float = Field(ge=0.0)
    K: float = Field(ge=1.0)
    eps: float = Field(ge=0.0)
    level: int
    verdict: PsLabel
    witness: str | None = None


class BipRecordModel(BaseModel):
    rational: str
    pair: str
    word: str
    intersects: bool
    degenerate: bool = False
    distance: float | None = None
    residual: float | None = None
    point: list[float] | None = None  # [re w, im w, t]


class BipReportModel(BaseModel):
    schema_version: int = SCHEMA_VERSION
    D_hat: float | None
    level: int
    records: list[BipRecordModel] = Field(default_factory=list)


class GrowthReportModel(BaseModel):
    schema_version: int = SCHEMA_VERSION
    level: int
    c_lower: float
    c_upper: float
    violations: list[str] = Field(default_factory=list)


class ClassifyReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    triple: str
    mu: complex
    bq: BqLabel
    ps: PsLabel
    bip_D: float | None
    bq_report: BqReport
    ps_report: PsReport
    budgets: dict[str, float | int] = Field(default_factory=dict)

    @field_serializer("mu")
    def _ser_mu(self, v: complex) -> list[float] | None:
        return complex_pair(v)


class FullReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    triple: str
    growth: GrowthReportModel
    ps: PsReport
    bip: BipReportModel


# ── Listings and scans ────────────────────────────────────────────────────────


class WordRow(BaseModel):
    rational: str
    word: str
    length: int
    e_a: int
    e_b: int
    mod2_type: str
    palindromes: dict[str, str] = Field(default_factory=dict)


class ScanSidecar(BaseModel):
    schema_version: int = SCHEMA_VERSION
    family: str
    params: dict[str, list[float]] = Field(default_factory=dict)
    window: list[float]  # [re0, im0, re1, im1]
    size: list[int]  # [width, height]
    image: Literal["pgm", "ppm"]
    budgets: dict[str, float | int] = Field(default_factory=dict)
    counts: dict[str, int] = Field(default_factory=dict)
    elapsed_s: float = 0.0  # excluded from determinism comparisons
