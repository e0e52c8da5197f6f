"""Bounded intersection property: palindromic axes against the hyperelliptic axes."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import stats

from primstab.core.config import BipConfig, settings
from primstab.core.errors import IdentityMatrix, NotFound, ParabolicNoAxis, SharedEndpoint, TypeMismatch
from primstab.core.logging import get_logger
from primstab.core.types import BipRecordModel, BipReportModel, finite_or_none
from primstab.farey.palindromes import BasicPair, palindromic_representative
from primstab.farey.rational import Rational, mod2_type, rationals_up_to
from primstab.farey.words import Word
from primstab.geometry.hyperbolic import (
    O,
    CommonPerpendicular,
    Geodesic,
    H3Point,
    axis,
    common_perpendicular,
    h3_distance,
    hyperelliptic_axes,
    midpoint,
)
from primstab.geometry.moebius import (
    MoebiusMatrix,
    complex_half_length,
    evaluate_word,
    lift_representation,
)
from primstab.markoff.tracemap import RegionRef
from primstab.markoff.triples import TraceTriple

log = get_logger(__name__)


@dataclass
class BipRecord:
    rational: Rational
    pair: BasicPair
    word: Word
    intersects: bool
    degenerate: bool = False
    distance: float | None = None
    residual: float | None = None
    point: H3Point | None = None

    def to_model(self) -> BipRecordModel:
        return BipRecordModel(
            rational=str(self.rational),
            pair=self.pair.value,
            word=str(self.word),
            intersects=self.intersects,
            degenerate=self.degenerate,
            distance=finite_or_none(self.distance),
            residual=finite_or_none(self.residual),
            point=self.point.as_list() if self.point else None,
        )


@dataclass
class BipReport:
    level: int
    records: list[BipRecord] = field(default_factory=list)

    @property
    def D_hat(self) -> float | None:
        dists = [r.distance for r in self.records if r.intersects and r.distance is not None]
        return max(dists, default=None)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.records if r.residual is not None), default=0.0)

    def to_model(self) -> BipReportModel:
        return BipReportModel(
            D_hat=finite_or_none(self.D_hat),
            level=self.level,
            records=[r.to_model() for r in self.records],
        )


def _meet(M: MoebiusMatrix, E: Geodesic) -> CommonPerpendicular:
    return common_perpendicular(axis(M), E)


def _record(
    r: Rational,
    pair: BasicPair,
    A: MoebiusMatrix,
    B: MoebiusMatrix,
    E: Geodesic,
    tol: float,
) -> BipRecord:
    word = palindromic_representative(r, pair)
    M = evaluate_word(word, A, B)
    try:
        cp = _meet(M, E)
    except (ParabolicNoAxis, IdentityMatrix, SharedEndpoint) as exc:
        # a parabolic image has a degenerate axis meeting E at infinity
        log.debug("degenerate palindromic axis", rational=str(r), pair=pair.value, error=type(exc).__name__)
        return BipRecord(r, pair, word, intersects=False, degenerate=True)
    point = midpoint(cp.foot1, cp.foot2)
    return BipRecord(
        r,
        pair,
        word,
        intersects=cp.distance <= tol,
        distance=h3_distance(O, point),
        residual=abs(math.cos(cp.angle)) if cp.distance <= tol else None,
        point=point,
    )


def bip_report(base: TraceTriple, level: int, cfg: BipConfig | None = None) -> BipReport:
    """Intersections of palindromic axes with the matching hyperelliptic axis.

    Each region up to level contributes one record per basic pair whose types
    include its own.
    """
    cfg = cfg or settings.bip
    A, B = lift_representation(base)
    axes = hyperelliptic_axes(A, B)
    report = BipReport(level)
    for r in rationals_up_to(level, negative=True):
        for pair in BasicPair:
            if mod2_type(r) not in pair.types:
                continue
            try:
                report.records.append(_record(r, pair, A, B, axes[pair].geodesic, cfg.intersection_tol))
            except NotFound:
                log.debug("no palindrome class", rational=str(r), pair=pair.value)
    log.debug("bip report", level=level, records=len(report.records), D_hat=report.D_hat)
    return report


# ── Decay of perpendicular distances ──────────────────────────────────────────


@dataclass
class DecaySample:
    region: Rational
    following: Rational
    gap: float
    m: float


@dataclass
class DecayReport:
    pair: BasicPair
    samples: list[DecaySample]
    points: list[H3Point]
    slope: float | None = None
    intercept: float | None = None

    @property
    def total_gap(self) -> float:
        return sum(s.gap for s in self.samples)

    @property
    def endpoint_distance(self) -> float:
        if len(self.points) < 2:
            return 0.0
        return h3_distance(self.points[0], self.points[-1])


def perpendicular_decay_probe(
    base: TraceTriple, path: Sequence[RegionRef | Rational]
) -> DecayReport:
    """Gaps between consecutive palindromic axes along their common hyperelliptic axis.

    log(gap) is regressed against m = min(ℓ(Uᵢ), ℓ(Uᵢ₊₁)); zero gaps carry no
    slope information and are left out of the fit.
    """
    regions = [p.address if isinstance(p, RegionRef) else p for p in path]
    if not regions:
        raise ValueError("path is empty")
    if len(regions) == 1:
        pair = next(p for p in BasicPair if mod2_type(regions[0]) in p.types)
    else:
        types = {mod2_type(r) for r in regions}
        if len(types) != 2:
            raise TypeMismatch("path regions must alternate between two types")
        first, second = sorted(types, key=lambda t: t.value)
        pair = BasicPair.for_types(first, second)

    A, B = lift_representation(base)
    E = hyperelliptic_axes(A, B)[pair].geodesic
    mats = [evaluate_word(palindromic_representative(r, pair), A, B) for r in regions]
    points = [midpoint(cp.foot1, cp.foot2) for cp in (_meet(M, E) for M in mats)]
    lengths = [complex_half_length(M).length for M in mats]

    samples = [
        DecaySample(regions[i], regions[i + 1], h3_distance(points[i], points[i + 1]), min(lengths[i], lengths[i + 1]))
        for i in range(len(regions) - 1)
    ]
    report = DecayReport(pair, samples, points)
    usable = [s for s in samples if s.gap > 0]
    if len(usable) >= 2:
        fit = stats.linregress(np.array([s.m for s in usable]), np.log([s.gap for s in usable]))
        report.slope, report.intercept = float(fit.slope), float(fit.intercept)
    return report
