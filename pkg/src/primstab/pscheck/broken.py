"""Broken geodesics and the empirical primitive-stability verdict.

A word w is followed through H³ by the orbit points O, E₁O, E₁E₂O, ...; PS asks
that these paths be uniformly quasigeodesic over all primitive words.  At a
finite level that can only be estimated, so the verdict is a semi-decision:
an elliptic or parabolic primitive is a definite witness against, while a
positive and stable lower ratio is only evidence for.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from primstab.core.config import PsConfig, settings
from primstab.core.errors import DegenerateSegment, NotCyclicallyShortest
from primstab.core.logging import get_logger
from primstab.core.types import PsLabel, PsReport
from primstab.farey.rational import BASE_REGIONS, Rational, rationals_up_to
from primstab.farey.words import Word, farey_word
from primstab.geometry.hyperbolic import (
    O,
    H3Point,
    apply_moebius,
    axis,
    distance_to_geodesic,
    h3_distance,
)
from primstab.geometry.moebius import MoebiusMatrix, evaluate_word, lift_representation
from primstab.markoff.tracemap import TraceMap
from primstab.markoff.triples import TraceTriple, in_interval
from primstab.pscheck.trend import TrendWindow

log = get_logger(__name__)

K_CAP = 1e12


@dataclass
class BrokenGeodesic:
    word: Word
    vertices: list[H3Point]
    A: MoebiusMatrix = field(repr=False)
    B: MoebiusMatrix = field(repr=False)

    @property
    def segments(self) -> list[float]:
        return [h3_distance(p, q) for p, q in zip(self.vertices, self.vertices[1:])]

    @property
    def length(self) -> float:
        return sum(self.segments)

    @property
    def endpoint_distance(self) -> float:
        return h3_distance(self.vertices[0], self.vertices[-1])


def broken_geodesic(
    w: Word | str, A: MoebiusMatrix, B: MoebiusMatrix, origin: H3Point = O
) -> BrokenGeodesic:
    """Prefix-product images of origin over one period of w."""
    word = w if isinstance(w, Word) else Word(w)
    if not word.is_cyclically_reduced:
        raise NotCyclicallyShortest(f"{word} is not cyclically reduced")
    vertices = [origin]
    prefix = MoebiusMatrix.identity()
    for letter in word:
        prefix = prefix @ evaluate_word(letter, A, B)
        vertices.append(apply_moebius(prefix, origin))
    return BrokenGeodesic(word, vertices, A, B)


def bending_angle(P: H3Point, Q: H3Point, R: H3Point) -> float:
    """Interior angle at Q of the geodesic legs QP and QR, by the cosine rule."""
    a, b = h3_distance(Q, P), h3_distance(Q, R)
    if a <= 1e-12 or b <= 1e-12:
        raise DegenerateSegment("bending point coincides with a neighbour")
    c = h3_distance(P, R)
    cos_psi = (math.cosh(a) * math.cosh(b) - math.cosh(c)) / (math.sinh(a) * math.sinh(b))
    return math.acos(min(1.0, max(-1.0, cos_psi)))


@dataclass
class BendingProfile:
    angles: list[float]
    skipped: int = 0

    @property
    def minimum(self) -> float | None:
        return min(self.angles, default=None)


def bending_profile(bg: BrokenGeodesic) -> BendingProfile:
    """Angles at every bending point of one period, the wraparound included."""
    n = len(bg.word)
    doubled = broken_geodesic(bg.word * bg.word, bg.A, bg.B, bg.vertices[0])
    vs = doubled.vertices
    angles: list[float] = []
    skipped = 0
    for i in range(1, n + 1):
        try:
            angles.append(bending_angle(vs[i - 1], vs[i], vs[i + 1]))
        except DegenerateSegment:
            skipped += 1
    return BendingProfile(angles, skipped)


def power_axis_distance(U: MoebiusMatrix, r: int, origin: H3Point = O) -> float:
    """d(UʳO, Ax U); U preserves its axis, so this does not depend on r."""
    power = MoebiusMatrix.identity()
    step = U if r >= 0 else U.inverse()
    for _ in range(abs(r)):
        power = power @ step
    return distance_to_geodesic(apply_moebius(power, origin), axis(U))


# ── Quasigeodesic constants ───────────────────────────────────────────────────


@dataclass
class QgEstimate:
    K_hat: float
    eps_hat: float
    min_ratio: float
    level: int
    witness: str | None = None
    level_minima: list[float] = field(default_factory=list)
    samples: int = 0


def _subword_samples(word: Word, A: MoebiusMatrix, B: MoebiusMatrix) -> tuple[np.ndarray, np.ndarray, str]:
    """Lengths and displacements of every cyclic subword of ww; also the worst subword."""
    letters = word.letters
    n = len(letters)
    images = [evaluate_word(ch, A, B) for ch in letters]
    lengths: list[int] = []
    dists: list[float] = []
    worst, worst_ratio = letters, math.inf
    for start in range(n):
        prod = MoebiusMatrix.identity()
        for length in range(1, 2 * n + 1):
            prod = prod @ images[(start + length - 1) % n]
            d = h3_distance(O, apply_moebius(prod, O))
            lengths.append(length)
            dists.append(d)
            if d / length < worst_ratio:
                worst_ratio = d / length
                worst = "".join(letters[(start + k) % n] for k in range(length))
    return np.array(lengths, dtype=float), np.array(dists), worst


def ps_estimate(base: TraceTriple, level: int, cfg: PsConfig | None = None) -> QgEstimate:
    """Envelope fit of d(O, ρ(w)O) against ||w|| over cyclic subwords up to level."""
    if level < 2:
        raise ValueError(f"level must be at least 2, got {level}")
    A, B = lift_representation(base)
    all_len: list[np.ndarray] = []
    all_dist: list[np.ndarray] = []
    minima: list[float] = []
    running = math.inf
    witness: str | None = None
    by_height: dict[int, list[Rational]] = {}
    for r in rationals_up_to(level):
        by_height.setdefault(r.height, []).append(r)
    for height in range(1, level + 1):
        for r in by_height.get(height, []):
            lengths, dists, worst = _subword_samples(farey_word(r), A, B)
            all_len.append(lengths)
            all_dist.append(dists)
            ratio = float(np.min(dists / lengths))
            if ratio < running:
                running, witness = ratio, worst
        minima.append(running)

    lengths = np.concatenate(all_len)
    dists = np.concatenate(all_dist)
    ratios = dists / lengths
    min_ratio = max(0.0, float(ratios.min()))
    K_hat = max(1.0, float(ratios.max()), 1 / min_ratio if min_ratio > 0 else K_CAP)
    K_hat = min(K_hat, K_CAP)
    eps_hat = max(
        0.0,
        float(np.max(dists - K_hat * lengths)),
        float(np.max(lengths / K_hat - dists)),
    )
    log.debug("ps estimate", level=level, min_ratio=min_ratio, K=K_hat, samples=len(ratios))
    return QgEstimate(K_hat, eps_hat, min_ratio, level, witness, minima, len(ratios))


@dataclass
class PsVerdict:
    label: PsLabel
    estimate: QgEstimate | None = None
    witness: str | None = None
    reason: str | None = None

    def to_report(self) -> PsReport:
        est = self.estimate
        return PsReport(
            min_ratio=est.min_ratio if est else 0.0,
            K=est.K_hat if est else K_CAP,
            eps=est.eps_hat if est else 0.0,
            level=est.level if est else 0,
            verdict=self.label,
            witness=self.witness,
        )


def non_loxodromic_primitive(base: TraceTriple, level: int) -> tuple[Rational, Word] | None:
    """First region up to level (base regions first) with trace in [-2, 2]."""
    tm = TraceMap(base)
    regions = list(BASE_REGIONS) + [
        r for r in rationals_up_to(level, negative=True) if r not in BASE_REGIONS
    ]
    for r in regions:
        if in_interval(tm.trace(r), settings.bq.interval_tol):
            return r, farey_word(r)
    return None


def ps_verdict(base: TraceTriple, cfg: PsConfig | None = None) -> PsVerdict:
    cfg = cfg or settings.ps
    hit = non_loxodromic_primitive(base, cfg.trace_level)
    if hit is not None:
        r, word = hit
        log.debug("non-loxodromic primitive", region=str(r), word=str(word))
        return PsVerdict(PsLabel.NOT_PS, witness=str(word), reason="non_loxodromic")

    est = ps_estimate(base, cfg.level, cfg)
    window = TrendWindow(cfg.window)
    for value in est.level_minima:
        window.update(value)
    if est.min_ratio < cfg.floor and window.is_decreasing():
        return PsVerdict(PsLabel.NOT_PS, est, witness=est.witness, reason="collapsing_ratio")
    if est.min_ratio >= cfg.floor and window.is_stable(cfg.stability_tol * window.last):
        return PsVerdict(PsLabel.LIKELY_PS, est)
    return PsVerdict(PsLabel.UNKNOWN, est, reason="unstable" if window.full else "window")
