"""Bowditch's BQ-condition as a semi-decision with certificates and witnesses.

The search descends from the central vertex to a sink, then grows a subtree
breadth-first until every boundary edge closes (see ``edge_closes``).  The
closed subtree is the certificate; any region met on the way whose trace lies
in [-2, 2], or at ±√μ with one-sided decay along its boundary, is a witness.
"""
from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from primstab.core.config import BqConfig, settings
from primstab.core.errors import ElementaryRepresentation
from primstab.core.logging import get_logger
from primstab.core.types import BqLabel, BqReport, GrowthReportModel, WitnessModel
from primstab.farey.rational import BASE_REGIONS, Rational, boundary_region, rationals_up_to
from primstab.markoff.tracemap import RegionRef, TraceMap, Vertex, boundary_seed
from primstab.markoff.tree import (
    BoundaryGrowth,
    BoundaryRecord,
    edge_closes,
    find_sink,
    grow_subtree,
)
from primstab.markoff.triples import TraceTriple, in_interval, is_elementary, is_escaped

log = get_logger(__name__)


class WitnessKind(str, Enum):
    PRIMITIVE_IN_INTERVAL = "primitive_in_interval"
    EXCEPTIONAL_BOUNDARY = "exceptional_boundary"


class BoundaryClass(str, Enum):
    ESCAPES_BOTH_WAYS = "escapes_both_ways"
    DECAYS_ONE_WAY = "decays_one_way"
    BOUNDED = "bounded"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class BqWitness:
    kind: WitnessKind
    region: Rational
    trace: complex
    direction: int | None = None  # +1 / -1: boundary direction of decay

    def to_model(self) -> WitnessModel:
        return WitnessModel(
            kind=self.kind.value, region=str(self.region), trace=self.trace, direction=self.direction
        )


@dataclass
class AttractingTree:
    root: Vertex
    vertices: dict[Vertex, int]
    boundary: list[BoundaryRecord]
    omega: list[RegionRef]
    m: float

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass
class BqVerdict:
    label: BqLabel
    certificate: AttractingTree | None = None
    witness: BqWitness | None = None
    depth_used: int = 0
    vertices_explored: int = 0
    reason: str | None = None

    @property
    def satisfies(self) -> bool:
        return self.label is BqLabel.BQ

    @property
    def fails(self) -> bool:
        return self.label is BqLabel.NOT_BQ

    def to_report(self) -> BqReport:
        return BqReport(
            verdict=self.label,
            witness=self.witness.to_model() if self.witness else None,
            certificate_size=self.certificate.size if self.certificate else 0,
            depth_used=self.depth_used,
        )


# ── Boundary recurrence ───────────────────────────────────────────────────────


@dataclass
class BoundaryReport:
    region: Rational
    trace: complex
    classification: BoundaryClass
    direction: int | None = None
    lam: complex | None = None
    coefficients: tuple[complex, complex] | None = None
    min_forward: float = math.inf
    min_backward: float = math.inf
    forward: list[complex] = field(default_factory=list, repr=False)
    backward: list[complex] = field(default_factory=list, repr=False)


def _iterate(u: complex, prev: complex, cur: complex, steps: int) -> list[complex]:
    out: list[complex] = []
    for _ in range(steps):
        prev, cur = cur, u * cur - prev
        if is_escaped(cur) or abs(cur) > settings.markoff.escape_bound:
            break
        out.append(cur)
    return out


def boundary_recurrence(
    base: TraceTriple,
    region: RegionRef | Rational,
    steps: int,
    tracemap: TraceMap | None = None,
    decay_tol: float | None = None,
) -> BoundaryReport:
    """Iterate y_{i+1} = φ(u)·y_i − y_{i−1} both ways from two adjacent boundary regions."""
    tm = tracemap or TraceMap(base)
    r = region.address if isinstance(region, RegionRef) else region
    decay_tol = settings.bq.sqrt_mu_tol if decay_tol is None else decay_tol
    u = tm.trace(r)
    seed = boundary_seed(r)
    y0 = tm.trace(boundary_region(r, seed, 0))
    y1 = tm.trace(boundary_region(r, seed, 1))
    report = BoundaryReport(r, u, BoundaryClass.UNKNOWN)
    if is_escaped(u) or is_escaped(y0) or is_escaped(y1):
        report.classification = BoundaryClass.ESCAPES_BOTH_WAYS
        return report

    report.forward = _iterate(u, y0, y1, steps)
    report.backward = _iterate(u, y1, y0, steps)
    report.min_forward = min((abs(t) for t in report.forward), default=math.inf)
    report.min_backward = min((abs(t) for t in report.backward), default=math.inf)

    if in_interval(u):
        report.classification = BoundaryClass.BOUNDED
        return report
    growth = BoundaryGrowth.fit(u, y0, y1)
    if growth is None:
        report.classification = BoundaryClass.BOUNDED
        return report
    report.lam = growth.lam
    report.coefficients = (growth.a, growth.b)
    scale = max(abs(growth.a), abs(growth.b))
    if abs(growth.b) <= decay_tol * scale:
        report.classification = BoundaryClass.DECAYS_ONE_WAY
        report.direction = -1
    elif abs(growth.a) <= decay_tol * scale:
        report.classification = BoundaryClass.DECAYS_ONE_WAY
        report.direction = 1
    elif (
        growth.first_escape(2.0, steps) is not None
        and growth.mirrored().first_escape(2.0, steps) is not None
    ):
        report.classification = BoundaryClass.ESCAPES_BOTH_WAYS
    return report


# ── The search ────────────────────────────────────────────────────────────────


def _near_sqrt_mu(t: complex, mu: complex, tol: float) -> bool:
    if is_escaped(t):
        return False
    root = cmath.sqrt(mu)
    return any(abs(t - s) <= tol * (1 + abs(s)) for s in (root, -root))


def bq_test(base: TraceTriple, cfg: BqConfig | None = None) -> BqVerdict:
    cfg = cfg or settings.bq
    if is_elementary(base):
        raise ElementaryRepresentation(f"mu = 4 at {base}; tr[A,B] = 2 is excluded")
    tm = TraceMap(base)
    mu = base.mu
    found: list[BqWitness] = []

    def visit(r: Rational, t: complex) -> bool:
        if in_interval(t, cfg.interval_tol):
            found.append(BqWitness(WitnessKind.PRIMITIVE_IN_INTERVAL, r, t))
            return True
        if _near_sqrt_mu(t, mu, cfg.sqrt_mu_tol):
            report = boundary_recurrence(base, r, cfg.boundary_budget, tracemap=tm)
            if report.classification is BoundaryClass.DECAYS_ONE_WAY:
                found.append(BqWitness(WitnessKind.EXCEPTIONAL_BOUNDARY, r, t, report.direction))
                return True
        return False

    sink = find_sink(base, Vertex.central(), cfg.descent_budget, tracemap=tm, visit=visit)
    if found:
        log.debug("witness during descent", region=str(found[0].region), kind=found[0].kind.value)
        return BqVerdict(BqLabel.NOT_BQ, witness=found[0], depth_used=sink.steps)

    root = sink.vertex or sink.path[-1]
    grown = grow_subtree(tm, root, cfg.m, cfg.depth_budget, cfg.vertex_budget, visit=visit)
    if found:
        log.debug("witness found", region=str(found[0].region), kind=found[0].kind.value)
        return BqVerdict(
            BqLabel.NOT_BQ,
            witness=found[0],
            depth_used=grown.depth_used,
            vertices_explored=len(grown.depths),
        )
    if grown.status == "budget":
        log.debug("budget exhausted", vertices=len(grown.depths))
        return BqVerdict(
            BqLabel.UNKNOWN,
            depth_used=grown.depth_used,
            vertices_explored=len(grown.depths),
            reason="budget",
        )
    omega = sorted(
        (tm.ref(r) for r in grown.adjacent_regions() if abs(tm.trace(r)) <= cfg.m),
        key=lambda ref: (ref.address.height, ref.address.q, ref.address.p),
    )
    cert = AttractingTree(root, dict(grown.depths), grown.boundary, omega, cfg.m)
    return BqVerdict(
        BqLabel.BQ,
        certificate=cert,
        depth_used=grown.depth_used,
        vertices_explored=len(grown.depths),
    )


def validate_certificate(base: TraceTriple, cert: AttractingTree | None) -> bool:
    """Recompute every trace and boundary orientation of cert from scratch."""
    if cert is None or not cert.vertices or cert.root not in cert.vertices:
        return False
    tm = TraceMap(base)
    vertices = set(cert.vertices)

    # connected
    reached = {cert.root}
    queue: deque[Vertex] = deque([cert.root])
    while queue:
        v = queue.popleft()
        for u_, v_, _ in v.edges():
            nb = v.across(u_, v_)
            if nb in vertices and nb not in reached:
                reached.add(nb)
                queue.append(nb)
    if reached != vertices:
        return False

    recorded = {
        (rec.inside, frozenset({rec.edge.u, rec.edge.v})): rec for rec in cert.boundary
    }
    for v in vertices:
        if any(in_interval(t) for t in tm.traces_at(v)):
            return False
        for u_, v_, w_ in v.edges():
            if v.across(u_, v_) in vertices:
                continue
            edge = tm.orient(u_, v_, w_)
            if edge_closes(edge, cert.m) == "open":
                return False
            rec = recorded.get((v, frozenset({u_, v_})))
            if rec is None or rec.edge.toward_w != edge.toward_w or not rec.edge.decisive:
                return False
    return True


# ── Fibonacci growth ──────────────────────────────────────────────────────────


@dataclass
class GrowthReport:
    level: int
    c_lower: float
    c_upper: float
    violations: list[Rational]
    samples: int

    def to_model(self) -> GrowthReportModel:
        return GrowthReportModel(
            level=self.level,
            c_lower=self.c_lower,
            c_upper=self.c_upper,
            violations=[str(r) for r in self.violations],
        )


def fibonacci_growth_report(
    base: TraceTriple, level: int, cfg: BqConfig | None = None
) -> GrowthReport:
    """log⁺|φ(r)| / (|p| + q) over the base regions and every region up to level."""
    cfg = cfg or settings.bq
    tm = TraceMap(base)
    regions = list(BASE_REGIONS) + [
        r for r in rationals_up_to(level, negative=True) if r not in BASE_REGIONS
    ]
    log_cap = math.log(settings.markoff.escape_bound)
    ratios: dict[Rational, float] = {}
    for r in regions:
        t = tm.trace(r)
        logp = log_cap if is_escaped(t) else max(0.0, math.log(abs(t))) if t != 0 else 0.0
        ratios[r] = logp / r.height
    outside = {r: v for r, v in ratios.items() if r.height > cfg.exceptional_level}
    pool = outside or ratios
    violations = [r for r, v in outside.items() if v <= cfg.growth_floor]
    return GrowthReport(
        level=level,
        c_lower=min(pool.values()),
        c_upper=max(ratios.values()),
        violations=violations,
        samples=len(ratios),
    )
