"""Walks on the trace-labelled Farey tree.

The attracting-subtree grower here is shared by Ω(m) enumeration and the BQ
search.  A boundary edge of a subtree is closed when its arrow points in
decisively and its wake provably holds no further region of modulus ≤ the
threshold; see ``edge_closes``.
"""
from __future__ import annotations

import cmath
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Literal

from primstab.core.config import settings
from primstab.core.errors import BudgetExhausted, NotFound, NotInWake, PreconditionViolated, TypeMismatch
from primstab.core.logging import get_logger
from primstab.farey.rational import Mod2Type, Rational, boundary_region, mod2_type
from primstab.markoff.tracemap import RegionRef, TraceMap, Vertex, boundary_seed
from primstab.markoff.triples import (
    OrientedEdge,
    TraceTriple,
    compare_moduli,
    in_interval,
    is_escaped,
)

log = get_logger(__name__)


def _modulus(t: complex) -> float:
    return float("inf") if is_escaped(t) else abs(t)


# ── Sinks ─────────────────────────────────────────────────────────────────────


@dataclass
class SinkSearch:
    status: Literal["sink", "unknown"]
    vertex: Vertex | None
    steps: int
    min_modulus: float
    path: list[Vertex] = field(default_factory=list)


def find_sink(
    base: TraceTriple,
    start: Vertex | None = None,
    budget: int | None = None,
    tracemap: TraceMap | None = None,
    visit: Callable[[Rational, complex], bool] | None = None,
) -> SinkSearch:
    """Follow decisively decreasing arrows until none leaves the current vertex.

    visit is called on every region met; returning True stops the walk early
    with status "unknown" and the current vertex.
    """
    tm = tracemap or TraceMap(base)
    vertex = start or Vertex.central()
    budget = settings.bq.descent_budget if budget is None else budget
    path = [vertex]
    min_mod = min(_modulus(t) for t in tm.traces_at(vertex))
    if visit is not None:
        for r in vertex.regions:
            if visit(r, tm.trace(r)):
                return SinkSearch("unknown", vertex, 0, min_mod, path)
    if budget <= 0:
        return SinkSearch("unknown", None, 0, min_mod, path)

    for step in range(budget + 1):
        descents = [e for e in tm.edges_at(vertex) if e.decisive and not e.toward_w]
        if not descents:
            log.debug("sink found", vertex=str(vertex), steps=step)
            return SinkSearch("sink", vertex, step, min_mod, path)
        if step == budget:
            break
        best = min(descents, key=lambda e: _modulus(e.z_trace))
        assert best.u is not None and best.v is not None and best.z is not None
        vertex = Vertex.of(best.u, best.v, best.z)
        path.append(vertex)
        min_mod = min(min_mod, _modulus(best.z_trace))
        if visit is not None and visit(best.z, best.z_trace):
            return SinkSearch("unknown", vertex, step + 1, min_mod, path)
    return SinkSearch("unknown", None, budget, min_mod, path)


# ── Boundary growth in closed form ────────────────────────────────────────────


@dataclass(frozen=True)
class BoundaryGrowth:
    """y_k = A·λ^k + B·λ^(-k) along the boundary of a region with trace λ + 1/λ."""

    lam: complex
    a: complex
    b: complex

    @classmethod
    def fit(cls, u_trace: complex, y0: complex, y1: complex) -> BoundaryGrowth | None:
        """None when u_trace lies in [-2, 2] and no multiplier of modulus > 1 exists."""
        if in_interval(u_trace, 0.0):
            return None
        root = cmath.sqrt(u_trace * u_trace - 4)
        lam = (u_trace + root) / 2
        if abs(lam) < 1:
            lam = 1 / lam
        if abs(lam) <= 1:
            return None
        denom = lam - 1 / lam
        return cls(lam, (y1 - y0 / lam) / denom, (y0 * lam - y1) / denom)

    def value(self, k: int) -> complex:
        return self.a * self.lam**k + self.b * self.lam ** (-k)

    def escapes_from(self, k: int, threshold: float) -> bool:
        """|y_j| > threshold and |y_j| strictly increasing for every j ≥ k."""
        r = abs(self.lam)
        grow = abs(self.a) * r**k * (r - 1)
        shrink = abs(self.b) * r ** (-k) * (1 + 1 / r)
        floor = abs(self.a) * r**k - abs(self.b) * r ** (-k)
        return grow > shrink and floor > threshold

    def first_escape(self, threshold: float, limit: int) -> int | None:
        for k in range(limit + 1):
            if self.escapes_from(k, threshold):
                return k
        return None

    def mirrored(self) -> BoundaryGrowth:
        """The same sequence read in the opposite direction."""
        return BoundaryGrowth(self.lam, self.b, self.a)


ClosureRule = Literal["growth", "small_region", "open"]


def edge_closes(edge: OrientedEdge, threshold: float) -> ClosureRule:
    """Closure rule for a boundary edge seen from its inside vertex (w inside).

    growth: both adjacent moduli exceed 2 and the larger reaches threshold, so
    every region deeper in the wake is larger still.
    small_region: one adjacent region u has modulus ≤ 2 and the closed form of
    its boundary recurrence grows monotonically above max(2, threshold) from
    the other adjacent region outward.
    """
    if not (edge.toward_w and edge.decisive):
        return "open"
    a, b = _modulus(edge.u_trace), _modulus(edge.v_trace)
    if a > 2 and b > 2:
        return "growth" if max(a, b) >= threshold else "open"
    if a > 2 or b > 2:
        small, other = (edge.u_trace, edge.v_trace) if a <= 2 else (edge.v_trace, edge.u_trace)
        if is_escaped(other):
            return "small_region"
        if is_escaped(edge.w_trace):
            return "open"
        growth = BoundaryGrowth.fit(small, edge.w_trace, other)
        if growth is not None and growth.escapes_from(1, max(2.0, threshold)):
            return "small_region"
    return "open"


@dataclass
class BoundaryRecord:
    inside: Vertex
    edge: OrientedEdge
    rule: ClosureRule


@dataclass
class SubtreeGrowth:
    status: Literal["closed", "budget", "stopped"]
    root: Vertex
    depths: dict[Vertex, int]
    boundary: list[BoundaryRecord]
    stop_region: Rational | None = None

    @property
    def depth_used(self) -> int:
        return max(self.depths.values(), default=0)

    def adjacent_regions(self) -> set[Rational]:
        return {r for v in self.depths for r in v.regions}


def grow_subtree(
    tm: TraceMap,
    root: Vertex,
    threshold: float,
    depth_budget: int,
    vertex_budget: int,
    visit: Callable[[Rational, complex], bool] | None = None,
) -> SubtreeGrowth:
    """Breadth-first growth from root until every boundary edge closes.

    visit sees each region the first time it becomes adjacent to the subtree;
    a True return stops growth with status "stopped".
    """
    depths: dict[Vertex, int] = {root: 0}
    seen: set[Rational] = set()
    boundary: list[BoundaryRecord] = []
    exhausted = False

    def _visit(r: Rational) -> bool:
        if r in seen:
            return False
        seen.add(r)
        return visit is not None and visit(r, tm.trace(r))

    for r in root.regions:
        if _visit(r):
            return SubtreeGrowth("stopped", root, depths, boundary, r)

    queue: deque[Vertex] = deque([root])
    while queue:
        vertex = queue.popleft()
        for edge in tm.edges_at(vertex):
            assert edge.u is not None and edge.v is not None and edge.z is not None
            outer = Vertex.of(edge.u, edge.v, edge.z)
            if outer in depths:
                continue
            rule = edge_closes(edge, threshold)
            if rule != "open":
                boundary.append(BoundaryRecord(vertex, edge, rule))
                continue
            if depths[vertex] + 1 > depth_budget or len(depths) >= vertex_budget:
                exhausted = True
                boundary.append(BoundaryRecord(vertex, edge, "open"))
                continue
            depths[outer] = depths[vertex] + 1
            queue.append(outer)
            if _visit(edge.z):
                return SubtreeGrowth("stopped", root, depths, boundary, edge.z)

    status: Literal["closed", "budget"] = "budget" if exhausted else "closed"
    log.debug("subtree grown", status=status, vertices=len(depths), threshold=threshold)
    return SubtreeGrowth(status, root, depths, boundary)


# ── Ω(m) ──────────────────────────────────────────────────────────────────────


@dataclass
class OmegaResult:
    regions: list[RegionRef]
    complete: bool
    truncated: bool
    infinite: bool

    @property
    def addresses(self) -> set[Rational]:
        return {r.address for r in self.regions}


def enumerate_omega(base: TraceTriple, m: float, budget: int) -> OmegaResult:
    """All regions with |φ| ≤ m, by growing a closed subtree around a sink."""
    if m < 2:
        raise PreconditionViolated(f"m must be at least 2, got {m}")
    tm = TraceMap(base)
    interval_hits: list[Rational] = []

    def visit(r: Rational, t: complex) -> bool:
        if in_interval(t):
            interval_hits.append(r)
        return False

    sink = find_sink(base, budget=budget, tracemap=tm)
    root = sink.vertex or sink.path[-1]
    grown = grow_subtree(tm, root, m, depth_budget=budget, vertex_budget=max(budget, 1) * 8, visit=visit)
    # regions on the descent path are not adjacent to the subtree but may lie in Ω(m)
    candidates = grown.adjacent_regions() | {r for v in sink.path for r in v.regions}
    regions = sorted(
        (tm.ref(r) for r in candidates if _modulus(tm.trace(r)) <= m),
        key=lambda ref: (ref.address.height, ref.address.q, ref.address.p),
    )
    complete = grown.status == "closed"
    return OmegaResult(
        regions=regions,
        complete=complete,
        truncated=not complete,
        infinite=bool(interval_hits),
    )


# ── Plugholes and wakes ───────────────────────────────────────────────────────


def _scan_order(width: int) -> list[int]:
    order = [0]
    for n in range(1, width + 1):
        order.extend((n, -n))
    return order


def plughole(
    base: TraceTriple,
    region: RegionRef | Rational,
    search_width: int | None = None,
    m_bound: float | None = None,
    tracemap: TraceMap | None = None,
) -> OrientedEdge:
    """Edge pointing decisively out of region at a vertex where its boundary arrows meet.

    The returned edge has w = region (its tail side) and u, v the two boundary
    regions meeting there.
    """
    tm = tracemap or TraceMap(base)
    u = region.address if isinstance(region, RegionRef) else region
    m_bound = settings.markoff.m_bound if m_bound is None else m_bound
    search_width = settings.markoff.plughole_width if search_width is None else search_width
    phi = tm.trace(u)
    if _modulus(phi) <= m_bound:
        raise PreconditionViolated(f"|φ({u})| = {_modulus(phi):.6g} ≤ M = {m_bound}")

    seed = boundary_seed(u)
    width = min(4, search_width)
    while True:
        traces = {n: tm.trace(boundary_region(u, seed, n)) for n in range(-width - 1, width + 3)}
        for r in _scan_order(width):
            inward_left = compare_moduli(traces[r - 1], traces[r + 1], tm.tie_tol) >= 0
            inward_right = compare_moduli(traces[r + 2], traces[r], tm.tie_tol) >= 0
            if not (inward_left and inward_right):
                continue
            edge = tm.orient(boundary_region(u, seed, r), boundary_region(u, seed, r + 1), u)
            if edge.decisive and not edge.toward_w:
                return edge
        if width >= search_width:
            break
        width = min(width * 2, search_width)
    raise NotFound(f"no plughole of {u} within {search_width} boundary steps")


def _local_coordinates(edge: OrientedEdge, r: Rational) -> tuple[int, int]:
    if edge.u is None or edge.v is None:
        raise ValueError("edge carries no region labels")
    u, v = edge.u, edge.v
    det = u.p * v.q - v.p * u.q
    alpha = (r.p * v.q - v.p * r.q) * det
    beta = (u.p * r.q - r.p * u.q) * det
    return alpha, beta


def in_wake(edge: OrientedEdge, region: RegionRef | Rational) -> bool:
    r = region.address if isinstance(region, RegionRef) else region
    if r in (edge.u, edge.v):
        return True
    tail = edge.tail_third
    if tail is None:
        raise ValueError("edge carries no region labels")
    ta, tb = _local_coordinates(edge, tail)
    ra, rb = _local_coordinates(edge, r)
    return ra * rb * ta * tb > 0


def fib_weight(edge: OrientedEdge, region: RegionRef | Rational) -> int:
    """F_e(region): 1 next to the edge, additive over the two closer neighbours."""
    r = region.address if isinstance(region, RegionRef) else region
    if not in_wake(edge, r):
        raise NotInWake(f"{r} is not in the wake of edge ({edge.u}, {edge.v})")
    alpha, beta = _local_coordinates(edge, r)
    return abs(alpha) + abs(beta)


# ── Descending paths ──────────────────────────────────────────────────────────


def descending_path(
    base: TraceTriple,
    start: RegionRef | Rational,
    m_bound: float,
    pair_type: Mod2Type,
    budget: int,
    search_width: int | None = None,
) -> list[RegionRef]:
    """Regions u_0, ..., u_k leaving each u_i through a plughole.

    Types alternate between the type of u_0 and pair_type, so consecutive
    regions are palindromic with respect to one basic pair; u_k is the first
    region with |φ| ≤ m_bound. A start already inside Ω(m_bound) gives [].

    m_bound must cover the sink: every region at the sink vertex needs
    |φ| ≤ m_bound, otherwise plugholes need not lead into Ω(m_bound).
    """
    tm = TraceMap(base)
    u = start.address if isinstance(start, RegionRef) else start
    first_type = mod2_type(u)
    if first_type == pair_type:
        raise TypeMismatch(f"{u} already has type {pair_type.value}")
    if _modulus(tm.trace(u)) <= m_bound:
        return []
    sink = find_sink(base, tracemap=tm)
    if sink.status == "sink" and sink.vertex is not None:
        floor = max(_modulus(t) for t in tm.traces_at(sink.vertex))
        if m_bound < floor:
            raise PreconditionViolated(
                f"M = {m_bound} is below the sink bound {floor:.6g} at {sink.vertex}"
            )
    path = [tm.ref(u)]
    for step in range(budget + 1):
        if _modulus(tm.trace(u)) <= m_bound:
            return path
        if step == budget:
            break
        edge = plughole(base, u, search_width, m_bound, tracemap=tm)
        wanted = pair_type if mod2_type(u) == first_type else first_type
        assert edge.u is not None and edge.v is not None
        u = edge.u if mod2_type(edge.u) == wanted else edge.v
        path.append(tm.ref(u))
    raise BudgetExhausted(f"no region of modulus ≤ {m_bound} within {budget} steps", steps=budget)
