"""Region traces of a Markoff map and the per-exploration trace cache."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from primstab.core.config import settings
from primstab.farey.rational import (
    INFINITY,
    MINUS_ONE,
    ONE,
    ZERO,
    Rational,
    Step,
    boundary_region,
    farey_neighbours,
    farey_parents,
    stern_brocot_path,
)
from primstab.markoff.triples import OrientedEdge, TraceTriple, flip, orient_edge, saturate


@dataclass(frozen=True, slots=True)
class RegionRef:
    address: Rational
    cached_trace: complex

    def __str__(self) -> str:
        return f"{self.address}"


@dataclass(frozen=True, slots=True)
class Vertex:
    """Three mutually neighbouring regions, stored in canonical order."""

    regions: tuple[Rational, Rational, Rational]

    @classmethod
    def of(cls, a: Rational, b: Rational, c: Rational) -> Vertex:
        ordered = sorted((a, b, c), key=lambda r: (r.q, r.p))
        return cls((ordered[0], ordered[1], ordered[2]))

    @classmethod
    def central(cls) -> Vertex:
        return cls.of(ZERO, INFINITY, ONE)

    def edges(self) -> list[tuple[Rational, Rational, Rational]]:
        """(u, v, w) for each edge at this vertex, w the region opposite the edge."""
        a, b, c = self.regions
        return [(a, b, c), (a, c, b), (b, c, a)]

    def across(self, u: Rational, v: Rational) -> Vertex:
        """The vertex at the other end of edge uv."""
        (w,) = [r for r in self.regions if r not in (u, v)]
        return Vertex.of(u, v, other_end(u, v, w))

    def __str__(self) -> str:
        return "(" + ", ".join(str(r) for r in self.regions) + ")"


def other_end(u: Rational, v: Rational, w: Rational) -> Rational:
    """The common neighbour of u and v that is not w."""
    s, d = farey_neighbours(u, v)
    return d if s == w else s


def _walk(base: TraceTriple, r: Rational, bound: float) -> Iterator[tuple[Rational, complex]]:
    """Regions and traces visited while replaying the Stern–Brocot path to r."""
    x, y, z = base.x, base.y, base.z
    if r == ZERO:
        yield ZERO, saturate(x, bound)
        return
    if r == INFINITY:
        yield INFINITY, saturate(y, bound)
        return
    path = stern_brocot_path(r)
    if path.root == MINUS_ONE:
        # the mirror fixes 0/1 and 1/0 and swaps 1/1 with -1/1
        z = flip(x, y, z)
    t_lo, t_hi, t_med = saturate(x, bound), saturate(y, bound), saturate(z, bound)
    lo, hi, med = ZERO, INFINITY, ONE
    sign = -1 if path.root == MINUS_ONE else 1
    yield Rational(sign * med.p, med.q), t_med
    for step in path.steps:
        if step is Step.LEFT:
            new = saturate(flip(t_lo, t_med, t_hi), bound)
            hi, t_hi = med, t_med
        else:
            new = saturate(flip(t_med, t_hi, t_lo), bound)
            lo, t_lo = med, t_med
        med = Rational(lo.p + hi.p, lo.q + hi.q)
        t_med = new
        yield Rational(sign * med.p, med.q), t_med


def region_trace(base: TraceTriple, r: Rational, bound: float | None = None) -> complex:
    """φ(r) by Vieta flips along the Stern–Brocot path; saturates to ESCAPED."""
    bound = settings.markoff.escape_bound if bound is None else bound
    trace = base.x
    for _, trace in _walk(base, r, bound):
        pass
    return trace


@dataclass
class TraceMap:
    """Exploration context: a base triple plus a private trace cache."""

    base: TraceTriple
    bound: float = field(default_factory=lambda: settings.markoff.escape_bound)
    tie_tol: float = field(default_factory=lambda: settings.markoff.tie_tol)
    _cache: dict[Rational, complex] = field(default_factory=dict, repr=False)

    def trace(self, r: Rational) -> complex:
        cached = self._cache.get(r)
        if cached is not None:
            return cached
        result = self.base.x
        for region, result in _walk(self.base, r, self.bound):
            self._cache.setdefault(region, result)
        return result

    def ref(self, r: Rational) -> RegionRef:
        return RegionRef(r, self.trace(r))

    def traces_at(self, vertex: Vertex) -> tuple[complex, complex, complex]:
        a, b, c = vertex.regions
        return self.trace(a), self.trace(b), self.trace(c)

    def orient(self, u: Rational, v: Rational, w: Rational) -> OrientedEdge:
        """Orient edge uv as seen from the vertex (u, v, w)."""
        z = other_end(u, v, w)
        return orient_edge(
            self.trace(u),
            self.trace(v),
            self.trace(w),
            z_trace=self.trace(z),
            regions=(u, v, w, z),
            tie_tol=self.tie_tol,
        )

    def edges_at(self, vertex: Vertex) -> list[OrientedEdge]:
        """The three edges at vertex; toward_w means the arrow points at vertex."""
        return [self.orient(u, v, w) for u, v, w in vertex.edges()]

    def boundary(self, u: Rational, start: int, stop: int) -> list[RegionRef]:
        """Regions y_n around u for start ≤ n < stop, seeded at a Farey parent of u."""
        seed = boundary_seed(u)
        return [self.ref(boundary_region(u, seed, n)) for n in range(start, stop)]

    @property
    def cache_size(self) -> int:
        return len(self._cache)


def boundary_seed(u: Rational) -> Rational:
    """A fixed neighbour of u from which its boundary regions are counted."""
    if u == ZERO:
        return INFINITY
    if u in (INFINITY, ONE, MINUS_ONE):
        return ZERO
    lo, _, _ = farey_parents(u)
    return lo
