"""Farey addressing of primitive classes: reduced rationals on Q ∪ {∞}.

Every extended conjugacy class of primitive elements of F2 is labelled by a
reduced fraction p/q.  Regions of the Farey diagram carry these labels; two
regions share an edge exactly when their labels are neighbours.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Iterator

from primstab.core.errors import NotNeighbours


@dataclass(frozen=True, slots=True, order=False)
class Rational:
    """Reduced fraction p/q with q ≥ 0; ±1/0 both normalise to ∞ = 1/0."""

    p: int
    q: int

    def __post_init__(self) -> None:
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a point of Q ∪ {∞}")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        g = gcd(p, q)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)

    @classmethod
    def parse(cls, text: str) -> Rational:
        text = text.strip()
        if text in {"inf", "∞"}:
            return INFINITY
        num, _, den = text.partition("/")
        return cls(int(num), int(den) if den else 1)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    @property
    def height(self) -> int:
        """Word length |p| + q of the Farey word."""
        return abs(self.p) + self.q

    def mirror(self) -> Rational:
        return Rational(-self.p, self.q)

    def __lt__(self, other: Rational) -> bool:
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.p * other.q < other.p * self.q

    def __le__(self, other: Rational) -> bool:
        return self == other or self < other

    def __gt__(self, other: Rational) -> bool:
        return other < self

    def __ge__(self, other: Rational) -> bool:
        return other <= self

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def __repr__(self) -> str:
        return f"Rational({self.p}/{self.q})"


ZERO = Rational(0, 1)
INFINITY = Rational(1, 0)
ONE = Rational(1, 1)
MINUS_ONE = Rational(-1, 1)

BASE_REGIONS: tuple[Rational, Rational, Rational] = (ZERO, INFINITY, ONE)


class Step(str, Enum):
    LEFT = "L"
    RIGHT = "R"


class Mod2Type(str, Enum):
    ZERO = "0/1"
    INFINITY = "1/0"
    ONE = "1/1"


class EdgeColour(str, Enum):
    R = "r"
    G = "g"
    B = "b"


_COLOURS: dict[frozenset[Mod2Type], EdgeColour] = {
    frozenset({Mod2Type.ZERO, Mod2Type.INFINITY}): EdgeColour.R,
    frozenset({Mod2Type.ZERO, Mod2Type.ONE}): EdgeColour.G,
    frozenset({Mod2Type.INFINITY, Mod2Type.ONE}): EdgeColour.B,
}


# ── Neighbours and mediants ───────────────────────────────────────────────────


def is_neighbour(l: Rational, r: Rational) -> bool:
    return abs(l.p * r.q - l.q * r.p) == 1


def mediant(l: Rational, r: Rational) -> Rational:
    if not is_neighbour(l, r):
        raise NotNeighbours(f"{l} and {r} are not Farey neighbours")
    if l.is_infinite or r.is_infinite:
        # The mediant of ∞ with a finite neighbour n/1 lies on the side of ∞
        # reached without crossing the other half of the diagram.
        finite = r if l.is_infinite else l
        return Rational(finite.p + (1 if finite.p >= 0 else -1), finite.q)
    return Rational(l.p + r.p, l.q + r.q)


def farey_neighbours(u: Rational, v: Rational) -> tuple[Rational, Rational]:
    """The two regions adjacent to both u and v: the third regions at the ends of edge uv."""
    if not is_neighbour(u, v):
        raise NotNeighbours(f"{u} and {v} are not Farey neighbours")
    return Rational(u.p + v.p, u.q + v.q), Rational(u.p - v.p, u.q - v.q)


def farey_parents(r: Rational) -> tuple[Rational, Rational, Rational]:
    """(left, right, opposite) for a non-base region r = left ⊕ right.

    The opposite region is the third region at the vertex where left and right
    met before r was born.
    """
    if r in BASE_REGIONS:
        raise ValueError(f"{r} is a base region and has no parents")
    if r == MINUS_ONE:
        return ZERO, INFINITY, ONE
    if r.p < 0:
        lo, hi, opp = farey_parents(r.mirror())
        return hi.mirror(), lo.mirror(), opp.mirror()
    lo, hi = ZERO, INFINITY
    opp = MINUS_ONE
    while True:
        med = Rational(lo.p + hi.p, lo.q + hi.q)
        if med == r:
            return lo, hi, opp
        if r < med:
            lo, hi, opp = lo, med, hi
        else:
            lo, hi, opp = med, hi, lo


@dataclass(frozen=True, slots=True)
class SternBrocotPath:
    """Address of a region below one of the four regions around the central edge.

    root is 0/1, 1/0 or 1/1 (steps empty), or 1/1 / -1/1 for everything born
    below them; negative regions replay the mirror image of their path.
    """

    root: Rational
    steps: tuple[Step, ...]

    @property
    def is_base(self) -> bool:
        return not self.steps and self.root in BASE_REGIONS

    def replay(self) -> Rational:
        lo, hi = ZERO, INFINITY
        med = ONE
        for step in self.steps:
            if step is Step.LEFT:
                hi = med
            else:
                lo = med
            med = Rational(lo.p + hi.p, lo.q + hi.q)
        if not self.steps:
            return self.root
        return med.mirror() if self.root == MINUS_ONE else med


def stern_brocot_path(r: Rational) -> SternBrocotPath:
    if r in BASE_REGIONS or r == MINUS_ONE:
        return SternBrocotPath(root=r, steps=())
    negative = r.p < 0
    target = r.mirror() if negative else r
    lo, hi = ZERO, INFINITY
    steps: list[Step] = []
    while True:
        med = Rational(lo.p + hi.p, lo.q + hi.q)
        if med == target:
            return SternBrocotPath(root=MINUS_ONE if negative else ONE, steps=tuple(steps))
        if target < med:
            steps.append(Step.LEFT)
            hi = med
        else:
            steps.append(Step.RIGHT)
            lo = med


def boundary_region(u: Rational, seed: Rational, n: int) -> Rational:
    """The n-th region around u counted from the neighbour seed (n = 0)."""
    return Rational(seed.p + n * u.p, seed.q + n * u.q)


# ── Typing ────────────────────────────────────────────────────────────────────


def mod2_type(r: Rational) -> Mod2Type:
    return Mod2Type(f"{abs(r.p) % 2}/{r.q % 2}")


def edge_colour(l: Rational, r: Rational) -> EdgeColour:
    if not is_neighbour(l, r):
        raise NotNeighbours(f"{l} and {r} are not Farey neighbours")
    return _COLOURS[frozenset({mod2_type(l), mod2_type(r)})]


def rationals_up_to(level: int, negative: bool = False) -> Iterator[Rational]:
    """All regions with |p| + q ≤ level, ordered by height then value."""
    seen: list[Rational] = []
    for height in range(1, level + 1):
        batch: list[Rational] = []
        if height == 1:
            batch = [ZERO, INFINITY]
        else:
            for p in range(1, height):
                q = height - p
                if gcd(p, q) == 1:
                    batch.append(Rational(p, q))
                    if negative:
                        batch.append(Rational(-p, q))
        seen.extend(sorted(batch))
    yield from seen
