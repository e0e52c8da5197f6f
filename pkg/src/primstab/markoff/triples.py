"""Trace triples, Vieta flips and edge orientation."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from primstab.core.config import settings
from primstab.farey.rational import Rational

ESCAPED = complex(math.inf, 0.0)


def is_escaped(t: complex) -> bool:
    return cmath.isinf(t) or cmath.isnan(t)


def saturate(t: complex, bound: float | None = None) -> complex:
    """Absorb traces beyond the overflow bound into ESCAPED."""
    bound = settings.markoff.escape_bound if bound is None else bound
    if is_escaped(t) or abs(t) > bound:
        return ESCAPED
    return t


def in_interval(t: complex, tol: float | None = None) -> bool:
    """True when t lies in the real interval [-2, 2] up to tol."""
    tol = settings.bq.interval_tol if tol is None else tol
    if is_escaped(t):
        return False
    return abs(t.imag) <= tol and -2.0 - tol <= t.real <= 2.0 + tol


def flip(a: complex, b: complex, c: complex) -> complex:
    """ĉ' = âb̂ − ĉ with saturation."""
    if is_escaped(a) or is_escaped(b) or is_escaped(c):
        return ESCAPED
    return saturate(a * b - c)


@dataclass(frozen=True, slots=True)
class TraceTriple:
    """Traces (x, y, z) of (A, B, AB); mu is derived, never stored."""

    x: complex
    y: complex
    z: complex

    def __post_init__(self) -> None:
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def parse(cls, text: str) -> TraceTriple:
        parts = [p.strip().replace(" ", "") for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated complex numbers, got {text!r}")
        return cls(*(complex(p.replace("i", "j")) for p in parts))

    @property
    def mu(self) -> complex:
        return mu_of(self)

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (self.x, self.y, self.z)

    def __str__(self) -> str:
        return ",".join(_fmt(t) for t in self.as_tuple())


def _fmt(t: complex) -> str:
    if t.imag == 0:
        return f"{t.real:g}"
    return f"{t.real:g}{t.imag:+g}j"


def mu_of(t: TraceTriple) -> complex:
    x, y, z = t.x, t.y, t.z
    return x * x + y * y + z * z - x * y * z


def is_elementary(t: TraceTriple, tol: float = 1e-9) -> bool:
    return abs(mu_of(t) - 4) <= tol * (1 + 4)


def neighbour_triple(t: TraceTriple, slot: int) -> TraceTriple:
    """Vieta flip of one coordinate; slot 3 gives (x, y, xy − z)."""
    x, y, z = t.x, t.y, t.z
    if slot == 1:
        return TraceTriple(y * z - x, y, z)
    if slot == 2:
        return TraceTriple(x, x * z - y, z)
    if slot == 3:
        return TraceTriple(x, y, x * y - z)
    raise ValueError(f"slot must be 1, 2 or 3, got {slot}")


# ── Orientation ───────────────────────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class OrientedEdge:
    """Edge between regions u and v with end regions w and z = uv − w.

    toward_w means the arrow runs from the z-end vertex to the w-end vertex.
    Region labels are optional so that bare trace triples can be oriented.
    """

    u_trace: complex
    v_trace: complex
    w_trace: complex
    z_trace: complex
    toward_w: bool
    decisive: bool
    u: Rational | None = None
    v: Rational | None = None
    w: Rational | None = None
    z: Rational | None = None

    @property
    def head_third(self) -> Rational | None:
        return self.w if self.toward_w else self.z

    @property
    def tail_third(self) -> Rational | None:
        return self.z if self.toward_w else self.w

    @property
    def head_trace(self) -> complex:
        return self.w_trace if self.toward_w else self.z_trace

    @property
    def tail_trace(self) -> complex:
        return self.z_trace if self.toward_w else self.w_trace

    def reversed(self) -> OrientedEdge:
        """The same edge with the opposite arrow; used to tamper certificates in tests."""
        return OrientedEdge(
            self.u_trace, self.v_trace, self.w_trace, self.z_trace,
            not self.toward_w, self.decisive, self.u, self.v, self.w, self.z,
        )


def compare_moduli(a: complex, b: complex, tie_tol: float | None = None) -> int:
    """-1 if |a| < |b| decisively, 1 if |a| > |b| decisively, 0 on a tie."""
    tie_tol = settings.markoff.tie_tol if tie_tol is None else tie_tol
    ea, eb = is_escaped(a), is_escaped(b)
    if ea and eb:
        return 0
    if ea:
        return 1
    if eb:
        return -1
    ma, mb = abs(a), abs(b)
    if abs(ma - mb) <= tie_tol * (1 + max(ma, mb)):
        return 0
    return 1 if ma > mb else -1


def orient_edge(
    u_trace: complex,
    v_trace: complex,
    w_trace: complex,
    *,
    z_trace: complex | None = None,
    regions: tuple[Rational, Rational, Rational, Rational] | None = None,
    tie_tol: float | None = None,
) -> OrientedEdge:
    z_hat = flip(u_trace, v_trace, w_trace) if z_trace is None else z_trace
    cmp = compare_moduli(z_hat, w_trace, tie_tol)
    u, v, w, z = regions if regions is not None else (None, None, None, None)
    return OrientedEdge(
        u_trace=u_trace,
        v_trace=v_trace,
        w_trace=w_trace,
        z_trace=z_hat,
        toward_w=cmp >= 0,
        decisive=cmp != 0,
        u=u,
        v=v,
        w=w,
        z=z,
    )
