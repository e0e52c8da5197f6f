"""Upper half-space H³: points, geodesics, common perpendiculars.

Points are (w, t) with w ∈ C and height t > 0.  Geodesics are stored by their
ideal endpoints; most constructions normalise one geodesic to the vertical
axis {0, ∞} by a Möbius change of frame and read the answer off there.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from primstab.core.errors import (
    IdentityMatrix,
    InvalidGeometry,
    NonLoxodromic,
    ParabolicNoAxis,
    SharedEndpoint,
)
from primstab.farey.palindromes import BasicPair
from primstab.geometry.moebius import (
    IdealInfinity,
    IdealPoint,
    IsometryKind,
    MoebiusMatrix,
    complex_half_length,
    is_infinite,
)

_EPS = 1e-12


@dataclass(frozen=True, slots=True)
class H3Point:
    w: complex
    t: float

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise InvalidGeometry(f"height must be positive, got {self.t}")

    def as_list(self) -> list[float]:
        return [self.w.real, self.w.imag, self.t]

    def to_hyperboloid(self) -> np.ndarray:
        r2 = abs(self.w) ** 2 + self.t**2
        return np.array(
            [(r2 + 1) / (2 * self.t), self.w.real / self.t, self.w.imag / self.t, (r2 - 1) / (2 * self.t)]
        )

    @classmethod
    def from_hyperboloid(cls, x: np.ndarray) -> H3Point:
        t = 1.0 / (x[0] - x[3])
        return cls(complex(x[1] * t, x[2] * t), float(t))


O = H3Point(0j, 1.0)


def apply_moebius(M: MoebiusMatrix, P: H3Point) -> H3Point:
    """Poincaré extension of M to H³."""
    cw_d = M.c * P.w + M.d
    t2 = P.t * P.t
    den = abs(cw_d) ** 2 + abs(M.c) ** 2 * t2
    w = ((M.a * P.w + M.b) * cw_d.conjugate() + M.a * M.c.conjugate() * t2) / den
    return H3Point(complex(w), P.t / den)


def h3_distance(P: H3Point, Q: H3Point) -> float:
    arg = 1 + (abs(P.w - Q.w) ** 2 + (P.t - Q.t) ** 2) / (2 * P.t * Q.t)
    return math.acosh(max(arg, 1.0))


def midpoint(P: H3Point, Q: H3Point) -> H3Point:
    s = P.to_hyperboloid() + Q.to_hyperboloid()
    norm = math.sqrt(s[0] ** 2 - s[1] ** 2 - s[2] ** 2 - s[3] ** 2)
    return H3Point.from_hyperboloid(s / norm)


# ── Geodesics ─────────────────────────────────────────────────────────────────


def _same_point(p: IdealPoint, q: IdealPoint, tol: float = _EPS) -> bool:
    if is_infinite(p) or is_infinite(q):
        return is_infinite(p) and is_infinite(q)
    assert not isinstance(p, IdealInfinity) and not isinstance(q, IdealInfinity)
    return abs(p - q) <= tol * (1 + abs(p) + abs(q))


@dataclass(frozen=True)
class Geodesic:
    """Geodesic with ideal endpoints; oriented from start to end when oriented is set."""

    start: IdealPoint
    end: IdealPoint
    oriented: bool = False

    def __post_init__(self) -> None:
        if _same_point(self.start, self.end):
            raise InvalidGeometry("geodesic endpoints must be distinct")

    @property
    def endpoints(self) -> tuple[IdealPoint, IdealPoint]:
        return self.start, self.end

    def frame(self) -> MoebiusMatrix:
        """Unimodular T with T(start) = 0 and T(end) = ∞."""
        p, q = self.start, self.end
        if is_infinite(p):
            assert isinstance(q, complex | float | int)
            return MoebiusMatrix(0, 1j, 1j, -1j * q)
        assert isinstance(p, complex | float | int)
        if is_infinite(q):
            return MoebiusMatrix(1, -p, 0, 1)
        assert isinstance(q, complex | float | int)
        s = cmath.sqrt(p - q)
        return MoebiusMatrix(1 / s, -p / s, 1 / s, -q / s)

    def point_at(self, s: float) -> H3Point:
        """Arc-length parametrisation, s = 0 at the top of the frame."""
        return apply_moebius(self.frame().inverse(), H3Point(0j, math.exp(s)))

    def image(self, M: MoebiusMatrix) -> Geodesic:
        return Geodesic(M(self.start), M(self.end), self.oriented)


def distance_to_geodesic(P: H3Point, g: Geodesic) -> float:
    Q = apply_moebius(g.frame(), P)
    return math.asinh(abs(Q.w) / Q.t)


def axis(M: MoebiusMatrix) -> Geodesic:
    """Fixed-point geodesic of M, oriented repelling → attracting when loxodromic."""
    if M.is_scalar():
        raise IdentityMatrix("±identity fixes every geodesic")
    if complex_half_length(M).kind is IsometryKind.PARABOLIC:
        raise ParabolicNoAxis(f"trace {M.trace} is ±2")
    p, q = M.fixed_points()

    def stretch(z: IdealPoint) -> float:
        # |M'(z)|⁻¹; > 1 at the attracting point
        if is_infinite(z):
            return abs(M.a) / abs(M.d) if M.d != 0 else math.inf
        assert isinstance(z, complex | float | int)
        return abs(M.c * z + M.d) ** 2

    if stretch(p) > stretch(q):
        p, q = q, p
    return Geodesic(p, q, oriented=True)


# ── Common perpendiculars ─────────────────────────────────────────────────────


@dataclass(frozen=True)
class CommonPerpendicular:
    geodesic: Geodesic
    delta: complex
    foot1: H3Point
    foot2: H3Point

    @property
    def distance(self) -> float:
        return self.delta.real

    @property
    def angle(self) -> float:
        return self.delta.imag


def _normalised(g1: Geodesic, g2: Geodesic) -> tuple[MoebiusMatrix, complex, complex]:
    T = g1.frame()
    a, b = T(g2.start), T(g2.end)
    if is_infinite(a) or is_infinite(b):
        raise SharedEndpoint("geodesics share an endpoint")
    assert isinstance(a, complex | float | int) and isinstance(b, complex | float | int)
    a, b = complex(a), complex(b)
    scale = 1 + abs(a) + abs(b)
    if abs(a) <= _EPS * scale or abs(b) <= _EPS * scale:
        raise SharedEndpoint("geodesics share an endpoint")
    return T, a, b


def _foot(g1: Geodesic, g2: Geodesic) -> H3Point:
    T, a, b = _normalised(g1, g2)
    return apply_moebius(T.inverse(), H3Point(0j, math.sqrt(abs(a * b))))


def common_perpendicular(g1: Geodesic, g2: Geodesic) -> CommonPerpendicular:
    """The geodesic meeting g1 and g2 orthogonally and the complex distance along it."""
    T, a, b = _normalised(g1, g2)
    delta = cmath.acosh((b + a) / (b - a))
    if delta.real < 0:
        delta = -delta
    s = cmath.sqrt(a * b)
    Tinv = T.inverse()
    perp = Geodesic(Tinv(s), Tinv(-s))
    return CommonPerpendicular(perp, delta, _foot(g1, g2), _foot(g2, g1))


def pi_rotation(g: Geodesic) -> MoebiusMatrix:
    """The order-two elliptic with axis g."""
    T = g.frame()
    return T.inverse() @ MoebiusMatrix(1j, 0, 0, -1j) @ T


def hyperelliptic_axes(A: MoebiusMatrix, B: MoebiusMatrix) -> dict[BasicPair, CommonPerpendicular]:
    """Common perpendiculars of the axis pairs (A, B), (A, AB), (B, AB)."""
    ax_a, ax_b, ax_ab = axis(A), axis(B), axis(A @ B)
    return {
        BasicPair.AB: common_perpendicular(ax_a, ax_b),
        BasicPair.A_AB: common_perpendicular(ax_a, ax_ab),
        BasicPair.B_AB: common_perpendicular(ax_b, ax_ab),
    }


def hexagon_bound(U: MoebiusMatrix, V: MoebiusMatrix) -> float:
    """|cosh σ₃ / (sinh σ₁ sinh σ₅)| + |1 − coth σ₁ coth σ₅| with bare half lengths."""
    sides = []
    for M in (U, U @ V.inverse(), V.inverse()):
        cl = complex_half_length(M)
        if cl.kind is not IsometryKind.LOXODROMIC:
            raise NonLoxodromic(f"trace {M.trace} is not loxodromic")
        sides.append(cl.lam)
    s1, s3, s5 = sides
    coth1 = cmath.cosh(s1) / cmath.sinh(s1)
    coth5 = cmath.cosh(s5) / cmath.sinh(s5)
    return abs(cmath.cosh(s3) / (cmath.sinh(s1) * cmath.sinh(s5))) + abs(1 - coth1 * coth5)
