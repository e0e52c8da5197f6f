"""SL(2, C) matrices, the normal-form lift of a trace triple, and complex lengths."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

from primstab.core.config import settings
from primstab.core.errors import (
    ElementaryRepresentation,
    IdentityMatrix,
    InvalidGeometry,
    PreconditionViolated,
)
from primstab.core.logging import get_logger
from primstab.farey.words import Word
from primstab.markoff.triples import TraceTriple

log = get_logger(__name__)


class IdealInfinity:
    """The point ∞ of C ∪ {∞}."""

    _instance: IdealInfinity | None = None

    def __new__(cls) -> IdealInfinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "∞"

    def __reduce__(self) -> str:
        return "INF"


INF = IdealInfinity()
IdealPoint = Union[complex, IdealInfinity]


def is_infinite(z: IdealPoint) -> bool:
    return isinstance(z, IdealInfinity)


@dataclass(frozen=True, slots=True)
class MoebiusMatrix:
    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def identity(cls) -> MoebiusMatrix:
        return cls(1, 0, 0, 1)

    @classmethod
    def diagonal(cls, lam: complex) -> MoebiusMatrix:
        return cls(lam, 0, 0, 1 / lam)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def check(self, tol: float | None = None) -> MoebiusMatrix:
        tol = settings.geometry.det_tol if tol is None else tol
        if abs(self.det - 1) > tol:
            raise InvalidGeometry(f"determinant {self.det} is not 1")
        return self

    def inverse(self) -> MoebiusMatrix:
        return MoebiusMatrix(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: MoebiusMatrix) -> MoebiusMatrix:
        return MoebiusMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __call__(self, z: IdealPoint) -> IdealPoint:
        if is_infinite(z):
            return INF if self.c == 0 else self.a / self.c
        assert isinstance(z, complex | float | int)
        den = self.c * z + self.d
        if den == 0:
            return INF
        return (self.a * z + self.b) / den

    def is_scalar(self, tol: float = 1e-12) -> bool:
        """True for ±identity."""
        scale = 1 + abs(self.a) + abs(self.d)
        return (
            abs(self.b) <= tol * scale
            and abs(self.c) <= tol * scale
            and abs(self.a - self.d) <= tol * scale
        )

    def close_to(self, other: MoebiusMatrix, tol: float = 1e-9, projective: bool = True) -> bool:
        """Entrywise closeness, up to sign when projective."""
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        scale = 1 + max(abs(e) for e in mine + theirs)
        if all(abs(x - y) <= tol * scale for x, y in zip(mine, theirs)):
            return True
        return projective and all(abs(x + y) <= tol * scale for x, y in zip(mine, theirs))

    def fixed_points(self) -> tuple[IdealPoint, IdealPoint]:
        """Roots of c·w² + (d − a)·w − b = 0, the larger-modulus branch first."""
        s = cmath.sqrt(self.trace * self.trace - 4)
        diff = self.a - self.d
        big = diff + s if abs(diff + s) >= abs(diff - s) else diff - s
        if self.c == 0:
            if big == 0:
                return INF, INF
            return INF, -2 * self.b / big
        if big == 0:
            w = diff / (2 * self.c)
            return w, w
        return big / (2 * self.c), -2 * self.b / big


# ── Lifting a trace triple ────────────────────────────────────────────────────


def lift_representation(t: TraceTriple, tol: float = 1e-9) -> tuple[MoebiusMatrix, MoebiusMatrix]:
    """A = [[x, 1], [−1, 0]], B = [[0, ζ], [−1/ζ, y]] with ζ² + zζ + 1 = 0 and |ζ| ≤ 1."""
    if abs(t.mu - 4) <= tol * (1 + abs(t.mu)):
        raise ElementaryRepresentation(f"mu = 4 at {t}; no irreducible lift")
    x, y, z = complex(t.x), complex(t.y), complex(t.z)
    root = cmath.sqrt(z * z - 4)
    candidates = [(-z + root) / 2, (-z - root) / 2]
    candidates.sort(key=lambda zeta: (round(abs(zeta), 12), -zeta.imag))
    zeta = candidates[0]
    if abs(z * z - 4) <= tol:
        log.warning("degenerate lift", z=str(z), zeta=str(zeta))
    return MoebiusMatrix(x, 1, -1, 0), MoebiusMatrix(0, zeta, -1 / zeta, y)


def evaluate_word(w: Word | str, A: MoebiusMatrix, B: MoebiusMatrix) -> MoebiusMatrix:
    """Ordered product; capital letters are inverses, c stands for ab."""
    AB = A @ B
    images = {
        "a": A, "A": A.inverse(),
        "b": B, "B": B.inverse(),
        "c": AB, "C": AB.inverse(),
    }
    out = MoebiusMatrix.identity()
    for letter in str(w):
        out = out @ images[letter]
    return out


# ── Complex lengths ───────────────────────────────────────────────────────────


class IsometryKind(str, Enum):
    LOXODROMIC = "loxodromic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"


@dataclass(frozen=True)
class ComplexLength:
    """Half the complex length: lam = (ℓ + iθ)/2 with Re lam ≥ 0."""

    lam: complex
    kind: IsometryKind

    @property
    def length(self) -> float:
        return 2 * self.lam.real

    @property
    def angle(self) -> float:
        return 2 * self.lam.imag


def complex_half_length(M: MoebiusMatrix, tol: float | None = None) -> ComplexLength:
    tol = settings.geometry.parabolic_tol if tol is None else tol
    if M.is_scalar():
        raise IdentityMatrix("±identity has no complex length")
    tr = M.trace
    lam = cmath.acosh(tr / 2)
    if lam.real < 0:
        lam = -lam
    if abs(tr * tr - 4) <= tol * (1 + abs(tr) ** 2):
        kind = IsometryKind.PARABOLIC
        lam = complex(0.0, lam.imag)
    elif abs(tr.imag) <= tol and abs(tr.real) < 2:
        kind = IsometryKind.ELLIPTIC
    else:
        kind = IsometryKind.LOXODROMIC
    return ComplexLength(lam, kind)


@dataclass(frozen=True)
class LengthCheck:
    holds: bool
    lower: float
    value: float
    upper: float


def length_trace_check(M: MoebiusMatrix, floor: float | None = None) -> LengthCheck:
    """e^{Re λ}/3 ≤ |tr M|/2 ≤ e^{Re λ} for ℓ(M) above the floor."""
    floor = settings.geometry.length_floor if floor is None else floor
    cl = complex_half_length(M)
    if cl.length <= floor:
        raise PreconditionViolated(f"ℓ = {cl.length:.6g} is not above {floor}")
    r = cl.lam.real
    value = abs(M.trace) / 2
    lower, upper = math.exp(r) / 3, math.exp(r)
    return LengthCheck(lower <= value <= upper * (1 + 1e-12), lower, value, upper)


def product_length_check(
    U: MoebiusMatrix, V: MoebiusMatrix, floor: float | None = None
) -> LengthCheck:
    """Re λ(U) + Re λ(V) − 2·log 3 ≤ Re λ(UV), given |tr UV| ≥ |tr UV⁻¹|."""
    floor = settings.geometry.length_floor if floor is None else floor
    UV = U @ V
    if abs(UV.trace) < abs((U @ V.inverse()).trace):
        raise PreconditionViolated("|tr UV| < |tr UV⁻¹|; swap V for its inverse")
    lu, lv = complex_half_length(U), complex_half_length(V)
    if min(lu.length, lv.length) <= floor:
        raise PreconditionViolated(f"lengths must exceed {floor}")
    value = complex_half_length(UV).lam.real
    lower = lu.lam.real + lv.lam.real - 2 * math.log(3)
    return LengthCheck(value >= lower, lower, value, math.inf)
