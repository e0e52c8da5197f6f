"""Exception hierarchy shared by every primstab module."""
from __future__ import annotations


class PrimstabError(Exception):
    """Base class for expected library failures."""


# ── Combinatorics ─────────────────────────────────────────────────────────────


class NotNeighbours(PrimstabError, ValueError):
    pass


class TypeMismatch(PrimstabError, ValueError):
    pass


class NotFound(PrimstabError, LookupError):
    pass


class NotInWake(PrimstabError, ValueError):
    pass


class BudgetExhausted(PrimstabError):
    def __init__(self, message: str, steps: int = 0) -> None:
        super().__init__(message)
        self.steps = steps


class PreconditionViolated(PrimstabError, ValueError):
    pass


# ── Representations ───────────────────────────────────────────────────────────


class ReducibleRepresentation(PrimstabError):
    pass


class ElementaryRepresentation(ReducibleRepresentation):
    """mu = 4, i.e. tr[A,B] = 2."""


# ── Geometry ──────────────────────────────────────────────────────────────────


class IdentityMatrix(PrimstabError):
    pass


class ParabolicNoAxis(PrimstabError):
    pass


class SharedEndpoint(PrimstabError):
    pass


class NonLoxodromic(PrimstabError):
    pass


class NotCyclicallyShortest(PrimstabError, ValueError):
    pass


class DegenerateSegment(PrimstabError):
    pass


class InvalidGeometry(PrimstabError, ValueError):
    pass
