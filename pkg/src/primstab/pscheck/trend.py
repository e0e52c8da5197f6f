# src/primstab/pscheck/trend.py
from __future__ import annotations
from collections import deque


class TrendWindow:
    """
    Tracks the per-level minimum ratio d(O, ρ(w)O)/||w|| over the last few levels.

    A stable window reads as evidence for primitive stability; a strictly
    decreasing one as evidence against it.
    """

    def __init__(self, window: int = 3) -> None:
        self._window = window
        self._history: deque[float] = deque(maxlen=window)

    def update(self, value: float) -> float:
        """Record the minimum at the next level and return it."""
        self._history.append(value)
        return value

    @property
    def values(self) -> list[float]:
        return list(self._history)

    @property
    def full(self) -> bool:
        return len(self._history) == self._window

    @property
    def last(self) -> float:
        if not self._history:
            return 0.0
        return self._history[-1]

    @property
    def spread(self) -> float:
        if not self._history:
            return 0.0
        return max(self._history) - min(self._history)

    def reset(self) -> None:
        self._history.clear()

    def is_stable(self, tol: float = 1e-6) -> bool:
        """Full window; no level drops below its predecessor by more than tol."""
        if not self.full:
            return False
        vals = self.values
        return all(b >= a - tol for a, b in zip(vals, vals[1:]))

    def is_decreasing(self) -> bool:
        """Full window that never rises and drops at least once; plateaus allowed."""
        if not self.full:
            return False
        vals = self.values
        return all(b <= a for a, b in zip(vals, vals[1:])) and vals[-1] < vals[0]
