# src/primstab/core/registry.py
"""Named slice families: one complex parameter t mapped to a trace triple."""
from __future__ import annotations
from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class FamilyEntry:
    name: str
    cls: type
    requires: tuple[str, ...]
    summary: str


_families: dict[str, FamilyEntry] = {}


def register(name: str, requires: tuple[str, ...] = (), summary: str = ""):
    """Decorator: @register("fixed-xy", requires=("x0", "y0")) on a SliceFamily.

    Re-registering a name with a different class is a programming error.
    """

    def decorator(cls: type) -> type:
        prior = _families.get(name)
        if prior is not None and prior.cls.__qualname__ != cls.__qualname__:
            raise ValueError(f"slice family '{name}' already bound to {prior.cls.__qualname__}")
        _families[name] = FamilyEntry(name, cls, tuple(requires), summary or (cls.__doc__ or "").strip())
        return cls

    return decorator


def entry(name: str) -> FamilyEntry:
    if name not in _families:
        raise KeyError(f"No slice family registered for '{name}'. Available: {sorted(_families)}")
    return _families[name]


def get(name: str) -> type:
    return entry(name).cls


def missing_params(name: str, params: dict[str, Any]) -> list[str]:
    return [k for k in entry(name).requires if params.get(k) is None]


def create(name: str, params: dict[str, Any]) -> Any:
    """Instantiate a slice family after checking its required parameters."""
    missing = missing_params(name, params)
    if missing:
        raise ValueError(f"slice family '{name}' needs {', '.join(missing)}")
    return get(name)(params)


def list_registered() -> list[str]:
    return sorted(_families)


def describe() -> dict[str, str]:
    """Name → one-line summary, for help text."""
    return {n: _families[n].summary.splitlines()[0] if _families[n].summary else "" for n in sorted(_families)}
