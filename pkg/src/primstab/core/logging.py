# src/primstab/core/logging.py
from __future__ import annotations
import cmath
import logging
import sys
from typing import Any, MutableMapping
import structlog


def format_trace(t: complex) -> str:
    """Compact a+bi form; overflowed traces print as 'escaped'."""
    if cmath.isinf(t) or cmath.isnan(t):
        return "escaped"
    if t.imag == 0:
        return f"{t.real:.6g}"
    return f"{t.real:.6g}{t.imag:+.6g}i"


def render_traces(
    _logger: Any, _method: str, event_dict: MutableMapping[str, Any]
) -> MutableMapping[str, Any]:
    """Processor: complex values and trace triples become readable strings."""
    for key, value in event_dict.items():
        if isinstance(value, complex):
            event_dict[key] = format_trace(value)
        elif hasattr(value, "as_tuple") and hasattr(value, "mu"):
            event_dict[key] = ",".join(format_trace(t) for t in value.as_tuple())
    return event_dict


def configure_logging(log_level: str = "info", log_format: str = "console") -> None:
    """Structlog on stderr so stdout stays free for listings and reports."""
    level = getattr(logging, log_level.upper(), logging.INFO)
    logging.basicConfig(
        format="%(message)s",
        level=level,
        stream=sys.stderr,
    )
    renderer: Any = (
        structlog.processors.JSONRenderer()
        if log_format == "json"
        else structlog.dev.ConsoleRenderer()
    )
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            render_traces,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def get_logger(name: str) -> Any:
    return structlog.get_logger(name)


def bind_point(triple: Any, command: str | None = None) -> dict[str, Any]:
    """Bind the base triple and its Markoff value to later log calls.

    Returns the bound context so callers can echo it.
    """
    ctx: dict[str, Any] = {"point": triple, "mu": format_trace(triple.mu)}
    if command:
        ctx["command"] = command
    structlog.contextvars.bind_contextvars(**ctx)
    return ctx


def clear_point() -> None:
    structlog.contextvars.clear_contextvars()
