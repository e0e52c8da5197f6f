# tests/test_logging.py
"""Structlog wiring: trace rendering and the bound base point."""

import json
import logging
import math

import structlog

from primstab.core.logging import bind_point, clear_point, configure_logging, format_trace, render_traces
from primstab.markoff.triples import TraceTriple


# ── Rendering ─────────────────────────────────────────────────────────────────


def test_format_trace():
    assert format_trace(3 + 0j) == "3"
    assert format_trace(3 - 0.25j) == "3-0.25i"
    assert format_trace(complex(math.inf, 0)) == "escaped"


def test_render_traces_rewrites_complex_and_triples():
    event = {"event": "sink", "trace": 2 + 1j, "point": TraceTriple(3, 3, 3), "level": 7}
    out = render_traces(None, "info", event)
    assert out == {"event": "sink", "trace": "2+1i", "point": "3,3,3", "level": 7}


# ── Context ───────────────────────────────────────────────────────────────────


def test_bind_point_carries_markoff_value():
    try:
        ctx = bind_point(TraceTriple(3, 3, 3), "classify")
        assert ctx["mu"] == "0"
        bound = structlog.contextvars.get_contextvars()
        assert bound["command"] == "classify"
        assert bound["point"] == TraceTriple(3, 3, 3)
    finally:
        clear_point()
    assert structlog.contextvars.get_contextvars() == {}


def test_json_format_renders_triples():
    configure_logging("info", "json")
    try:
        processors = structlog.get_config()["processors"]
        assert render_traces in processors
        assert isinstance(processors[-1], structlog.processors.JSONRenderer)
        event = {"event": "classified", "point": TraceTriple(3, 3, 3 + 0.5j), "depth": 4}
        for proc in processors[1:]:
            event = proc(logging.getLogger("primstab.test"), "info", event)
    finally:
        structlog.reset_defaults()
    record = json.loads(event)
    assert record["point"] == "3,3,3+0.5i"
    assert record["depth"] == 4
    assert record["level"] == "info"
