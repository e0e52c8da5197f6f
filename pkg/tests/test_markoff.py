# tests/test_markoff.py
"""Unit tests for trace triples, region traces and walks on the Farey tree."""

from fractions import Fraction

import numpy as np
import pytest

from primstab.core.errors import NotInWake, PreconditionViolated, TypeMismatch
from primstab.farey import INFINITY, ONE, ZERO, Mod2Type, Rational, rationals_up_to
from primstab.markoff.tracemap import TraceMap, Vertex, region_trace
from primstab.markoff.tree import (
    BoundaryGrowth,
    descending_path,
    enumerate_omega,
    fib_weight,
    find_sink,
    in_wake,
    plughole,
)
from primstab.markoff.triples import (
    ESCAPED,
    TraceTriple,
    in_interval,
    is_elementary,
    is_escaped,
    neighbour_triple,
    orient_edge,
    saturate,
)

MARKOFF = TraceTriple(3, 3, 3)


# ── TraceTriple ───────────────────────────────────────────────────────────────


def test_mu_of_markoff_triple_is_zero():
    assert MARKOFF.mu == 0


def test_elementary_detection():
    assert is_elementary(TraceTriple(2, 2, 2))
    assert is_elementary(TraceTriple(2, 0, 0))
    assert not is_elementary(MARKOFF)


def test_parse_accepts_i_and_spaces():
    assert TraceTriple.parse("1, 2i, 3") == TraceTriple(1, 2j, 3)
    assert TraceTriple.parse("0.5+1j,3,3") == TraceTriple(0.5 + 1j, 3, 3)


def test_parse_rejects_wrong_arity():
    with pytest.raises(ValueError):
        TraceTriple.parse("1,2")


def test_neighbour_triple_flip():
    assert neighbour_triple(MARKOFF, 3) == TraceTriple(3, 3, 6)
    with pytest.raises(ValueError):
        neighbour_triple(MARKOFF, 4)


def test_mu_invariant_under_flips():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        x, y, z = rng.normal(size=3) + 1j * rng.normal(size=3)
        t = TraceTriple(complex(x), complex(y), complex(z))
        mu0, scale = t.mu, max(abs(x), abs(y), abs(z))
        for slot in rng.integers(1, 4, size=20):
            t = neighbour_triple(t, int(slot))
            scale = max(scale, *(abs(c) for c in t.as_tuple()))
            if scale > 1e30:
                break
        # rounding in xy - z shifts mu by about eps * scale**4 per flip
        assert abs(t.mu - mu0) <= 1e-9 * (1 + abs(mu0)) + 1e-14 * scale**4


def test_flip_is_an_involution():
    rng = np.random.default_rng(8)
    for _ in range(200):
        x, y, z = rng.normal(scale=2, size=3) + 1j * rng.normal(scale=2, size=3)
        t = TraceTriple(complex(x), complex(y), complex(z))
        for slot in (1, 2, 3):
            back = neighbour_triple(neighbour_triple(t, slot), slot)
            for a, b in zip(back.as_tuple(), t.as_tuple()):
                assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


def test_saturation():
    assert is_escaped(saturate(1e200))
    assert saturate(5 + 0j) == 5
    assert is_escaped(ESCAPED)


def test_in_interval():
    assert in_interval(2 + 0j)
    assert in_interval(-2 + 0j)
    assert not in_interval(2.1 + 0j)
    assert not in_interval(1 + 0.1j)
    assert not in_interval(ESCAPED)


# ── Region traces ─────────────────────────────────────────────────────────────


def test_region_traces_of_markoff_triple():
    expected = {
        ZERO: 3,
        INFINITY: 3,
        ONE: 3,
        Rational(-1, 1): 6,
        Rational(1, 2): 6,
        Rational(2, 1): 6,
        Rational(1, 3): 15,
        Rational(2, 3): 15,
        Rational(1, 4): 39,
        Rational(2, 5): 87,
    }
    for r, value in expected.items():
        assert region_trace(MARKOFF, r) == pytest.approx(value)


def test_tracemap_caches_path():
    tm = TraceMap(MARKOFF)
    assert tm.trace(Rational(2, 5)) == pytest.approx(87)
    assert tm.cache_size >= 4
    assert tm.trace(Rational(1, 3)) == pytest.approx(15)


def test_negative_regions_mirror_real_triples():
    # the mirror fixes 0/1 and 1/0 and swaps 1/1 with -1/1
    t = TraceTriple(3, 4, 5)
    mirrored = TraceTriple(3, 4, 3 * 4 - 5)
    for r in (Rational(1, 2), Rational(2, 3), Rational(3, 1)):
        assert region_trace(t, r.mirror()) == pytest.approx(region_trace(mirrored, r))


def test_overflow_saturates():
    tm = TraceMap(MARKOFF, bound=1e3)
    assert is_escaped(tm.trace(Rational(1, 9)))


# ── Orientation ───────────────────────────────────────────────────────────────


def test_orient_edge_points_to_smaller_end():
    edge = orient_edge(3, 3, 3)
    assert edge.z_trace == 6
    assert edge.toward_w and edge.decisive


def test_orient_edge_tie():
    edge = orient_edge(0, 1, 1)
    assert edge.z_trace == -1
    assert not edge.decisive


def test_vertex_across_central_edge():
    v = Vertex.central().across(ZERO, INFINITY)
    assert set(v.regions) == {ZERO, INFINITY, Rational(-1, 1)}


# ── Sinks and Ω(m) ────────────────────────────────────────────────────────────


def test_markoff_sink_is_central():
    sink = find_sink(MARKOFF)
    assert sink.status == "sink"
    assert sink.vertex == Vertex.central()
    assert sink.steps == 0


def test_descent_reaches_central_vertex():
    start = Vertex.of(ZERO, ONE, Rational(1, 2))
    sink = find_sink(MARKOFF, start)
    assert sink.status == "sink"
    assert sink.vertex == Vertex.central()
    assert sink.steps == 1


def test_omega_of_markoff_triple():
    omega = enumerate_omega(MARKOFF, 3.0, 10)
    assert omega.addresses == {ZERO, INFINITY, ONE}
    assert omega.complete and not omega.infinite


def test_omega_grows_with_threshold():
    omega = enumerate_omega(MARKOFF, 6.0, 10)
    assert omega.addresses == {
        ZERO,
        INFINITY,
        ONE,
        Rational(-1, 1),
        Rational(1, 2),
        Rational(2, 1),
    }
    assert omega.complete


def test_omega_requires_m_at_least_two():
    with pytest.raises(PreconditionViolated):
        enumerate_omega(MARKOFF, 1.5, 10)


def test_omega_of_bounded_orbit_is_flagged_infinite():
    omega = enumerate_omega(TraceTriple(1, 1, 1), 2.0, 10)
    assert omega.infinite
    assert not omega.complete


# ── Boundary recurrence ───────────────────────────────────────────────────────


def test_boundary_growth_matches_recurrence():
    u, y0, y1 = 3 + 1j, 2 - 0.5j, 4 + 2j
    growth = BoundaryGrowth.fit(u, y0, y1)
    assert growth is not None
    prev, cur = y0, y1
    for k in range(2, 10):
        prev, cur = cur, u * cur - prev
        assert growth.value(k) == pytest.approx(cur, rel=1e-9)


def test_boundary_growth_none_in_interval():
    assert BoundaryGrowth.fit(1.5, 1, 1) is None


# ── Plugholes, wakes, descending paths ────────────────────────────────────────


def test_plughole_of_half():
    edge = plughole(MARKOFF, Rational(1, 2))
    assert edge.w == Rational(1, 2)
    assert {edge.u, edge.v} == {ZERO, ONE}
    assert edge.decisive and not edge.toward_w


def test_plughole_requires_large_region():
    with pytest.raises(PreconditionViolated):
        plughole(MARKOFF, ZERO)


def test_fib_weights_in_wake():
    edge = plughole(MARKOFF, Rational(1, 2))
    assert edge.u is not None
    assert fib_weight(edge, edge.u) == 1
    assert fib_weight(edge, Rational(1, 2)) == 2
    assert fib_weight(edge, Rational(1, 3)) == 3
    assert in_wake(edge, Rational(2, 3))


def test_fib_weight_outside_wake():
    edge = plughole(MARKOFF, Rational(1, 2))
    assert not in_wake(edge, INFINITY)
    with pytest.raises(NotInWake):
        fib_weight(edge, INFINITY)


def test_descending_path_from_half():
    path = descending_path(MARKOFF, Rational(1, 2), 3.0, Mod2Type.ZERO, budget=5)
    assert [ref.address for ref in path] == [Rational(1, 2), ZERO]


def test_descending_path_type_mismatch():
    with pytest.raises(TypeMismatch):
        descending_path(MARKOFF, Rational(1, 2), 3.0, Mod2Type.INFINITY, budget=5)


def test_descending_path_follows_decreasing_markoff_values():
    path = descending_path(MARKOFF, Rational(1, 3), 3.0, Mod2Type.INFINITY, budget=10)
    assert [ref.address for ref in path] == [Rational(1, 3), Rational(1, 2), ONE]
    tm = TraceMap(MARKOFF)
    assert [tm.trace(ref.address) for ref in path] == [15, 6, 3]


def test_descending_path_inside_omega_is_empty():
    assert descending_path(MARKOFF, ONE, 3.0, Mod2Type.INFINITY, budget=5) == []
    assert descending_path(TraceTriple(1, 1, 1), Rational(1, 2), 2.0, Mod2Type.ZERO, budget=5) == []


def test_descending_path_bound_must_cover_the_sink():
    # the central sink carries |3 + 0.3i| > 3
    with pytest.raises(PreconditionViolated):
        descending_path(TraceTriple(3, 3, 3 + 0.3j), Rational(1, 11), 3.0, Mod2Type.INFINITY, budget=40)


# ── Exact integer oracle ──────────────────────────────────────────────────────


def _exact_trace(x: int, y: int, z: int, target: Fraction) -> int:
    """Integer Stern–Brocot descent; the mediant trace is t(l)·t(r) − t(opposite)."""
    l, r = (0, 1), (1, 0)
    tl, tr, t_opp = x, y, x * y - z
    m, tm = (1, 1), z
    while Fraction(*m) != target:
        if target < Fraction(*m):
            r, tr, t_opp = m, tm, tr
        else:
            l, tl, t_opp = m, tm, tl
        m = (l[0] + r[0], l[1] + r[1])
        tm = tl * tr - t_opp
    return tm


@pytest.mark.parametrize("xyz", [(3, 3, 3), (3, 4, 5), (2, 3, 7)])
def test_region_traces_match_integer_oracle(xyz):
    t = TraceTriple(*xyz)
    for r in rationals_up_to(11):
        if r in (ZERO, INFINITY) or r.p < 0:
            continue
        expected = _exact_trace(*xyz, Fraction(r.p, r.q))
        assert region_trace(t, r) == pytest.approx(expected, rel=1e-12)
