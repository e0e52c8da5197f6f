# tests/test_pscheck.py
"""Broken geodesics, the PS verdict and the bounded intersection checks."""

import math

import pytest

from primstab.bq import WitnessKind, bq_test, validate_certificate
from primstab.core.config import BqConfig, PsConfig
from primstab.core.errors import DegenerateSegment, NotCyclicallyShortest, ParabolicNoAxis, TypeMismatch
from primstab.core.types import BqLabel, PsLabel
from primstab.farey import INFINITY, ONE, ZERO, BasicPair, Mod2Type, Rational, mod2_type
from primstab.geometry import H3Point, lift_representation
from primstab.markoff.tree import descending_path
from primstab.markoff.triples import TraceTriple
from primstab.pscheck import (
    TrendWindow,
    bending_angle,
    bending_profile,
    bip_report,
    broken_geodesic,
    non_loxodromic_primitive,
    perpendicular_decay_probe,
    power_axis_distance,
    ps_estimate,
    ps_verdict,
)
from primstab.scan import ScanWindow

MARKOFF = TraceTriple(3, 3, 3)


# ── TrendWindow ───────────────────────────────────────────────────────────────


def test_trend_window_fills():
    tw = TrendWindow(window=3)
    assert not tw.full
    for v in (0.5, 0.5, 0.5):
        tw.update(v)
    assert tw.full
    assert tw.last == 0.5
    assert tw.spread == 0.0


def test_trend_window_stable_within_tolerance():
    tw = TrendWindow(window=3)
    for v in (0.50, 0.49, 0.49):
        tw.update(v)
    assert tw.is_stable(0.05)
    assert not tw.is_stable(1e-6)


def test_trend_window_decreasing():
    tw = TrendWindow(window=3)
    for v in (0.3, 0.2, 0.1):
        tw.update(v)
    assert tw.is_decreasing()
    assert not tw.is_stable(0.01)


def test_trend_window_plateau_then_drop_is_decreasing():
    tw = TrendWindow(window=3)
    for v in (0.0075, 0.0075, 0.0012):
        tw.update(v)
    assert tw.is_decreasing()


def test_trend_window_flat_is_not_decreasing():
    tw = TrendWindow(window=3)
    for v in (0.2, 0.2, 0.2):
        tw.update(v)
    assert not tw.is_decreasing()


def test_trend_window_stability_is_relative_to_last_value():
    tw = TrendWindow(window=3)
    for v in (0.0075, 0.003, 0.0012):
        tw.update(v)
    assert not tw.is_stable(0.1 * tw.last)
    tw.reset()
    for v in (1.0, 0.97, 0.95):
        tw.update(v)
    assert tw.is_stable(0.1 * tw.last)


def test_trend_window_keeps_last_values():
    tw = TrendWindow(window=2)
    for v in (1.0, 2.0, 3.0):
        tw.update(v)
    assert tw.values == [2.0, 3.0]


def test_trend_window_reset():
    tw = TrendWindow(window=2)
    tw.update(1.0)
    tw.reset()
    assert tw.values == []
    assert tw.last == 0.0


# ── Broken geodesics ──────────────────────────────────────────────────────────


def test_broken_geodesic_vertices():
    A, B = lift_representation(MARKOFF)
    bg = broken_geodesic("aab", A, B)
    assert len(bg.vertices) == 4
    assert len(bg.segments) == 3
    assert bg.length >= bg.endpoint_distance


def test_broken_geodesic_requires_cyclic_reduction():
    A, B = lift_representation(MARKOFF)
    with pytest.raises(NotCyclicallyShortest):
        broken_geodesic("abA", A, B)


def test_bending_angle_straight_line():
    P, Q, R = H3Point(0j, 1.0), H3Point(0j, math.e), H3Point(0j, math.e**2)
    assert bending_angle(P, Q, R) == pytest.approx(math.pi)


def test_bending_angle_right_angle():
    # Q on the vertical axis; R on the unit hemisphere through Q
    P, Q = H3Point(0j, math.e), H3Point(0j, 1.0)
    R = H3Point(complex(math.tanh(1.0), 0), 1 / math.cosh(1.0))
    assert bending_angle(P, Q, R) == pytest.approx(math.pi / 2)


def test_bending_angle_degenerate():
    with pytest.raises(DegenerateSegment):
        bending_angle(H3Point(0j, 1.0), H3Point(0j, 1.0), H3Point(0j, 2.0))


def test_bending_profile_counts_every_vertex():
    A, B = lift_representation(MARKOFF)
    profile = bending_profile(broken_geodesic("aaab", A, B))
    assert len(profile.angles) + profile.skipped == 4
    assert profile.minimum is not None
    assert all(0 <= a <= math.pi + 1e-12 for a in profile.angles)


def test_power_axis_distance_is_constant():
    A, _ = lift_representation(MARKOFF)
    d1 = power_axis_distance(A, 1)
    for r in (2, 3, -1):
        assert power_axis_distance(A, r) == pytest.approx(d1, rel=1e-6, abs=1e-9)


# ── PS estimate and verdict ───────────────────────────────────────────────────


def test_ps_estimate_markoff():
    est = ps_estimate(MARKOFF, 5)
    assert len(est.level_minima) == 5
    assert all(b <= a for a, b in zip(est.level_minima, est.level_minima[1:]))
    assert est.min_ratio > 0
    assert est.K_hat >= 1
    assert est.eps_hat >= 0
    assert est.witness


def test_ps_estimate_needs_two_levels():
    with pytest.raises(ValueError):
        ps_estimate(MARKOFF, 1)


def test_markoff_is_likely_ps():
    verdict = ps_verdict(MARKOFF)
    assert verdict.label is PsLabel.LIKELY_PS
    report = verdict.to_report()
    assert report.verdict is PsLabel.LIKELY_PS
    assert report.min_ratio > 0


def test_elliptic_generator_is_not_ps():
    verdict = ps_verdict(TraceTriple(1, 1, 1))
    assert verdict.label is PsLabel.NOT_PS
    assert verdict.witness == "a"
    assert verdict.reason == "non_loxodromic"


def test_non_loxodromic_primitive_off_base():
    hit = non_loxodromic_primitive(TraceTriple(2.5, 4.0, 2.2), 6)
    assert hit is not None
    r, word = hit
    assert r == Rational(1, 2)
    assert str(word) == "aab"


def test_short_window_is_unknown():
    verdict = ps_verdict(MARKOFF, PsConfig(level=2, window=3))
    assert verdict.label is PsLabel.UNKNOWN
    assert verdict.reason == "window"


def test_collapsing_ratio_is_not_ps():
    verdict = ps_verdict(TraceTriple(0.01 + 0.01j, 0.01 + 0.01j, 0.01 + 0.01j), PsConfig())
    assert verdict.label is PsLabel.NOT_PS
    assert verdict.reason == "collapsing_ratio"
    assert verdict.estimate is not None and verdict.estimate.min_ratio < 1e-3


def test_small_falling_ratio_is_not_likely_ps():
    t = -0.1875 + 0.1875j
    verdict = ps_verdict(TraceTriple(t, t, t), PsConfig())
    assert verdict.label is not PsLabel.LIKELY_PS


# ── BIP ───────────────────────────────────────────────────────────────────────


def test_bip_report_markoff():
    report = bip_report(MARKOFF, 3)
    assert len(report.records) == 16
    base = next(r for r in report.records if r.rational == ZERO and r.pair is BasicPair.AB)
    assert base.intersects
    assert base.residual == pytest.approx(0.0, abs=1e-6)
    assert report.D_hat is not None
    model = report.to_model()
    assert model.level == 3
    assert len(model.records) == 16


def test_bip_records_only_admissible_pairs():
    report = bip_report(MARKOFF, 4)
    for rec in report.records:
        assert mod2_type(rec.rational) in rec.pair.types
        if rec.pair is BasicPair.AB:
            assert rec.word.is_palindrome


@pytest.mark.parametrize("base", [MARKOFF, TraceTriple(3, 3, 3 + 0.5j)])
def test_bip_intersections_are_orthogonal(base):
    report = bip_report(base, 6)
    meeting = [rec for rec in report.records if rec.intersects]
    assert meeting
    for rec in meeting:
        assert rec.residual is not None and rec.residual <= 1e-6


def test_bip_bound_settles_on_markoff_triple():
    shallow, deep = bip_report(MARKOFF, 20), bip_report(MARKOFF, 30)
    assert shallow.D_hat is not None and deep.D_hat is not None
    assert abs(deep.D_hat - shallow.D_hat) < 1e-3
    assert deep.max_residual <= 1e-6


def test_bip_needs_loxodromic_generators():
    # y = 2 makes B parabolic
    with pytest.raises(ParabolicNoAxis):
        bip_report(TraceTriple(3, 2, 4), 3)


# ── Decay of perpendicular gaps ───────────────────────────────────────────────


def test_decay_slope_along_descending_path():
    base = TraceTriple(3, 3, 3 + 0.3j)
    path = descending_path(base, Rational(1, 11), 3.2, Mod2Type.INFINITY, 40)
    decay = perpendicular_decay_probe(base, path)
    assert decay.pair is BasicPair.B_AB
    assert len(decay.samples) == len(path) - 1
    assert decay.total_gap >= decay.endpoint_distance - 1e-9
    assert decay.slope is not None
    assert -1.3 <= decay.slope <= -0.7


def test_decay_single_step_has_no_slope():
    decay = perpendicular_decay_probe(TraceTriple(3, 3, 3 + 0.3j), [Rational(1, 2), ONE])
    assert len(decay.samples) == 1
    assert decay.slope is None


def test_decay_gaps_vanish_for_real_markoff_triple():
    # a real triple keeps every axis in one plane, crossed by E at a single point
    path = descending_path(MARKOFF, Rational(1, 11), 3.0, Mod2Type.INFINITY, 40)
    decay = perpendicular_decay_probe(MARKOFF, path)
    assert len(decay.samples) >= 2
    assert all(s.gap <= 1e-9 for s in decay.samples)
    assert decay.slope is None


def test_decay_type_mismatch():
    with pytest.raises(TypeMismatch):
        perpendicular_decay_probe(MARKOFF, [ZERO, INFINITY, ONE])


def test_decay_empty_path():
    with pytest.raises(ValueError):
        perpendicular_decay_probe(MARKOFF, [])


# ── Agreement with the BQ semi-decision ───────────────────────────────────────


@pytest.mark.slow
def test_bq_and_ps_verdicts_agree_on_diagonal_grid():
    window = ScanWindow(-3, -3, 3, 3)
    bq_cfg, ps_cfg = BqConfig(depth_budget=50), PsConfig(level=10)
    checked = 0
    for j in range(16):
        for i in range(16):
            t = window.pixel_centre(i, j, 16, 16)
            base = TraceTriple(t, t, t)
            verdict = bq_test(base, bq_cfg)
            if verdict.label is BqLabel.BQ:
                assert validate_certificate(base, verdict.certificate)
                assert ps_verdict(base, ps_cfg).label is not PsLabel.NOT_PS, f"bq pixel {t} is not_ps"
                checked += 1
            elif verdict.witness and verdict.witness.kind is WitnessKind.PRIMITIVE_IN_INTERVAL:
                assert ps_verdict(base, ps_cfg).label is not PsLabel.LIKELY_PS, f"interval pixel {t} is likely_ps"
                checked += 1
    assert checked
