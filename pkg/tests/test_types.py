# tests/test_types.py
"""Unit tests for report models: serialization, validation, edge cases."""

import json
import math

import pytest

from primstab.core.types import (
    SCHEMA_VERSION,
    BipReportModel,
    BqLabel,
    BqReport,
    ClassifyReport,
    PixelLabel,
    PsLabel,
    PsReport,
    ScanSidecar,
    WitnessModel,
    WordRow,
    complex_pair,
    finite_or_none,
)


# ── Helpers ───────────────────────────────────────────────────────────────────


def test_complex_pair():
    assert complex_pair(3 - 2j) == [3.0, -2.0]
    assert complex_pair(None) is None
    assert complex_pair(complex(math.inf, 0)) is None


def test_finite_or_none():
    assert finite_or_none(1.5) == 1.5
    assert finite_or_none(math.inf) is None
    assert finite_or_none(math.nan) is None
    assert finite_or_none(None) is None


# ── Witness and BQ reports ────────────────────────────────────────────────────


def test_witness_trace_serialises_as_pair():
    w = WitnessModel(kind="exceptional_boundary", region="0/1", trace=1j * math.sqrt(2), direction=-1)
    dumped = w.model_dump(mode="json")
    assert dumped["trace"] == pytest.approx([0.0, math.sqrt(2)])
    assert dumped["direction"] == -1


def test_witness_kind_validated():
    with pytest.raises(Exception):
        WitnessModel(kind="guess", region="0/1", trace=0j)


def test_bq_report_defaults():
    r = BqReport(verdict=BqLabel.BQ)
    assert r.schema_version == SCHEMA_VERSION
    assert r.witness is None
    assert r.certificate_size == 0


def test_bq_report_rejects_negative_depth():
    with pytest.raises(Exception):
        BqReport(verdict=BqLabel.UNKNOWN, depth_used=-1)


# ── PS reports ────────────────────────────────────────────────────────────────


def test_ps_report_bounds():
    PsReport(min_ratio=0.2, K=5.0, eps=0.0, level=10, verdict=PsLabel.LIKELY_PS)
    with pytest.raises(Exception):
        PsReport(min_ratio=-0.1, K=5.0, eps=0.0, level=10, verdict=PsLabel.UNKNOWN)
    with pytest.raises(Exception):
        PsReport(min_ratio=0.1, K=0.5, eps=0.0, level=10, verdict=PsLabel.UNKNOWN)


# ── Composite reports ─────────────────────────────────────────────────────────


def test_classify_report_json_round_trip():
    report = ClassifyReport(
        triple="3,3,3",
        mu=0j,
        bq=BqLabel.BQ,
        ps=PsLabel.LIKELY_PS,
        bip_D=0.75,
        bq_report=BqReport(verdict=BqLabel.BQ, certificate_size=4),
        ps_report=PsReport(min_ratio=0.3, K=3.3, eps=1.0, level=10, verdict=PsLabel.LIKELY_PS),
        budgets={"depth_budget": 50, "m": 2.0},
    )
    doc = json.loads(report.model_dump_json())
    assert doc["mu"] == [0.0, 0.0]
    assert doc["bq"] == "bq"
    assert doc["ps_report"]["verdict"] == "likely_ps"
    assert doc["budgets"] == {"depth_budget": 50, "m": 2.0}


def test_bip_report_model_allows_missing_bound():
    model = BipReportModel(D_hat=None, level=5)
    assert model.records == []
    assert json.loads(model.model_dump_json())["D_hat"] is None


# ── Listings and sidecars ─────────────────────────────────────────────────────


def test_word_row():
    row = WordRow(rational="1/2", word="aab", length=3, e_a=2, e_b=1, mod2_type="1/0")
    assert row.palindromes == {}
    assert row.model_dump()["e_a"] == 2


def test_scan_sidecar():
    sidecar = ScanSidecar(
        family="diagonal",
        window=[-3, -3, 3, 3],
        size=[64, 64],
        image="pgm",
        counts={label.value: 0 for label in PixelLabel},
    )
    doc = sidecar.model_dump()
    assert doc["schema_version"] == SCHEMA_VERSION
    assert "workers" not in doc
    assert set(doc["counts"]) == {"bq", "not_bq_interval", "not_bq_exceptional", "unknown", "elementary"}


def test_scan_sidecar_image_kind():
    with pytest.raises(Exception):
        ScanSidecar(family="diagonal", window=[0, 0, 1, 1], size=[1, 1], image="png")
