# tests/test_config.py
"""Layered settings: YAML base, profiles and PRIMSTAB_ environment overrides."""

import pytest
from pydantic import ValidationError

from primstab.core.config import BqConfig, PsConfig, Settings, deep_merge


def test_deep_merge_nested():
    base = {"bq": {"m": 2.0, "depth_budget": 50}, "scan": {"threads": 1}}
    merged = deep_merge(base, {"bq": {"depth_budget": 120}})
    assert merged == {"bq": {"m": 2.0, "depth_budget": 120}, "scan": {"threads": 1}}
    assert base["bq"]["depth_budget"] == 50


def test_deep_merge_replaces_scalars_with_dicts():
    assert deep_merge({"a": 1}, {"a": {"b": 2}}) == {"a": {"b": 2}}


def test_base_yaml_defaults(monkeypatch):
    monkeypatch.delenv("PRIMSTAB_PROFILE", raising=False)
    s = Settings()
    assert s.bq.m == 2.0
    assert s.markoff.m_bound == 3.0
    assert s.geometry.length_floor == 2.0
    assert s.ps.stability_tol == 0.1
    assert s.scan.image == "pgm"


def test_env_overrides_yaml(monkeypatch):
    monkeypatch.delenv("PRIMSTAB_PROFILE", raising=False)
    monkeypatch.setenv("PRIMSTAB_BQ__M", "3.5")
    monkeypatch.setenv("PRIMSTAB_SCAN__THREADS", "4")
    s = Settings()
    assert s.bq.m == 3.5
    assert s.bq.depth_budget == 50
    assert s.scan.threads == 4


def test_profile_overlays_base(monkeypatch):
    monkeypatch.setenv("PRIMSTAB_PROFILE", "boundary_study")
    s = Settings()
    assert s.bq.depth_budget == 120
    assert s.bq.vertex_budget == 20000
    assert s.bq.m == 2.0
    assert s.ps.level == 14


def test_unknown_profile_keeps_base(monkeypatch):
    monkeypatch.setenv("PRIMSTAB_PROFILE", "no_such_profile")
    assert Settings().bq.depth_budget == 50


def test_threshold_below_two_rejected():
    with pytest.raises(ValidationError):
        BqConfig(m=1.5)


def test_ps_level_bounds():
    with pytest.raises(ValidationError):
        PsConfig(level=1)
    with pytest.raises(ValidationError):
        PsConfig(stability_tol=1.5)
