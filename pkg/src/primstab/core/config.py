# src/primstab/core/config.py
from __future__ import annotations
import os
from pathlib import Path
from typing import Any, Literal
import yaml
from pydantic import BaseModel, Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


def deep_merge(base: dict, override: dict) -> dict:
    """Recursively merge override into base; override wins on conflicts."""
    result = dict(base)
    for k, v in override.items():
        if k in result and isinstance(result[k], dict) and isinstance(v, dict):
            result[k] = deep_merge(result[k], v)
        else:
            result[k] = v
    return result


class AppConfig(BaseModel):
    log_level: str = "info"
    log_format: Literal["console", "json"] = "console"


class MarkoffConfig(BaseModel):
    tie_tol: float = Field(1e-9, gt=0.0)
    escape_bound: float = Field(1e150, gt=0.0)
    m_bound: float = Field(3.0, ge=2.0)
    plughole_width: int = Field(64, ge=1)


class BqConfig(BaseModel):
    m: float = Field(2.0, ge=2.0)
    depth_budget: int = Field(50, ge=0)
    vertex_budget: int = Field(4000, ge=1)
    descent_budget: int = Field(200, ge=0)
    boundary_budget: int = Field(100, ge=1)
    interval_tol: float = Field(1e-9, ge=0.0)
    sqrt_mu_tol: float = Field(1e-9, ge=0.0)
    growth_floor: float = Field(0.0, ge=0.0)
    exceptional_level: int = Field(2, ge=0)


class GeometryConfig(BaseModel):
    det_tol: float = Field(1e-9, gt=0.0)
    parabolic_tol: float = Field(1e-9, gt=0.0)
    length_floor: float = Field(2.0, ge=0.0)


class PsConfig(BaseModel):
    level: int = Field(10, ge=2)
    floor: float = Field(1e-3, ge=0.0)
    window: int = Field(3, ge=2)
    stability_tol: float = Field(0.1, ge=0.0, le=1.0)
    trace_level: int = Field(24, ge=1)


class BipConfig(BaseModel):
    level: int = Field(12, ge=1)
    intersection_tol: float = Field(1e-6, gt=0.0)


class ScanConfig(BaseModel):
    threads: int = Field(1, ge=1)
    image: Literal["pgm", "ppm"] = "pgm"


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="PRIMSTAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        extra="ignore",
    )

    # Loaded from YAML
    app: AppConfig = Field(default_factory=AppConfig)
    markoff: MarkoffConfig = Field(default_factory=MarkoffConfig)
    bq: BqConfig = Field(default_factory=BqConfig)
    geometry: GeometryConfig = Field(default_factory=GeometryConfig)
    ps: PsConfig = Field(default_factory=PsConfig)
    bip: BipConfig = Field(default_factory=BipConfig)
    scan: ScanConfig = Field(default_factory=ScanConfig)

    profile: str = ""

    @model_validator(mode="before")
    @classmethod
    def load_yaml(cls, values: dict[str, Any]) -> dict[str, Any]:
        profile = os.getenv("PRIMSTAB_PROFILE", values.get("profile", ""))
        # Look for config relative to cwd or project root
        for search_root in [Path.cwd(), Path(__file__).resolve().parents[3]]:
            base_path = search_root / "config" / "base.yaml"
            if base_path.exists():
                cfg: dict = yaml.safe_load(base_path.read_text()) or {}
                profile_path = search_root / "config" / "profiles" / f"{profile}.yaml"
                if profile and profile_path.exists():
                    profile_data = yaml.safe_load(profile_path.read_text()) or {}
                    if profile_data:
                        cfg = deep_merge(cfg, profile_data)
                # YAML values have lowest priority
                return deep_merge(cfg, values)
        return values


# Module-level singleton; imported everywhere
settings = Settings()
