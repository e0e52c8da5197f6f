# src/primstab/core/__init__.py
"""Core types, config, errors, and registry."""

from primstab.core.types import (
    SCHEMA_VERSION,
    BqLabel,
    PsLabel,
    PixelLabel,
    WitnessModel,
    BqReport,
    PsReport,
    BipRecordModel,
    BipReportModel,
    GrowthReportModel,
    ClassifyReport,
    FullReport,
    WordRow,
    ScanSidecar,
)
from primstab.core.config import settings
from primstab.core.errors import PrimstabError
from primstab.core.registry import register, get, create, list_registered

__all__ = [
    # Verdicts
    "SCHEMA_VERSION",
    "BqLabel",
    "PsLabel",
    "PixelLabel",
    # Reports
    "WitnessModel",
    "BqReport",
    "PsReport",
    "BipRecordModel",
    "BipReportModel",
    "GrowthReportModel",
    "ClassifyReport",
    "FullReport",
    "WordRow",
    "ScanSidecar",
    # Config
    "settings",
    # Errors
    "PrimstabError",
    # Registry
    "register",
    "get",
    "create",
    "list_registered",
]
