"""Numerical evidence for primitive stability and the bounded intersection property."""

from primstab.pscheck.bip import (
    BipRecord,
    BipReport,
    DecayReport,
    DecaySample,
    bip_report,
    perpendicular_decay_probe,
)
from primstab.pscheck.broken import (
    BendingProfile,
    BrokenGeodesic,
    PsVerdict,
    QgEstimate,
    bending_angle,
    bending_profile,
    broken_geodesic,
    non_loxodromic_primitive,
    power_axis_distance,
    ps_estimate,
    ps_verdict,
)
from primstab.pscheck.trend import TrendWindow

__all__ = [
    "BrokenGeodesic",
    "broken_geodesic",
    "bending_angle",
    "BendingProfile",
    "bending_profile",
    "power_axis_distance",
    "QgEstimate",
    "ps_estimate",
    "PsVerdict",
    "ps_verdict",
    "non_loxodromic_primitive",
    "TrendWindow",
    # BIP
    "BipRecord",
    "BipReport",
    "bip_report",
    "DecaySample",
    "DecayReport",
    "perpendicular_decay_probe",
]
