"""BQ semi-decision: certificates, witnesses and growth diagnostics."""

from primstab.bq.search import (
    AttractingTree,
    BoundaryClass,
    BoundaryReport,
    BqVerdict,
    BqWitness,
    GrowthReport,
    WitnessKind,
    boundary_recurrence,
    bq_test,
    fibonacci_growth_report,
    validate_certificate,
)

__all__ = [
    "AttractingTree",
    "BqVerdict",
    "BqWitness",
    "WitnessKind",
    "bq_test",
    "validate_certificate",
    # Diagnostics
    "BoundaryClass",
    "BoundaryReport",
    "boundary_recurrence",
    "GrowthReport",
    "fibonacci_growth_report",
]
