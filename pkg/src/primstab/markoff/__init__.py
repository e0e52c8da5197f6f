"""The trace-labelled Farey tree of a Markoff map."""

from primstab.markoff.triples import (
    ESCAPED,
    OrientedEdge,
    TraceTriple,
    compare_moduli,
    in_interval,
    is_elementary,
    is_escaped,
    mu_of,
    neighbour_triple,
    orient_edge,
)
from primstab.markoff.tracemap import RegionRef, TraceMap, Vertex, region_trace
from primstab.markoff.tree import (
    BoundaryGrowth,
    OmegaResult,
    SinkSearch,
    SubtreeGrowth,
    descending_path,
    edge_closes,
    enumerate_omega,
    fib_weight,
    find_sink,
    grow_subtree,
    in_wake,
    plughole,
)

__all__ = [
    "ESCAPED",
    "TraceTriple",
    "OrientedEdge",
    "RegionRef",
    "Vertex",
    "TraceMap",
    "mu_of",
    "is_elementary",
    "is_escaped",
    "in_interval",
    "compare_moduli",
    "neighbour_triple",
    "orient_edge",
    "region_trace",
    # Tree walks
    "SinkSearch",
    "BoundaryGrowth",
    "SubtreeGrowth",
    "OmegaResult",
    "find_sink",
    "edge_closes",
    "grow_subtree",
    "enumerate_omega",
    "plughole",
    "in_wake",
    "fib_weight",
    "descending_path",
]
