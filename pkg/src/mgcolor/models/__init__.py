"""
mgcolor data models
"""

from mgcolor.models.coloring import ChainShape, KempeChain, PartialEdgeColoring
from mgcolor.models.dense import DenseSubgraph
from mgcolor.models.extension import (
    CaseId,
    ExtensionTriple,
    ImproperReport,
    ImproperTag,
    Precoloring,
    TraceStep,
    TripleStatus,
)
from mgcolor.models.fan import FanEntry, LinearSequence, MultiFan
from mgcolor.models.graph import (
    EdgeRole,
    EdgeSet,
    Multigraph,
    boundary,
    diameter,
    disjoint_union,
    edge_distance,
    edges_across,
    induced_edges,
    is_distance_t_matching,
    is_matching,
)

__all__ = [
    # Graph
    "Multigraph",
    "EdgeSet",
    "EdgeRole",
    "edge_distance",
    "is_distance_t_matching",
    "is_matching",
    "boundary",
    "induced_edges",
    "edges_across",
    "diameter",
    "disjoint_union",
    # Coloring
    "PartialEdgeColoring",
    "KempeChain",
    "ChainShape",
    # Fans
    "MultiFan",
    "FanEntry",
    "LinearSequence",
    # Density
    "DenseSubgraph",
    # Extension
    "Precoloring",
    "ExtensionTriple",
    "ImproperReport",
    "ImproperTag",
    "TraceStep",
    "TripleStatus",
    "CaseId",
]
