"""
mgcolor engine: coloring calculus, exact search, density, base colorings,
case operations and the precoloring extension driver.
"""

from mgcolor.core.base_color import (
    SaturatedMatching,
    k_edge_color,
    saturated_matching,
    vizing_gupta_color,
)
from mgcolor.core.coloring import (
    PLAIN,
    MergeMode,
    classify_vertex_set,
    kempe_chain,
    kempe_swap_subchain,
    merge_colorings,
    missing_colors,
    verify_proper,
)
from mgcolor.core.density import (
    critical_dense_subgraph,
    gamma,
    is_k_critical_edge,
    maximal_k_dense_subgraphs,
)
from mgcolor.core.extend import ExtensionResult, extend_precoloring, replay_trace
from mgcolor.core.fans import build_multifan, fan_property_report, shift, unshift
from mgcolor.core.oracle import brute_force_extension, verify_extension
from mgcolor.core.solver import exact_chromatic_index
from mgcolor.core.triples import classify_improper, triple_status

__all__ = [
    # Coloring calculus
    "PLAIN",
    "MergeMode",
    "missing_colors",
    "verify_proper",
    "classify_vertex_set",
    "kempe_chain",
    "kempe_swap_subchain",
    "merge_colorings",
    # Fans
    "build_multifan",
    "shift",
    "unshift",
    "fan_property_report",
    # Density
    "gamma",
    "is_k_critical_edge",
    "critical_dense_subgraph",
    "maximal_k_dense_subgraphs",
    # Base colorings
    "exact_chromatic_index",
    "k_edge_color",
    "vizing_gupta_color",
    "saturated_matching",
    "SaturatedMatching",
    # Extension
    "classify_improper",
    "triple_status",
    "extend_precoloring",
    "replay_trace",
    "ExtensionResult",
    "brute_force_extension",
    "verify_extension",
]
