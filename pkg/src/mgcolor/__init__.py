"""
mgcolor - Multigraph Edge-Coloring Engine

Builds (Δ+μ)-edge-colorings of multigraphs, analyzes density and k-dense
structure, and extends a precoloring of a distance-3 matching to a proper
edge coloring of the whole graph, certified by an exhaustive oracle.
"""

__version__ = "0.1.0"
