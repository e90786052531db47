"""
Extension Oracle

Exhaustive ground truth for precoloring extension plus the final acceptance
check applied to every emitted coloring. Edges are tried in ascending id
order and colors in ascending order, so a run can be followed by hand.
Nothing here depends on the constructive modules.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set
import logging

from mgcolor.config import get_settings
from mgcolor.errors import InputError, ResourceError
from mgcolor.models.coloring import PartialEdgeColoring
from mgcolor.models.extension import Precoloring
from mgcolor.models.graph import Multigraph

logger = logging.getLogger(__name__)


@dataclass
class ExtensionVerdict:
    """Outcome of verify_extension"""
    valid: bool
    diagnostics: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def brute_force_extension(
    g: Multigraph, p: Precoloring, k: int, budget: Optional[int] = None
) -> Optional[PartialEdgeColoring]:
    """
    Exhaustive search for a proper k-coloring of g that equals Φ on M.

    Returns:
        A witness, or None when no extension exists

    Raises:
        ResourceError: More than `budget` search nodes were needed
    """
    if budget is None:
        budget = get_settings().oracle_budget
    if k < 0:
        raise InputError("palette size must be nonnegative")

    present: Dict[int, Set[int]] = {v: set() for v in g.vertices}
    colors: Dict[int, int] = {}
    for f in sorted(p.colors):
        if not g.has_edge(f):
            raise InputError(f"precolored edge {f} not in graph")
        color = p.colors[f]
        u, v = g.endpoints(f)
        if not 1 <= color <= k or color in present[u] or color in present[v]:
            return None
        colors[f] = color
        present[u].add(color)
        present[v].add(color)

    order = [e for e in g.edge_ids if e not in colors]
    nodes = 0

    def extend(index: int) -> bool:
        nonlocal nodes
        if index == len(order):
            return True
        nodes += 1
        if nodes > budget:
            raise ResourceError(f"oracle budget of {budget} nodes exhausted")
        e = order[index]
        u, v = g.endpoints(e)
        for color in range(1, k + 1):
            if color in present[u] or color in present[v]:
                continue
            colors[e] = color
            present[u].add(color)
            present[v].add(color)
            if extend(index + 1):
                return True
            del colors[e]
            present[u].discard(color)
            present[v].discard(color)
        return False

    found = extend(0)
    logger.debug("oracle: %s after %d nodes (k=%d)", found, nodes, k)
    return PartialEdgeColoring(g, k, colors) if found else None


def verify_extension(
    g: Multigraph, p: Precoloring, c: PartialEdgeColoring
) -> ExtensionVerdict:
    """
    Accept c iff it is total, proper, within 1..Δ+μ and agrees with Φ on M.

    Every violated clause is listed in the diagnostics.
    """
    top = g.max_degree + g.max_multiplicity
    diagnostics: List[str] = []

    uncolored = [e for e in g.edge_ids if c.color_of(e) is None]
    if uncolored:
        diagnostics.append(f"incomplete: edges {uncolored} are uncolored")

    for e in g.edge_ids:
        color = c.color_of(e)
        if color is not None and not 1 <= color <= top:
            diagnostics.append(f"palette: edge {e} has color {color} outside 1..{top}")

    seen: Set[tuple] = set()
    for v in g.vertices:
        by_color: Dict[int, int] = {}
        for e in g.incident_edges(v):
            color = c.color_of(e)
            if color is None:
                continue
            if color in by_color:
                pair = (by_color[color], e)
                if pair not in seen:
                    seen.add(pair)
                    diagnostics.append(
                        f"conflict: edges {pair[0]} and {pair[1]} share color {color} at {v}"
                    )
            else:
                by_color[color] = e

    for f in sorted(p.colors):
        if c.color_of(f) != p.colors[f]:
            diagnostics.append(
                f"disagreement: edge {f} has color {c.color_of(f)}, precolored {p.colors[f]}"
            )
    return ExtensionVerdict(valid=not diagnostics, diagnostics=diagnostics)
