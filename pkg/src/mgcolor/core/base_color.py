"""
Base Colorings

Purpose:
    Coloring constructors: k-colorings (greedy first, exact fallback), the
    constructive (Δ+μ)-coloring, and saturated matchings whose removal drops
    the chromatic index to Δ+μ-1.

Capabilities:
    - k_edge_color: proper k-coloring or None
    - vizing_gupta_color: edge-by-edge insertion with fan folding and Kempe changes,
      never calls the exact solver
    - maximal_saturated_matching / saturated_matching with per-edge certificates

Usage:
    coloring = vizing_gupta_color(g)
    result, phi = saturated_matching(g, EdgeSet(g, frozenset()))

Notes:
    - exact_chromatic_index lives in core.solver and is re-exported here
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple
import logging

from mgcolor.core.coloring import (
    classify_vertex_set,
    greedy_edge_coloring,
    kempe_chain,
    kempe_swap_subchain,
)
from mgcolor.core.density import is_k_critical_edge, maximal_dense_containing
from mgcolor.core.fans import (
    build_multifan,
    find_linear_sequence,
    linear_sequence_to,
    rotate_sequence,
)
from mgcolor.core.solver import exact_chromatic_index, solve_k_coloring
from mgcolor.errors import DefectError, InputError
from mgcolor.models.coloring import PartialEdgeColoring
from mgcolor.models.dense import DenseSubgraph
from mgcolor.models.fan import MultiFan
from mgcolor.models.graph import EdgeRole, EdgeSet, Multigraph, is_matching

logger = logging.getLogger(__name__)

__all__ = [
    "SaturationRecord",
    "SaturatedMatching",
    "exact_chromatic_index",
    "k_edge_color",
    "vizing_gupta_color",
    "is_fully_saturated",
    "maximal_saturated_matching",
    "saturated_matching",
]


@dataclass
class SaturationRecord:
    """Certificate for one edge e of M*"""
    edge: int
    dense: DenseSubgraph
    critical: bool
    saturated: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "edge": self.edge,
            "dense": self.dense.to_dict(),
            "critical": self.critical,
            "saturated": self.saturated,
        }


@dataclass
class SaturatedMatching:
    """M* with one certificate per edge"""
    matching: EdgeSet
    records: Dict[int, SaturationRecord] = field(default_factory=dict)

    @property
    def ids(self) -> FrozenSet[int]:
        return self.matching.ids

    def to_dict(self) -> Dict[str, object]:
        return {
            "matching": sorted(self.matching.ids),
            "records": [self.records[e].to_dict() for e in sorted(self.records)],
        }


# ============ k-Colorings ============

def k_edge_color(
    g: Multigraph, k: int, budget: Optional[int] = None
) -> Optional[PartialEdgeColoring]:
    """
    A proper k-coloring of g, or None when none exists.

    Raises:
        ResourceError: The exact fallback ran out of budget
    """
    if g.num_edges == 0:
        return PartialEdgeColoring(g, max(k, 0))
    if k < g.max_degree:
        return None
    if k >= g.max_degree + g.max_multiplicity:
        return vizing_gupta_color(g, palette=k)
    greedy = greedy_edge_coloring(g, k)
    if greedy.is_total:
        return greedy
    return solve_k_coloring(g, k, budget)


def _fold(
    c: PartialEdgeColoring, fan: MultiFan, target: int, color: int
) -> PartialEdgeColoring:
    """Rotate the sequence y_0 -> target, then color its last edge with `color`"""
    seq = find_linear_sequence(fan, target)
    if seq is None:
        raise DefectError(f"no linear sequence to {target} in fan at {fan.center}")
    if seq.length == 0:
        result = c.copy()
        result.assign(fan.anchor, color)
        return result
    result = rotate_sequence(c, seq, fan.anchor)
    result.assign(seq.edge(seq.length), color)
    return result


def _insert_edge(c: PartialEdgeColoring, e: int) -> PartialEdgeColoring:
    g = c.graph
    u, v = g.endpoints(e)
    common = c.missing(u) & c.missing(v)
    if common:
        result = c.copy()
        result.assign(e, min(common))
        return result

    x = u if g.degree(u) <= g.degree(v) else v
    fan = build_multifan(g, c, x, e)
    missing_x = c.missing(x)
    for n, entry in enumerate(fan.entries):
        y_n = entry.vertex
        shared = missing_x & c.missing(y_n)
        if shared:
            return _fold(c, fan.truncated(n + 1), y_n, min(shared))

        for i, earlier in enumerate(fan.entries[:n]):
            y_i = earlier.vertex
            if y_i == y_n:
                continue
            common_missing = c.missing(y_i) & c.missing(y_n)
            if not common_missing:
                continue
            a, b = min(common_missing), min(missing_x)
            chain = kempe_chain(c, y_i, a, b)
            if not chain.contains_vertex(x):
                swapped = kempe_swap_subchain(c, chain, *chain.endvertices)
                prefix = MultiFan(x, fan.entries[: i + 1], g, swapped)
                return _fold(swapped, prefix, y_i, b)
            chain = kempe_chain(c, y_n, a, b)
            swapped = kempe_swap_subchain(c, chain, *chain.endvertices)
            prefix = MultiFan(x, fan.entries[: n + 1], g, swapped)
            return _fold(swapped, prefix, y_n, b)

    raise DefectError(f"fan at {x} over edge {e} neither folds nor reduces")


def vizing_gupta_color(g: Multigraph, palette: Optional[int] = None) -> PartialEdgeColoring:
    """
    Proper coloring of g with at most Δ+μ colors.

    Edges are inserted by ascending id. An edge whose ends share a missing
    color takes the smallest one; otherwise a multi-fan at the lower-degree
    end is folded along a linear sequence, after at most one Kempe change.

    Args:
        g: Graph
        palette: Palette size, at least Δ+μ (default Δ+μ)

    Raises:
        InputError: palette below Δ+μ
        DefectError: The construction failed, which indicates a bug
    """
    bound = g.max_degree + g.max_multiplicity
    if palette is None:
        palette = bound
    if palette < bound:
        raise InputError(f"vizing_gupta_color needs at least Δ+μ = {bound} colors")

    c = PartialEdgeColoring(g, palette)
    for e in g.edge_ids:
        c = _insert_edge(c, e)
    if not c.is_total or not c.is_proper:
        raise DefectError(f"constructed coloring invalid: conflicts {c.conflicts()}")
    logger.debug("colored %d edges with %d colors", g.num_edges, len(c.used_colors()))
    return c


# ============ Saturated Matchings ============

def is_fully_saturated(g: Multigraph, e: int, delta: int, mu: int) -> bool:
    """d(x) = d(y) = delta and e(x,y) = mu, degrees and multiplicity taken in g"""
    x, y = g.endpoints(e)
    return g.degree(x) == delta and g.degree(y) == delta and g.multiplicity(x, y) == mu


def maximal_saturated_matching(
    g: Multigraph, excluded_vertices: Iterable[int] = ()
) -> EdgeSet:
    """
    Greedy maximal matching of fully g-saturated edges avoiding excluded_vertices.

    Removing it (together with any matching on the excluded vertices) leaves
    a graph with chromatic index at most Δ+μ-1.
    """
    delta, mu = g.max_degree, g.max_multiplicity
    covered = set(excluded_vertices)
    chosen: List[int] = []
    for e in g.edge_ids:
        x, y = g.endpoints(e)
        if x in covered or y in covered:
            continue
        if is_fully_saturated(g, e, delta, mu):
            chosen.append(e)
            covered.update((x, y))
    return EdgeSet(g, frozenset(chosen), EdgeRole.SATURATED)


def _certify(
    g: Multigraph,
    removed: FrozenSet[int],
    m_star: List[int],
    k: int,
    delta: int,
    mu: int,
    budget: Optional[int],
) -> Dict[int, SaturationRecord]:
    rest = g.without_edges(removed | set(m_star))
    records: Dict[int, SaturationRecord] = {}
    for e in sorted(m_star):
        dense = maximal_dense_containing(rest, g.endpoints(e), k)
        if dense is None:
            raise DefectError(f"no {k}-dense subgraph contains the ends of M* edge {e}")
        plus_graph = g.edge_subgraph(dense.edges | {e}, dense.vertices)
        records[e] = SaturationRecord(
            edge=e,
            dense=dense,
            critical=is_k_critical_edge(plus_graph, e, k, budget),
            saturated=is_fully_saturated(plus_graph, e, delta, mu),
        )
    return records


def find_replacement(
    g: Multigraph,
    record: SaturationRecord,
    phi: PartialEdgeColoring,
    k: int,
    delta: int,
    mu: int,
    blocked: Iterable[int] = (),
) -> int:
    """
    A fully saturated edge e' that can take the place of record.edge in M*.

    Grows a fan at an end x of e inside H_e+e, moves the uncolored edge onto
    an edge x-x1 with x1 a Δ-vertex, then grows a second fan at x1 and
    returns an edge from it to a vertex z with d(z)=Δ and e(x1,z)=μ.

    Args:
        blocked: Vertices e' must avoid (V(M) and the other M* edges)

    Raises:
        DefectError: No candidate avoids the blocked vertices
    """
    e = record.edge
    avoid = frozenset(blocked)
    plus_graph = g.edge_subgraph(record.dense.edges | {e}, record.dense.vertices)
    psi = phi.restricted(plus_graph, palette=k)
    for x in g.endpoints(e):
        y = g.other_end(e, x)
        fan_x = build_multifan(plus_graph, psi, x, e)
        for x1 in fan_x.rim:
            if x1 == y or x1 in avoid or plus_graph.degree(x1) != delta:
                continue
            seq = linear_sequence_to(fan_x, x1)
            e_xx1 = seq.edge(seq.length)
            rotated = rotate_sequence(psi, seq, anchor=e)
            fan_x1 = build_multifan(plus_graph, rotated, x1, e_xx1)
            for entry in fan_x1.entries[1:]:
                z = entry.vertex
                if z == x or z in avoid:
                    continue
                if is_fully_saturated(plus_graph, entry.edge, delta, mu):
                    logger.debug("replacing M* edge %d by %d (via %d)", e, entry.edge, x1)
                    return entry.edge
    raise DefectError(f"no fully saturated replacement found for M* edge {e}")


def saturated_matching(
    g: Multigraph, m: EdgeSet, budget: Optional[int] = None
) -> Tuple[SaturatedMatching, PartialEdgeColoring]:
    """
    M* ⊆ g - V(M) with χ'(g - (M ∪ M*)) = Δ+μ-1, each edge certified.

    Every e in M* is k-critical and fully saturated in H_e+e, where H_e is the
    maximal k-dense subgraph of g - (M ∪ M*) containing V(e), k = Δ+μ-1.

    Args:
        g: Graph with μ >= 2
        m: Matching M with χ'(g - M) = Δ+μ
        budget: Solver budget per call

    Returns:
        (SaturatedMatching, proper k-coloring of g - (M ∪ M*))

    Raises:
        InputError: Preconditions fail
        DefectError: A certificate fails or replacements do not settle
    """
    if not is_matching(g, m.ids):
        raise InputError("saturated_matching needs a matching")
    delta, mu = g.max_degree, g.max_multiplicity
    if mu < 2:
        raise InputError("saturated_matching needs μ >= 2")
    k = delta + mu - 1
    removed = frozenset(m.ids)
    if solve_k_coloring(g.without_edges(removed), k, budget) is not None:
        raise InputError(f"χ'(G-M) is not Δ+μ = {k + 1}")

    m_vertices = m.vertices()
    m_star = sorted(maximal_saturated_matching(g, m_vertices).ids)
    if solve_k_coloring(g.without_edges(removed | set(m_star)), k, budget) is None:
        raise DefectError("removing a maximal saturated matching left χ' at Δ+μ")

    for e in list(m_star):
        trial = removed | (set(m_star) - {e})
        if solve_k_coloring(g.without_edges(trial), k, budget) is not None:
            m_star.remove(e)
    logger.debug("M* after pruning: %s", m_star)

    for _ in range(g.num_edges + 1):
        rest = g.without_edges(removed | set(m_star))
        phi = solve_k_coloring(rest, k, budget)
        if phi is None:
            raise DefectError("G-(M ∪ M*) lost its k-coloring")
        records = _certify(g, removed, m_star, k, delta, mu, budget)
        uncritical = [e for e, r in records.items() if not r.critical]
        if uncritical:
            raise DefectError(f"M* edges {uncritical} are not critical in their dense subgraph")
        unsaturated = [e for e, r in records.items() if not r.saturated]
        if not unsaturated:
            break
        e = unsaturated[0]
        others = {v for f in m_star if f != e for v in g.endpoints(f)}
        replacement = find_replacement(
            g, records[e], phi, k, delta, mu, blocked=set(m_vertices) | others
        )
        m_star = sorted((set(m_star) - {e}) | {replacement})
    else:
        raise DefectError("M* replacements did not settle within |E| rounds")

    for e, record in records.items():
        flags = classify_vertex_set(phi, record.dense.vertices)
        if not flags.strongly_closed:
            raise DefectError(f"dense subgraph of M* edge {e} is not strongly closed")
    matching = EdgeSet(g, frozenset(m_star), EdgeRole.SATURATED)
    if not is_matching(g, removed | matching.ids):
        raise DefectError("M ∪ M* is not a matching")
    logger.info("saturated matching M* = %s", sorted(matching.ids))
    return SaturatedMatching(matching, records), phi
