"""
Extension Triple Bookkeeping

Classification of colliding precolored edges (T1/T2) and the status of an
extension triple (M*, special class, coloring). Shared by the driver and
the case operations.
"""

from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple
import logging

from mgcolor.core.base_color import is_fully_saturated
from mgcolor.core.density import is_k_critical_edge, maximal_dense_containing
from mgcolor.errors import InputError
from mgcolor.models.coloring import PartialEdgeColoring
from mgcolor.models.extension import (
    ExtensionTriple,
    ImproperReport,
    ImproperTag,
    Precoloring,
    TripleStatus,
)
from mgcolor.models.graph import Multigraph, boundary, is_matching

logger = logging.getLogger(__name__)


def remainder(g: Multigraph, p: Precoloring, m_star: Iterable[int]) -> Multigraph:
    """G - (M ∪ M*)"""
    return g.without_edges(set(p.ids) | set(m_star))


def improper_report(
    g: Multigraph, p: Precoloring, m_star: FrozenSet[int], coloring: PartialEdgeColoring
) -> ImproperReport:
    """T1/T2 classification for a raw (M*, coloring) pair"""
    excluded = set(p.ids) | set(m_star)
    star_vertices: Set[int] = {v for e in m_star for v in g.endpoints(e)}
    tags: Dict[Tuple[int, int], ImproperTag] = {}
    colliding: Dict[Tuple[int, int], int] = {}
    e1: Set[int] = set()
    e2: Set[int] = set()

    for f in sorted(p.ids):
        color = p.colors[f]
        for u in g.endpoints(f):
            hits = [
                e for e in g.incident_edges(u)
                if e not in excluded and coloring.color_of(e) == color
            ]
            if not hits:
                continue
            f1 = hits[0]
            colliding[(f, u)] = f1
            if star_vertices & set(g.endpoints(f1)):
                tags[(f, u)] = ImproperTag.T2
                e2.add(f1)
            else:
                tags[(f, u)] = ImproperTag.T1
                e1.add(f1)
    return ImproperReport(frozenset(e1), frozenset(e2), tags, colliding)


def classify_improper(g: Multigraph, p: Precoloring, t: ExtensionTriple) -> ImproperReport:
    """
    For each f in M and endpoint u, the edge f_1 of G-(M ∪ M*) at u with
    φ(f_1) = Φ(f), tagged T2 when V(f_1) meets V(M*) and T1 otherwise.

    An edge parallel to f with color Φ(f) collides at both endpoints.
    """
    return improper_report(g, p, t.m_star, t.coloring)


def check_triple(
    g: Multigraph, p: Precoloring, t: ExtensionTriple, budget: Optional[int] = None
) -> Tuple[TripleStatus, List[str]]:
    """triple_status together with the reasons behind a rejection"""
    top = g.max_degree + g.max_multiplicity
    k = top - 1
    reasons: List[str] = []
    rest = remainder(g, p, t.m_star)
    coloring = t.coloring

    top_edges = p.top_color_edges(top)
    combined = set(top_edges) | set(t.m_star) | set(t.special)
    if len(combined) != len(top_edges) + len(t.m_star) + len(t.special):
        reasons.append("M_top, M* and the special class overlap")
    elif not is_matching(g, combined):
        reasons.append("M_top ∪ M* ∪ special is not a matching")
    if set(t.m_star) & set(p.ids) or not is_matching(g, set(p.ids) | set(t.m_star)):
        reasons.append("M ∪ M* is not a matching")
    uncolored = [e for e in rest.edge_ids if coloring.color_of(e) is None]
    if uncolored:
        reasons.append(f"edges {uncolored} of G-(M ∪ M*) are uncolored")
    leaked = [e for e in set(p.ids) | set(t.m_star) if coloring.color_of(e) is not None]
    if leaked:
        reasons.append(f"edges {sorted(leaked)} of M ∪ M* carry colors")
    conflicts = coloring.restricted(rest).conflicts()
    if conflicts:
        reasons.append(f"conflicts {conflicts}")
    topped = {e for e in rest.edge_ids if coloring.color_of(e) == top}
    if topped != set(t.special):
        reasons.append("special class differs from the top color class")
    if reasons:
        return TripleStatus.INFEASIBLE_PRECONDITION, reasons

    report = t.report or classify_improper(g, p, t)
    e2_vertices = {v for e in report.e2 for v in g.endpoints(e)}
    delta, mu = g.max_degree, g.max_multiplicity
    for e in sorted(t.m_star):
        x, y = g.endpoints(e)
        touches = any(
            set(g.endpoints(f)) & {x, y} for f in report.e2
        ) or bool(e2_vertices & {x, y})
        if not touches:
            continue
        try:
            dense = maximal_dense_containing(rest, (x, y), k)
        except InputError as err:
            reasons.append(str(err))
            continue
        if dense is None:
            reasons.append(f"no {k}-dense subgraph around M* edge {e}")
            continue
        plus = g.edge_subgraph(dense.edges | {e}, dense.vertices)
        if not is_k_critical_edge(plus, e, k, budget):
            reasons.append(f"M* edge {e} is not {k}-critical in its dense subgraph")
        if not is_fully_saturated(plus, e, delta, mu):
            reasons.append(f"M* edge {e} is not fully saturated in its dense subgraph")
        colors = [coloring.color_of(h) for h in boundary(rest, dense.vertices)]
        if len(colors) != len(set(colors)):
            reasons.append(f"boundary colors around M* edge {e} repeat")
    if reasons:
        return TripleStatus.INFEASIBLE_PRECONDITION, reasons

    if report.e1 or report.e2:
        return TripleStatus.PREFEASIBLE, []
    return TripleStatus.FEASIBLE, []


def triple_status(
    g: Multigraph, p: Precoloring, t: ExtensionTriple, budget: Optional[int] = None
) -> TripleStatus:
    """
    Conditions checked: (a) M_top ∪ M* ∪ special is a matching, the coloring is
    proper and total on G-(M ∪ M*) and its top class is the special class;
    (b) M* edges next to E2 edges are k-critical and fully saturated in
    H_e+e; (c) boundary colors of those H_e are distinct; (d) no improper edges.
    """
    status, reasons = check_triple(g, p, t, budget)
    if reasons:
        logger.debug("triple rejected: %s", "; ".join(reasons))
    return status
