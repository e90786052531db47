"""
Coloring Calculus

Purpose:
    Present/missing colors, properness, elementary and closed vertex sets,
    Kempe chains and the color-class renaming that combines a coloring of a
    dense subgraph with a coloring of the rest of the graph.

Capabilities:
    - verify_proper with an exact, sorted conflict list
    - Kempe chains canonicalized for reproducible traces
    - Full-chain and subchain swaps (subchain swaps may leave the coloring improper)
    - merge_colorings in plain or protect_color(i) mode

Usage:
    chain = kempe_chain(coloring, v, 1, 2)
    swapped = kempe_swap_subchain(coloring, chain, *chain.endvertices)
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple
import itertools
import logging

import networkx as nx

from mgcolor.errors import InputError, StructuralError
from mgcolor.models.coloring import ChainShape, KempeChain, PartialEdgeColoring
from mgcolor.models.dense import DenseSubgraph
from mgcolor.models.graph import Multigraph, boundary

logger = logging.getLogger(__name__)


@dataclass
class ProperReport:
    """Result of verify_proper"""
    is_proper: bool
    conflicts: List[Tuple[int, int]] = field(default_factory=list)


@dataclass
class VertexSetFlags:
    """Elementary / closed / strongly closed flags with diagnostics"""
    elementary: bool
    closed: bool
    strongly_closed: bool
    diagnostics: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class MergeMode:
    """Renaming mode: plain, or protect_color(i) keeping color i fixed"""
    protected: Optional[int] = None

    @classmethod
    def protect_color(cls, i: int) -> "MergeMode":
        return cls(protected=i)

    @property
    def is_plain(self) -> bool:
        return self.protected is None


PLAIN = MergeMode()


# ============ Present / Missing ============

def present_colors(c: PartialEdgeColoring, v: int) -> Set[int]:
    return c.present(v)


def missing_colors(c: PartialEdgeColoring, v: int) -> Set[int]:
    """1..k minus the colors on colored edges at v"""
    return c.missing(v)


def verify_proper(c: PartialEdgeColoring) -> ProperReport:
    conflicts = c.conflicts()
    return ProperReport(is_proper=not conflicts, conflicts=conflicts)


def is_elementary(
    c: PartialEdgeColoring, x: Iterable[int], graph: Optional[Multigraph] = None
) -> bool:
    """Missing sets over x pairwise disjoint; computed in `graph` when given"""
    coloring = c.restricted(graph) if graph is not None else c
    seen: Set[int] = set()
    for v in sorted(set(x)):
        missing = coloring.missing(v)
        if seen & missing:
            return False
        seen |= missing
    return True


def classify_vertex_set(
    c: PartialEdgeColoring, x: Iterable[int], restricted: bool = True
) -> VertexSetFlags:
    """
    Classify x as elementary, closed and strongly closed.

    Args:
        c: Coloring of the host graph
        x: Vertex set
        restricted: Judge elementarity under the restriction to G[x]
            (otherwise under c on the whole host)

    Returns:
        VertexSetFlags; an uncolored boundary edge makes x not closed
    """
    vertices = set(x)
    g = c.graph
    diagnostics: List[str] = []

    elementary = is_elementary(c, vertices, g.induced(vertices) if restricted else None)

    closed = True
    boundary_colors: List[int] = []
    for e in boundary(g, vertices):
        color = c.color_of(e)
        if color is None:
            closed = False
            diagnostics.append(f"boundary edge {e} is uncolored")
            continue
        boundary_colors.append(color)
        absent = sorted(v for v in vertices if color not in c.present(v))
        if absent:
            closed = False
            diagnostics.append(f"boundary color {color} missing at {absent}")

    distinct = len(boundary_colors) == len(set(boundary_colors))
    if not distinct:
        diagnostics.append("boundary colors repeat")
    return VertexSetFlags(elementary, closed, closed and distinct, diagnostics)


# ============ Kempe Chains ============

def _chain_edges_at(c: PartialEdgeColoring, v: int, alpha: int, beta: int) -> List[int]:
    edges = [e for e in c.graph.incident_edges(v) if c.color_of(e) in (alpha, beta)]
    if len(edges) > 2 or (len(edges) == 2 and c.color_of(edges[0]) == c.color_of(edges[1])):
        raise InputError(f"coloring is not proper in colors {alpha},{beta} at vertex {v}")
    return edges


def kempe_chain(c: PartialEdgeColoring, v: int, alpha: int, beta: int) -> KempeChain:
    """
    The (alpha, beta)-component containing v.

    A vertex incident to neither color yields a single-vertex path.
    """
    if alpha == beta:
        raise InputError("kempe_chain needs two distinct colors")
    g = c.graph
    if v not in g:
        raise InputError(f"unknown vertex {v}")

    component = {v}
    frontier = [v]
    while frontier:
        w = frontier.pop()
        for e in _chain_edges_at(c, w, alpha, beta):
            z = g.other_end(e, w)
            if z not in component:
                component.add(z)
                frontier.append(z)

    degree = {w: len(_chain_edges_at(c, w, alpha, beta)) for w in component}
    if all(d == 0 for d in degree.values()):
        return KempeChain(alpha, beta, (v,), (), ChainShape.PATH)

    if all(d == 2 for d in degree.values()):
        shape = ChainShape.CYCLE
        start = min(component)
    else:
        shape = ChainShape.PATH
        start = min(w for w, d in degree.items() if d == 1)

    vertices = [start]
    edges: List[int] = []
    current = start
    e = _chain_edges_at(c, start, alpha, beta)[0]
    while True:
        edges.append(e)
        nxt = g.other_end(e, current)
        if shape is ChainShape.CYCLE and nxt == start:
            break
        vertices.append(nxt)
        onward = [f for f in _chain_edges_at(c, nxt, alpha, beta) if f != e]
        if not onward:
            break
        e = onward[0]
        current = nxt
    return KempeChain(alpha, beta, tuple(vertices), tuple(edges), shape)


def kempe_swap_subchain(
    c: PartialEdgeColoring, ch: KempeChain, a: int, b: int
) -> PartialEdgeColoring:
    """
    Swap alpha and beta on the part of ch between a and b.

    On a path with a, b the endvertices this is a Kempe change and keeps a
    proper coloring proper. On a cycle, a == b swaps the whole cycle.
    """
    i, j = sorted((ch.position(a), ch.position(b)))
    if ch.shape is ChainShape.CYCLE and a == b:
        segment = ch.edges
    else:
        segment = ch.edges[i:j]

    result = c.copy()
    for e in segment:
        color = c.color_of(e)
        if color not in (ch.alpha, ch.beta):
            raise InputError(f"edge {e} no longer carries a chain color")
        result.assign(e, ch.beta if color == ch.alpha else ch.alpha)
    return result


# ============ Coloring Merge ============

def _perfect_assignment_exists(
    classes: List[int], allowed: Dict[int, List[int]], fixed: Dict[int, int]
) -> bool:
    taken = set(fixed.values())
    free = [c for c in classes if c not in fixed]
    if not free:
        return True
    bipartite = nx.Graph()
    top = [("class", c) for c in free]
    bipartite.add_nodes_from(top)
    for c in free:
        for t in allowed[c]:
            if t not in taken:
                bipartite.add_edge(("class", c), ("color", t))
    matching = nx.bipartite.hopcroft_karp_matching(bipartite, top_nodes=top)
    return all(node in matching for node in top)


def _capacity_failure(
    vertices: Iterable[int],
    outside: Dict[int, Set[int]],
    inside: Dict[int, Set[int]],
    k: int,
    protected: Optional[int],
) -> Optional[int]:
    ignore = {protected} if protected is not None else set()
    for v in sorted(vertices):
        capacity = len(set(range(1, k + 1)) - inside[v] - ignore)
        if len(outside[v] - ignore) > capacity:
            return v
    return None


def _check_protected_adjacency(
    g: Multigraph,
    h: DenseSubgraph,
    phi: PartialEdgeColoring,
    protected: int,
    pairs: List[Tuple[int, int]],
) -> None:
    """At most one i-adjacency: an inside i-edge against the boundary i-edge at its end in h"""
    if not pairs:
        return
    if len(pairs) > 1:
        raise StructuralError(
            f"protected color {protected} has {len(pairs)} adjacencies {pairs}", vertex=None
        )
    attached = [
        e for e in boundary(g, h.vertices) if phi.color_of(e) == protected
    ]
    a, b = pairs[0]
    inside_edge = a if a in h.edges else b
    outside_edge = b if inside_edge == a else a
    if not attached or outside_edge != attached[0] or inside_edge not in h.edges:
        raise StructuralError(
            f"protected color {protected} adjacency {pairs[0]} is not at the boundary edge",
            vertex=None,
        )
    u, v = g.endpoints(outside_edge)
    attachment = u if u in h.vertices else v
    if attachment not in g.endpoints(inside_edge):
        raise StructuralError(
            f"protected color {protected} adjacency {pairs[0]} is not at vertex {attachment}",
            vertex=attachment,
        )


def merge_colorings(
    g: Multigraph,
    h: DenseSubgraph,
    psi: PartialEdgeColoring,
    phi: PartialEdgeColoring,
    mode: MergeMode = PLAIN,
) -> PartialEdgeColoring:
    """
    Rename the color classes of psi (on E(h)) to fit phi (on the rest of g).

    The renaming is the lexicographically least permutation pi of 1..k with
    pi(psi(v)) disjoint from phi(v) for every v in V(h) (ignoring the
    protected color, which pi fixes).

    Args:
        g: Host graph
        h: Subgraph whose edges psi colors
        psi: k-coloring of E(h)
        phi: Coloring of g; only edges outside E(h) are read
        mode: PLAIN or MergeMode.protect_color(i)

    Returns:
        Coloring of g: phi outside E(h), pi(psi) on E(h)

    Raises:
        InputError: Palette too small for the mode, or repeated boundary colors
        StructuralError: No renaming exists (carries the failing vertex), or protect
            mode left more than one i-adjacency or one away from the boundary i-edge
    """
    k = psi.palette
    needed = g.max_degree + (0 if mode.is_plain else 1)
    if k < needed:
        raise InputError(f"merge needs at least {needed} colors, psi has {k}")
    if not mode.is_plain and not 1 <= mode.protected <= k:  # type: ignore[operator]
        raise InputError(f"protected color {mode.protected} outside 1..{k}")

    inside_edges: FrozenSet[int] = h.edges
    boundary_colors = [
        phi.color_of(e) for e in boundary(g, h.vertices) if phi.color_of(e) is not None
    ]
    if len(boundary_colors) != len(set(boundary_colors)):
        raise InputError("boundary colors of the dense subgraph are not pairwise distinct")

    outside: Dict[int, Set[int]] = {}
    inside: Dict[int, Set[int]] = {}
    for v in h.vertices:
        outside[v] = set()
        inside[v] = set()
        for e in g.incident_edges(v):
            if e in inside_edges:
                color = psi.color_of(e)
                if color is not None:
                    inside[v].add(color)
            else:
                color = phi.color_of(e)
                if color is not None:
                    outside[v].add(color)

    protected = mode.protected
    ignore = {protected} if protected is not None else set()
    classes = [c for c in range(1, k + 1) if c != protected]
    allowed: Dict[int, List[int]] = {}
    for c in classes:
        at = [v for v in h.vertices if c in inside[v]]
        allowed[c] = [
            t for t in classes if all(t not in outside[v] - ignore for v in at)
        ]

    fixed: Dict[int, int] = {}
    for c in classes:
        for t in allowed[c]:
            if t in fixed.values():
                continue
            fixed[c] = t
            if _perfect_assignment_exists(classes, allowed, fixed):
                break
            del fixed[c]
        if c not in fixed:
            vertex = _capacity_failure(h.vertices, outside, inside, k, protected)
            raise StructuralError(
                f"no renaming of color classes fits the boundary (class {c})",
                vertex=vertex if vertex is not None else min(h.vertices),
            )
    if protected is not None:
        fixed[protected] = protected
    logger.debug("merge permutation: %s", fixed)

    result = PartialEdgeColoring(g, max(phi.palette, k))
    for e in g.edge_ids:
        if e in inside_edges:
            color = psi.color_of(e)
            if color is not None:
                result.assign(e, fixed[color])
        else:
            color = phi.color_of(e)
            if color is not None:
                result.assign(e, color)

    conflicts = result.conflicts()
    bad = [
        pair for pair in conflicts
        if protected is None or result.color_of(pair[0]) != protected
    ]
    if bad:
        raise StructuralError(f"merged coloring has conflicts {bad}", vertex=None)
    if protected is not None:
        touching = [pair for pair in conflicts if result.color_of(pair[0]) == protected]
        _check_protected_adjacency(g, h, phi, protected, touching)
    return result


# ============ Constructive Helpers ============

def greedy_edge_coloring(g: Multigraph, palette: int) -> PartialEdgeColoring:
    """First-fit by ascending edge id; edges with no free color stay uncolored"""
    c = PartialEdgeColoring(g, palette)
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        blocked = c.present(u) | c.present(v)
        free = next((color for color in range(1, palette + 1) if color not in blocked), None)
        if free is not None:
            c.assign(e, free)
    return c


def common_missing(c: PartialEdgeColoring, vertices: Iterable[int]) -> Set[int]:
    """Colors missing at every given vertex"""
    sets = [c.missing(v) for v in vertices]
    if not sets:
        return set(range(1, c.palette + 1))
    return set.intersection(*sets)


def pairwise_disjoint(sets: Iterable[Set[int]]) -> bool:
    return all(not (a & b) for a, b in itertools.combinations(list(sets), 2))
