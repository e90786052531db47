"""
Multi-Fans and Shifting

Purpose:
    Grow maximal multi-fans, extract linear sequences from them and shift
    colors along a sequence. Also carries executable checks of the structural
    properties a maximal fan around a critical edge must have.

Capabilities:
    - build_multifan: deterministic maximal growth (smallest eligible edge id first),
      optionally without any edge of a forbidden color
    - find_linear_sequence: shortest sequence to a fan vertex, optionally avoiding
      one color and a vertex set
    - shift / unshift / rotate_sequence
    - fan_property_report / colored_fan_report

Usage:
    fan = build_multifan(g, coloring, x, e)
    seq = linear_sequence_to(fan, z)
    coloring = rotate_sequence(coloring, seq, anchor=e)
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set
import logging

from mgcolor.core.coloring import is_elementary, kempe_chain
from mgcolor.errors import DefectError, InputError
from mgcolor.models.coloring import PartialEdgeColoring
from mgcolor.models.fan import FanEntry, LinearSequence, MultiFan
from mgcolor.models.graph import Multigraph

logger = logging.getLogger(__name__)


def _on(g: Multigraph, c: PartialEdgeColoring) -> PartialEdgeColoring:
    return c if c.graph is g else c.restricted(g)


def build_multifan(
    g: Multigraph,
    c: PartialEdgeColoring,
    x: int,
    e: int,
    forbidden: Optional[int] = None,
) -> MultiFan:
    """
    Maximal multi-fan at x with respect to e.

    Args:
        g: Graph the fan lives in (c is restricted to it when needed)
        c: Coloring; e may be colored or uncolored
        x: Center
        e: Anchor edge at x
        forbidden: When set, no fan edge may carry this color

    Returns:
        MultiFan grown by repeatedly adding the smallest eligible edge
    """
    if x not in g.endpoints(e):
        raise InputError(f"anchor edge {e} is not incident to {x}")
    coloring = _on(g, c)

    entries = [FanEntry(e, g.other_end(e, x))]
    used = {e}
    reachable: Set[int] = set(coloring.missing(entries[0].vertex))
    grown = True
    while grown:
        grown = False
        for f in g.incident_edges(x):
            if f in used:
                continue
            color = coloring.color_of(f)
            if color is None or color == forbidden or color not in reachable:
                continue
            z = g.other_end(f, x)
            entries.append(FanEntry(f, z))
            used.add(f)
            reachable |= coloring.missing(z)
            grown = True
            break
    fan = MultiFan(x, tuple(entries), g, coloring, forbidden)
    logger.debug("fan at %d over %d: %d entries, rim %s", x, e, len(fan), fan.rim)
    return fan


def find_linear_sequence(
    fan: MultiFan,
    target: int,
    avoid_color: Optional[int] = None,
    avoid_vertices: Iterable[int] = (),
) -> Optional[LinearSequence]:
    """
    Shortest linear sequence in `fan` from y_0 to `target`.

    Ties between equally short sequences go to the earlier fan entry.
    Returns None when every sequence uses a color or vertex to avoid.
    """
    coloring = fan.coloring
    blocked = set(avoid_vertices) - {fan.y0}
    if target == fan.y0:
        return LinearSequence(fan.center, (fan.y0,), ())
    if target in blocked:
        return None

    parent: Dict[int, Optional[FanEntry]] = {fan.y0: None}
    queue = deque([fan.y0])
    while queue:
        w = queue.popleft()
        missing = coloring.missing(w)
        for entry in fan.entries[1:]:
            z = entry.vertex
            if z in parent or z in blocked:
                continue
            color = coloring.color_of(entry.edge)
            if color is None or color == avoid_color or color not in missing:
                continue
            parent[z] = FanEntry(entry.edge, w)
            if z == target:
                queue.clear()
                break
            queue.append(z)

    if target not in parent:
        return None
    vertices = [target]
    edges: List[int] = []
    step = parent[target]
    while step is not None:
        edges.append(step.edge)
        vertices.append(step.vertex)
        step = parent[step.vertex]
    return LinearSequence(fan.center, tuple(reversed(vertices)), tuple(reversed(edges)))


def linear_sequence_to(fan: MultiFan, target: int) -> LinearSequence:
    """Shortest linear sequence from y_0 to target"""
    if target not in fan.rim:
        raise InputError(f"vertex {target} is not in the fan at {fan.center}")
    seq = find_linear_sequence(fan, target)
    if seq is None:
        raise DefectError(f"fan vertex {target} unreachable by a linear sequence")
    return seq


# ============ Shifting ============

def shift(
    c: PartialEdgeColoring, s: LinearSequence, from_: int, to: int
) -> PartialEdgeColoring:
    """
    e_t takes the prior color of e_{t+1} for from_ <= t < to.

    e_to keeps its color, so the result has a conflict at the center until
    the caller uncolors or recolors e_to.
    """
    if not 1 <= from_ < to <= s.length:
        raise InputError(f"shift range {from_}..{to} invalid for sequence of length {s.length}")
    result = c.copy()
    for t in range(from_, to):
        result.put(s.edge(t), c.color_of(s.edge(t + 1)))
    return result


def unshift(
    c: PartialEdgeColoring, s: LinearSequence, from_: int, to: int, color: int
) -> PartialEdgeColoring:
    """Inverse of shift: e_{t+1} takes the color of e_t, then e_from gets `color`"""
    if not 1 <= from_ < to <= s.length:
        raise InputError(f"shift range {from_}..{to} invalid for sequence of length {s.length}")
    result = c.copy()
    for t in range(to - 1, from_ - 1, -1):
        result.put(s.edge(t + 1), c.color_of(s.edge(t)))
    result.assign(s.edge(from_), color)
    return result


def rotate_sequence(
    c: PartialEdgeColoring, s: LinearSequence, anchor: Optional[int]
) -> PartialEdgeColoring:
    """
    anchor takes color(e_1), shift from 1 to s, then uncolor e_s.

    The net effect moves the uncolored edge at the center from the anchor to e_s.
    """
    result = c.copy()
    if s.length == 0:
        return result
    for t in range(1, s.length + 1):
        if c.color_of(s.edge(t)) is None:
            raise InputError(f"sequence edge {s.edge(t)} is uncolored")
    if anchor is not None:
        result.assign(anchor, c.color_of(s.edge(1)))  # type: ignore[arg-type]
    for t in range(1, s.length):
        result.put(s.edge(t), c.color_of(s.edge(t + 1)))
    result.uncolor(s.edge(s.length))
    return result


# ============ Structural Checks ============

@dataclass
class FanPropertyReport:
    """
    Structural checks on a maximal fan around an uncolored critical edge.

    None means the check does not apply to the instance.
    """
    elementary: bool
    shared_chains: bool
    saturated_neighbours: Optional[bool] = None
    unique_neighbour_profile: Optional[bool] = None
    restricted_fans: Optional[bool] = None
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        flags = (
            self.elementary,
            self.shared_chains,
            self.saturated_neighbours,
            self.unique_neighbour_profile,
            self.restricted_fans,
        )
        return all(flag is not False for flag in flags)


def _delta_vertices(g: Multigraph, vertices: Iterable[int], delta: int) -> List[int]:
    return [z for z in vertices if g.degree(z) == delta]


def fan_property_report(fan: MultiFan, chromatic_index: int) -> FanPropertyReport:
    """
    Check a maximal fan whose anchor is an uncolored k-critical edge.

    Always checked: V(F) elementary, and for α missing at x and β missing at a
    fan vertex y the (α,β)-chains through x and y coincide. When
    chromatic_index == Δ+μ with μ >= 2 and the palette is Δ+μ-1, also:
    enough saturated neighbours (d(z)=Δ, e(x,z)=μ) outside {x, y}; the degree
    profile when y is a Δ-vertex with a single Δ-neighbour in the fan; and the
    corresponding statement for every fan grown without an i-edge.
    """
    g, c, x, y = fan.graph, fan.coloring, fan.center, fan.y0
    if c.color_of(fan.anchor) is not None:
        raise InputError("fan_property_report needs an uncolored anchor")
    failures: List[str] = []

    elementary = is_elementary(c, fan.vertex_set)
    if not elementary:
        failures.append(f"fan vertices {fan.vertex_set} are not elementary")

    shared = True
    for z in fan.rim:
        for alpha in sorted(c.missing(x)):
            for beta in sorted(c.missing(z) - {alpha}):
                if kempe_chain(c, x, alpha, beta) != kempe_chain(c, z, alpha, beta):
                    shared = False
                    failures.append(f"({alpha},{beta})-chains at {x} and {z} differ")
    report = FanPropertyReport(elementary, shared, failures=failures)

    delta, mu = g.max_degree, g.max_multiplicity
    if mu < 2 or chromatic_index != delta + mu or c.palette != delta + mu - 1:
        return report

    others = [z for z in fan.rim if z != y]
    saturated = [z for z in others if g.degree(z) == delta and g.multiplicity(x, z) == mu]
    needed = delta + mu - g.degree(y) - g.multiplicity(x, y) + 1
    report.saturated_neighbours = len(saturated) >= needed
    if not report.saturated_neighbours:
        failures.append(f"{len(saturated)} saturated neighbours, expected at least {needed}")

    delta_others = _delta_vertices(g, others, delta)
    if g.degree(y) == delta and len(delta_others) == 1:
        z_prime = delta_others[0]
        profile = all(
            fan.multiplicity(z) == g.multiplicity(x, z) == mu for z in fan.rim
        ) and all(g.degree(z) == delta - 1 for z in others if z != z_prime)
        report.unique_neighbour_profile = profile
        if not profile:
            failures.append("single Δ-neighbour degree profile violated")

    restricted = True
    for i in range(1, c.palette + 1):
        if i in c.missing(y):
            continue
        sub = build_multifan(g, c, x, fan.anchor, forbidden=i)
        sub_others = [z for z in sub.rim if z != y]
        if _delta_vertices(g, sub_others, delta):
            continue
        witness = [z for z in sub_others if i in c.missing(z) and g.degree(z) == delta - 1]
        if g.degree(y) != delta or not witness:
            restricted = False
            failures.append(f"fan without {i}-edges has no Δ-vertex and no witness")
    report.restricted_fans = restricted
    return report


def colored_fan_report(fan: MultiFan) -> Optional[bool]:
    """
    Check a maximal fan around a colored anchor under a coloring of the whole
    graph with an elementary vertex set.

    If x has no Δ-neighbour in the fan, every fan vertex has degree Δ-1 and
    every fan edge carries a color missing somewhere in V(F).
    Returns None when V(G) is not elementary (the statement does not apply).
    """
    g, c = fan.graph, fan.coloring
    if not c.is_total or not is_elementary(c, g.vertices):
        return None
    delta = g.max_degree
    if _delta_vertices(g, fan.rim, delta):
        return True
    missing_in_fan: Set[int] = set()
    for v in fan.vertex_set:
        missing_in_fan |= c.missing(v)
    degrees_ok = all(g.degree(z) == delta - 1 for z in fan.rim)
    colors_ok = all(c.color_of(e) in missing_in_fan for e in fan.edges)
    return degrees_ok and colors_ok
