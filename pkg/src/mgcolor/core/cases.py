"""
Case Operations

Purpose:
    Transform a prefeasible extension triple so that the number of T2-improper
    edges drops. Each operation works inside the maximal dense subgraph around
    an M* edge: it shifts colors along a fan sequence (sometimes after a Kempe
    change), trades the M* edge for another edge of the same subgraph and then
    renames the subgraph's color classes to fit the unchanged outside.

Capabilities:
    - Op-I / Op-II / Op-III: a T2 edge at u whose other end is harmless
    - Case-2: T2 at both ends, the ends in different dense subgraphs
    - Case-3-T1: T1 at the other end inside the same dense subgraph; the
      single-end operations run at u while the far end of the colliding edge
      stays out of M*
    - Case-3-direct / 3.1 / 3.2 / 3.3.1 / 3.3.2: T2 at both ends inside one
      dense subgraph, including the exchange between the fans at both ends
      of an M* edge

Usage:
    t2 = apply_case_operation(g, p, t, (f, u), CaseId.OP_I)

Notes:
    - Every sub-operation is recorded as a TraceStep on the returned triple
    - An operation whose preconditions do not hold raises CasePreconditionError
      and leaves `t` untouched; the driver then tries the next one
    - The result is re-checked: |E2| must drop and the triple must stay prefeasible
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple
import logging

from mgcolor.core.coloring import MergeMode, kempe_chain, kempe_swap_subchain, merge_colorings
from mgcolor.core.density import maximal_dense_containing
from mgcolor.core.fans import build_multifan, find_linear_sequence, rotate_sequence
from mgcolor.core.triples import check_triple, improper_report, remainder
from mgcolor.errors import CasePreconditionError, DefectError, InputError, StructuralError
from mgcolor.models.coloring import PartialEdgeColoring
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
from mgcolor.models.fan import LinearSequence, MultiFan
from mgcolor.models.graph import Multigraph, boundary

logger = logging.getLogger(__name__)

SINGLE_DROP = (CaseId.OP_I, CaseId.OP_II, CaseId.OP_III, CaseId.CASE_3_T1)


# ============ Working State ============

@dataclass(frozen=True)
class CaseContext:
    """Graph-wide constants shared by all operations"""
    g: Multigraph
    p: Precoloring
    top: int
    k: int
    delta: int
    budget: Optional[int] = None

    @classmethod
    def build(cls, g: Multigraph, p: Precoloring, budget: Optional[int] = None) -> "CaseContext":
        top = g.max_degree + g.max_multiplicity
        return cls(g, p, top, top - 1, g.max_degree, budget)


@dataclass
class _Attempt:
    """
    Mutable state of one case application.

    `coloring` always lives on the whole graph with M ∪ M* uncolored except
    in the middle of a sub-operation.
    """
    ctx: CaseContext
    case: CaseId
    coloring: PartialEdgeColoring
    m_star: Set[int]
    special: Set[int]
    e1_size: int
    e2_size: int
    steps: List[TraceStep] = field(default_factory=list)
    # vertices that must not gain an M* edge
    spare: Set[int] = field(default_factory=set)

    @classmethod
    def start(
        cls, ctx: CaseContext, t: ExtensionTriple, case: CaseId, report: ImproperReport
    ) -> "_Attempt":
        return cls(
            ctx, case, t.coloring.copy(), set(t.m_star), set(t.special),
            len(report.e1), len(report.e2),
        )

    def fork(self) -> "_Attempt":
        return _Attempt(
            self.ctx, self.case, self.coloring.copy(), set(self.m_star),
            set(self.special), self.e1_size, self.e2_size, list(self.steps), set(self.spare),
        )

    def absorb(self, other: "_Attempt") -> None:
        self.coloring = other.coloring
        self.m_star = other.m_star
        self.special = other.special
        self.steps = other.steps

    def report(self) -> ImproperReport:
        return improper_report(self.ctx.g, self.ctx.p, frozenset(self.m_star), self.coloring)

    def commit(self, op: str, coloring: PartialEdgeColoring) -> None:
        """Record the edges whose colors differ from the current state, then adopt `coloring`"""
        changed = sorted(
            e for e in self.ctx.g.edge_ids
            if coloring.color_of(e) != self.coloring.color_of(e)
        )
        self._step(op, changed, coloring)
        self.coloring = coloring

    def note(self, op: str, edges: Iterable[int]) -> None:
        """A step that changes no color, e.g. an M* replacement"""
        self._step(op, sorted(edges), self.coloring)

    def _step(self, op: str, edges: List[int], coloring: PartialEdgeColoring) -> None:
        self.steps.append(
            TraceStep(
                op=op,
                case=self.case.value,
                edges=tuple(edges),
                colors=tuple(coloring.color_of(e) for e in edges),
                e1_size=self.e1_size,
                e2_size=self.e2_size,
            )
        )

    def recolor_special(self, edges: Iterable[int]) -> None:
        result = self.coloring.copy()
        for e in edges:
            result.assign(e, self.ctx.top)
            self.special.add(e)
        self.commit("recolor-special", result)

    def triple(self, base: ExtensionTriple) -> ExtensionTriple:
        t = ExtensionTriple(
            frozenset(self.m_star), frozenset(self.special), self.coloring,
            None, list(base.trace) + self.steps,
        )
        t.report = improper_report(self.ctx.g, self.ctx.p, t.m_star, t.coloring)
        return t


@dataclass(frozen=True)
class _Focus:
    """Maximal dense subgraph H around the M* edge `edge`, seen from `center`"""
    edge: int
    center: int
    other: int
    dense: DenseSubgraph
    graph: Multigraph
    coloring: PartialEdgeColoring

    def degree_in_h(self, v: int) -> int:
        return self.dense.subgraph().degree(v)


def _refuse(case: CaseId, clause: str) -> CasePreconditionError:
    return CasePreconditionError(case.value, clause)


def _star_edge_at(attempt: _Attempt, v: int) -> Optional[int]:
    for e in sorted(attempt.m_star):
        if v in attempt.ctx.g.endpoints(e):
            return e
    return None


def _focus(attempt: _Attempt, edge: int, center: int) -> _Focus:
    """H is found in G-(M ∪ M*); the view H+e carries the palette 1..k"""
    ctx = attempt.ctx
    rest = remainder(ctx.g, ctx.p, attempt.m_star)
    ends = ctx.g.endpoints(edge)
    try:
        dense = maximal_dense_containing(rest, ends, ctx.k)
    except InputError as err:
        raise _refuse(attempt.case, str(err)) from err
    if dense is None:
        raise _refuse(attempt.case, f"no {ctx.k}-dense subgraph around M* edge {edge}")

    graph = ctx.g.edge_subgraph(dense.edges | {edge}, dense.vertices)
    if any((attempt.coloring.color_of(e) or 0) > ctx.k for e in graph.edge_ids):
        raise _refuse(attempt.case, "dense subgraph carries the top color")
    coloring = attempt.coloring.restricted(graph, palette=ctx.k)
    return _Focus(edge, center, ctx.g.other_end(edge, center), dense, graph, coloring)


def _boundary_with_color(
    attempt: _Attempt, vertices: Iterable[int], color: int
) -> List[Tuple[int, int]]:
    """(h, w) for boundary edges h of the given color, w the end inside"""
    ctx = attempt.ctx
    inside = set(vertices)
    rest = remainder(ctx.g, ctx.p, attempt.m_star)
    found = []
    for h in sorted(boundary(rest, inside).ids):
        if attempt.coloring.color_of(h) == color:
            a, b = ctx.g.endpoints(h)
            found.append((h, a if a in inside else b))
    return found


def _missing_in_palette(attempt: _Attempt, v: int) -> Set[int]:
    return {c for c in attempt.coloring.missing(v) if c <= attempt.ctx.k}


def _merge(
    attempt: _Attempt, vertices: Iterable[int], edges: Iterable[int], protected: int
) -> None:
    """
    Rename the color classes of the subgraph (vertices, edges) so that it fits
    the coloring outside, keeping `protected` fixed.
    """
    ctx = attempt.ctx
    host = remainder(ctx.g, ctx.p, attempt.m_star)
    h = DenseSubgraph(host, frozenset(vertices), ctx.k, frozenset(edges), induced=False)
    try:
        psi = attempt.coloring.restricted(h.subgraph(), palette=ctx.k)
        merged = merge_colorings(
            host, h, psi, attempt.coloring.restricted(host), MergeMode.protect_color(protected)
        )
    except (InputError, StructuralError) as err:
        raise DefectError(f"{attempt.case.value}: merge failed: {err}") from err
    result = merged.extended(ctx.g, palette=ctx.top)
    # edges outside the host (M, M*, edges uncolored for the caller) keep their state
    for e in ctx.g.edge_ids:
        if not host.has_edge(e):
            result.put(e, attempt.coloring.color_of(e))
    attempt.commit("merge", result)


def _rotate_into_star(
    attempt: _Attempt, focus: _Focus, seq: LinearSequence, protected: int
) -> int:
    """
    Shift along seq, color the M* edge, uncolor the last sequence edge and
    let it replace the M* edge. Returns the new M* edge.
    """
    if seq.length == 0:
        raise _refuse(attempt.case, "empty linear sequence")
    anchor = focus.edge
    last = seq.edge(seq.length)
    attempt.commit("shift", rotate_sequence(attempt.coloring, seq, anchor))
    attempt.m_star = (attempt.m_star - {anchor}) | {last}
    attempt.note("replace-mstar", (anchor, last))
    _merge(attempt, focus.dense.vertices, (focus.dense.edges | {anchor}) - {last}, protected)
    return last


# ============ One End (Op-I / Op-II / Op-III) ============

@dataclass(frozen=True)
class _EndView:
    """Everything the single-end operations read about (f, u)"""
    color: int
    f1: int
    y: int
    focus: _Focus
    fan: MultiFan
    delta_vertices: List[int]
    boundary_i: List[Tuple[int, int]]
    e1: frozenset


def _end_view(attempt: _Attempt, f: int, u: int) -> _EndView:
    ctx = attempt.ctx
    report = attempt.report()
    if report.tag(f, u) is not ImproperTag.T2:
        raise _refuse(attempt.case, f"edge {f} is not T2-improper at {u}")
    i = ctx.p.colors[f]
    f1 = report.colliding[(f, u)]
    y = ctx.g.other_end(f1, u)
    e_xy = _star_edge_at(attempt, y)
    if e_xy is None:
        raise _refuse(attempt.case, f"colliding edge {f1} meets no M* edge at {y}")
    x = ctx.g.other_end(e_xy, y)
    focus = _focus(attempt, e_xy, x)
    if u not in focus.dense.vertices:
        raise _refuse(attempt.case, f"{u} lies outside the dense subgraph of M* edge {e_xy}")

    fan = build_multifan(focus.graph, focus.coloring, x, e_xy)
    deltas = [
        z for z in fan.rim
        if z not in (x, y) and z not in attempt.spare and focus.graph.degree(z) == ctx.delta
    ]
    if not deltas:
        raise _refuse(attempt.case, f"fan at {x} over M* edge {e_xy} has no usable Δ-vertex")
    return _EndView(
        i, f1, y, focus, fan, deltas,
        _boundary_with_color(attempt, focus.dense.vertices, i), report.e1,
    )


def _free_sequence(view: _EndView) -> Optional[LinearSequence]:
    """A sequence to a Δ-vertex without an i-edge, or avoiding the boundary i-vertex"""
    ends = {w for _, w in view.boundary_i}
    for x1 in view.delta_vertices:
        seq = find_linear_sequence(view.fan, x1, avoid_color=view.color)
        if seq is None:
            seq = find_linear_sequence(view.fan, x1, avoid_vertices=ends)
        if seq is not None:
            return seq
    return None


def _op_one(attempt: _Attempt, f: int, u: int) -> None:
    view = _end_view(attempt, f, u)
    seq = _free_sequence(view)
    if seq is None:
        raise _refuse(attempt.case, "every sequence to a Δ-vertex meets the boundary i-edge")
    _rotate_into_star(attempt, view.focus, seq, view.color)


def _blocked_view(attempt: _Attempt, f: int, u: int) -> Tuple[_EndView, LinearSequence, int, int]:
    """Op-II / Op-III setting: no free sequence, a boundary i-edge h at w"""
    view = _end_view(attempt, f, u)
    if _free_sequence(view) is not None:
        raise _refuse(attempt.case, "a free sequence exists (Op-I applies)")
    if not view.boundary_i:
        raise _refuse(attempt.case, "no boundary edge carries the colliding color")
    h, w = view.boundary_i[0]
    seq = find_linear_sequence(view.fan, view.delta_vertices[0])
    if seq is None:
        raise DefectError(f"Δ-vertex {view.delta_vertices[0]} unreachable in its fan")
    return view, seq, h, w


def _op_two(attempt: _Attempt, f: int, u: int) -> None:
    view, seq, h, w = _blocked_view(attempt, f, u)
    if h in view.e1:
        raise _refuse(attempt.case, f"boundary edge {h} is T1-improper (Op-III applies)")
    if w not in seq.vertices[1:]:
        raise _refuse(attempt.case, f"boundary vertex {w} is not on the sequence")
    if w in attempt.spare:
        raise _refuse(attempt.case, f"boundary vertex {w} must stay out of M*")
    if view.focus.degree_in_h(w) != attempt.ctx.delta - 1:
        raise _refuse(attempt.case, f"d_H({w}) is not Δ-1")
    _rotate_into_star(attempt, view.focus, seq.prefix(w), view.color)


def _op_three(attempt: _Attempt, f: int, u: int) -> None:
    view, seq, h, _ = _blocked_view(attempt, f, u)
    if h not in view.e1:
        raise _refuse(attempt.case, f"boundary edge {h} is not T1-improper")
    attempt.recolor_special([h])
    _rotate_into_star(attempt, view.focus, seq, view.color)


_END_OPERATIONS: Dict[CaseId, Callable[[_Attempt, int, int], None]] = {
    CaseId.OP_I: _op_one,
    CaseId.OP_II: _op_two,
    CaseId.OP_III: _op_three,
}


def _fix_end(attempt: _Attempt, f: int, u: int) -> CaseId:
    """First single-end operation that applies at (f, u); the attempt absorbs it"""
    for op, handler in _END_OPERATIONS.items():
        trial = attempt.fork()
        try:
            handler(trial, f, u)
        except CasePreconditionError as err:
            logger.debug("%s at (%d, %d) inside %s: %s", op.value, f, u, attempt.case.value, err)
            continue
        attempt.absorb(trial)
        return op
    raise _refuse(attempt.case, f"no single-end operation applies at ({f}, {u})")


def _single_end(op: CaseId) -> Callable[[_Attempt, int, int, int], None]:
    def run(attempt: _Attempt, f: int, u: int, v: int) -> None:
        tag = attempt.report().tag(f, v)
        if tag is ImproperTag.T2:
            raise _refuse(attempt.case, f"edge {f} is also T2-improper at {v}")
        if tag is ImproperTag.T1 and v in _dense_around_end(attempt, f, u).vertices:
            raise _refuse(
                attempt.case,
                f"edge {f} is T1-improper at {v} inside the dense subgraph at {u}",
            )
        _END_OPERATIONS[op](attempt, f, u)
    return run


# ============ Both Ends ============

def _dense_around_end(attempt: _Attempt, f: int, u: int) -> DenseSubgraph:
    return _end_view(attempt, f, u).focus.dense


def _case_two(attempt: _Attempt, f: int, u: int, v: int) -> None:
    if attempt.report().tag(f, v) is not ImproperTag.T2:
        raise _refuse(attempt.case, f"edge {f} is not T2-improper at {v}")
    if v in _dense_around_end(attempt, f, u).vertices:
        raise _refuse(attempt.case, f"{u} and {v} share a dense subgraph")
    _fix_end(attempt, f, u)
    _fix_end(attempt, f, v)


def _case_three_t1(attempt: _Attempt, f: int, u: int, v: int) -> None:
    """Single-end operations at u; b, the far end of the i-edge at v, must not enter M*"""
    report = attempt.report()
    if report.tag(f, v) is not ImproperTag.T1:
        raise _refuse(attempt.case, f"edge {f} is not T1-improper at {v}")
    dense = _dense_around_end(attempt, f, u)
    if v not in dense.vertices:
        raise _refuse(attempt.case, f"{v} lies outside the dense subgraph at {u}")
    b = attempt.ctx.g.other_end(report.colliding[(f, v)], v)
    if b in dense.vertices and dense.subgraph().degree(b) == attempt.ctx.delta:
        logger.debug("%s: Δ-vertex %d excluded as a sequence target", attempt.case.value, b)

    attempt.spare.add(b)
    _fix_end(attempt, f, u)
    attempt.spare.discard(b)
    if _star_edge_at(attempt, b) is not None:
        raise DefectError(f"{attempt.case.value}: vertex {b} entered M*")


@dataclass(frozen=True)
class _FarEnd:
    """State after fixing u when both ends sit in one dense subgraph"""
    i: int
    y: int
    e_bv: int
    a: int
    b: int
    e_ab: int
    focus: _Focus
    fan: MultiFan
    e1: frozenset


def _far_end(attempt: _Attempt, f: int, u: int, v: int) -> _FarEnd:
    ctx = attempt.ctx
    before = attempt.report()
    if before.tag(f, v) is not ImproperTag.T2:
        raise _refuse(attempt.case, f"edge {f} is not T2-improper at {v}")
    if v not in _dense_around_end(attempt, f, u).vertices:
        raise _refuse(attempt.case, f"{u} and {v} lie in different dense subgraphs")
    y = ctx.g.other_end(before.colliding[(f, u)], u)

    _fix_end(attempt, f, u)
    report = attempt.report()
    if report.tag(f, v) is not ImproperTag.T2:
        raise _refuse(attempt.case, f"edge {f} stopped being T2-improper at {v}")
    e_bv = report.colliding[(f, v)]
    b = ctx.g.other_end(e_bv, v)
    e_ab = _star_edge_at(attempt, b)
    if e_ab is None:
        raise _refuse(attempt.case, f"no M* edge at {b}")
    a = ctx.g.other_end(e_ab, b)
    focus = _focus(attempt, e_ab, b)
    fan = build_multifan(focus.graph, focus.coloring, b, e_ab)
    return _FarEnd(ctx.p.colors[f], y, e_bv, a, b, e_ab, focus, fan, report.e1)


def _case_three_direct(attempt: _Attempt, f: int, u: int, v: int) -> None:
    far = _far_end(attempt, f, u, v)
    before = set(attempt.m_star)
    _fix_end(attempt, f, v)
    added = attempt.m_star - before
    if any(far.y in attempt.ctx.g.endpoints(e) for e in added):
        raise _refuse(attempt.case, f"the operation at {v} puts an edge at {far.y} into M*")


def _case_three_one(attempt: _Attempt, f: int, u: int, v: int) -> None:
    far = _far_end(attempt, f, u, v)
    if far.y not in far.fan.rim:
        raise _refuse(attempt.case, f"{far.y} is not in the fan at {far.b}")
    seq = find_linear_sequence(far.fan, far.y, avoid_color=far.i)
    if seq is None or seq.length == 0:
        raise _refuse(attempt.case, f"no sequence from {far.a} to {far.y} without an i-edge")
    e_yu = attempt.report().colliding.get((f, u))
    if e_yu is None or attempt.coloring.color_of(e_yu) != far.i:
        raise _refuse(attempt.case, f"no edge colored {far.i} at {u}")

    e_by = _rotate_into_star(attempt, far.focus, seq, far.i)
    if attempt.coloring.color_of(far.e_bv) != far.i or attempt.coloring.color_of(e_yu) != far.i:
        raise DefectError(f"{attempt.case.value}: the merge moved color {far.i}")
    attempt.recolor_special([far.e_bv, e_yu])
    result = attempt.coloring.copy()
    result.assign(e_by, far.i)
    attempt.m_star.discard(e_by)
    attempt.commit("color", result)
    attempt.note("replace-mstar", (e_by,))
    logger.debug("Case-3.1 closed the 4-cycle %d-%d-%d-%d", far.b, v, u, far.y)


def _low_vertex(attempt: _Attempt, far: _FarEnd) -> Optional[int]:
    """w'' in the fan at b: degree Δ-1 in H and i missing there"""
    for w in far.fan.rim:
        if w == far.a:
            continue
        low = far.focus.degree_in_h(w) == attempt.ctx.delta - 1
        if low and far.i in far.focus.coloring.missing(w):
            return w
    return None


def _case_three_two(attempt: _Attempt, f: int, u: int, v: int) -> None:
    far = _far_end(attempt, f, u, v)
    w = _low_vertex(attempt, far)
    if w is None:
        raise _refuse(
            attempt.case, f"no vertex of degree Δ-1 missing {far.i} in the fan at {far.b}"
        )
    seq = find_linear_sequence(far.fan, w)
    if seq is None or seq.length == 0:
        raise _refuse(attempt.case, f"no sequence from {far.a} to {w}")
    if far.e_bv not in far.fan.edges or v in seq.vertices:
        raise _refuse(attempt.case, f"edge {far.e_bv} does not extend the sequence to {v}")
    hits = _boundary_with_color(attempt, far.focus.dense.vertices, far.i)
    h = next((edge for edge, end in hits if end == w), None)

    if far.i in attempt.coloring.missing(w) or (h is not None and h in far.e1):
        extended = LinearSequence(far.b, seq.vertices + (v,), seq.edges + (far.e_bv,))
        attempt.commit("shift", rotate_sequence(attempt.coloring, extended, far.e_ab))
        attempt.m_star.discard(far.e_ab)
        attempt.note("replace-mstar", (far.e_ab,))
        if h is not None:
            attempt.recolor_special([h])
        edges = (far.focus.dense.edges | {far.e_ab}) - {far.e_bv}
        _merge(attempt, far.focus.dense.vertices, edges, far.i)
        attempt.recolor_special([far.e_bv])
        return

    alphas = sorted(_missing_in_palette(attempt, w) - {far.i})
    if not alphas:
        raise _refuse(attempt.case, f"{w} misses no color besides {far.i}")
    _exchange(attempt, far, seq, alphas[0], low_target=w)


def _case_three_three(
    attempt: _Attempt, f: int, u: int, v: int
) -> Tuple[_FarEnd, LinearSequence, int]:
    """Common setting of Case-3.3: an i-free sequence S* from a to a Δ-vertex y* ≠ y"""
    far = _far_end(attempt, f, u, v)
    if far.y in far.fan.rim and find_linear_sequence(far.fan, far.y, avoid_color=far.i) is not None:
        raise _refuse(attempt.case, f"an i-free sequence to {far.y} exists (Case-3.1 applies)")
    if _low_vertex(attempt, far) is not None:
        raise _refuse(attempt.case, "a low vertex missing i exists (Case-3.2 applies)")
    for z in far.fan.rim:
        if z in (far.a, far.y) or far.focus.degree_in_h(z) != attempt.ctx.delta:
            continue
        seq = find_linear_sequence(far.fan, z, avoid_color=far.i)
        if seq is not None and seq.length > 0:
            missing = _missing_in_palette(attempt, z)
            if not missing:
                raise DefectError(f"Δ-vertex {z} misses no color of 1..k")
            theta = far.i if far.i in missing else min(missing)
            return far, seq, theta
    raise _refuse(attempt.case, f"no i-free sequence from {far.a} to another Δ-vertex")


def _case_three_three_one(attempt: _Attempt, f: int, u: int, v: int) -> None:
    far, seq, theta = _case_three_three(attempt, f, u, v)
    if theta != far.i:
        raise _refuse(attempt.case, f"{seq.target} has {far.i} present")
    e_last = _rotate_into_star(attempt, far.focus, seq, far.i)
    attempt.recolor_special([far.e_bv])
    result = attempt.coloring.copy()
    result.assign(e_last, far.i)
    attempt.m_star.discard(e_last)
    attempt.commit("color", result)
    attempt.note("replace-mstar", (e_last,))


def _case_three_three_two(attempt: _Attempt, f: int, u: int, v: int) -> None:
    far, seq, theta = _case_three_three(attempt, f, u, v)
    if theta == far.i:
        raise _refuse(attempt.case, f"{seq.target} misses {far.i} (Case-3.3.1 applies)")
    _exchange(attempt, far, seq, theta, low_target=None)


# ============ Exchange Between the Fans at a and b ============

def _walk_from(chain_vertices: Tuple[int, ...], start: int) -> Tuple[int, ...]:
    return chain_vertices if chain_vertices[0] == start else tuple(reversed(chain_vertices))


def _exchange(
    attempt: _Attempt,
    far: _FarEnd,
    seq: LinearSequence,
    gamma: int,
    low_target: Optional[int],
) -> None:
    """
    Recolor around both ends of e_ab. `seq` runs in the fan at b from a to p;
    e_1 is the gamma-edge at a and S' a sequence in the fan at a over e_1.
    A Kempe change on the (beta, gamma')-chain at b makes gamma' available
    for e_ab; S' is then rotated so that its last edge replaces e_ab in M*.

    low_target is w'' when the degree Δ-1 vertex is known; otherwise the
    target of S' is a vertex w* carrying a boundary i-edge outside E1 or,
    failing that, a Δ-vertex.
    """
    ctx = attempt.ctx
    focus, a, b, i = far.focus, far.a, far.b, far.i
    psi = focus.coloring
    e_1 = psi.edge_with_color(a, gamma)
    if e_1 is None or e_1 == far.e_ab:
        raise _refuse(attempt.case, f"no edge colored {gamma} at {a}")
    fan_a = build_multifan(focus.graph, psi, a, e_1)
    b_1 = fan_a.y0
    hits = _boundary_with_color(attempt, focus.dense.vertices, i)
    late_special: List[int] = []

    s_prime: Optional[LinearSequence] = None
    if low_target is not None and low_target in fan_a.rim and low_target != b_1:
        s_prime = find_linear_sequence(fan_a, low_target)
    elif low_target is None:
        for h, w in hits:
            if w not in fan_a.rim or w == b_1 or h in far.e1:
                continue
            if focus.degree_in_h(w) == ctx.delta - 1:
                s_prime = find_linear_sequence(fan_a, w)
                break
        late_special = [h for h, _ in hits if h in far.e1]
    if s_prime is None:
        ends = {w for _, w in hits} if low_target is None else set()
        avoid = i if low_target is None else None
        for z in fan_a.rim:
            if z in (b_1, b) or focus.degree_in_h(z) != ctx.delta:
                continue
            s_prime = find_linear_sequence(fan_a, z, avoid_color=avoid, avoid_vertices=ends)
            if s_prime is not None:
                break
    if s_prime is None or s_prime.length == 0:
        raise _refuse(attempt.case, f"no usable sequence in the fan at {a}")

    betas = sorted(_missing_in_palette(attempt, b) - {i})
    if not betas:
        raise _refuse(attempt.case, f"{b} misses no color besides {i}")
    beta = betas[0]

    on_seq = set(seq.vertices[1:])
    shared = [z for z in s_prime.vertices if z in on_seq and z != s_prime.target]
    if not shared:
        p, r, q_index = seq.target, e_1, 0
        gamma_p = gamma
    else:
        b_j = min(shared, key=seq.vertices.index)
        j = s_prime.vertices.index(b_j)
        p, r, q_index = b_j, s_prime.edges[j], j + 1
        gamma_p = psi.color_of(r)  # type: ignore[assignment]
    q = s_prime.vertices[q_index]
    if gamma_p == beta:
        raise _refuse(attempt.case, f"chain colors coincide ({beta})")

    chain = kempe_chain(psi, b, beta, gamma_p)
    work = attempt.coloring
    if r not in chain.edges:
        if not chain.contains_vertex(p):
            raise _refuse(attempt.case, f"the ({beta},{gamma_p})-chain at {b} misses {p}")
        attempt.commit("kempe", kempe_swap_subchain(work, chain, b, p))
        recolor = attempt.coloring.copy()
        recolor.uncolor(r)
        recolor.assign(far.e_ab, gamma_p)
        attempt.commit("recolor", recolor)
    else:
        walk = _walk_from(chain.vertices, b)
        order = {z: n for n, z in enumerate(walk)}
        if q in order and (a not in order or order[q] < order[a]):
            attempt.commit("kempe", kempe_swap_subchain(work, chain, b, q))
            recolor = attempt.coloring.copy()
            recolor.uncolor(r)
            recolor.assign(far.e_ab, gamma_p)
            attempt.commit("recolor", recolor)
        else:
            if not (chain.contains_vertex(p) and chain.contains_vertex(q)):
                raise _refuse(attempt.case, f"the chain at {b} does not join {p} and {q}")
            prefix = seq.prefix(p)
            if prefix.length == 0:
                raise _refuse(attempt.case, f"{p} coincides with {a}")
            attempt.commit("kempe", kempe_swap_subchain(work, chain, p, q))
            uncolored = attempt.coloring.copy()
            uncolored.uncolor(r)
            attempt.commit("recolor", uncolored)
            shifted = rotate_sequence(attempt.coloring, prefix, far.e_ab)
            shifted.assign(prefix.edge(prefix.length), beta)
            attempt.commit("shift", shifted)

    tail = LinearSequence(a, s_prime.vertices[q_index:], s_prime.edges[q_index:])
    e_t = r
    if tail.length > 0:
        attempt.commit("shift", rotate_sequence(attempt.coloring, tail, r))
        e_t = tail.edge(tail.length)
    attempt.m_star = (attempt.m_star - {far.e_ab}) | {e_t}
    attempt.note("replace-mstar", (far.e_ab, e_t))
    _merge(attempt, focus.dense.vertices, (focus.dense.edges | {far.e_ab}) - {e_t}, i)
    if late_special:
        attempt.recolor_special(late_special)


# ============ Dispatch ============

CASE_HANDLERS: Dict[CaseId, Callable[[_Attempt, int, int, int], None]] = {
    CaseId.OP_I: _single_end(CaseId.OP_I),
    CaseId.OP_II: _single_end(CaseId.OP_II),
    CaseId.OP_III: _single_end(CaseId.OP_III),
    CaseId.CASE_2: _case_two,
    CaseId.CASE_3_T1: _case_three_t1,
    CaseId.CASE_3_DIRECT: _case_three_direct,
    CaseId.CASE_3_1: _case_three_one,
    CaseId.CASE_3_2: _case_three_two,
    CaseId.CASE_3_3_1: _case_three_three_one,
    CaseId.CASE_3_3_2: _case_three_three_two,
}


def apply_case_operation(
    g: Multigraph,
    p: Precoloring,
    t: ExtensionTriple,
    target: Tuple[int, int],
    case: CaseId,
    budget: Optional[int] = None,
) -> ExtensionTriple:
    """
    Apply one case operation to the T2-improper pair target = (f, u).

    Args:
        g: Graph
        p: Precoloring
        t: Prefeasible triple; not modified
        target: (precolored edge, endpoint where it is T2-improper)
        case: Operation to apply
        budget: Solver budget for the post-state check

    Returns:
        The new triple with its trace extended by the sub-operations

    Raises:
        CasePreconditionError: The operation does not apply to this state
        DefectError: The result fails the E2 decrease or the prefeasibility re-check
    """
    f, u = target
    ctx = CaseContext.build(g, p, budget)
    report = t.report or improper_report(g, p, t.m_star, t.coloring)
    if report.tag(f, u) is not ImproperTag.T2:
        raise _refuse(case, f"edge {f} is not T2-improper at {u}")
    v = g.other_end(f, u)

    attempt = _Attempt.start(ctx, t, case, report)
    try:
        CASE_HANDLERS[case](attempt, f, u, v)
    except DefectError as err:
        raise DefectError(
            str(err),
            trace=[step.to_dict() for step in attempt.steps],
            state=attempt.triple(t).to_dict(),
        ) from err
    result = attempt.triple(t)

    expected = 1 if case in SINGLE_DROP else 2
    assert result.report is not None
    drop = len(report.e2) - len(result.report.e2)
    if drop < expected:
        raise DefectError(
            f"{case.value} on ({f}, {u}) lowered |E2| by {drop}, expected {expected}",
            trace=[step.to_dict() for step in attempt.steps],
            state=result.to_dict(),
        )
    status, reasons = check_triple(g, p, result, budget)
    if status is TripleStatus.INFEASIBLE_PRECONDITION:
        raise DefectError(
            f"{case.value} on ({f}, {u}) left an infeasible triple: {'; '.join(reasons)}",
            trace=[step.to_dict() for step in attempt.steps],
            state=result.to_dict(),
        )
    logger.info(
        "%s on (%d, %d): |E2| %d -> %d", case.value, f, u, len(report.e2), len(result.report.e2)
    )
    return result
