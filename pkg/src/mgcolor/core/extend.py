"""
Precoloring Extension

Purpose:
    Extend a precolored distance-3 matching M of a multigraph with μ >= 2 to a
    proper (Δ+μ)-edge-coloring of the whole graph.

Capabilities:
    - opening_reduction: direct answer when χ'(G-M) <= Δ+μ-1
    - initial triple from a saturated matching M*, then case operations until
      no T2-improper edge is left
    - certified oracle fallback whenever the constructive path stops
    - trace of every sub-operation, replayable with replay_trace

Usage:
    result = extend_precoloring(g, p)
    assert verify_extension(g, p, result.coloring)
    same = replay_trace(g, result.trace, result.coloring.palette)

Notes:
    - Every emitted coloring passes verify_extension before it is returned
    - A DefectError inside a case is logged at ERROR with its triple, kept in
      ExtensionResult.diagnostics, and the driver tries the next case
"""

from collections import Counter
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple
import json
import logging

from mgcolor.config import Strategy, get_settings
from mgcolor.core.base_color import k_edge_color, saturated_matching, vizing_gupta_color
from mgcolor.core.cases import apply_case_operation
from mgcolor.core.oracle import brute_force_extension, verify_extension
from mgcolor.core.triples import check_triple, classify_improper, triple_status
from mgcolor.errors import CasePreconditionError, DefectError, InputError
from mgcolor.models.coloring import PartialEdgeColoring
from mgcolor.models.extension import (
    CaseId,
    ExtensionTriple,
    Precoloring,
    TraceStep,
    TripleStatus,
)
from mgcolor.models.graph import Multigraph

logger = logging.getLogger(__name__)

__all__ = [
    "ExtensionResult",
    "classify_improper",
    "extend_precoloring",
    "opening_reduction",
    "replay_trace",
    "triple_status",
]

FALLBACK_OP = "oracle-fallback"
CASE_DONE_OP = "case-done"
DEFECT_OP = "defect"


class ExtensionResult(NamedTuple):
    """Final coloring plus the trace that reproduces it"""
    coloring: PartialEdgeColoring
    trace: List[TraceStep]
    # one entry per DefectError met on the way, with the triple at that point
    diagnostics: Tuple[Dict[str, object], ...] = ()

    @property
    def used_fallback(self) -> bool:
        return any(step.op == FALLBACK_OP for step in self.trace)

    @property
    def case_counts(self) -> Dict[str, int]:
        """Successful case operations by name"""
        done = (step.case for step in self.trace if step.op == CASE_DONE_OP and step.case)
        return dict(Counter(done))


class _Unmatched(Exception):
    """No case operation applied to a T2 target"""

    def __init__(self, message: str, triple: ExtensionTriple):
        self.triple = triple
        super().__init__(message)


# ============ Trace ============

class _Recorder:
    """Turns successive colorings into replayable diff steps"""

    def __init__(self, g: Multigraph, palette: int):
        self.g = g
        self.state = PartialEdgeColoring(g, palette)
        self.steps: List[TraceStep] = []
        self.diagnostics: List[Dict[str, object]] = []

    def record(
        self,
        op: str,
        coloring: PartialEdgeColoring,
        case: Optional[str] = None,
        e1: int = 0,
        e2: int = 0,
    ) -> None:
        changed = [e for e in self.g.edge_ids if coloring.color_of(e) != self.state.color_of(e)]
        colors = tuple(coloring.color_of(e) for e in changed)
        self.steps.append(
            TraceStep(op, case, tuple(changed), colors, e1, e2)
        )
        self.state = coloring.extended(self.g, palette=self.state.palette)

    def adopt(self, steps: Sequence[TraceStep], coloring: PartialEdgeColoring) -> None:
        """Append steps produced elsewhere that end in `coloring`"""
        self.steps.extend(steps)
        self.state = coloring.extended(self.g, palette=self.state.palette)

    def defect(
        self,
        err: DefectError,
        case: Optional[str] = None,
        target: Optional[Tuple[int, int]] = None,
        triple: Optional[ExtensionTriple] = None,
    ) -> None:
        """Log a DefectError together with the triple it was raised on"""
        state = err.state or (triple.to_dict() if triple is not None else None)
        entry: Dict[str, object] = {
            "case": case,
            "target": list(target) if target else None,
            "error": str(err),
            "state": state,
            "trace": err.trace,
        }
        self.diagnostics.append(entry)
        logger.error("%s%s: %s", case or "extension", f" on {target}" if target else "", err)
        logger.error("defect state: %s", json.dumps(entry, sort_keys=True, default=str))


def replay_trace(g: Multigraph, steps: Sequence[TraceStep], palette: int) -> PartialEdgeColoring:
    """
    Apply the steps in order to the all-uncolored coloring.

    Raises:
        InputError: A step names an unknown edge or a color outside the palette
    """
    c = PartialEdgeColoring(g, palette)
    for step in steps:
        for e, color in zip(step.edges, step.colors):
            c.put(e, color)
    return c


# ============ Pipeline Pieces ============

def opening_reduction(
    g: Multigraph, p: Precoloring, budget: Optional[int] = None
) -> Optional[PartialEdgeColoring]:
    """
    When G-M has a (Δ+μ-1)-coloring, recolor every edge that meets a precolored
    edge of the same color with Δ+μ and add Φ on M.

    Returns None when χ'(G-M) = Δ+μ.
    """
    top = g.max_degree + g.max_multiplicity
    rest = g.without_edges(p.ids)
    psi = k_edge_color(rest, top - 1, budget)
    if psi is None:
        return None
    result = psi.extended(g, palette=top)
    for f in sorted(p.ids):
        color = p.colors[f]
        for u in g.endpoints(f):
            for e in g.incident_edges(u):
                if e not in p.ids and result.color_of(e) == color:
                    result.assign(e, top)
    for f in sorted(p.ids):
        result.assign(f, p.colors[f])
    logger.info("opening reduction: χ'(G-M) <= %d", top - 1)
    return result


def _finish(g: Multigraph, p: Precoloring, t: ExtensionTriple) -> PartialEdgeColoring:
    """Close a triple without T2 edges: E1 and M* take the top color, M takes Φ"""
    top = g.max_degree + g.max_multiplicity
    report = t.report or classify_improper(g, p, t)
    result = t.coloring.copy()
    for e in sorted(report.e1 | t.m_star):
        result.assign(e, top)
    for f in sorted(p.ids):
        result.assign(f, p.colors[f])
    return result


def _run_cases(
    g: Multigraph,
    p: Precoloring,
    t: ExtensionTriple,
    budget: Optional[int],
    recorder: "_Recorder",
) -> ExtensionTriple:
    while True:
        report = t.report or classify_improper(g, p, t)
        t.report = report
        targets = report.t2_targets()
        if not targets:
            return t
        target = targets[0]
        for case in CaseId:
            try:
                t = apply_case_operation(g, p, t, target, case, budget)
            except CasePreconditionError as err:
                logger.debug("%s", err)
                continue
            except DefectError as err:
                recorder.defect(err, case.value, target, t)
                t.trace.append(
                    TraceStep(DEFECT_OP, case.value, (), (), len(report.e1), len(report.e2))
                )
                continue
            assert t.report is not None
            t.trace.append(
                TraceStep(CASE_DONE_OP, case.value, (), (), len(t.report.e1), len(t.report.e2))
            )
            break
        else:
            raise _Unmatched(f"no case operation applies to {target}", t)


def _initial_triple(
    g: Multigraph, p: Precoloring, budget: Optional[int]
) -> ExtensionTriple:
    top = g.max_degree + g.max_multiplicity
    try:
        matching, phi = saturated_matching(g, p.matching, budget)
    except InputError as err:
        raise DefectError(f"saturated matching unavailable: {err}") from err
    t = ExtensionTriple(matching.ids, frozenset(), phi.extended(g, palette=top))
    t.report = classify_improper(g, p, t)
    status, reasons = check_triple(g, p, t, budget)
    if status is TripleStatus.INFEASIBLE_PRECONDITION:
        raise DefectError(f"initial triple is not prefeasible: {'; '.join(reasons)}")
    logger.info(
        "initial triple: |M*|=%d |E1|=%d |E2|=%d",
        len(t.m_star), len(t.report.e1), len(t.report.e2),
    )
    return t


def _fallback(
    g: Multigraph, p: Precoloring, budget: Optional[int]
) -> PartialEdgeColoring:
    top = g.max_degree + g.max_multiplicity
    witness = brute_force_extension(g, p, top, budget)
    if witness is None:
        raise DefectError("no extension exists for a valid distance-3 precoloring")
    return witness.extended(g, palette=top)


# ============ Driver ============

def extend_precoloring(
    g: Multigraph,
    p: Precoloring,
    strategy: Optional[Strategy] = None,
    budget: Optional[int] = None,
    oracle_budget: Optional[int] = None,
) -> ExtensionResult:
    """
    Extend Φ on M to a proper (Δ+μ)-edge-coloring of g.

    Args:
        g: Multigraph; μ >= 2 unless M is empty
        p: Precolored distance-3 matching
        strategy: Case operations first (default) or oracle-only
        budget: Solver budget for the constructive steps
        oracle_budget: Node budget for the fallback search

    Returns:
        ExtensionResult(coloring, trace, diagnostics); the coloring passes verify_extension

    Raises:
        InputError: p is not a valid precoloring, or μ < 2 with M nonempty
        ResourceError: The fallback search ran out of budget
        DefectError: The emitted coloring failed verification
    """
    settings = get_settings()
    strategy = strategy or settings.strategy
    oracle_budget = oracle_budget or settings.oracle_budget
    p.validate(g)
    top = g.max_degree + g.max_multiplicity
    recorder = _Recorder(g, top)

    if not p.ids:
        coloring = vizing_gupta_color(g, palette=top)
        recorder.record("vizing", coloring)
        return _emit(g, p, coloring, recorder)
    if g.max_multiplicity < 2:
        raise InputError("precoloring extension needs μ >= 2")

    if strategy is Strategy.ORACLE_ONLY:
        recorder.record(FALLBACK_OP, _fallback(g, p, oracle_budget))
        return _emit(g, p, recorder.state, recorder)

    coloring: Optional[PartialEdgeColoring] = None
    try:
        opened = opening_reduction(g, p, budget)
        if opened is not None:
            recorder.record("opening", opened)
            coloring = opened
        else:
            t = _initial_triple(g, p, budget)
            assert t.report is not None
            recorder.record("initial", t.coloring, None, len(t.report.e1), len(t.report.e2))
            t = _run_cases(g, p, t, budget, recorder)
            recorder.adopt(t.trace, t.coloring)
            finished = _finish(g, p, t)
            recorder.record("finish", finished, None, 0, 0)
            coloring = finished
    except DefectError as err:
        recorder.defect(err)
        recorder.steps.append(TraceStep(DEFECT_OP, None, (), (), 0, 0))
    except _Unmatched as err:
        logger.info("%s; using the oracle", err)
        recorder.adopt(err.triple.trace, err.triple.coloring)

    if coloring is None or not verify_extension(g, p, coloring):
        if coloring is not None:
            logger.error("constructive coloring failed verification; using the oracle")
        recorder.record(FALLBACK_OP, _fallback(g, p, oracle_budget))
        coloring = recorder.state
        logger.info("oracle fallback used")
    return _emit(g, p, coloring, recorder)


def _emit(
    g: Multigraph, p: Precoloring, coloring: PartialEdgeColoring, recorder: _Recorder
) -> ExtensionResult:
    verdict = verify_extension(g, p, coloring)
    if not verdict:
        raise DefectError(
            f"emitted coloring failed verification: {'; '.join(verdict.diagnostics)}",
            trace=[step.to_dict() for step in recorder.steps],
        )
    return ExtensionResult(coloring, list(recorder.steps), tuple(recorder.diagnostics))


