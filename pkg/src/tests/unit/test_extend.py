"""
Tests for extension triples, case operations and the extension driver
"""

import itertools

import pytest

from mgcolor.config import Strategy
from mgcolor.core.base_color import saturated_matching
from mgcolor.core.cases import apply_case_operation
from mgcolor.core.extend import (
    ExtensionResult,
    classify_improper,
    extend_precoloring,
    opening_reduction,
    replay_trace,
    triple_status,
)
from mgcolor.core.oracle import verify_extension
from mgcolor.core.triples import check_triple
from mgcolor.errors import CasePreconditionError, DefectError, InputError
from mgcolor.formats import format_coloring, format_trace, parse_graph_file
from mgcolor.models.coloring import PartialEdgeColoring
from mgcolor.models.extension import (
    CaseId,
    ExtensionTriple,
    ImproperTag,
    Precoloring,
    TraceStep,
    TripleStatus,
)
from mgcolor.models.graph import Multigraph

# K5 with every edge doubled: pair (u, v) holds ids 2j and 2j+1 in combinations order
DOUBLED_K5 = "mgraph 5\n" + "".join(
    f"e {u} {v} 2\n" for u, v in itertools.combinations(range(5), 2)
)

# Doubled K5 short one copy of 0-1, 0-2 and 3-4, with the pendant edge 17 = 0-5
PENDANT_K5 = """mgraph 6
e 0 1 1
e 0 2 1
e 0 3 2
e 0 4 2
e 1 2 2
e 1 3 2
e 1 4 2
e 2 3 2
e 2 4 2
e 3 4 1
e 0 5 1
"""
PENDANT = 17


def _initial_triple(g: Multigraph, p: Precoloring, matching=None) -> ExtensionTriple:
    """The triple the driver starts from once the opening reduction is out"""
    if matching is None:
        matching = saturated_matching(g, p.matching)
    m_star, phi = matching
    top = g.max_degree + g.max_multiplicity
    t = ExtensionTriple(m_star.ids, frozenset(), phi.extended(g, palette=top))
    t.report = classify_improper(g, p, t)
    return t


@pytest.fixture(scope="module")
def doubled_k5() -> Multigraph:
    """Δ=8, μ=2, Δ+μ=10"""
    return parse_graph_file(DOUBLED_K5)


@pytest.fixture(scope="module")
def pendant_k5():
    """Graph, its pendant M = {17} and the saturated matching for it (Δ=7, Δ+μ=9)"""
    g = parse_graph_file(PENDANT_K5)
    p = Precoloring.build(g, {PENDANT: 1})
    return g, saturated_matching(g, p.matching)


@pytest.fixture
def hooked_triangle(fat_triangle) -> Multigraph:
    """Fat triangle with the path 2-3-4 attached: edge 6 = 2-3, edge 7 = 3-4"""
    fat_triangle.add_edge(2, 3)
    fat_triangle.add_edge(3, 4)
    return fat_triangle


@pytest.fixture
def colliding_triple(hooked_triangle):
    """M = {6} colored 1, M* = {0}; edge 2 collides at vertex 2, edge 7 at vertex 3"""
    p = Precoloring.build(hooked_triangle, {6: 1})
    coloring = PartialEdgeColoring(
        hooked_triangle, 7, {1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 7: 1}
    )
    return p, ExtensionTriple(frozenset({0}), frozenset(), coloring)


class TestImproperEdges:
    """Tests for T1/T2 classification"""

    def test_tags(self, hooked_triangle, colliding_triple):
        """Test T2 next to M*, T1 away from it"""
        p, t = colliding_triple
        report = classify_improper(hooked_triangle, p, t)
        assert report.tag(6, 2) is ImproperTag.T2
        assert report.tag(6, 3) is ImproperTag.T1
        assert report.e2 == frozenset({2})
        assert report.e1 == frozenset({7})
        assert report.colliding == {(6, 2): 2, (6, 3): 7}
        assert report.t2_targets() == [(6, 2)]

    def test_parallel_collision(self, fat_triangle):
        """Test an edge parallel to f collides at both ends"""
        g = fat_triangle
        p = Precoloring.build(g, {0: 3})
        coloring = PartialEdgeColoring(g, 6, {1: 3})
        report = classify_improper(g, p, ExtensionTriple(frozenset(), frozenset(), coloring))
        assert report.tag(0, 0) is ImproperTag.T1
        assert report.tag(0, 1) is ImproperTag.T1
        assert report.e1 == frozenset({1})

    def test_no_collisions(self, fat_triangle):
        """Test an empty report"""
        p = Precoloring.build(fat_triangle, {0: 6})
        coloring = PartialEdgeColoring(fat_triangle, 6, {1: 1})
        report = classify_improper(
            fat_triangle, p, ExtensionTriple(frozenset(), frozenset(), coloring)
        )
        assert not report.tags
        assert report.to_dict() == {"e1": [], "e2": [], "tags": []}


class TestTripleStatus:
    """Tests for triple_status"""

    def test_missing_dense_subgraph(self, hooked_triangle, colliding_triple):
        """Test an M* edge next to E2 needs its dense subgraph"""
        p, t = colliding_triple
        status, reasons = check_triple(hooked_triangle, p, t)
        assert status is TripleStatus.INFEASIBLE_PRECONDITION
        assert reasons == ["no 6-dense subgraph around M* edge 0"]
        assert triple_status(hooked_triangle, p, t) is TripleStatus.INFEASIBLE_PRECONDITION

    def test_conflict_rejected(self, hooked_triangle):
        """Test an improper working coloring"""
        p = Precoloring.build(hooked_triangle, {6: 1})
        coloring = PartialEdgeColoring(
            hooked_triangle, 7, {0: 1, 1: 1, 2: 2, 3: 3, 4: 4, 5: 5, 7: 2}
        )
        status, reasons = check_triple(
            hooked_triangle, p, ExtensionTriple(frozenset(), frozenset(), coloring)
        )
        assert status is TripleStatus.INFEASIBLE_PRECONDITION
        assert "conflicts [(0, 1)]" in reasons

    def test_special_class_must_match(self, hooked_triangle):
        """Test the top color class is the special class"""
        p = Precoloring.build(hooked_triangle, {6: 1})
        coloring = PartialEdgeColoring(
            hooked_triangle, 7, {0: 7, 1: 2, 2: 3, 3: 4, 4: 5, 5: 6, 7: 2}
        )
        t = ExtensionTriple(frozenset(), frozenset(), coloring)
        status, reasons = check_triple(hooked_triangle, p, t)
        assert status is TripleStatus.INFEASIBLE_PRECONDITION
        assert "special class differs from the top color class" in reasons
        fixed = ExtensionTriple(frozenset(), frozenset({0}), coloring)
        assert triple_status(hooked_triangle, p, fixed) is TripleStatus.FEASIBLE

    def test_prefeasible(self, hooked_triangle):
        """Test T1 edges alone keep a triple prefeasible"""
        p = Precoloring.build(hooked_triangle, {6: 1})
        coloring = PartialEdgeColoring(
            hooked_triangle, 7, {0: 2, 1: 3, 2: 4, 3: 5, 4: 6, 5: 1, 7: 1}
        )
        t = ExtensionTriple(frozenset(), frozenset(), coloring)
        assert triple_status(hooked_triangle, p, t) is TripleStatus.PREFEASIBLE


class TestCaseOperations:
    """Tests for apply_case_operation"""

    def test_target_must_be_t2(self, hooked_triangle, colliding_triple):
        """Test a T1 pair is refused"""
        p, t = colliding_triple
        with pytest.raises(CasePreconditionError) as info:
            apply_case_operation(hooked_triangle, p, t, (6, 3), CaseId.OP_I)
        assert info.value.case == "Op-I"

    @pytest.mark.parametrize("case", list(CaseId))
    def test_every_case_refuses(self, hooked_triangle, colliding_triple, case):
        """Test no case applies without a dense subgraph around M*"""
        p, t = colliding_triple
        before = t.coloring.copy()
        with pytest.raises(CasePreconditionError):
            apply_case_operation(hooked_triangle, p, t, (6, 2), case)
        assert t.coloring == before
        assert t.m_star == frozenset({0})
        assert t.trace == []


class TestSingleEndOperation:
    """Tests for Op-I applied to a T2 pair next to one dense subgraph"""

    def test_pendant_state(self, pendant_k5):
        """Test the pendant precoloring skips the opening reduction"""
        g, (m_star, _) = pendant_k5
        p = Precoloring.build(g, {PENDANT: 1})
        assert opening_reduction(g, p) is None
        assert len(m_star.ids) == 1

    def test_op_one_moves_star_edge(self, pendant_k5):
        """Test Op-I lowers |E2| by one and swaps e_xy for e_xx1 in M*"""
        g, matching = pendant_k5
        applied = []
        for color in range(1, 9):
            p = Precoloring.build(g, {PENDANT: color})
            t = _initial_triple(g, p, matching)
            for target in t.report.t2_targets():
                try:
                    result = apply_case_operation(g, p, t, target, CaseId.OP_I)
                except CasePreconditionError:
                    continue
                applied.append((p, t, result))
        assert applied

        for p, t, result in applied:
            assert len(t.report.e2) - len(result.report.e2) == 1
            removed = t.m_star - result.m_star
            added = result.m_star - t.m_star
            assert len(removed) == 1 and len(added) == 1
            (old,), (new,) = removed, added
            assert set(g.endpoints(old)) & set(g.endpoints(new))
            assert triple_status(g, p, result) in (TripleStatus.PREFEASIBLE, TripleStatus.FEASIBLE)
            assert result.coloring.is_proper
            assert result.coloring.color_of(new) is None
            ops = {step.op for step in result.trace if step.case == "Op-I"}
            assert {"shift", "replace-mstar"} <= ops

    def test_op_one_leaves_input(self, pendant_k5):
        """Test the input triple is not modified"""
        g, matching = pendant_k5
        for color in range(1, 9):
            p = Precoloring.build(g, {PENDANT: color})
            t = _initial_triple(g, p, matching)
            if not t.report.t2_targets():
                continue
            before = (t.m_star, t.coloring.copy(), list(t.trace))
            try:
                apply_case_operation(g, p, t, t.report.t2_targets()[0], CaseId.OP_I)
            except CasePreconditionError:
                pass
            assert (t.m_star, t.coloring, t.trace) == before


class TestFourCycleCase:
    """Tests for Case-3.1 on doubled K5"""

    def test_closes_four_cycle(self, doubled_k5):
        """Test Case-3.1 colors e_by with i, moves both conflicts to Δ+μ and lowers |E2| by two"""
        g = doubled_k5
        top = 10
        closed = []
        for f in (0, 2, 8):
            matching = saturated_matching(g, Precoloring.build(g, {f: 1}).matching)
            for color in range(1, top):
                p = Precoloring.build(g, {f: color})
                t = _initial_triple(g, p, matching)
                for target in t.report.t2_targets():
                    try:
                        result = apply_case_operation(g, p, t, target, CaseId.CASE_3_1)
                    except CasePreconditionError:
                        continue
                    closed.append((p, t, target, result))
        if not closed:
            pytest.skip("no Case-3.1 state among the doubled K5 precolorings tried")

        for p, t, (f, u), result in closed:
            color = p.colors[f]
            assert len(t.report.e2) == 2
            assert result.report.e2 == frozenset()
            assert len(result.special) >= 2
            assert t.report.colliding[(f, u)] in result.special
            assert all(result.coloring.color_of(e) == top for e in result.special)
            colored = [s for s in result.trace if s.op == "color" and s.case == "Case-3.1"]
            assert len(colored) == 1 and colored[0].colors == (color,)
            (e_by,) = colored[0].edges
            assert e_by not in result.m_star
            assert result.coloring.is_proper
            assert triple_status(g, p, result) in (TripleStatus.PREFEASIBLE, TripleStatus.FEASIBLE)


class TestTOneInsideDenseSubgraph:
    """Tests for f T2 at u and T1 at a vertex v of the dense subgraph at u"""

    @pytest.mark.parametrize("f, color", [(3, 5), (12, 4)])
    def test_single_end_operations_refuse(self, doubled_k5, f, color):
        """Test Op-I to Op-III refuse instead of leaving |E2| unchanged"""
        g = doubled_k5
        p = Precoloring.build(g, {f: color})
        assert opening_reduction(g, p) is None
        t = _initial_triple(g, p)
        (target,) = t.report.t2_targets()
        _, u = target
        v = g.other_end(f, u)
        assert t.report.tag(f, v) is ImproperTag.T1

        for case in (CaseId.OP_I, CaseId.OP_II, CaseId.OP_III):
            with pytest.raises(CasePreconditionError) as info:
                apply_case_operation(g, p, t, target, case)
            assert info.value.case == case.value
            assert f"T1-improper at {v}" in info.value.clause

    def test_first_example_tags(self, doubled_k5):
        """Test edge 3 (0-2) colored 5 is T2 at 0 and T1 at 2"""
        p = Precoloring.build(doubled_k5, {3: 5})
        t = _initial_triple(doubled_k5, p)
        assert t.report.tag(3, 0) is ImproperTag.T2
        assert t.report.tag(3, 2) is ImproperTag.T1

    @pytest.mark.parametrize("f, color", [(3, 5), (12, 4)])
    def test_driver_extends(self, doubled_k5, f, color):
        """Test the driver still verifies and never reports an Op-I defect"""
        g = doubled_k5
        p = Precoloring.build(g, {f: color})
        result = extend_precoloring(g, p)
        assert verify_extension(g, p, result.coloring)
        assert not [d for d in result.diagnostics if d["case"] == "Op-I"]
        assert replay_trace(g, result.trace, result.coloring.palette) == result.coloring


class TestDefectDiagnostics:
    """Tests for DefectError handling inside the case loop"""

    def test_defect_tries_next_case(self, doubled_k5, monkeypatch):
        """Test each defect is logged with the triple and the next case runs"""
        g = doubled_k5
        p = Precoloring.build(g, {3: 5})
        tried = []

        def broken(g, p, t, target, case, budget=None):
            tried.append(case)
            raise DefectError("broken case", trace=[], state=t.to_dict())

        monkeypatch.setattr("mgcolor.core.extend.apply_case_operation", broken)
        result = extend_precoloring(g, p)

        assert tried == list(CaseId)
        assert [d["case"] for d in result.diagnostics] == [case.value for case in CaseId]
        for entry in result.diagnostics:
            assert entry["target"] == [3, 0]
            assert entry["error"] == "broken case"
            assert set(entry["state"]) >= {"m_star", "special", "coloring"}
        ops = [step.op for step in result.trace]
        assert ops.count("defect") == len(CaseId)
        assert result.used_fallback
        assert verify_extension(g, p, result.coloring)

    def test_defect_carries_state(self):
        """Test DefectError keeps the triple it was raised on"""
        err = DefectError("bad", trace=[{"op": "shift"}], state={"m_star": [1]})
        assert err.state == {"m_star": [1]}
        assert err.trace == [{"op": "shift"}]


class TestOpeningReduction:
    """Tests for opening_reduction"""

    def test_recolors_collisions(self, fat_triangle):
        """Test colliding edges move to the top color"""
        p = Precoloring.build(fat_triangle, {0: 1})
        c = opening_reduction(fat_triangle, p)
        assert c is not None
        assert [c.color_of(e) for e in range(6)] == [1, 6, 2, 3, 4, 5]
        assert verify_extension(fat_triangle, p, c)

    def test_not_applicable(self, fat_triangle_with_spare):
        """Test χ'(G-M) = Δ+μ leaves the reduction out"""
        p = Precoloring.build(fat_triangle_with_spare, {6: 1})
        assert opening_reduction(fat_triangle_with_spare, p) is None


class TestExtendPrecoloring:
    """Tests for the extension driver"""

    def test_opening_path(self, fat_triangle):
        """Test the direct answer"""
        p = Precoloring.build(fat_triangle, {0: 1})
        result = extend_precoloring(fat_triangle, p)
        assert isinstance(result, ExtensionResult)
        assert [step.op for step in result.trace] == ["opening"]
        assert not result.used_fallback
        assert result.coloring.color_of(0) == 1

    def test_saturated_matching_path(self, fat_triangle_with_spare):
        """Test the initial triple closes without case operations"""
        g = fat_triangle_with_spare
        p = Precoloring.build(g, {6: 1})
        result = extend_precoloring(g, p)
        assert [step.op for step in result.trace] == ["initial", "finish"]
        assert not result.used_fallback
        assert result.case_counts == {}
        assert result.coloring.color_of(0) == 6
        assert result.coloring.color_of(6) == 1
        assert verify_extension(g, p, result.coloring)

    def test_top_color_precolored(self, fat_triangle_with_spare):
        """Test M* and a top-colored M edge share the top class"""
        g = fat_triangle_with_spare
        p = Precoloring.build(g, {6: 6})
        result = extend_precoloring(g, p)
        assert result.coloring.color_of(6) == 6
        assert verify_extension(g, p, result.coloring)

    def test_replay(self, fat_triangle_with_spare):
        """Test the trace reproduces the coloring"""
        g = fat_triangle_with_spare
        p = Precoloring.build(g, {6: 2})
        result = extend_precoloring(g, p)
        assert replay_trace(g, result.trace, result.coloring.palette) == result.coloring

    def test_deterministic(self, fat_triangle_with_spare):
        """Test identical input gives identical output"""
        g = fat_triangle_with_spare
        p = Precoloring.build(g, {6: 3})
        first = extend_precoloring(g, p)
        second = extend_precoloring(g, p)
        assert format_coloring(first.coloring) == format_coloring(second.coloring)
        assert format_trace(first.trace) == format_trace(second.trace)

    def test_empty_precoloring(self, path_graph):
        """Test M = ∅ falls back to the Δ+μ construction"""
        result = extend_precoloring(path_graph, Precoloring.build(path_graph, {}))
        assert [step.op for step in result.trace] == ["vizing"]
        assert result.coloring.is_total and result.coloring.is_proper

    def test_oracle_only(self, fat_triangle_with_spare):
        """Test the oracle strategy"""
        g = fat_triangle_with_spare
        p = Precoloring.build(g, {6: 4})
        result = extend_precoloring(g, p, strategy=Strategy.ORACLE_ONLY)
        assert result.used_fallback
        assert [step.op for step in result.trace] == ["oracle-fallback"]
        assert verify_extension(g, p, result.coloring)

    def test_simple_graph_rejected(self, path_graph):
        """Test μ >= 2 is required once M is nonempty"""
        with pytest.raises(InputError):
            extend_precoloring(path_graph, Precoloring.build(path_graph, {0: 1}))

    def test_invalid_precoloring(self, fat_triangle):
        """Test colors above Δ+μ and adjacent precolored edges"""
        with pytest.raises(InputError):
            extend_precoloring(fat_triangle, Precoloring.build(fat_triangle, {0: 9}))
        with pytest.raises(InputError):
            extend_precoloring(fat_triangle, Precoloring.build(fat_triangle, {0: 1, 2: 2}))

    def test_case_counts(self):
        """Test case_counts reads the case-done steps"""
        g = Multigraph(range(2))
        g.add_edge(0, 1)
        steps = [
            TraceStep("shift", "Op-I", (0,), (1,), 0, 1),
            TraceStep("case-done", "Op-I", (), (), 0, 0),
            TraceStep("case-done", "Case-2", (), (), 0, 0),
        ]
        result = ExtensionResult(PartialEdgeColoring(g, 2, {0: 1}), steps)
        assert result.case_counts == {"Op-I": 1, "Case-2": 1}
        assert not result.used_fallback


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
