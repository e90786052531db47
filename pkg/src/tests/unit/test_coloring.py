"""
Tests for partial colorings, Kempe chains and the coloring merge
"""

import pytest

from mgcolor.core.coloring import (
    MergeMode,
    classify_vertex_set,
    greedy_edge_coloring,
    is_elementary,
    kempe_chain,
    kempe_swap_subchain,
    merge_colorings,
    verify_proper,
)
from mgcolor.errors import InputError, StructuralError
from mgcolor.models.coloring import ChainShape, PartialEdgeColoring
from mgcolor.models.dense import DenseSubgraph
from mgcolor.models.graph import Multigraph

# Colors 1..6 on the fat triangle: missing(0)={3,4}, missing(1)={5,6}, missing(2)={1,2}
FAT_SIX = {0: 1, 1: 2, 2: 3, 3: 4, 4: 5, 5: 6}


@pytest.fixture
def square() -> Multigraph:
    """4-cycle 0-1-2-3-0; edge 3 joins 0 and 3"""
    g = Multigraph(range(4))
    for u, v in [(0, 1), (1, 2), (2, 3), (0, 3)]:
        g.add_edge(u, v)
    return g


@pytest.fixture
def fat_triangle_with_pendant(fat_triangle) -> Multigraph:
    """Fat triangle plus edge 6 = 2-3"""
    fat_triangle.add_edge(2, 3)
    return fat_triangle


class TestPartialEdgeColoring:
    """Tests for PartialEdgeColoring"""

    def test_palette_enforced(self, fat_triangle):
        """Test colors outside 1..k are rejected"""
        c = PartialEdgeColoring(fat_triangle, 3)
        with pytest.raises(InputError):
            c.assign(0, 4)
        with pytest.raises(InputError):
            c.assign(0, 0)

    def test_present_and_missing(self, fat_triangle):
        """Test present/missing color sets"""
        c = PartialEdgeColoring(fat_triangle, 6, FAT_SIX)
        assert c.present(0) == {1, 2, 5, 6}
        assert c.missing(0) == {3, 4}
        assert c.is_total and c.is_proper

    def test_uncolored_edges(self, fat_triangle):
        """Test partial colorings"""
        c = PartialEdgeColoring(fat_triangle, 6, {0: 1, 3: 2})
        assert c.uncolored_edges() == [1, 2, 4, 5]
        assert not c.is_total

    def test_parallel_conflict(self, fat_triangle):
        """Test parallel edges with one color conflict"""
        c = PartialEdgeColoring(fat_triangle, 6, {0: 1, 1: 1})
        report = verify_proper(c)
        assert not report.is_proper
        assert report.conflicts == [(0, 1)]

    def test_restricted_and_extended(self, fat_triangle):
        """Test moving a coloring between a graph and a subgraph"""
        c = PartialEdgeColoring(fat_triangle, 6, FAT_SIX)
        rest = fat_triangle.without_edges([0])
        small = c.restricted(rest, palette=6)
        assert small.color_of(1) == 2
        back = small.extended(fat_triangle)
        assert back.color_of(0) is None
        assert back.color_of(5) == 6

    def test_greedy(self, fat_triangle):
        """Test first-fit leaves edges uncolored when the palette is short"""
        c = greedy_edge_coloring(fat_triangle, 5)
        assert c.uncolored_edges() == [5]
        assert c.is_proper


class TestVertexSets:
    """Tests for elementary / closed / strongly closed"""

    def test_elementary_whole_graph(self, fat_triangle):
        """Test a 6-coloring of the fat triangle"""
        c = PartialEdgeColoring(fat_triangle, 6, FAT_SIX)
        assert is_elementary(c, [0, 1, 2])
        flags = classify_vertex_set(c, [0, 1, 2])
        assert flags.elementary and flags.closed and flags.strongly_closed

    def test_not_elementary(self, fat_triangle):
        """Test a shared missing color"""
        c = PartialEdgeColoring(fat_triangle, 7, FAT_SIX)
        assert not is_elementary(c, [0, 1])

    def test_uncolored_boundary_not_closed(self, fat_triangle_with_pendant):
        """Test boundary edges must be colored"""
        c = PartialEdgeColoring(fat_triangle_with_pendant, 6, FAT_SIX)
        flags = classify_vertex_set(c, [0, 1, 2])
        assert not flags.closed
        assert "boundary edge 6 is uncolored" in flags.diagnostics


class TestKempeChains:
    """Tests for Kempe chains and swaps"""

    def test_path_chain(self, path_graph):
        """Test an alternating path"""
        c = PartialEdgeColoring(path_graph, 3, {0: 1, 1: 2, 2: 1})
        chain = kempe_chain(c, 2, 1, 2)
        assert chain.shape is ChainShape.PATH
        assert chain.vertices == (0, 1, 2, 3)
        assert chain.edges == (0, 1, 2)
        assert chain.endvertices == (0, 3)

    def test_swap_path(self, path_graph):
        """Test a full Kempe change"""
        c = PartialEdgeColoring(path_graph, 3, {0: 1, 1: 2, 2: 1})
        chain = kempe_chain(c, 0, 1, 2)
        swapped = kempe_swap_subchain(c, chain, 0, 3)
        assert [swapped.color_of(e) for e in (0, 1, 2)] == [2, 1, 2]
        assert swapped.is_proper
        assert kempe_swap_subchain(swapped, chain, 0, 3) == c

    def test_cycle_chain(self, square):
        """Test a bicolored even cycle"""
        c = PartialEdgeColoring(square, 2, {0: 1, 1: 2, 2: 1, 3: 2})
        chain = kempe_chain(c, 2, 1, 2)
        assert chain.shape is ChainShape.CYCLE
        assert chain.vertices == (0, 1, 2, 3)
        assert chain.edges == (0, 1, 2, 3)
        assert chain.endvertices == ()
        swapped = kempe_swap_subchain(c, chain, 0, 0)
        assert [swapped.color_of(e) for e in range(4)] == [2, 1, 2, 1]

    def test_isolated_vertex(self, path_graph):
        """Test a vertex with neither color"""
        c = PartialEdgeColoring(path_graph, 4, {0: 1})
        chain = kempe_chain(c, 4, 3, 4)
        assert chain.vertices == (4,)
        assert chain.edges == ()

    def test_same_colors_rejected(self, path_graph):
        """Test alpha == beta"""
        c = PartialEdgeColoring(path_graph, 2)
        with pytest.raises(InputError):
            kempe_chain(c, 0, 1, 1)


class TestMerge:
    """Tests for merge_colorings"""

    def test_renames_classes(self, fat_triangle_with_pendant):
        """Test the least renaming that fits the boundary"""
        g = fat_triangle_with_pendant
        h = DenseSubgraph.from_vertices(g, frozenset({0, 1, 2}), 6)
        psi = PartialEdgeColoring(g, 6, FAT_SIX)
        phi = PartialEdgeColoring(g, 6, {6: 3})
        merged = merge_colorings(g, h, psi, phi)
        assert [merged.color_of(e) for e in range(7)] == [1, 3, 2, 4, 5, 6, 3]
        assert merged.is_total and merged.is_proper

    def test_repeated_boundary_colors(self, fat_triangle_with_pendant):
        """Test boundary colors must be distinct"""
        g = fat_triangle_with_pendant
        g.add_edge(0, 4)
        h = DenseSubgraph.from_vertices(g, frozenset({0, 1, 2}), 6)
        psi = PartialEdgeColoring(g, 6, FAT_SIX)
        phi = PartialEdgeColoring(g, 6, {6: 3, 7: 3})
        with pytest.raises(InputError):
            merge_colorings(g, h, psi, phi)

    def test_protected_color_in_range(self, fat_triangle_with_pendant):
        """Test protect_color validation"""
        g = fat_triangle_with_pendant
        h = DenseSubgraph.from_vertices(g, frozenset({0, 1, 2}), 6)
        psi = PartialEdgeColoring(g, 6, FAT_SIX)
        phi = PartialEdgeColoring(g, 6, {6: 3})
        with pytest.raises(InputError):
            merge_colorings(g, h, psi, phi, MergeMode.protect_color(7))

    def test_protected_color_away_from_boundary(self, fat_triangle_with_pendant):
        """Test protect mode leaves a proper result when no i-edge meets the pendant"""
        g = fat_triangle_with_pendant
        h = DenseSubgraph.from_vertices(g, frozenset({0, 1, 2}), 6)
        psi = PartialEdgeColoring(g, 6, FAT_SIX)
        phi = PartialEdgeColoring(g, 6, {6: 2})
        merged = merge_colorings(g, h, psi, phi, MergeMode.protect_color(2))
        assert merged.color_of(6) == 2
        assert merged.is_total and merged.is_proper

    def test_one_protected_adjacency_at_attachment(self, fat_triangle_with_pendant):
        """Test the single allowed i-adjacency sits at the pendant's end in h"""
        g = fat_triangle_with_pendant
        h = DenseSubgraph.from_vertices(g, frozenset({0, 1, 2}), 6)
        psi = PartialEdgeColoring(g, 6, {0: 1, 1: 3, 2: 2, 3: 4, 4: 5, 5: 6})
        phi = PartialEdgeColoring(g, 6, {6: 2})
        merged = merge_colorings(g, h, psi, phi, MergeMode.protect_color(2))
        assert merged.conflicts() == [(2, 6)]
        assert 2 in g.endpoints(2) and 2 in g.endpoints(6)

    def test_protected_adjacency_off_boundary_rejected(self, fat_triangle_with_pendant):
        """Test an i-adjacency with a non-boundary edge raises StructuralError"""
        g = fat_triangle_with_pendant
        h = DenseSubgraph.from_vertices(g, frozenset({0, 1, 2}), 6).minus(5)
        psi = PartialEdgeColoring(g, 6, {0: 2, 1: 1, 2: 3, 3: 4, 4: 5})
        phi = PartialEdgeColoring(g, 6, {5: 2, 6: 6})
        with pytest.raises(StructuralError):
            merge_colorings(g, h, psi, phi, MergeMode.protect_color(2))

    def test_small_palette(self, fat_triangle_with_pendant):
        """Test psi needs at least Δ colors"""
        g = fat_triangle_with_pendant
        h = DenseSubgraph.from_vertices(g, frozenset({0, 1, 2}), 4)
        psi = PartialEdgeColoring(g, 4)
        phi = PartialEdgeColoring(g, 6)
        with pytest.raises(InputError):
            merge_colorings(g, h, psi, phi)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
