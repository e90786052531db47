"""
Tests for the exact edge-coloring solver and the Δ+μ construction
"""

import pytest

from mgcolor.core.base_color import k_edge_color, vizing_gupta_color
from mgcolor.core.solver import exact_chromatic_index, is_k_colorable, solve_k_coloring
from mgcolor.errors import InputError, ResourceError
from mgcolor.models.graph import Multigraph


@pytest.fixture
def k4() -> Multigraph:
    g = Multigraph(range(4))
    for u in range(4):
        for v in range(u + 1, 4):
            g.add_edge(u, v)
    return g


class TestExactSolver:
    """Tests for solve_k_coloring and exact_chromatic_index"""

    def test_fat_triangle(self, fat_triangle):
        """Test χ' of the fat triangle"""
        chi, witness = exact_chromatic_index(fat_triangle)
        assert chi == 6
        assert witness.is_total and witness.is_proper

    def test_simple_graphs(self, k4, path_graph):
        """Test class-one simple graphs"""
        assert exact_chromatic_index(k4)[0] == 3
        assert exact_chromatic_index(path_graph)[0] == 2

    def test_empty_graph(self):
        """Test a graph without edges"""
        chi, witness = exact_chromatic_index(Multigraph(range(3)))
        assert chi == 0
        assert witness.palette == 0

    def test_no_coloring(self, fat_triangle):
        """Test an impossible palette"""
        assert solve_k_coloring(fat_triangle, 5) is None
        assert not is_k_colorable(fat_triangle, 3)

    def test_precolored_respected(self, fat_triangle):
        """Test fixed colors survive"""
        c = solve_k_coloring(fat_triangle, 6, precolored={0: 6, 3: 1})
        assert c is not None
        assert c.color_of(0) == 6
        assert c.color_of(3) == 1
        assert c.is_proper

    def test_conflicting_precoloring(self, fat_triangle):
        """Test precolored parallel edges with one color"""
        assert solve_k_coloring(fat_triangle, 6, precolored={0: 1, 1: 1}) is None

    def test_budget_exhausted(self, fat_triangle):
        """Test ResourceError carries the proven bounds"""
        with pytest.raises(ResourceError) as info:
            exact_chromatic_index(fat_triangle, budget=1)
        assert info.value.lower == 4
        assert info.value.upper == 6


class TestDeltaPlusMu:
    """Tests for vizing_gupta_color and k_edge_color"""

    def test_fat_triangle(self, fat_triangle):
        """Test the Δ+μ bound on the fat triangle"""
        c = vizing_gupta_color(fat_triangle)
        assert c.is_total and c.is_proper
        assert len(c.used_colors()) <= 6

    def test_twin_triangles(self, twin_triangles):
        """Test a graph with Δ=5"""
        c = vizing_gupta_color(twin_triangles)
        assert c.is_total and c.is_proper
        assert max(c.used_colors()) <= 7

    def test_palette_too_small(self, fat_triangle):
        """Test the palette must reach Δ+μ"""
        with pytest.raises(InputError):
            vizing_gupta_color(fat_triangle, palette=5)

    def test_k_edge_color(self, fat_triangle):
        """Test k_edge_color across the interesting range"""
        assert k_edge_color(fat_triangle, 3) is None
        assert k_edge_color(fat_triangle, 5) is None
        six = k_edge_color(fat_triangle, 6)
        assert six is not None and six.is_total and six.is_proper


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
