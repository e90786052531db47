"""
Tests for the text formats
"""

import pytest

from mgcolor.errors import InputError, ParseError
from mgcolor.formats import (
    format_coloring,
    format_trace,
    parse_coloring_file,
    parse_graph_file,
    parse_precoloring_file,
    parse_trace,
    serialize_graph,
)
from mgcolor.models.coloring import PartialEdgeColoring
from mgcolor.models.extension import TraceStep


class TestGraphFormat:
    """Tests for the mgraph format"""

    def test_multiplicity_expands(self):
        """Test `mult` becomes consecutive parallel ids"""
        g = parse_graph_file("mgraph 2\ne 0 1 2\n")
        assert g.edge_ids == [0, 1]
        assert g.multiplicity(0, 1) == 2

    def test_comments_and_blank_lines(self):
        """Test comments are ignored"""
        g = parse_graph_file("# fat edge\nmgraph 2\n\ne 0 1  # first\ne 1 0\n")
        assert g.num_edges == 2
        assert g.endpoints(1) == (0, 1)

    def test_loop_rejected(self):
        """Test loops carry the line number"""
        with pytest.raises(ParseError) as info:
            parse_graph_file("mgraph 2\ne 0 0\n")
        assert info.value.line_number == 2

    @pytest.mark.parametrize(
        "text",
        [
            "e 0 1\n",
            "",
            "mgraph 2\ne 0 2\n",
            "mgraph 2\ne 0 1 0\n",
            "mgraph x\n",
            "mgraph 2\nmgraph 2\n",
            "mgraph 2\nv 0\n",
        ],
    )
    def test_malformed(self, text):
        """Test malformed graph files"""
        with pytest.raises(ParseError):
            parse_graph_file(text)

    def test_serialize(self, fat_triangle):
        """Test runs of parallel edges collapse"""
        assert serialize_graph(fat_triangle) == "mgraph 3\ne 0 1 2\ne 1 2 2\ne 0 2 2\n"

    def test_serialize_needs_labels(self, fat_triangle):
        """Test vertex labels must be 0..n-1"""
        fat_triangle.add_vertex(7)
        with pytest.raises(InputError):
            serialize_graph(fat_triangle)


class TestColoringFormats:
    """Tests for precoloring and coloring files"""

    def test_precoloring(self, fat_triangle):
        """Test `p` lines"""
        p = parse_precoloring_file("p 0 1\n", fat_triangle)
        assert p.colors == {0: 1}

    def test_precoloring_validated(self, fat_triangle):
        """Test the distance-3 and palette checks"""
        with pytest.raises(InputError):
            parse_precoloring_file("p 0 1\np 2 2\n", fat_triangle)
        with pytest.raises(InputError):
            parse_precoloring_file("p 0 7\n", fat_triangle)

    def test_unknown_edge(self, fat_triangle):
        """Test unknown ids"""
        with pytest.raises(ParseError):
            parse_precoloring_file("p 9 1\n", fat_triangle)

    def test_duplicate_edge(self, fat_triangle):
        """Test an edge listed twice"""
        with pytest.raises(ParseError):
            parse_coloring_file("c 0 1\nc 0 2\n", fat_triangle)

    def test_coloring_palette(self, fat_triangle):
        """Test the palette covers Δ+μ and every color read"""
        assert parse_coloring_file("c 0 1\n", fat_triangle).palette == 6
        assert parse_coloring_file("c 0 9\n", fat_triangle).palette == 9
        with pytest.raises(ParseError):
            parse_coloring_file("c 0 0\n", fat_triangle)

    def test_format_coloring(self, fat_triangle):
        """Test output is sorted by edge id"""
        c = PartialEdgeColoring(fat_triangle, 6, {3: 2, 0: 5})
        assert format_coloring(c) == "c 0 5\nc 3 2\n"
        assert format_coloring(PartialEdgeColoring(fat_triangle, 6)) == ""


class TestTraceFormat:
    """Tests for the JSON trace"""

    def test_key_order(self):
        """Test the fixed key order"""
        text = format_trace([TraceStep("shift", "Op-I", (3, 4), (2, None), 1, 2)], indent=0)
        assert text == (
            '[{"op": "shift", "case": "Op-I", "edges": [3, 4], '
            '"colors": [2, null], "e1_size": 1, "e2_size": 2}]\n'
        )

    def test_parse(self):
        """Test reading a trace back"""
        steps = parse_trace('[{"op": "finish", "edges": [1], "colors": [null]}]')
        assert steps == [TraceStep("finish", None, (1,), (None,), 0, 0)]

    @pytest.mark.parametrize(
        "text",
        ["{", '{"op": "x"}', '[{"op": "x"}]', '[{"op": "x", "edges": [1], "colors": []}]'],
    )
    def test_malformed(self, text):
        """Test malformed traces"""
        with pytest.raises(InputError):
            parse_trace(text)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
