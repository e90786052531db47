"""
Property-based tests on small random multigraphs
"""

import itertools
import math

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from mgcolor.core.base_color import vizing_gupta_color
from mgcolor.core.coloring import kempe_chain, kempe_swap_subchain
from mgcolor.core.density import gamma
from mgcolor.core.extend import extend_precoloring, replay_trace
from mgcolor.core.oracle import verify_extension
from mgcolor.core.solver import exact_chromatic_index
from mgcolor.models.coloring import ChainShape
from mgcolor.models.extension import Precoloring
from mgcolor.models.graph import Multigraph

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


@st.composite
def multigraphs(draw: st.DrawFn, max_vertices: int = 6, max_edges: int = 10) -> Multigraph:
    n = draw(st.integers(min_value=2, max_value=max_vertices))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=max_edges))
    g = Multigraph(range(n))
    for u, v in chosen:
        if g.multiplicity(u, v) < 3:
            g.add_edge(u, v)
    return g


class TestColoringProperties:
    """Invariants of the constructive and exact colorings"""

    @PROPERTY_SETTINGS
    @given(g=multigraphs())
    def test_delta_plus_mu(self, g: Multigraph) -> None:
        """Test the construction is proper, total and within Δ+μ"""
        c = vizing_gupta_color(g)
        assert c.is_total
        assert c.is_proper
        assert max(c.used_colors()) <= g.max_degree + g.max_multiplicity

    @PROPERTY_SETTINGS
    @given(g=multigraphs(max_vertices=5, max_edges=8))
    def test_chromatic_index_bounds(self, g: Multigraph) -> None:
        """Test max(Δ, ⌈Γ⌉) <= χ' <= Δ+μ, with equality to ⌈Γ⌉ above Δ+1"""
        chi, witness = exact_chromatic_index(g)
        bound = math.ceil(gamma(g))
        assert max(g.max_degree, bound) <= chi <= g.max_degree + g.max_multiplicity
        assert witness.is_total and witness.is_proper
        if chi >= g.max_degree + 2:
            assert chi == bound

    @PROPERTY_SETTINGS
    @given(g=multigraphs(), data=st.data())
    def test_kempe_swap_is_an_involution(self, g: Multigraph, data: st.DataObject) -> None:
        """Test swapping a whole chain twice restores the coloring"""
        c = vizing_gupta_color(g)
        e = data.draw(st.sampled_from(g.edge_ids))
        v = data.draw(st.sampled_from(g.endpoints(e)))
        alpha = c.color_of(e)
        assert alpha is not None
        beta = data.draw(st.sampled_from([b for b in range(1, c.palette + 1) if b != alpha]))
        chain = kempe_chain(c, v, alpha, beta)
        a = chain.vertices[0]
        b = a if chain.shape is ChainShape.CYCLE else chain.vertices[-1]
        swapped = kempe_swap_subchain(c, chain, a, b)
        assert swapped.is_proper
        assert kempe_swap_subchain(swapped, chain, a, b) == c


class TestExtensionProperties:
    """The extension always verifies and replays"""

    @PROPERTY_SETTINGS
    @given(g=multigraphs(max_vertices=5, max_edges=8), data=st.data())
    def test_single_precolored_edge(self, g: Multigraph, data: st.DataObject) -> None:
        """Test one precolored edge always extends"""
        assume(g.max_multiplicity >= 2)
        top = g.max_degree + g.max_multiplicity
        f = data.draw(st.sampled_from(g.edge_ids))
        color = data.draw(st.integers(min_value=1, max_value=top))
        p = Precoloring.build(g, {f: color})

        result = extend_precoloring(g, p)
        assert verify_extension(g, p, result.coloring)
        assert replay_trace(g, result.trace, result.coloring.palette) == result.coloring


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
