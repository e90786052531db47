"""
Exact Edge-Coloring Search

Purpose:
    Ground-truth chromatic index and k-colorability for desk-scale multigraphs.

Capabilities:
    - DSATUR-style backtracking on edges: fewest free colors first, ties
      broken by descending degree sum of the ends, then by edge id
    - Forward checking on bitmasks of present colors per vertex
    - Symmetry breaking on interchangeable colors when nothing is precolored
    - Hard node budget: exhausting it raises ResourceError, never a wrong answer

Usage:
    chi, witness = exact_chromatic_index(g)
    coloring = solve_k_coloring(g, 5)
"""

from typing import Dict, List, Mapping, Optional, Tuple
import logging

from mgcolor.config import get_settings
from mgcolor.errors import DefectError, InputError, ResourceError
from mgcolor.models.coloring import PartialEdgeColoring
from mgcolor.models.graph import Multigraph

logger = logging.getLogger(__name__)


class _BudgetExhausted(Exception):
    pass


class EdgeColoringSearch:
    """
    Backtracking search for a proper k-edge-coloring.

    Edges are chosen dynamically: fewest free colors, then larger degree sum,
    then smaller id. Colors are tried in ascending order.
    """

    def __init__(
        self,
        g: Multigraph,
        k: int,
        budget: int,
        precolored: Optional[Mapping[int, int]] = None,
    ):
        if k < 0:
            raise InputError("palette size must be nonnegative")
        self.g = g
        self.k = k
        self.budget = budget
        self.nodes = 0
        self.precolored = dict(precolored or {})
        self._full = (1 << k) - 1
        self._ends: Dict[int, Tuple[int, int]] = {e: g.endpoints(e) for e in g.edge_ids}
        self._degree_sum = {e: g.degree(u) + g.degree(v) for e, (u, v) in self._ends.items()}
        self._used: Dict[int, int] = {v: 0 for v in g.vertices}
        self._colors: Dict[int, int] = {}
        self._open: List[int] = []

    def solve(self) -> Optional[PartialEdgeColoring]:
        """
        Returns:
            A proper k-coloring extending the precolored edges, or None

        Raises:
            ResourceError: Budget exhausted
        """
        for e, color in sorted(self.precolored.items()):
            if e not in self._ends:
                raise InputError(f"precolored edge {e} not in graph")
            if not 1 <= color <= self.k:
                return None
            u, v = self._ends[e]
            bit = 1 << (color - 1)
            if (self._used[u] | self._used[v]) & bit:
                return None
            self._place(e, color)
        self._open = [e for e in self.g.edge_ids if e not in self._colors]

        try:
            found = self._search(max_used=0)
        except _BudgetExhausted:
            raise ResourceError(
                f"solver budget of {self.budget} nodes exhausted at k={self.k}"
            ) from None
        logger.debug("k=%d search: %s after %d nodes", self.k, found, self.nodes)
        if not found:
            return None
        return PartialEdgeColoring(self.g, self.k, self._colors)

    def _place(self, e: int, color: int) -> None:
        u, v = self._ends[e]
        bit = 1 << (color - 1)
        self._used[u] |= bit
        self._used[v] |= bit
        self._colors[e] = color

    def _lift(self, e: int) -> None:
        u, v = self._ends[e]
        bit = 1 << (self._colors.pop(e) - 1)
        self._used[u] &= ~bit
        self._used[v] &= ~bit

    def _free(self, e: int) -> int:
        u, v = self._ends[e]
        return self._full & ~(self._used[u] | self._used[v])

    def _search(self, max_used: int) -> bool:
        if not self._open:
            return True
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted()

        best: Optional[int] = None
        best_key: Optional[Tuple[int, int, int]] = None
        for e in self._open:
            count = self._free(e).bit_count()
            if count == 0:
                return False
            key = (count, -self._degree_sum[e], e)
            if best_key is None or key < best_key:
                best, best_key = e, key
        assert best is not None

        free = self._free(best)
        symmetric = not self.precolored
        self._open.remove(best)
        for color in range(1, self.k + 1):
            if symmetric and color > max_used + 1:
                break
            if not free & (1 << (color - 1)):
                continue
            self._place(best, color)
            if self._search(max(max_used, color)):
                return True
            self._lift(best)
        self._open.append(best)
        return False


# ============ Entry Points ============

def solve_k_coloring(
    g: Multigraph,
    k: int,
    budget: Optional[int] = None,
    precolored: Optional[Mapping[int, int]] = None,
) -> Optional[PartialEdgeColoring]:
    """A proper k-coloring of g agreeing with `precolored`, or None"""
    if budget is None:
        budget = get_settings().solver_budget
    if g.num_edges and k < g.max_degree:
        return None
    return EdgeColoringSearch(g, k, budget, precolored).solve()


def is_k_colorable(g: Multigraph, k: int, budget: Optional[int] = None) -> bool:
    return solve_k_coloring(g, k, budget) is not None


def exact_chromatic_index(
    g: Multigraph, budget: Optional[int] = None
) -> Tuple[int, PartialEdgeColoring]:
    """
    Exact chromatic index with a proper witness.

    Tries k = Δ, Δ+1, ... Δ+μ under one shared node budget.

    Raises:
        ResourceError: Budget exhausted; carries the bounds proven so far
    """
    if budget is None:
        budget = get_settings().solver_budget
    if g.num_edges == 0:
        return 0, PartialEdgeColoring(g, 0)

    delta, mu = g.max_degree, g.max_multiplicity
    remaining = budget
    for k in range(delta, delta + mu + 1):
        search = EdgeColoringSearch(g, k, remaining)
        try:
            witness = search.solve()
        except ResourceError:
            raise ResourceError(
                "chromatic index not certified within budget", lower=k, upper=delta + mu
            ) from None
        remaining -= search.nodes
        if witness is not None:
            logger.debug("chromatic index %d (Δ=%d, μ=%d)", k, delta, mu)
            return k, witness
    raise DefectError(f"no {delta + mu}-coloring found; the Δ+μ bound cannot fail")
