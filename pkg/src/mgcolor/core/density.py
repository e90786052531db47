"""
Density and Dense Subgraphs

Purpose:
    Exact density Γ(G), k-dense vertex sets, maximality, edge criticality and
    the dense structure around a critical edge.

Capabilities:
    - gamma: exact Fraction over odd vertex subsets
    - dense_vertex_sets: odd sets X with |E(G[X])| = (|X|-1)k/2 (degree-sum pruning)
    - maximal_dense_containing / maximal_k_dense_subgraphs
    - is_k_critical_edge / critical_dense_subgraph (exact solver certificates)

Usage:
    print(gamma(g))
    h = critical_dense_subgraph(g, e, k)

Notes:
    - Enumeration is exponential in |V|; intended for |V| <= 12
    - Rationals are exact; no floating point anywhere
"""

from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple
import itertools
import logging
import math

from mgcolor.config import get_settings
from mgcolor.core.solver import exact_chromatic_index, solve_k_coloring
from mgcolor.errors import DefectError, InputError, ResourceError
from mgcolor.models.dense import DenseSubgraph
from mgcolor.models.graph import Multigraph, diameter

logger = logging.getLogger(__name__)


def _pair_counts(g: Multigraph) -> Dict[Tuple[int, int], int]:
    counts: Dict[Tuple[int, int], int] = {}
    for e in g.edge_ids:
        ends = g.endpoints(e)
        counts[ends] = counts.get(ends, 0) + 1
    return counts


def _internal_edges(subset: Tuple[int, ...], counts: Dict[Tuple[int, int], int]) -> int:
    return sum(counts.get(pair, 0) for pair in itertools.combinations(subset, 2))


def _odd_subsets(
    vertices: List[int], low: int, high: int, containing: FrozenSet[int] = frozenset()
) -> Iterator[Tuple[int, ...]]:
    rest = [v for v in vertices if v not in containing]
    fixed = tuple(sorted(containing))
    for size in range(max(3, low), high + 1):
        if size % 2 == 0 or size < len(fixed):
            continue
        for extra in itertools.combinations(rest, size - len(fixed)):
            yield tuple(sorted(fixed + extra))


def gamma(g: Multigraph, max_subset: Optional[int] = None) -> Fraction:
    """
    Γ(G): max over odd X with 3 <= |X| <= bound of 2|E(G[X])|/(|X|-1).

    Args:
        g: Graph
        max_subset: Largest subset size scanned; defaults to the settings value or |V|

    Returns:
        Exact Fraction; 0 when |V| < 3
    """
    bound = max_subset
    if bound is None:
        bound = get_settings().gamma_max_subset
    if bound is None:
        bound = max(len(g), 3)
    if bound < 3:
        raise InputError("gamma needs a subset bound of at least 3")
    if len(g) < 3:
        return Fraction(0)
    if bound < len(g):
        logger.warning(
            "gamma scans subsets up to %d of %d vertices; result is a lower bound", bound, len(g)
        )

    counts = _pair_counts(g)
    best = Fraction(0)
    for subset in _odd_subsets(g.vertices, 3, min(bound, len(g))):
        value = Fraction(2 * _internal_edges(subset, counts), len(subset) - 1)
        if value > best:
            best = value
    return best


def density_lower_bound(g: Multigraph) -> int:
    """max(Δ, ⌈Γ⌉), a lower bound on the chromatic index"""
    return max(g.max_degree, math.ceil(gamma(g)))


def dense_vertex_sets(
    g: Multigraph, k: int, containing: Iterable[int] = ()
) -> List[FrozenSet[int]]:
    """
    Odd vertex sets X ⊇ containing with |E(G[X])| = (|X|-1)k/2.

    Sorted by (size, sorted vertices).
    """
    required = frozenset(containing)
    for v in required:
        if v not in g:
            raise InputError(f"unknown vertex {v}")
    counts = _pair_counts(g)
    degree = {v: g.degree(v) for v in g.vertices}

    found: List[FrozenSet[int]] = []
    for subset in _odd_subsets(g.vertices, 3, len(g), required):
        target = (len(subset) - 1) * k
        if sum(degree[v] for v in subset) < target:
            continue
        if 2 * _internal_edges(subset, counts) == target:
            found.append(frozenset(subset))
    return found


def _maximal(sets: List[FrozenSet[int]]) -> List[FrozenSet[int]]:
    return [x for x in sets if not any(x < y for y in sets)]


def maximal_dense_containing(
    g: Multigraph, vertices: Iterable[int], k: int
) -> Optional[DenseSubgraph]:
    """
    The unique maximal k-dense subgraph containing `vertices`, or None.

    Raises:
        InputError: Two distinct maximal candidates (the graph is not k-colorable
            with k >= Δ+1, so uniqueness does not hold)
    """
    maximal = _maximal(dense_vertex_sets(g, k, vertices))
    if not maximal:
        return None
    if len(maximal) > 1:
        raise InputError(
            f"maximal {k}-dense subgraph containing {sorted(set(vertices))} is not unique"
        )
    return DenseSubgraph.from_vertices(g, maximal[0], k)


# ============ Criticality ============

def is_k_critical_edge(
    g: Multigraph, e: int, k: int, budget: Optional[int] = None
) -> bool:
    """True iff χ'(g-e) = k and χ'(g) = k+1, both decided by the exact solver"""
    if not g.has_edge(e):
        raise InputError(f"unknown edge id {e}")
    rest = g.without_edges([e])
    if solve_k_coloring(rest, k, budget) is None:
        return False
    if k >= 1 and solve_k_coloring(rest, k - 1, budget) is not None:
        return False
    return solve_k_coloring(g, k, budget) is None


def critical_dense_subgraph(
    g: Multigraph, e: int, k: int, budget: Optional[int] = None
) -> DenseSubgraph:
    """
    The maximal k-dense subgraph H of g-e with V(e) ⊆ V(H).

    Args:
        g: Graph in which e is k-critical
        e: The critical edge
        k: Palette size, at least Δ(g)+1

    Returns:
        H, hosted on g-e

    Raises:
        InputError: k < Δ+1 or e not k-critical
        ResourceError: No k-dense subgraph contains V(e)
        DefectError: A structural certificate failed
    """
    delta, mu = g.max_degree, g.max_multiplicity
    if k < delta + 1:
        raise InputError(f"critical_dense_subgraph needs k >= Δ+1 = {delta + 1}, got {k}")
    if not is_k_critical_edge(g, e, k, budget):
        raise InputError(f"edge {e} is not {k}-critical")

    rest = g.without_edges([e])
    h = maximal_dense_containing(rest, g.endpoints(e), k)
    if h is None:
        raise ResourceError(f"no {k}-dense subgraph contains the ends of edge {e}")

    h_plus = h.plus(e, host=g)
    plus_graph = h_plus.subgraph()
    if not is_k_critical_edge(plus_graph, e, k, budget):
        raise DefectError(f"edge {e} is not {k}-critical inside its dense subgraph")

    if k + 1 == delta + mu:
        checks = {
            "max degree": plus_graph.max_degree == delta,
            "max multiplicity": plus_graph.max_multiplicity == mu,
            "diameter": diameter(rest, h.vertices) <= 2,
        }
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            raise DefectError(f"dense subgraph around edge {e} fails: {', '.join(failed)}")
    logger.debug("edge %d: dense subgraph %s", e, sorted(h.vertices))
    return h


def maximal_k_dense_subgraphs(
    g: Multigraph, k: int, budget: Optional[int] = None
) -> List[DenseSubgraph]:
    """
    All maximal k-dense subgraphs of a graph with χ'(g) = k >= Δ+1.

    Returns an empty list (with a warning) when the precondition fails.
    Results are pairwise vertex-disjoint, sorted by least vertex.
    """
    if k < g.max_degree + 1:
        logger.warning("k=%d below Δ+1=%d; no dense structure reported", k, g.max_degree + 1)
        return []
    chi, _ = exact_chromatic_index(g, budget)
    if chi != k:
        logger.warning("chromatic index is %d, not %d; no dense structure reported", chi, k)
        return []

    maximal = sorted(_maximal(dense_vertex_sets(g, k)), key=min)
    for a, b in itertools.combinations(maximal, 2):
        if a & b:
            raise DefectError(f"maximal {k}-dense subgraphs {sorted(a)} and {sorted(b)} overlap")
    return [DenseSubgraph.from_vertices(g, x, k) for x in maximal]
