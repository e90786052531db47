"""
Multigraph Model

Purpose:
    Loop-free multigraph with stable integer edge ids, plus the metric and
    matching notions used by the coloring engine.

Capabilities:
    - Parallel edges as individuals (never collapsed into weights)
    - Tombstoned deletion: removed ids are never reused
    - Subgraph views (G-F, G-N, G[X], H+e) that keep the host's edge ids
    - Edge distance, distance-t matchings, boundaries and diameters (BFS via networkx)

Usage:
    g = Multigraph(range(3))
    ab = g.add_edge(0, 1)
    g.add_edge(0, 1)
    print(g.max_degree, g.max_multiplicity)
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple, Union
import itertools
import math

import networkx as nx

from mgcolor.errors import InputError

Distance = Union[int, float]


class EdgeRole(Enum):
    """Role tags for edge sets"""
    GENERIC = "generic"
    PRECOLORED = "M"
    TOP_COLOR = "M_top"
    SATURATED = "M*"
    SPECIAL = "special"
    BOUNDARY = "boundary"
    E1 = "E1"
    E2 = "E2"


class Multigraph:
    """
    Undirected multigraph without loops.

    Edge ids are dense integers in insertion order. Removing an edge
    tombstones its id; restore_edge brings it back under the same id.
    Degree, Δ and μ are always computed from the current edge set.
    """

    def __init__(self, vertices: Iterable[int] = ()):
        self._vertices: Set[int] = set()
        self._ends: Dict[int, Tuple[int, int]] = {}
        self._incidence: Dict[int, Set[int]] = {}
        self._removed: Dict[int, Tuple[int, int]] = {}
        self._next_id = 0
        for v in vertices:
            self.add_vertex(v)

    # ============ Mutation ============

    def add_vertex(self, v: int) -> None:
        if v not in self._vertices:
            self._vertices.add(v)
            self._incidence[v] = set()

    def add_edge(self, u: int, v: int, edge_id: Optional[int] = None) -> int:
        """
        Add an edge between u and v.

        Args:
            u, v: Endpoints (added as vertices when missing)
            edge_id: Explicit id, used by views that must keep host ids

        Returns:
            The edge id
        """
        if u == v:
            raise InputError(f"loop at vertex {u} is not allowed")
        if edge_id is None:
            edge_id = self._next_id
        elif edge_id in self._ends:
            raise InputError(f"edge id {edge_id} already in use")
        self.add_vertex(u)
        self.add_vertex(v)
        self._ends[edge_id] = (u, v) if u <= v else (v, u)
        self._incidence[u].add(edge_id)
        self._incidence[v].add(edge_id)
        self._removed.pop(edge_id, None)
        self._next_id = max(self._next_id, edge_id + 1)
        return edge_id

    def remove_edge(self, e: int) -> Tuple[int, int]:
        """Remove an edge, keeping its id reserved"""
        u, v = self.endpoints(e)
        del self._ends[e]
        self._incidence[u].discard(e)
        self._incidence[v].discard(e)
        self._removed[e] = (u, v)
        return u, v

    def restore_edge(self, e: int) -> None:
        """Re-insert a removed edge under its original id"""
        if e not in self._removed:
            raise InputError(f"edge {e} was never removed")
        u, v = self._removed[e]
        self.add_edge(u, v, edge_id=e)

    # ============ Queries ============

    @property
    def vertices(self) -> List[int]:
        return sorted(self._vertices)

    @property
    def edge_ids(self) -> List[int]:
        return sorted(self._ends)

    @property
    def num_edges(self) -> int:
        return len(self._ends)

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._vertices

    def has_edge(self, e: int) -> bool:
        return e in self._ends

    def endpoints(self, e: int) -> Tuple[int, int]:
        try:
            return self._ends[e]
        except KeyError:
            raise InputError(f"unknown edge id {e}") from None

    def other_end(self, e: int, v: int) -> int:
        u, w = self.endpoints(e)
        if v == u:
            return w
        if v == w:
            return u
        raise InputError(f"vertex {v} is not an endpoint of edge {e}")

    def incident_edges(self, v: int) -> List[int]:
        self._require_vertex(v)
        return sorted(self._incidence[v])

    def degree(self, v: int) -> int:
        self._require_vertex(v)
        return len(self._incidence[v])

    def edges_between(self, u: int, v: int) -> List[int]:
        self._require_vertex(u)
        self._require_vertex(v)
        return sorted(e for e in self._incidence[u] if self.other_end(e, u) == v)

    def multiplicity(self, u: int, v: int) -> int:
        return len(self.edges_between(u, v))

    def neighbors(self, v: int) -> List[int]:
        return sorted({self.other_end(e, v) for e in self.incident_edges(v)})

    def adjacent_edges(self, e: int) -> List[int]:
        """Edges sharing at least one endpoint with e (e excluded)"""
        u, v = self.endpoints(e)
        return sorted((self._incidence[u] | self._incidence[v]) - {e})

    @property
    def max_degree(self) -> int:
        return max((len(ids) for ids in self._incidence.values()), default=0)

    @property
    def max_multiplicity(self) -> int:
        counts: Dict[Tuple[int, int], int] = {}
        for ends in self._ends.values():
            counts[ends] = counts.get(ends, 0) + 1
        return max(counts.values(), default=0)

    def _require_vertex(self, v: int) -> None:
        if v not in self._vertices:
            raise InputError(f"unknown vertex {v}")

    # ============ Views ============

    def copy(self) -> "Multigraph":
        g = Multigraph(self._vertices)
        for e in self.edge_ids:
            g.add_edge(*self._ends[e], edge_id=e)
        g._removed = dict(self._removed)
        g._next_id = self._next_id
        return g

    def without_edges(self, ids: Iterable[int]) -> "Multigraph":
        """G - F, ids preserved"""
        g = self.copy()
        for e in sorted(set(ids)):
            g.remove_edge(e)
        return g

    def without_vertices(self, vertices: Iterable[int]) -> "Multigraph":
        """G - N: drop the vertices and every incident edge"""
        drop = set(vertices)
        return self.induced(v for v in self._vertices if v not in drop)

    def induced(self, vertices: Iterable[int]) -> "Multigraph":
        """G[X] with host ids"""
        keep = set(vertices)
        for v in keep:
            self._require_vertex(v)
        g = Multigraph(keep)
        for e, (u, v) in sorted(self._ends.items()):
            if u in keep and v in keep:
                g.add_edge(u, v, edge_id=e)
        g._next_id = self._next_id
        return g

    def edge_subgraph(self, ids: Iterable[int], vertices: Iterable[int] = ()) -> "Multigraph":
        """Subgraph with exactly the given edges, plus any extra vertices"""
        g = Multigraph(vertices)
        for e in sorted(set(ids)):
            g.add_edge(*self.endpoints(e), edge_id=e)
        g._next_id = self._next_id
        return g

    def to_networkx(self) -> nx.MultiGraph:
        nxg = nx.MultiGraph()
        nxg.add_nodes_from(self.vertices)
        for e in self.edge_ids:
            u, v = self._ends[e]
            nxg.add_edge(u, v, key=e)
        return nxg

    def to_dict(self) -> Dict[str, object]:
        return {
            "vertices": self.vertices,
            "edges": [[e, *self._ends[e]] for e in self.edge_ids],
        }

    def __repr__(self) -> str:
        return f"Multigraph(n={len(self._vertices)}, m={len(self._ends)})"


@dataclass(frozen=True)
class EdgeSet:
    """
    Role-tagged set of edge ids of a host graph.

    Attributes:
        host: Graph every id belongs to
        ids: The edge ids
        role: What the set stands for (M, M*, boundary, E1, ...)
    """
    host: Multigraph = field(compare=False, repr=False)
    ids: FrozenSet[int] = frozenset()
    role: EdgeRole = EdgeRole.GENERIC

    def __post_init__(self) -> None:
        object.__setattr__(self, "ids", frozenset(self.ids))
        unknown = sorted(e for e in self.ids if not self.host.has_edge(e))
        if unknown:
            raise InputError(f"edge ids {unknown} not in host graph")

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.ids))

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, e: object) -> bool:
        return e in self.ids

    def vertices(self) -> Set[int]:
        return {v for e in self.ids for v in self.host.endpoints(e)}

    def is_matching(self) -> bool:
        return is_matching(self.host, self.ids)

    def to_dict(self) -> Dict[str, object]:
        return {"role": self.role.value, "ids": sorted(self.ids)}


# ============ Metric and Matching Operations ============

def _bfs_lengths(g: Multigraph, sources: Iterable[int]) -> Dict[int, int]:
    lengths: Dict[int, int] = {}
    nxg = g.to_networkx()
    for s in sources:
        for v, d in nx.single_source_shortest_path_length(nxg, s).items():
            if d < lengths.get(v, math.inf):
                lengths[v] = d
    return lengths


def edge_distance(g: Multigraph, e: int, f: int) -> Distance:
    """
    Length of a shortest path between an endvertex of e and an endvertex of f.

    Returns 0 for edges sharing an endpoint and math.inf when no path exists.
    """
    if e == f:
        raise InputError("edge_distance needs two distinct edges")
    ends_e = g.endpoints(e)
    ends_f = g.endpoints(f)
    lengths = _bfs_lengths(g, ends_e)
    return min((lengths[v] for v in ends_f if v in lengths), default=math.inf)


def is_distance_t_matching(g: Multigraph, m: Iterable[int], t: int) -> bool:
    """True iff all pairs of edges in m are at distance at least t"""
    if t < 1:
        raise InputError("t must be positive")
    ids = sorted(set(m))
    for e in ids:
        g.endpoints(e)
    return all(edge_distance(g, e, f) >= t for e, f in itertools.combinations(ids, 2))


def is_matching(g: Multigraph, ids: Iterable[int]) -> bool:
    seen: Set[int] = set()
    for e in sorted(set(ids)):
        u, v = g.endpoints(e)
        if u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def boundary(g: Multigraph, x: Iterable[int]) -> EdgeSet:
    """Edges with exactly one endpoint in x"""
    inside = set(x)
    ids = []
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        if (u in inside) != (v in inside):
            ids.append(e)
    return EdgeSet(g, frozenset(ids), EdgeRole.BOUNDARY)


def induced_edges(g: Multigraph, x: Iterable[int]) -> EdgeSet:
    """E(G[X])"""
    inside = set(x)
    ids = [e for e in g.edge_ids if set(g.endpoints(e)) <= inside]
    return EdgeSet(g, frozenset(ids))


def edges_across(g: Multigraph, x: Iterable[int], y: Iterable[int]) -> EdgeSet:
    """E_G(X, Y): edges with one endpoint in X and the other in Y"""
    xs, ys = set(x), set(y)
    ids = []
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        if (u in xs and v in ys) or (u in ys and v in xs):
            ids.append(e)
    return EdgeSet(g, frozenset(ids))


def diameter(g: Multigraph, x: Iterable[int]) -> Distance:
    """Diameter of G[X]; math.inf when G[X] is disconnected"""
    vertices = set(x)
    if not vertices:
        raise InputError("diameter needs a nonempty vertex set")
    if len(vertices) == 1:
        return 0
    nxg = g.induced(vertices).to_networkx()
    if not nx.is_connected(nxg):
        return math.inf
    return int(nx.diameter(nxg))


def disjoint_union(g: Multigraph, h: Multigraph) -> Multigraph:
    """Union with h's vertices shifted past g's largest vertex; h's edges get fresh ids"""
    union = g.copy()
    offset = max(g.vertices, default=-1) + 1
    for v in h.vertices:
        union.add_vertex(v + offset)
    for e in h.edge_ids:
        u, v = h.endpoints(e)
        union.add_edge(u + offset, v + offset)
    return union
