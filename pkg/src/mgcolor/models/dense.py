"""
Dense Subgraph Model

A DenseSubgraph is an odd vertex set of a host graph together with the
edge set it stands for. Found subgraphs are induced; H+e and H-e views used
during recoloring are flagged as not induced.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional

from mgcolor.errors import InputError
from mgcolor.models.graph import EdgeSet, Multigraph, boundary, induced_edges


@dataclass(frozen=True)
class DenseSubgraph:
    """
    Vertex set + parameter k + the edges of the subgraph.

    Attributes:
        host: Graph the subgraph lives in
        vertices: Vertex set (odd, at least 3)
        k: Density parameter
        edges: Edge ids of the subgraph (defaults to the induced edges)
        induced: False for H+e / H-e views
    """
    host: Multigraph = field(compare=False, repr=False)
    vertices: FrozenSet[int]
    k: int
    edges: FrozenSet[int] = frozenset()
    induced: bool = True

    @classmethod
    def from_vertices(cls, host: Multigraph, vertices: FrozenSet[int], k: int) -> "DenseSubgraph":
        ids = induced_edges(host, vertices).ids
        return cls(host=host, vertices=frozenset(vertices), k=k, edges=ids, induced=True)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def is_dense(self) -> bool:
        """|E| = (|V|-1)k/2"""
        n = len(self.vertices)
        return n >= 3 and n % 2 == 1 and 2 * self.edge_count == (n - 1) * self.k

    @property
    def least_vertex(self) -> int:
        return min(self.vertices)

    def boundary(self, graph: Optional[Multigraph] = None) -> EdgeSet:
        return boundary(graph or self.host, self.vertices)

    def subgraph(self) -> Multigraph:
        return self.host.edge_subgraph(self.edges, self.vertices)

    def plus(self, e: int, host: Optional[Multigraph] = None) -> "DenseSubgraph":
        """H+e, optionally rehosted on a graph that contains e"""
        graph = host or self.host
        if not set(graph.endpoints(e)) <= self.vertices:
            raise InputError(f"edge {e} does not lie inside the subgraph")
        return DenseSubgraph(graph, self.vertices, self.k, self.edges | {e}, induced=False)

    def minus(self, e: int, host: Optional[Multigraph] = None) -> "DenseSubgraph":
        graph = host or self.host
        return DenseSubgraph(graph, self.vertices, self.k, self.edges - {e}, induced=False)

    def rehosted(self, host: Multigraph) -> "DenseSubgraph":
        return DenseSubgraph(host, self.vertices, self.k, self.edges, self.induced)

    def to_dict(self) -> Dict[str, object]:
        return {
            "vertices": sorted(self.vertices),
            "k": self.k,
            "edge_count": self.edge_count,
            "boundary": sorted(self.boundary().ids),
        }
