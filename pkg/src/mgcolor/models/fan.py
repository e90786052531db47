"""
Multi-Fan Models

A multi-fan at x is a sequence of distinct edges at x, each colored with a
color missing at an earlier fan vertex. Vertices may repeat. A linear
sequence is a repetition-free walk through a fan.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from mgcolor.models.coloring import PartialEdgeColoring
from mgcolor.models.graph import Multigraph


@dataclass(frozen=True)
class FanEntry:
    """One fan position: edge e_i joining the center to vertex y_i"""
    edge: int
    vertex: int


@dataclass(frozen=True)
class MultiFan:
    """
    Multi-fan at `center` with respect to `anchor`.

    Attributes:
        center: The vertex x
        entries: (e_0, y_0), (e_1, y_1), ...; entries[0] holds the anchor
        graph: Host graph the fan was grown in
        coloring: Coloring the fan was grown under (graph == coloring.graph)
        forbidden: Color no fan edge may carry, if any
    """
    center: int
    entries: Tuple[FanEntry, ...]
    graph: Multigraph = field(compare=False, repr=False)
    coloring: PartialEdgeColoring = field(compare=False, repr=False)
    forbidden: Optional[int] = None

    @property
    def anchor(self) -> int:
        return self.entries[0].edge

    @property
    def y0(self) -> int:
        return self.entries[0].vertex

    @property
    def edges(self) -> List[int]:
        return [entry.edge for entry in self.entries]

    @property
    def rim(self) -> List[int]:
        """Distinct fan vertices other than the center, in order of first appearance"""
        seen: List[int] = []
        for entry in self.entries:
            if entry.vertex not in seen:
                seen.append(entry.vertex)
        return seen

    @property
    def vertex_set(self) -> List[int]:
        """V(F), center first"""
        return [self.center, *self.rim]

    def multiplicity(self, z: int) -> int:
        """e_F(x, z)"""
        return sum(1 for entry in self.entries if entry.vertex == z)

    def truncated(self, length: int) -> "MultiFan":
        entries = self.entries[:length]
        return MultiFan(self.center, entries, self.graph, self.coloring, self.forbidden)

    def __len__(self) -> int:
        return len(self.entries)

    def to_dict(self) -> Dict[str, object]:
        return {
            "center": self.center,
            "entries": [[entry.edge, entry.vertex] for entry in self.entries],
            "forbidden": self.forbidden,
        }


@dataclass(frozen=True)
class LinearSequence:
    """
    (y_0, e_1, y_1, ..., e_s, y_s) at `center`.

    edges[t - 1] is e_t, so len(edges) == s and len(vertices) == s + 1.
    """
    center: int
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def target(self) -> int:
        return self.vertices[-1]

    def edge(self, t: int) -> int:
        """e_t for 1 <= t <= s"""
        return self.edges[t - 1]

    def prefix(self, vertex: int) -> "LinearSequence":
        """Sub-sequence from y_0 up to `vertex`"""
        index = self.vertices.index(vertex)
        return LinearSequence(self.center, self.vertices[: index + 1], self.edges[:index])

    def to_dict(self) -> Dict[str, object]:
        return {"center": self.center, "vertices": list(self.vertices), "edges": list(self.edges)}
