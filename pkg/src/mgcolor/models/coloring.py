"""
Edge Coloring Models

PartialEdgeColoring (colors 1..k, explicit uncolored edges, properness checked
on demand) and the KempeChain value object.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Set, Tuple

from mgcolor.errors import InputError
from mgcolor.models.graph import Multigraph


class ChainShape(Enum):
    """Shape of a two-colored component"""
    PATH = "path"
    CYCLE = "cycle"


class PartialEdgeColoring:
    """
    Assignment of colors 1..palette to edges of a host graph.

    Edges absent from the assignment are uncolored. Improper states are
    representable; `is_proper` re-validates on every call.
    """

    def __init__(
        self,
        graph: Multigraph,
        palette: int,
        assignment: Optional[Mapping[int, Optional[int]]] = None,
    ):
        if palette < 0:
            raise InputError("palette size must be nonnegative")
        self.graph = graph
        self.palette = palette
        self._colors: Dict[int, int] = {}
        for e, color in (assignment or {}).items():
            if color is not None:
                self.assign(e, color)

    # ============ Assignment ============

    def color_of(self, e: int) -> Optional[int]:
        return self._colors.get(e)

    def assign(self, e: int, color: int) -> None:
        if not self.graph.has_edge(e):
            raise InputError(f"unknown edge id {e}")
        if not 1 <= color <= self.palette:
            raise InputError(f"color {color} outside palette 1..{self.palette}")
        self._colors[e] = color

    def uncolor(self, e: int) -> None:
        self._colors.pop(e, None)

    def put(self, e: int, color: Optional[int]) -> None:
        if color is None:
            self.uncolor(e)
        else:
            self.assign(e, color)

    def copy(self) -> "PartialEdgeColoring":
        c = PartialEdgeColoring(self.graph, self.palette)
        c._colors = dict(self._colors)
        return c

    def with_changes(self, changes: Mapping[int, Optional[int]]) -> "PartialEdgeColoring":
        c = self.copy()
        for e, color in changes.items():
            c.put(e, color)
        return c

    def restricted(
        self, graph: Multigraph, palette: Optional[int] = None
    ) -> "PartialEdgeColoring":
        """The coloring on the edges of `graph` (a subgraph sharing ids)"""
        c = PartialEdgeColoring(graph, self.palette if palette is None else palette)
        for e in graph.edge_ids:
            color = self._colors.get(e)
            if color is not None:
                c.assign(e, color)
        return c

    def extended(self, graph: Multigraph, palette: Optional[int] = None) -> "PartialEdgeColoring":
        """The same colors on a supergraph; new edges start uncolored"""
        c = PartialEdgeColoring(graph, self.palette if palette is None else palette)
        for e, color in self._colors.items():
            if graph.has_edge(e):
                c.assign(e, color)
        return c

    # ============ Queries ============

    def present(self, v: int) -> Set[int]:
        colors = (self._colors.get(e) for e in self.graph.incident_edges(v))
        return {color for color in colors if color is not None}

    def missing(self, v: int) -> Set[int]:
        return set(range(1, self.palette + 1)) - self.present(v)

    def edge_with_color(self, v: int, color: int) -> Optional[int]:
        """Smallest edge at v carrying color"""
        for e in self.graph.incident_edges(v):
            if self._colors.get(e) == color:
                return e
        return None

    def edges_with_color(self, color: int) -> List[int]:
        return sorted(e for e, c in self._colors.items() if c == color)

    def colored_edges(self) -> Dict[int, int]:
        return {e: self._colors[e] for e in sorted(self._colors)}

    def uncolored_edges(self) -> List[int]:
        return [e for e in self.graph.edge_ids if e not in self._colors]

    def used_colors(self) -> Set[int]:
        return set(self._colors.values())

    @property
    def is_total(self) -> bool:
        return all(e in self._colors for e in self.graph.edge_ids)

    def conflicts(self) -> List[Tuple[int, int]]:
        """Pairs of adjacent equally colored edges, sorted"""
        pairs: Set[Tuple[int, int]] = set()
        for v in self.graph.vertices:
            by_color: Dict[int, List[int]] = {}
            for e in self.graph.incident_edges(v):
                color = self._colors.get(e)
                if color is not None:
                    by_color.setdefault(color, []).append(e)
            for ids in by_color.values():
                for a_index, a in enumerate(ids):
                    for b in ids[a_index + 1:]:
                        pairs.add((a, b) if a < b else (b, a))
        return sorted(pairs)

    @property
    def is_proper(self) -> bool:
        return not self.conflicts()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialEdgeColoring):
            return NotImplemented
        return self.palette == other.palette and self._colors == other._colors

    def __repr__(self) -> str:
        return (
            f"PartialEdgeColoring(palette={self.palette}, "
            f"colored={len(self._colors)}/{self.graph.num_edges})"
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "palette": self.palette,
            "colors": {str(e): c for e, c in self.colored_edges().items()},
        }


@dataclass(frozen=True)
class KempeChain:
    """
    A component of the subgraph of edges colored alpha or beta.

    Paths start at the smaller endvertex. Cycles start at their smallest
    vertex and leave it along the smaller of its two chain edges.
    """
    alpha: int
    beta: int
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]
    shape: ChainShape

    @property
    def endvertices(self) -> Tuple[int, ...]:
        if self.shape is ChainShape.CYCLE:
            return ()
        return (self.vertices[0], self.vertices[-1])

    def contains_vertex(self, v: int) -> bool:
        return v in self.vertices

    def position(self, v: int) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise InputError(f"vertex {v} is not on the chain") from None

    def to_dict(self) -> Dict[str, object]:
        return {
            "colors": [self.alpha, self.beta],
            "vertices": list(self.vertices),
            "edges": list(self.edges),
            "shape": self.shape.value,
        }
