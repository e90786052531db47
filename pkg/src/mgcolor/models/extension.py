"""
Precoloring Extension Models

Precoloring, the extension triple (M*, special class, coloring), improper
edge bookkeeping and the operation trace.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from mgcolor.errors import InputError
from mgcolor.models.coloring import PartialEdgeColoring
from mgcolor.models.graph import EdgeRole, EdgeSet, Multigraph, is_distance_t_matching


class ImproperTag(Enum):
    """Status of a precolored edge at one endpoint"""
    NOT_IMPROPER = "not-improper"
    T1 = "T1"
    T2 = "T2"


class TripleStatus(Enum):
    INFEASIBLE_PRECONDITION = "infeasible-precondition"
    PREFEASIBLE = "prefeasible"
    FEASIBLE = "feasible"


class CaseId(Enum):
    """Case operations, in dispatch order"""
    OP_I = "Op-I"
    OP_II = "Op-II"
    OP_III = "Op-III"
    CASE_2 = "Case-2"
    CASE_3_T1 = "Case-3-T1"
    CASE_3_DIRECT = "Case-3-direct"
    CASE_3_1 = "Case-3.1"
    CASE_3_2 = "Case-3.2"
    CASE_3_3_1 = "Case-3.3.1"
    CASE_3_3_2 = "Case-3.3.2"


@dataclass(frozen=True)
class Precoloring:
    """
    Precolored distance-3 matching.

    Attributes:
        matching: The edge set M
        colors: Phi, edge id -> color
    """
    matching: EdgeSet
    colors: Dict[int, int] = field(hash=False)

    @classmethod
    def build(cls, graph: Multigraph, colors: Dict[int, int]) -> "Precoloring":
        return cls(EdgeSet(graph, frozenset(colors), EdgeRole.PRECOLORED), dict(colors))

    def validate(self, graph: Multigraph) -> None:
        """
        Check ids, palette 1..Δ+μ and the distance-3 property.

        Raises:
            InputError: On the first violated condition
        """
        palette = graph.max_degree + graph.max_multiplicity
        if set(self.colors) != set(self.matching.ids):
            raise InputError("precoloring colors must cover exactly the matching")
        for e in sorted(self.colors):
            if not graph.has_edge(e):
                raise InputError(f"precolored edge {e} not in graph")
            if not 1 <= self.colors[e] <= palette:
                raise InputError(f"edge {e}: color {self.colors[e]} outside palette 1..{palette}")
        if not is_distance_t_matching(graph, self.matching.ids, 3):
            raise InputError("precolored edges do not form a distance-3 matching")

    @property
    def ids(self) -> FrozenSet[int]:
        return self.matching.ids

    def top_color_edges(self, top: int) -> FrozenSet[int]:
        """M_{Δ+μ}: precolored edges carrying the top color"""
        return frozenset(e for e, c in self.colors.items() if c == top)

    def to_dict(self) -> Dict[str, object]:
        return {"colors": {str(e): self.colors[e] for e in sorted(self.colors)}}


@dataclass
class ImproperReport:
    """
    T1/T2 classification of the precolored edges.

    Attributes:
        e1: Colliding edges disjoint from V(M*)
        e2: Colliding edges touching V(M*)
        tags: (f, endpoint) -> tag
        colliding: (f, endpoint) -> the colliding edge f_1
    """
    e1: FrozenSet[int] = frozenset()
    e2: FrozenSet[int] = frozenset()
    tags: Dict[Tuple[int, int], ImproperTag] = field(default_factory=dict)
    colliding: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def tag(self, f: int, u: int) -> ImproperTag:
        return self.tags.get((f, u), ImproperTag.NOT_IMPROPER)

    def t2_targets(self) -> List[Tuple[int, int]]:
        return sorted(key for key, tag in self.tags.items() if tag is ImproperTag.T2)

    def to_dict(self) -> Dict[str, object]:
        return {
            "e1": sorted(self.e1),
            "e2": sorted(self.e2),
            "tags": [[f, u, tag.value] for (f, u), tag in sorted(self.tags.items())],
        }


@dataclass(frozen=True)
class TraceStep:
    """
    One trace record. Replay sets each edge to the aligned color (None = uncolored).
    """
    op: str
    case: Optional[str]
    edges: Tuple[int, ...]
    colors: Tuple[Optional[int], ...]
    e1_size: int
    e2_size: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "op": self.op,
            "case": self.case,
            "edges": list(self.edges),
            "colors": list(self.colors),
            "e1_size": self.e1_size,
            "e2_size": self.e2_size,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "TraceStep":
        edges = tuple(int(e) for e in data["edges"])  # type: ignore[attr-defined]
        raw = data["colors"]
        colors = tuple(None if c is None else int(c) for c in raw)  # type: ignore[attr-defined]
        if len(edges) != len(colors):
            raise InputError("trace step edges and colors differ in length")
        case = data.get("case")
        return cls(
            op=str(data["op"]),
            case=None if case is None else str(case),
            edges=edges,
            colors=colors,
            e1_size=int(data.get("e1_size", 0)),  # type: ignore[arg-type]
            e2_size=int(data.get("e2_size", 0)),  # type: ignore[arg-type]
        )


@dataclass
class ExtensionTriple:
    """
    The state (M*, special class, coloring) of the extension search.

    `coloring` lives on the whole graph with palette Δ+μ; edges of M and M*
    stay uncolored, so missing sets equal those of G - (M ∪ M*).
    """
    m_star: FrozenSet[int]
    special: FrozenSet[int]
    coloring: PartialEdgeColoring
    report: Optional[ImproperReport] = None
    trace: List[TraceStep] = field(default_factory=list)

    def with_state(
        self,
        m_star: FrozenSet[int],
        special: FrozenSet[int],
        coloring: PartialEdgeColoring,
    ) -> "ExtensionTriple":
        return ExtensionTriple(
            frozenset(m_star), frozenset(special), coloring, None, list(self.trace)
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "m_star": sorted(self.m_star),
            "special": sorted(self.special),
            "coloring": self.coloring.to_dict(),
            "report": self.report.to_dict() if self.report else None,
        }
