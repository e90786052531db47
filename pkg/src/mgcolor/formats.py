"""
Text Formats

Purpose:
    Line-oriented graph, precoloring and coloring files plus the JSON trace.

Formats:
    graph:       `mgraph <n>` then `e <u> <v> [mult]` lines; `#` starts a comment
    precoloring: `p <edge-id> <color>` lines
    coloring:    `c <edge-id> <color>` lines, sorted by edge id
    trace:       JSON array of {op, case, edges, colors, e1_size, e2_size}

Notes:
    - Edge ids are assigned in line order; `mult` expands in place to that many
      parallel edges with consecutive ids
    - All output is deterministic (sorted ids, fixed key order)
"""

from typing import Dict, Iterator, List, Optional, Sequence, Tuple
import json
import logging

from mgcolor.config import get_settings
from mgcolor.errors import InputError, ParseError
from mgcolor.models.coloring import PartialEdgeColoring
from mgcolor.models.extension import Precoloring, TraceStep
from mgcolor.models.graph import Multigraph

logger = logging.getLogger(__name__)


def _records(text: str) -> Iterator[Tuple[int, List[str]]]:
    """(line number, fields) for every non-blank, non-comment line"""
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            yield number, stripped.split()


def _int(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", number) from None


# ============ Graph ============

def parse_graph_file(text: str) -> Multigraph:
    """
    Parse the `mgraph` format.

    Raises:
        ParseError: Missing header, bad label, loop or malformed line
    """
    g: Optional[Multigraph] = None
    n = 0
    for number, fields in _records(text):
        tag = fields[0]
        if tag == "mgraph":
            if g is not None:
                raise ParseError("duplicate mgraph header", number)
            if len(fields) != 2:
                raise ParseError("header must be `mgraph <n>`", number)
            n = _int(fields[1], number, "vertex count")
            if n < 0:
                raise ParseError("vertex count must be nonnegative", number)
            g = Multigraph(range(n))
        elif tag == "e":
            if g is None:
                raise ParseError("edge line before the mgraph header", number)
            if len(fields) not in (3, 4):
                raise ParseError("edge line must be `e <u> <v> [mult]`", number)
            u = _int(fields[1], number, "vertex label")
            v = _int(fields[2], number, "vertex label")
            mult = _int(fields[3], number, "multiplicity") if len(fields) == 4 else 1
            for label in (u, v):
                if not 0 <= label < n:
                    raise ParseError(f"vertex label {label} outside 0..{n - 1}", number)
            if u == v:
                raise ParseError(f"loop at vertex {u}", number)
            if mult < 1:
                raise ParseError("multiplicity must be positive", number)
            for _ in range(mult):
                g.add_edge(u, v)
        else:
            raise ParseError(f"unknown line type {tag!r}", number)
    if g is None:
        raise ParseError("missing mgraph header")
    logger.debug("parsed graph: %d vertices, %d edges", len(g), g.num_edges)
    return g


def serialize_graph(g: Multigraph) -> str:
    """
    Inverse of parse_graph_file for graphs whose ids are 0..m-1 in order.

    Runs of consecutive ids joining the same pair collapse into one `mult` line.
    """
    if g.vertices != list(range(len(g))):
        raise InputError("serialize_graph needs vertices labelled 0..n-1")
    lines = [f"mgraph {len(g)}"]
    run: Optional[Tuple[int, int]] = None
    count = 0
    for e in g.edge_ids:
        ends = g.endpoints(e)
        if ends == run:
            count += 1
            continue
        if run is not None:
            lines.append(_edge_line(run, count))
        run, count = ends, 1
    if run is not None:
        lines.append(_edge_line(run, count))
    return "\n".join(lines) + "\n"


def _edge_line(ends: Tuple[int, int], count: int) -> str:
    u, v = ends
    return f"e {u} {v}" if count == 1 else f"e {u} {v} {count}"


# ============ Precoloring / Coloring ============

def _pairs(text: str, tag: str, g: Multigraph) -> Dict[int, int]:
    pairs: Dict[int, int] = {}
    for number, fields in _records(text):
        if fields[0] != tag or len(fields) != 3:
            raise ParseError(f"expected `{tag} <edge-id> <color>`", number)
        e = _int(fields[1], number, "edge id")
        color = _int(fields[2], number, "color")
        if not g.has_edge(e):
            raise ParseError(f"unknown edge id {e}", number)
        if e in pairs:
            raise ParseError(f"edge {e} listed twice", number)
        pairs[e] = color
    return pairs


def parse_precoloring_file(text: str, g: Multigraph) -> Precoloring:
    """
    Parse `p` lines and validate against g.

    Raises:
        ParseError: Malformed line or unknown edge
        InputError: Colors outside 1..Δ+μ or edges not a distance-3 matching
    """
    p = Precoloring.build(g, _pairs(text, "p", g))
    p.validate(g)
    return p


def parse_coloring_file(text: str, g: Multigraph) -> PartialEdgeColoring:
    """Parse `c` lines; the palette is the largest color seen (at least Δ+μ)"""
    pairs = _pairs(text, "c", g)
    for e, color in pairs.items():
        if color < 1:
            raise ParseError(f"edge {e}: colors start at 1")
    palette = max([g.max_degree + g.max_multiplicity, *pairs.values()])
    return PartialEdgeColoring(g, palette, pairs)


def format_coloring(c: PartialEdgeColoring) -> str:
    lines = [f"c {e} {color}" for e, color in sorted(c.colored_edges().items())]
    return "\n".join(lines) + ("\n" if lines else "")


# ============ Trace ============

def format_trace(steps: Sequence[TraceStep], indent: Optional[int] = None) -> str:
    """JSON with the fixed key order op, case, edges, colors, e1_size, e2_size"""
    if indent is None:
        indent = get_settings().trace_indent
    return json.dumps([step.to_dict() for step in steps], indent=indent or None) + "\n"


def parse_trace(text: str) -> List[TraceStep]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"trace is not valid JSON: {err.msg}", err.lineno) from err
    if not isinstance(data, list):
        raise ParseError("trace must be a JSON array")
    steps = []
    for entry in data:
        if not isinstance(entry, dict) or not {"op", "edges", "colors"} <= set(entry):
            raise ParseError("trace entries need op, edges and colors")
        steps.append(TraceStep.from_dict(entry))
    return steps
