#!/usr/bin/env python3
"""
mgcolor Demo Application

Walks through the engine on the fat triangle and a small ring of fat
triangles: base coloring, density, dense structure and precoloring extension.

Usage:
    python3 demo.py              # Run every section
    python3 demo.py --step 3     # Run one section (1-4)
    python3 demo.py --verbose    # Show engine logging
"""

import argparse
import sys

sys.path.insert(0, "src")

from mgcolor.config import configure_logging
from mgcolor.core.base_color import vizing_gupta_color
from mgcolor.core.density import gamma, maximal_k_dense_subgraphs
from mgcolor.core.extend import extend_precoloring, replay_trace
from mgcolor.core.oracle import verify_extension
from mgcolor.core.solver import exact_chromatic_index
from mgcolor.formats import format_coloring, parse_graph_file
from mgcolor.models.extension import Precoloring
from mgcolor.models.graph import Multigraph

FAT_TRIANGLE = """\
mgraph 3
e 0 1 2
e 1 2 2
e 0 2 2
"""

# Two fat triangles joined by a single edge; the joining edge is precolored
TWIN_TRIANGLES = """\
mgraph 6
e 0 1 2
e 1 2 2
e 0 2 2
e 3 4 2
e 4 5 2
e 3 5 2
e 2 3
"""


def print_header(title: str) -> None:
    """Print a section header"""
    print(f"\n{'=' * 60}")
    print(f"  {title}")
    print(f"{'=' * 60}")


def print_section(title: str) -> None:
    """Print a subsection header"""
    print(f"\n--- {title} ---")


def describe(name: str, g: Multigraph) -> None:
    print(f"  {name}: |V|={len(g)} |E|={g.num_edges} Δ={g.max_degree} μ={g.max_multiplicity}")


# ============ Steps ============

def step_base_coloring() -> None:
    print_header("1. Vizing-Gupta coloring")
    g = parse_graph_file(FAT_TRIANGLE)
    describe("fat triangle", g)
    c = vizing_gupta_color(g)
    print(f"  colors used: {len(c.used_colors())} (bound Δ+μ = {g.max_degree + g.max_multiplicity})")
    print_section("Coloring")
    print(format_coloring(c), end="")


def step_density() -> None:
    print_header("2. Density and chromatic index")
    g = parse_graph_file(FAT_TRIANGLE)
    chi, _ = exact_chromatic_index(g)
    print(f"  Γ(G) = {gamma(g)}")
    print(f"  χ'(G) = {chi}")


def step_dense_structure() -> None:
    print_header("3. Maximal dense subgraphs")
    g = parse_graph_file(TWIN_TRIANGLES)
    describe("twin triangles", g)
    chi, _ = exact_chromatic_index(g)
    found = maximal_k_dense_subgraphs(g, chi)
    if not found:
        print(f"  no {chi}-dense subgraphs (χ' = {chi})")
    for h in found:
        print(f"  {chi}-dense: {sorted(h.vertices)} boundary {sorted(h.boundary().ids)}")


def step_extension() -> None:
    print_header("4. Precoloring extension")
    g = parse_graph_file(TWIN_TRIANGLES)
    bridge = g.edges_between(2, 3)[0]
    p = Precoloring.build(g, {bridge: 1})
    print(f"  precolored: edge {bridge} -> color 1")
    result = extend_precoloring(g, p)
    verdict = verify_extension(g, p, result.coloring)
    print(f"  valid: {verdict.valid}  fallback: {result.used_fallback}")
    print(f"  trace steps: {len(result.trace)}  cases: {result.case_counts or '-'}")
    replayed = replay_trace(g, result.trace, result.coloring.palette)
    print(f"  replay reproduces coloring: {replayed == result.coloring}")
    print_section("Coloring")
    print(format_coloring(result.coloring), end="")


STEPS = [step_base_coloring, step_density, step_dense_structure, step_extension]


def main() -> None:
    parser = argparse.ArgumentParser(description="mgcolor Demo")
    parser.add_argument("--step", type=int, help="Run one section only (1-4)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Show engine logging")
    args = parser.parse_args()

    configure_logging("DEBUG" if args.verbose else "WARNING")
    if args.step is not None:
        if not 1 <= args.step <= len(STEPS):
            parser.error(f"--step must be between 1 and {len(STEPS)}")
        STEPS[args.step - 1]()
    else:
        for step in STEPS:
            step()
    print()


if __name__ == "__main__":
    main()
