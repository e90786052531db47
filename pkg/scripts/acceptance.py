"""
Acceptance Runs for the Coloring Engine

Purpose:
    Seeded random multigraph families checked against the exact solver and
    the exhaustive oracle. Each criterion reports its violations, the
    oracle fallback rate where relevant, and wall time.

Usage:
    python scripts/acceptance.py --seed 7 --criterion all
    python scripts/acceptance.py --criterion 6 --scale 0.1
    (works from repo root or any cwd)
"""

import argparse
import io
import itertools
import json
import math
import os
import random
import sys
import tempfile
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional

_script_dir = os.path.dirname(os.path.abspath(__file__))
_repo_root = os.path.dirname(_script_dir)
_src = os.path.join(_repo_root, "src")
if _src not in sys.path:
    sys.path.insert(0, _src)

from mgcolor.cli import run_command
from mgcolor.config import configure_logging
from mgcolor.core.base_color import saturated_matching, vizing_gupta_color
from mgcolor.core.coloring import classify_vertex_set, kempe_chain, kempe_swap_subchain
from mgcolor.core.density import (
    gamma,
    is_k_critical_edge,
    maximal_k_dense_subgraphs,
)
from mgcolor.core.extend import extend_precoloring
from mgcolor.core.fans import build_multifan, fan_property_report
from mgcolor.core.oracle import verify_extension
from mgcolor.core.solver import exact_chromatic_index, solve_k_coloring
from mgcolor.errors import ResourceError
from mgcolor.formats import format_coloring, format_trace, serialize_graph
from mgcolor.models.coloring import ChainShape
from mgcolor.models.extension import Precoloring
from mgcolor.models.graph import EdgeRole, EdgeSet, Multigraph, is_distance_t_matching


@dataclass
class Summary:
    """Result of one criterion"""
    criterion: int
    instances: int = 0
    violations: List[str] = field(default_factory=list)
    fallbacks: int = 0
    skipped: int = 0
    seconds: float = 0.0
    # dense family runs that reached the case operations
    dense_instances: int = 0
    dense_fallbacks: int = 0
    case_counts: Counter = field(default_factory=Counter)

    def line(self) -> str:
        mark = "✓" if not self.violations else "✗"
        extra = f" fallback {self.fallbacks}/{self.instances}" if self.criterion == 6 else ""
        if self.criterion == 6:
            cases = ", ".join(f"{name} {count}" for name, count in sorted(self.case_counts.items()))
            extra += (
                f"; dense family fallback {self.dense_fallbacks}/{self.dense_instances}"
                f" (cases: {cases or 'none'})"
            )
        return (
            f"  {mark} criterion {self.criterion}: {self.instances} instances, "
            f"{len(self.violations)} violations, {self.skipped} skipped{extra}, "
            f"{self.seconds:.1f}s"
        )


# ============ Instance Generators ============

def random_multigraph(
    rng: random.Random, n: int, m: int, mu: int, connected: bool = False
) -> Multigraph:
    """Random loopless multigraph with at most m edges and multiplicity at most mu"""
    g = Multigraph(range(n))
    pairs = list(itertools.combinations(range(n), 2))
    if connected:
        order = list(range(n))
        rng.shuffle(order)
        for a, b in zip(order, order[1:]):
            g.add_edge(min(a, b), max(a, b))
    while g.num_edges < m and pairs:
        u, v = rng.choice(pairs)
        if g.multiplicity(u, v) < mu:
            g.add_edge(u, v)
        elif all(g.multiplicity(a, b) >= mu for a, b in pairs):
            break
    return g


def family(seed: int, count: int, n_max: int, m_max: int, mu_max: int) -> Iterator[Multigraph]:
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, n_max)
        m = rng.randint(1, m_max)
        mu = rng.randint(1, mu_max)
        yield random_multigraph(rng, n, m, mu, connected=True)


def dense_family(seed: int, count: int) -> Iterator[Multigraph]:
    """Doubled K5 or K7 short a few edge copies, sometimes with pendant edges"""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.choice((5, 5, 5, 7))
        leaves = rng.randint(0, 2)
        g = Multigraph(range(n + leaves))
        for u, v in itertools.combinations(range(n), 2):
            g.add_edge(u, v)
            g.add_edge(u, v)
        pairs = list(itertools.combinations(range(n), 2))
        for u, v in rng.sample(pairs, rng.randint(0, 3)):
            g.remove_edge(g.edges_between(u, v)[-1])
        for leaf in range(n, n + leaves):
            g.add_edge(rng.randrange(n), leaf)
        yield g


def distance3_matchings(g: Multigraph, size: int) -> Iterator[List[int]]:
    for k in range(1, size + 1):
        for combo in itertools.combinations(g.edge_ids, k):
            if is_distance_t_matching(g, combo, 3):
                yield list(combo)


# ============ Criteria ============

def criterion_1(seed: int, scale: float) -> Summary:
    summary = Summary(1)
    for g in family(seed, max(1, int(500 * scale)), 10, 24, 4):
        summary.instances += 1
        c = vizing_gupta_color(g)
        bound = g.max_degree + g.max_multiplicity
        if not c.is_total or not c.is_proper or len(c.used_colors()) > bound:
            summary.violations.append(serialize_graph(g))
    return summary


def _criterion_2_family(seed: int, scale: float) -> Iterator[Multigraph]:
    return family(seed, max(1, int(1000 * scale)), 6, 12, 3)


def criterion_2(seed: int, scale: float) -> Summary:
    summary = Summary(2)
    for g in _criterion_2_family(seed, scale):
        summary.instances += 1
        chi, _ = exact_chromatic_index(g)
        bound = math.ceil(gamma(g))
        if bound > chi or (chi >= g.max_degree + 2 and chi != bound):
            summary.violations.append(f"χ'={chi} ⌈Γ⌉={bound}: {serialize_graph(g)}")
    return summary


def criterion_3(seed: int, scale: float) -> Summary:
    summary = Summary(3)
    rng = random.Random(seed + 3)
    for g in _criterion_2_family(seed, scale):
        chi, _ = exact_chromatic_index(g)
        if chi < g.max_degree + 1:
            continue
        summary.instances += 1
        dense = maximal_k_dense_subgraphs(g, chi)
        for _ in range(5):
            # a random proper chi-coloring: solve with a shuffled precolored edge
            e = rng.choice(g.edge_ids)
            c = solve_k_coloring(g, chi, precolored={e: rng.randint(1, chi)})
            if c is None:
                continue
            for h in dense:
                flags = classify_vertex_set(c, h.vertices)
                if not flags.strongly_closed:
                    summary.violations.append("; ".join(flags.diagnostics))
    return summary


def criterion_4(seed: int, scale: float) -> Summary:
    summary = Summary(4)
    target = max(1, int(200 * scale))
    for g in family(seed + 4, 20 * target, 6, 12, 3):
        if summary.instances >= target:
            break
        chi, _ = exact_chromatic_index(g)
        k = chi - 1
        if k < g.max_degree:
            continue
        for e in g.edge_ids:
            if not is_k_critical_edge(g, e, k):
                continue
            summary.instances += 1
            rest = g.without_edges([e])
            c = solve_k_coloring(rest, k).extended(g)  # type: ignore[union-attr]
            x = g.endpoints(e)[0]
            report = fan_property_report(build_multifan(g, c, x, e), chi)
            if not report.ok:
                summary.violations.append("; ".join(report.failures))
            break
    return summary


def criterion_5(seed: int, scale: float) -> Summary:
    summary = Summary(5)
    for g in _criterion_2_family(seed, scale):
        if g.max_multiplicity < 2:
            continue
        top = g.max_degree + g.max_multiplicity
        for m in distance3_matchings(g, 1):
            rest = g.without_edges(m)
            if solve_k_coloring(rest, top - 1) is not None:
                continue
            summary.instances += 1
            sm, phi = saturated_matching(g, EdgeSet(g, frozenset(m), EdgeRole.PRECOLORED))
            remaining = g.without_edges(set(m) | sm.ids)
            if solve_k_coloring(remaining, top - 1) is None or not phi.is_proper:
                summary.violations.append(f"M={m}: {serialize_graph(g)}")
            bad = [e for e, r in sm.records.items() if not (r.critical and r.saturated)]
            if bad:
                summary.violations.append(f"M={m}: uncertified M* edges {bad}")
    return summary


def _criterion_6_runs(seed: int, scale: float) -> Iterator[tuple]:
    rng = random.Random(seed + 6)
    for g in family(seed + 6, max(1, int(300 * scale)), 6, 12, 3):
        if g.max_multiplicity < 2:
            continue
        top = g.max_degree + g.max_multiplicity
        for m in distance3_matchings(g, 2):
            for _ in range(5):
                yield g, Precoloring.build(g, {e: rng.randint(1, top) for e in m})


def criterion_6(seed: int, scale: float) -> Summary:
    summary = Summary(6)
    for g, p in _criterion_6_runs(seed, scale):
        try:
            result = extend_precoloring(g, p)
        except ResourceError:
            summary.skipped += 1
            continue
        summary.instances += 1
        summary.fallbacks += int(result.used_fallback)
        verdict = verify_extension(g, p, result.coloring)
        if not verdict:
            summary.violations.append("; ".join(verdict.diagnostics))
    _dense_runs(seed, scale, summary)
    return summary


def _dense_runs(seed: int, scale: float, summary: Summary) -> None:
    """Single precolored edges on the dense family; only runs that build a triple count"""
    rng = random.Random(seed + 60)
    for g in dense_family(seed + 60, max(1, int(40 * scale))):
        top = g.max_degree + g.max_multiplicity
        p = Precoloring.build(g, {rng.choice(g.edge_ids): rng.randint(1, top)})
        try:
            result = extend_precoloring(g, p)
        except ResourceError:
            summary.skipped += 1
            continue
        verdict = verify_extension(g, p, result.coloring)
        if not verdict:
            summary.violations.append("; ".join(verdict.diagnostics))
        if "initial" not in {step.op for step in result.trace}:
            continue
        summary.dense_instances += 1
        summary.dense_fallbacks += int(result.used_fallback)
        summary.case_counts.update(result.case_counts)


def criterion_7(seed: int, scale: float) -> Summary:
    summary = Summary(7)
    for g, p in itertools.islice(_criterion_6_runs(seed, scale), max(1, int(50 * scale))):
        first = extend_precoloring(g, p)
        second = extend_precoloring(g, p)
        summary.instances += 1
        same = format_coloring(first.coloring) == format_coloring(second.coloring)
        if not same or format_trace(first.trace) != format_trace(second.trace):
            summary.violations.append(f"non-deterministic run: {serialize_graph(g)}")
            continue
        with tempfile.TemporaryDirectory() as tmp:
            graph_path = os.path.join(tmp, "g.txt")
            trace_path = os.path.join(tmp, "trace.json")
            with open(graph_path, "w") as f:
                f.write(serialize_graph(g))
            with open(trace_path, "w") as f:
                f.write(format_trace(first.trace))
            out = io.StringIO()
            status = run_command(["trace", graph_path, trace_path], out=out)
            if status != 0 or out.getvalue() != format_coloring(first.coloring):
                summary.violations.append(f"replay mismatch: {serialize_graph(g)}")
    return summary


def criterion_8(seed: int, scale: float) -> Summary:
    summary = Summary(8)
    rng = random.Random(seed + 8)
    swaps = max(1, int(10_000 * scale))
    while summary.instances < swaps:
        g = random_multigraph(rng, rng.randint(3, 8), rng.randint(3, 16), 3)
        c = vizing_gupta_color(g)
        for _ in range(20):
            e = rng.choice(g.edge_ids)
            v = rng.choice(g.endpoints(e))
            alpha = c.color_of(e)
            beta = rng.choice([b for b in range(1, c.palette + 1) if b != alpha])
            chain = kempe_chain(c, v, alpha, beta)  # type: ignore[arg-type]
            a = chain.vertices[0]
            b = a if chain.shape is ChainShape.CYCLE else chain.vertices[-1]
            swapped = kempe_swap_subchain(c, chain, a, b)
            back = kempe_swap_subchain(swapped, chain, a, b)
            summary.instances += 1
            if not swapped.is_proper or back != c:
                summary.violations.append(json.dumps(chain.to_dict()))
    return summary


CRITERIA: Dict[int, Callable[[int, float], Summary]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="mgcolor acceptance runs")
    parser.add_argument("--seed", type=int, default=0, help="Seed for the instance generators")
    parser.add_argument("--criterion", default="all", help="1..8 or all")
    parser.add_argument("--scale", type=float, default=1.0, help="Fraction of the instance counts")
    parser.add_argument("--verbose", "-v", action="store_true", help="Show engine logging")
    args = parser.parse_args(argv)
    configure_logging("INFO" if args.verbose else "WARNING")

    chosen = sorted(CRITERIA) if args.criterion == "all" else [int(args.criterion)]
    failed = False
    print(f"Acceptance runs (seed {args.seed}, scale {args.scale})")
    for number in chosen:
        start = time.perf_counter()
        summary = CRITERIA[number](args.seed, args.scale)
        summary.seconds = time.perf_counter() - start
        print(summary.line())
        for violation in summary.violations[:5]:
            print(f"      {violation.strip()}")
        failed = failed or bool(summary.violations)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
