"""
mgcolor Command Line

Purpose:
    Batch front-end over the file formats in mgcolor.formats.

Usage:
    mgcolor color graph.txt
    mgcolor extend graph.txt pre.txt --strategy paper-first --trace out.json
    mgcolor verify graph.txt pre.txt coloring.txt
    mgcolor gamma graph.txt
    mgcolor dense graph.txt --k 5
    mgcolor chi graph.txt
    mgcolor trace graph.txt out.json

Exit status:
    0 success, 1 negative answer, 2 input error, 3 budget exhausted
"""

from typing import List, Optional, Sequence, TextIO
import argparse
import logging
import sys

from mgcolor.config import Strategy, configure_logging, get_settings, load_settings, set_settings
from mgcolor.core.base_color import vizing_gupta_color
from mgcolor.core.density import gamma, maximal_k_dense_subgraphs
from mgcolor.core.extend import extend_precoloring, replay_trace
from mgcolor.core.oracle import verify_extension
from mgcolor.core.solver import exact_chromatic_index
from mgcolor.errors import DefectError, InputError, ResourceError
from mgcolor.formats import (
    format_coloring,
    format_trace,
    parse_coloring_file,
    parse_graph_file,
    parse_precoloring_file,
    parse_trace,
)
from mgcolor.models.graph import Multigraph

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def _read(path: str) -> str:
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e


def _graph(path: str) -> Multigraph:
    return parse_graph_file(_read(path))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mgcolor",
        description="Multigraph edge coloring and precoloring extension",
    )
    parser.add_argument("--config", help="YAML settings file")
    parser.add_argument("--log-level", help="Logging level (default from settings)")
    parser.add_argument("--budget", type=int, help="Solver budget override (search nodes)")
    sub = parser.add_subparsers(dest="command", required=True)

    color = sub.add_parser("color", help="(Δ+μ)-edge-coloring")
    color.add_argument("graph")

    extend = sub.add_parser("extend", help="Extend a precolored distance-3 matching")
    extend.add_argument("graph")
    extend.add_argument("precoloring")
    extend.add_argument(
        "--strategy",
        choices=[s.value for s in Strategy],
        default=None,
        help="paper-first: case operations with oracle fallback (default); oracle-only",
    )
    extend.add_argument("--trace", help="Write the JSON trace to this file")

    verify = sub.add_parser("verify", help="Check a coloring against a precoloring")
    verify.add_argument("graph")
    verify.add_argument("precoloring")
    verify.add_argument("coloring")

    gamma_cmd = sub.add_parser("gamma", help="Exact density Γ(G)")
    gamma_cmd.add_argument("graph")

    dense = sub.add_parser("dense", help="Maximal k-dense subgraphs")
    dense.add_argument("graph")
    dense.add_argument("--k", type=int, required=True)

    chi = sub.add_parser("chi", help="Exact chromatic index")
    chi.add_argument("graph")

    trace = sub.add_parser("trace", help="Replay a JSON trace")
    trace.add_argument("graph")
    trace.add_argument("trace")
    return parser


# ============ Subcommands ============

def _cmd_color(args: argparse.Namespace, out: TextIO) -> int:
    g = _graph(args.graph)
    top = g.max_degree + g.max_multiplicity
    c = vizing_gupta_color(g)
    out.write(f"# colors {len(c.used_colors())} bound {top}\n")
    out.write(format_coloring(c))
    return EXIT_OK


def _cmd_extend(args: argparse.Namespace, out: TextIO) -> int:
    g = _graph(args.graph)
    p = parse_precoloring_file(_read(args.precoloring), g)
    strategy = Strategy(args.strategy) if args.strategy else None
    result = extend_precoloring(g, p, strategy=strategy)
    if result.used_fallback:
        logger.info("extension used the oracle fallback")
    out.write(format_coloring(result.coloring))
    if args.trace:
        try:
            with open(args.trace, "w") as f:
                f.write(format_trace(result.trace))
        except OSError as e:
            raise InputError(f"cannot write {args.trace}: {e}") from e
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    g = _graph(args.graph)
    p = parse_precoloring_file(_read(args.precoloring), g)
    c = parse_coloring_file(_read(args.coloring), g)
    verdict = verify_extension(g, p, c)
    if verdict:
        out.write("valid\n")
        return EXIT_OK
    for line in verdict.diagnostics:
        out.write(f"{line}\n")
    return EXIT_NEGATIVE


def _cmd_gamma(args: argparse.Namespace, out: TextIO) -> int:
    out.write(f"{gamma(_graph(args.graph))}\n")
    return EXIT_OK


def _cmd_dense(args: argparse.Namespace, out: TextIO) -> int:
    found = maximal_k_dense_subgraphs(_graph(args.graph), args.k)
    for h in found:
        out.write(f"dense {args.k} {' '.join(str(v) for v in sorted(h.vertices))}\n")
    return EXIT_OK if found else EXIT_NEGATIVE


def _cmd_chi(args: argparse.Namespace, out: TextIO) -> int:
    chi, _ = exact_chromatic_index(_graph(args.graph))
    out.write(f"{chi}\n")
    return EXIT_OK


def _cmd_trace(args: argparse.Namespace, out: TextIO) -> int:
    g = _graph(args.graph)
    steps = parse_trace(_read(args.trace))
    used = [color for step in steps for color in step.colors if color is not None]
    palette = max([g.max_degree + g.max_multiplicity, *used])
    out.write(format_coloring(replay_trace(g, steps, palette)))
    return EXIT_OK


COMMANDS = {
    "color": _cmd_color,
    "extend": _cmd_extend,
    "verify": _cmd_verify,
    "gamma": _cmd_gamma,
    "dense": _cmd_dense,
    "chi": _cmd_chi,
    "trace": _cmd_trace,
}


def run_command(
    argv: Sequence[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None
) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name
        out: Stream for results (stdout by default)
        err: Stream for error messages (stderr by default)

    Returns:
        Exit status
    """
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT

    try:
        settings = load_settings(args.config) if args.config else get_settings()
        if args.budget is not None:
            if args.budget <= 0:
                raise InputError("--budget must be positive")
            settings = settings.model_copy(update={"solver_budget": args.budget})
        set_settings(settings)
        level = (args.log_level or settings.log_level).upper()
        if level not in logging.getLevelNamesMapping():
            raise InputError(f"unknown log level: {args.log_level}")
        configure_logging(level)
        return COMMANDS[args.command](args, out)
    except ResourceError as e:
        err.write(f"error: {e}\n")
        return EXIT_RESOURCE
    except InputError as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT
    except DefectError as e:
        logger.error("internal defect: %s", e)
        err.write(f"defect: {e}\n")
        return EXIT_NEGATIVE


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
