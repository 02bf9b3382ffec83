"""
Command-line interface.

Exit codes: 0 success or verified, 1 verification failure, 2 usage, format or input error.
"""
import argparse
import json
import logging
import sys
import time
from typing import Callable, Dict, List, Optional, Sequence

from chordgraph import logger
from chordgraph.config import Config
from chordgraph.convex import build_convex, build_one_sided, edge_budget
from chordgraph.database import ReportStore
from chordgraph.errors import FormatError, GeometryError, PartitionError
from chordgraph.formats import format_points, read_graph, read_points, write_graph, write_points
from chordgraph.gabriel import METHODS, check_gabriel_triangulation, gabriel_graph
from chordgraph.generators import gen_convex, gen_onesided, gen_uniform, lattice_side
from chordgraph.geometry import Direction, GeomGraph, perturb
from chordgraph.models import PathWitness, RunReport
from chordgraph.oracle import MODES, verify_path
from chordgraph.render import render_svg
from chordgraph.reports import budget_table, verify_graph
from chordgraph.routing import route
from chordgraph.steiner import augment_heuristic, gabriel_lattice, triangulate
from chordgraph.workflow import KINDS, PipelineWorkflow

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _index_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {text!r}")


def _pairs(text: str):
    if text == "all":
        return "all"
    if text.startswith("sample:"):
        try:
            return int(text.split(":", 1)[1])
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"expected 'all' or 'sample:K', got {text!r}")


def _emit(report: RunReport, args: argparse.Namespace) -> None:
    print(report.canonical_json(include_timing=args.timing))
    if args.record:
        record_id = ReportStore().save_report(report)
        logger.info(f"Recorded run {record_id}")


def _command(args: argparse.Namespace) -> str:
    return " ".join(args.argv)


def cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == "convex":
        ps = gen_convex(args.n, args.seed)
    elif args.kind == "onesided":
        ps = gen_onesided(args.n, Direction(args.direction), args.seed)
    elif args.kind == "lattice":
        side = lattice_side(args.n)
        instance = gabriel_lattice(side, side, args.jitter, args.seed)
        ps = instance.points
        logger.info(f"Lattice {side}x{side} accepted after {instance.retries} retries (seed {instance.seed})")
    else:
        ps = gen_uniform(args.n, args.seed)
    header = f"{args.kind} n={len(ps)} seed={args.seed}"
    if args.output:
        write_points(ps, args.output, header=header)
    else:
        sys.stdout.write(format_points(ps, header=header))
    return EXIT_OK


def _build_report(args: argparse.Namespace, g: GeomGraph, bound: Optional[int]) -> RunReport:
    return RunReport(command=_command(args), n=g.n, edge_count=g.edge_count, budget_bound=bound,
                     seed=getattr(args, "perturb", None))


def cmd_build(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    ps = read_points(args.input)
    if args.kind == "convex":
        g = build_convex(ps, perturb_seed=args.perturb)
        bound = 2 * g.n + edge_budget(g.n)
    else:
        if args.direction is None:
            raise argparse.ArgumentTypeError("build one-sided needs --direction")
        if args.perturb is not None:
            ps = perturb(ps, args.perturb)
        g = build_one_sided(ps, Direction(args.direction))
        bound = max(0, 2 * g.n - 3)
    write_graph(g, args.output)
    report = _build_report(args, g, bound).model_copy(update={"elapsed_seconds": time.perf_counter() - start})
    _emit(report, args)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_gabriel(args: argparse.Namespace) -> int:
    g = gabriel_graph(read_points(args.input), method=args.method)
    if args.output:
        write_graph(g, args.output)
    if args.check:
        check = check_gabriel_triangulation(g)
        print(check.model_dump_json(indent=2))
        return EXIT_OK if check.ok else EXIT_FAILED
    _emit(_build_report(args, g, None), args)
    return EXIT_OK


def cmd_augment(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    result = augment_heuristic(read_points(args.input), args.max_rounds, args.seed)
    g = result.graph if result.graph is not None else triangulate(result.augmented)
    write_graph(g, args.output)
    report = RunReport(command=_command(args), n=g.n, edge_count=g.edge_count,
                       steiner_count=result.steiner_count, seed=args.seed,
                       failures=0 if result.succeeded else 1,
                       elapsed_seconds=time.perf_counter() - start)
    _emit(report, args)
    return EXIT_OK if result.succeeded else EXIT_FAILED


def _print_witness(witness: PathWitness, as_json: bool) -> None:
    if as_json:
        print(witness.model_dump_json())
    else:
        print(f"path {','.join(str(v) for v in witness.vertices)} theta {witness.theta_deg:.9f}")


def cmd_route(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    witness = route(g, args.source, args.target)
    if witness is None:
        print(json.dumps({"vertices": None, "theta_deg": None}) if args.json else "no theta-path")
        return EXIT_FAILED
    _print_witness(witness, args.json)
    return EXIT_OK


def cmd_verify_path(args: argparse.Namespace) -> int:
    report = verify_path(read_graph(args.graph), args.path, args.mode)
    print(report.model_dump_json(indent=2))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_verify_graph(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    report = verify_graph(g, args.pairs, args.seed, command=_command(args))
    _emit(report, args)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_render(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    highlight = None
    if args.highlight:
        highlight = PathWitness(vertices=args.highlight)
        verify_path(g, highlight.vertices)
    render_svg(g, highlight, args.output)
    return EXIT_OK


def cmd_budget(args: argparse.Namespace) -> int:
    table = budget_table(args.sizes, args.seed)
    print(table.to_string(index=False))
    print(f"max |S|/(n log2 n) = {table['ratio'].max():.6f}")
    return EXIT_OK if bool(table["within_budget"].all()) else EXIT_FAILED


def cmd_pipeline(args: argparse.Namespace) -> int:
    result = PipelineWorkflow().run_pipeline(args.kind, args.n, args.seed, args.jitter, record=args.record)
    state = result["state"]
    print(state.get("summary") or state.get("error"))
    if state.get("report") is not None:
        print(state["report"].canonical_json(include_timing=args.timing))
    if args.timing:
        print(f"execution time {result['execution_time']:.3f} s")
    return EXIT_OK if result["success"] else EXIT_FAILED


def cmd_history(args: argparse.Namespace) -> int:
    frame = ReportStore().get_history_frame(args.limit)
    print(frame.to_string(index=False) if len(frame) else "no recorded runs")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="debug logging")
    common.add_argument("--record", action="store_true", help="save the run report to the history database")
    common.add_argument("--timing", action="store_true", help="include elapsed time in printed reports")

    parser = argparse.ArgumentParser(prog="chordgraph", description="Increasing-chord geometric graphs")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", parents=[common], help="generate a point set")
    gen.add_argument("kind", choices=["convex", "onesided", "lattice", "uniform"])
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--jitter", type=float, default=0.05)
    gen.add_argument("--direction", type=float, default=0.0, help="direction for onesided sets, degrees")
    gen.add_argument("-o", "--output")
    gen.set_defaults(handler=cmd_gen)

    build = commands.add_parser("build", parents=[common], help="build an increasing-chord graph")
    build.add_argument("kind", choices=["one-sided", "convex"])
    build.add_argument("--direction", type=float, help="direction for one-sided sets, degrees")
    build.add_argument("-i", "--input", required=True)
    build.add_argument("-o", "--output", required=True)
    build.add_argument("--perturb", type=int, metavar="SEED", help="apply a seeded perturbation first")
    build.set_defaults(handler=cmd_build)

    gab = commands.add_parser("gabriel", parents=[common], help="Gabriel graph of a point set")
    gab.add_argument("-i", "--input", required=True)
    gab.add_argument("-o", "--output")
    gab.add_argument("--check", action="store_true", help="test for a Gabriel triangulation")
    gab.add_argument("--method", choices=list(METHODS), default="brute")
    gab.set_defaults(handler=cmd_gabriel)

    aug = commands.add_parser("augment", parents=[common], help="add Steiner points towards a Gabriel triangulation")
    aug.add_argument("-i", "--input", required=True)
    aug.add_argument("--max-rounds", type=int, default=None)
    aug.add_argument("--seed", type=int, required=True)
    aug.add_argument("-o", "--output", required=True)
    aug.set_defaults(handler=cmd_augment)

    rt = commands.add_parser("route", parents=[common], help="find a theta-path between two points")
    rt.add_argument("-g", "--graph", required=True)
    rt.add_argument("--from", dest="source", type=int, required=True)
    rt.add_argument("--to", dest="target", type=int, required=True)
    rt.add_argument("--json", action="store_true")
    rt.set_defaults(handler=cmd_route)

    verify = commands.add_parser("verify", help="verify a path or a whole graph")
    targets = verify.add_subparsers(dest="target_kind", required=True)
    vpath = targets.add_parser("path", parents=[common])
    vpath.add_argument("-g", "--graph", required=True)
    vpath.add_argument("--path", type=_index_list, required=True)
    vpath.add_argument("--mode", choices=list(MODES), default="tolerant")
    vpath.set_defaults(handler=cmd_verify_path)
    vgraph = targets.add_parser("graph", parents=[common])
    vgraph.add_argument("-g", "--graph", required=True)
    vgraph.add_argument("--pairs", type=_pairs, default="all")
    vgraph.add_argument("--seed", type=int, default=0)
    vgraph.set_defaults(handler=cmd_verify_graph)

    rnd = commands.add_parser("render", parents=[common], help="draw a graph as SVG")
    rnd.add_argument("-g", "--graph", required=True)
    rnd.add_argument("--highlight", type=_index_list)
    rnd.add_argument("-o", "--output", required=True)
    rnd.set_defaults(handler=cmd_render)

    bud = commands.add_parser("budget", parents=[common], help="edge counts of build convex against 2n + F(n)")
    bud.add_argument("--sizes", type=_index_list, default=[8, 16, 32, 64, 128, 256])
    bud.add_argument("--seed", type=int, default=0)
    bud.set_defaults(handler=cmd_budget)

    pipe = commands.add_parser("pipeline", parents=[common], help="generate, build and verify in one run")
    pipe.add_argument("kind", choices=list(KINDS))
    pipe.add_argument("--n", type=int, required=True)
    pipe.add_argument("--seed", type=int, required=True)
    pipe.add_argument("--jitter", type=float, default=0.05)
    pipe.set_defaults(handler=cmd_pipeline)

    hist = commands.add_parser("history", parents=[common], help="list recorded runs")
    hist.add_argument("--limit", type=int, default=20)
    hist.set_defaults(handler=cmd_history)

    return parser


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, Config.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    logger.setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    args.argv = argv
    _configure_logging(args.verbose)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (GeometryError, FormatError, argparse.ArgumentTypeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PartitionError as e:
        logger.error(f"Internal construction error: {e}")
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
