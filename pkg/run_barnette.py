#!/usr/bin/env python3
"""
Entry point for the Hamilton cycle toolkit.

Usage:
    python run_barnette.py hamilton graphs.pc
    python run_barnette.py hamilton graphs.txt --format edge_list --strict --output text
    python run_barnette.py factor c60.pc --odd
    python run_barnette.py clusters gen --f4 0 --f5 2 --out data/clusters_0_2.jsonl
    python run_barnette.py clusters check data/clusters_0_2.jsonl --criterion parity
    python run_barnette.py oracle tutte.txt --format edge_list --exact
    python run_barnette.py bench --n-min 40 --n-max 400 --out results/bench.csv
    python run_barnette.py render c60.pc --overlay factor --out c60.svg
    python run_barnette.py --help
"""

import argparse
import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional, TextIO

import pandas as pd

# Add project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from logging_system import get_logger, setup_logging
from pipeline.models import GraphReport, InputFormat, OutputFormat, Overlay
from planar.exceptions import BarnetteError, PlanarCodeError


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config", type=str, default=None, help="Pipeline configuration JSON (default: built-in defaults)"
    )
    parser.add_argument(
        "--log-level",
        type=str,
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (default: $BARNETTE_LOG or INFO)",
    )
    parser.add_argument("--log-file", type=str, default=None, help="Path to log file (default: console only)")
    parser.add_argument("--seed", type=int, default=None, help="Determinism seed")
    parser.add_argument("--out", type=str, default=None, help="Output file (default: stdout)")


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", nargs="?", default="-", help="Graph file, '-' for stdin")
    parser.add_argument(
        "--format",
        type=str,
        default=None,
        choices=[f.value for f in InputFormat],
        help="Input format (default: planar_code)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Hamilton cycles of fullerenes and Barnette graphs via 2-factor gluing",
        epilog="Example: python run_barnette.py hamilton graphs.pc --output text",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    hamilton = commands.add_parser("hamilton", help="Run the full pipeline on every input graph")
    _add_input(hamilton)
    _add_common(hamilton)
    hamilton.add_argument("--strict", action="store_true", help="Disable the exact-search fallback")
    hamilton.add_argument("--trace", action="store_true", help="Record one frame per glue step")
    hamilton.add_argument("--budget", type=int, default=None, help="Cluster search budget per repair")
    hamilton.add_argument("--jobs", type=int, default=None, help="Worker processes (default: 1)")
    hamilton.add_argument(
        "--output", type=str, default=None, choices=["json", "text"], help="Report format (default: json)"
    )
    hamilton.add_argument("--summary", type=str, default=None, help="Also write a per-graph CSV summary")

    verify = commands.add_parser("verify", help="Check a Hamilton cycle certificate")
    _add_input(verify)
    _add_common(verify)
    verify.add_argument("--cycle", type=str, required=True, help="Comma-separated 1-based vertex sequence")

    factor = commands.add_parser("factor", help="Build a 2-factor and report its parity counts")
    _add_input(factor)
    _add_common(factor)
    factor.add_argument("--odd", action="store_true", help="Repair parity so the factor has an odd cycle count")
    factor.add_argument("--budget", type=int, default=None, help="Cluster search budget per repair")

    reduce = commands.add_parser("reduce", help="Reduce triangles and adjacent quadrangles")
    _add_input(reduce)
    _add_common(reduce)

    clusters = commands.add_parser("clusters", help="Generate or check cluster databases")
    cluster_commands = clusters.add_subparsers(dest="cluster_command", required=True)
    gen = cluster_commands.add_parser("gen", help="Generate the clusters of one (f4, f5) cell")
    _add_common(gen)
    gen.add_argument("--f4", type=int, required=True, help="Quadrangles per cluster")
    gen.add_argument("--f5", type=int, required=True, help="Pentagons per cluster")
    gen.add_argument("--budget", type=int, default=None, help="Node budget")
    gen.add_argument("--graphs", type=str, default=None, help="Write completed graphs (planar_code) here")
    check = cluster_commands.add_parser("check", help="Check every cluster of a database")
    _add_common(check)
    check.add_argument("database", type=str, help="Cluster database (JSON lines)")
    check.add_argument("--criterion", type=str, default="extension", choices=["extension", "parity"])
    check.add_argument("--budget", type=int, default=None, help="Local search budget per scenario")
    check.add_argument("--max-scenarios", type=int, default=None, help="Stop after this many cut positions")

    oracle = commands.add_parser("oracle", help="Exact Hamilton cycle search")
    _add_input(oracle)
    _add_common(oracle)
    oracle.add_argument("--exact", action="store_true", help="Exact search (the only oracle mode)")
    oracle.add_argument("--budget", type=int, default=None, help="Largest n for exact search")
    oracle.add_argument(
        "--output", type=str, default=None, choices=["json", "text"], help="Report format (default: json)"
    )

    bench = commands.add_parser("bench", help="Time the pipeline on (5,0) nanotubes")
    _add_common(bench)
    bench.add_argument("--n-min", type=int, default=None)
    bench.add_argument("--n-max", type=int, default=None)
    bench.add_argument("--step", type=int, default=None)
    bench.add_argument("--repeats", type=int, default=None)

    render = commands.add_parser("render", help="Draw a graph as SVG")
    _add_input(render)
    _add_common(render)
    render.add_argument("--overlay", type=str, default="none", choices=[o.value for o in Overlay])
    render.add_argument("--index", type=int, default=0, help="Which input graph to draw (0-based)")
    render.add_argument("--size", type=int, default=None, help="Canvas size in pixels")
    return parser


def overrides_from_args(args: argparse.Namespace) -> dict:
    """Nested config overrides for the flags that were given."""
    get = lambda name: getattr(args, name, None)  # noqa: E731
    pipeline = {"strict": True if get("strict") else None}
    oracle = {}
    clusters = {}
    if args.command in ("hamilton", "factor"):
        pipeline["cluster_budget"] = get("budget")
    elif args.command == "oracle":
        oracle["cap"] = get("budget")
    elif args.command == "clusters":
        key = "node_budget" if args.cluster_command == "gen" else "check_budget"
        clusters[key] = get("budget")
    return {
        "pipeline": pipeline,
        "oracle": oracle,
        "clusters": clusters,
        "bench": {"n_min": get("n_min"), "n_max": get("n_max"), "step": get("step"), "repeats": get("repeats")},
        "render": {"size": get("size")},
        "input_format": get("format"),
        "output": get("output"),
        "seed": get("seed"),
        "jobs": get("jobs"),
        "trace": True if get("trace") else None,
    }


@contextmanager
def _open_out(path: Optional[str]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        yield f


def _write_reports(reports, output: OutputFormat, out: TextIO) -> List[GraphReport]:
    written = []
    for report in reports:
        out.write((report.to_text() if output == OutputFormat.TEXT else report.to_json()) + "\n")
        out.flush()
        written.append(report)
    return written


def _summary_frame(reports: List[GraphReport]) -> pd.DataFrame:
    rows = []
    for r in reports:
        rows.append(
            {
                "index": r.index,
                "name": r.name,
                "n": r.n,
                "kind": r.kind,
                "route": r.route.value,
                "certified": r.certified,
                "failed_stage": r.failed_stage.value if r.failed_stage else None,
                "c": r.factor.c if r.factor else None,
                "q": r.factor.q if r.factor else None,
                "seconds": r.total_seconds(),
            }
        )
    return pd.DataFrame(rows)


def _graphs(orchestrator, args):
    from pipeline.hamilton_orchestrator import read_graphs

    return read_graphs(args.input, orchestrator.config.input_format)


def _first_graphs(orchestrator, args, logger):
    for index, item in enumerate(_graphs(orchestrator, args)):
        if isinstance(item, PlanarCodeError):
            logger.error(f"Record #{index} skipped: {item}")
            continue
        yield index, item


def cmd_hamilton(orchestrator, args, logger) -> int:
    with _open_out(args.out) as out:
        reports = _write_reports(orchestrator.run_stream(_graphs(orchestrator, args)), orchestrator.config.output, out)
    if args.summary:
        _summary_frame(reports).to_csv(args.summary, index=False)
        logger.info(f"Summary written to {args.summary}")
    bad = [r for r in reports if not r.acceptable]
    fallback = sum(1 for r in reports if r.route.value == "fallback")
    logger.info(
        f"{len(reports)} graphs: {sum(r.certified for r in reports)} certified, "
        f"{fallback} by fallback, {len(bad)} uncertified"
    )
    return 1 if bad else 0


def cmd_oracle(orchestrator, args, logger) -> int:
    reports = []
    with _open_out(args.out) as out:
        for index, item in enumerate(_graphs(orchestrator, args)):
            if isinstance(item, PlanarCodeError):
                report = orchestrator.parse_failure(index, item)
            else:
                report = orchestrator.run_oracle(item, index)
            reports.extend(_write_reports([report], orchestrator.config.output, out))
    return 1 if any(not r.acceptable for r in reports) else 0


def cmd_verify(orchestrator, args, logger) -> int:
    cycle = [int(v) for v in args.cycle.replace(" ", "").split(",") if v]
    failed = 0
    with _open_out(args.out) as out:
        for index, embedding in _first_graphs(orchestrator, args, logger):
            check = orchestrator.verify_cycle(embedding, cycle)
            failed += not check.ok
            payload = {"index": index, "name": embedding.name, "certified": check.ok}
            if not check.ok:
                payload.update({"reason": check.reason.value, "detail": check.detail})
            out.write(json.dumps(payload) + "\n")
    return 1 if failed else 0


def cmd_factor(orchestrator, args, logger) -> int:
    failed = 0
    with _open_out(args.out) as out:
        for index, embedding in _first_graphs(orchestrator, args, logger):
            try:
                payload = orchestrator.factor_graph(embedding, odd=args.odd)
            except (BarnetteError, ValueError) as exc:
                logger.error(f"#{index} {embedding.name or ''}: {exc}")
                payload = {"index": index, "name": embedding.name, "error": str(exc)}
                failed += 1
            out.write(json.dumps(payload) + "\n")
    return 1 if failed else 0


def cmd_reduce(orchestrator, args, logger) -> int:
    failed = 0
    with _open_out(args.out) as out:
        for index, embedding in _first_graphs(orchestrator, args, logger):
            try:
                payload = orchestrator.reduce_graph(embedding)
            except BarnetteError as exc:
                logger.error(f"#{index} {embedding.name or ''}: {exc}")
                payload = {"index": index, "name": embedding.name, "error": str(exc)}
                failed += 1
            out.write(json.dumps(payload) + "\n")
    return 1 if failed else 0


def cmd_clusters(orchestrator, args, logger) -> int:
    from clusters.checker import Criterion, check_cluster
    from clusters.database import load_database, save_database, save_graphs
    from clusters.generator import generate_clusters

    settings = orchestrator.config.clusters
    if args.cluster_command == "gen":
        db = generate_clusters(args.f4, args.f5, budget=settings.node_budget)
        if args.out:
            save_database(db, args.out)
        if args.graphs:
            save_graphs(db, args.graphs)
        print(json.dumps(db.summary()))
        return 1 if db.incomplete else 0

    db = load_database(args.database)
    criterion = Criterion(args.criterion)
    failing = 0
    with _open_out(args.out) as out:
        for record in db:
            report = check_cluster(record, criterion, settings.check_budget, args.max_scenarios)
            failing += not report.passed
            out.write(json.dumps(report.to_dict()) + "\n")
    logger.info(f"{len(db)} clusters checked under {criterion.value}: {failing} fail")
    return 0


def cmd_bench(orchestrator, args, logger) -> int:
    from pipeline.bench import fit_linear, run_bench, save_bench

    frame = run_bench(orchestrator)
    fit = fit_linear(frame)
    if args.out:
        save_bench(frame, fit, args.out)
    else:
        print(frame.to_string(index=False))
    print(json.dumps(fit.to_dict()))
    return 0 if frame["certified"].all() else 1


def cmd_render(orchestrator, args, logger) -> int:
    for index, embedding in _first_graphs(orchestrator, args, logger):
        if index != args.index:
            continue
        svg = orchestrator.render(embedding, Overlay(args.overlay))
        if args.out:
            Path(args.out).parent.mkdir(parents=True, exist_ok=True)
            Path(args.out).write_bytes(svg)
        else:
            sys.stdout.buffer.write(svg)
        return 0
    logger.error(f"No graph with index {args.index} in {args.input}")
    return 1


HANDLERS = {
    "hamilton": cmd_hamilton,
    "verify": cmd_verify,
    "factor": cmd_factor,
    "reduce": cmd_reduce,
    "clusters": cmd_clusters,
    "oracle": cmd_oracle,
    "bench": cmd_bench,
    "render": cmd_render,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)

    setup_logging(level=args.log_level, log_file=args.log_file)
    logger = get_logger(__name__)

    if args.config is not None and not Path(args.config).exists():
        logger.error(f"Config file not found: {args.config}")
        return 1

    from pipeline.hamilton_orchestrator import HamiltonOrchestrator

    try:
        orchestrator = HamiltonOrchestrator(args.config, overrides_from_args(args))
        return HANDLERS[args.command](orchestrator, args, logger)
    except KeyboardInterrupt:
        logger.info("Received Ctrl+C, shutting down...")
        return 1
    except Exception as e:
        logger.exception(f"Fatal error: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
