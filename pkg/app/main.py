import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Tuple

import pandas as pd

# Local imports
from app.corpus import parse_graphs, read_graph_file, resolve_corpus
from app.errors import GraphError, GraphFormatError
from app.graph import Multigraph, emit_edge_list, emit_graph6, is_k_connected
from app.harness import DEFAULT_WORKERS, analyze_graph, exit_code, resolve_checks, run_campaign, write_report
from app.near_bipartite import near_bipartite_witnesses
from app.schemas import SCHEMA_MODELS, AnalysisDocument, DecompositionDocument
from app.triladder import TRILADDER_MAX_VERTICES, generate_triladders, k4_decomposition, three_cut_decomposition

logger = logging.getLogger("Main")

# --- CONFIGURATION ---
DEFAULT_LOG_LEVEL = os.getenv("NB_LOG_LEVEL", "INFO")

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_INFRASTRUCTURE = 2


def _read_input(source: str) -> str:
    if source == "-":
        try:
            return sys.stdin.read()
        except UnicodeDecodeError as e:
            raise GraphFormatError(f"stdin is not UTF-8 text (byte {e.start})") from None
    return read_graph_file(source)


def _load_graphs(source: str, fmt: str) -> List[Tuple[int, Multigraph]]:
    return parse_graphs(_read_input(source), fmt)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INFRASTRUCTURE


# ---------------------------------------------------------
# COMMANDS
# ---------------------------------------------------------
def cmd_analyze(args) -> int:
    try:
        graphs = _load_graphs(args.input, args.format)
    except (GraphError, OSError) as e:
        return _fail(str(e))
    reports = [analyze_graph(G, index) for index, (_, G) in enumerate(graphs)]
    if args.json:
        print(AnalysisDocument(graphs=reports).model_dump_json(indent=2))
        return EXIT_OK
    for r in reports:
        print(f"graph {r.index}: n={r.n} m={r.m}")
        print(f"  connected={r.connected} bipartite={r.bipartite} matching_covered={r.matching_covered}")
        print(f"  brick={r.brick} brace={r.brace} near_bipartite={r.near_bipartite}")
        if r.matching_covered:
            print(f"  removable={r.removable}")
            print(f"  nonremovable={r.nonremovable}")
            print(f"  doubletons={r.doubletons}")
        for w in r.witnesses:
            print(f"  witness ({w.e1}, {w.e2}): type I={w.type_I} type II={w.type_II}")
        for t in (r.theorem1, r.theorem2):
            if t is not None:
                verdict = "holds" if t.holds else f"FAILS ({t.detail})"
                print(f"  {t.theorem_id}: {verdict}")
        if r.notes:
            print(f"  notes: {', '.join(r.notes)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        corpus = resolve_corpus(args.corpus, lenient=args.lenient)
        checks = resolve_checks(args.checks)
    except (GraphError, OSError) as e:
        return _fail(str(e))
    report = run_campaign(corpus, checks, workers=args.workers)
    if args.out:
        write_report(report, Path(args.out))
    rows = [{"check": name, **counts.model_dump()} for name, counts in report.per_check.items()]
    table = pd.DataFrame(rows, columns=["check", "applicable", "passed", "failed", "skipped"])
    print(f"corpus {report.corpus}: {report.graph_count} graphs, {report.wall_time:.2f}s")
    print(table.to_string(index=False))
    for cex in report.counterexamples:
        print(f"FAIL {cex.check} on graph {cex.graph_index}: {cex.predicate}")
    for failure in report.infrastructure_failures:
        print(f"ERROR {failure.check} on graph {failure.graph_index}: {failure.error_type}: {failure.message}")
    return exit_code(report)


def cmd_generate(args) -> int:
    if not args.triladders:
        return _fail("nothing to generate (use --triladders)")
    try:
        family = generate_triladders(args.max_n)
    except GraphError as e:
        return _fail(str(e))
    if args.near_bipartite_only:
        family = [(G, bp) for G, bp in family if near_bipartite_witnesses(G)]
    if args.blueprints:
        folder = Path(args.blueprints)
        folder.mkdir(parents=True, exist_ok=True)
    for k, (G, bp) in enumerate(family):
        if args.format == "g6":
            print(emit_graph6(G))
        else:
            print(emit_edge_list(G))
        if args.blueprints:
            (folder / f"triladder_{k}.txt").write_text(bp.to_text(G), encoding="utf-8")
    logger.info(f"Generated {len(family)} tri-ladders with n <= {args.max_n}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    try:
        graphs = _load_graphs(args.input, args.format)
    except (GraphError, OSError) as e:
        return _fail(str(e))
    documents = []
    rejected = 0
    for index, (line, G) in enumerate(graphs):
        if not G.is_cubic or not is_k_connected(G, 3):
            message = f"graph {index} (line {line}) is not a 3-connected cubic graph"
            print(f"error: {message}", file=sys.stderr)
            documents.append(DecompositionDocument(index=index, n=G.n, k4_requested=args.k4, error=message))
            rejected += 1
            continue
        if args.k4:
            tree = k4_decomposition(G)
            doc = DecompositionDocument(index=index, n=G.n, k4_requested=True, k4_present=tree is not None)
        else:
            tree = three_cut_decomposition(G)
            doc = DecompositionDocument(index=index, n=G.n, k4_requested=False)
        if tree is not None:
            doc.leaf_sizes = [leaf.n for leaf in tree.leaves()]
            doc.tree = tree.to_model()
        documents.append(doc)
        if not args.json:
            print(f"graph {index}: n={G.n}")
            if args.k4:
                print(f"  K4-decomposition: {'present' if tree is not None else 'absent'}")
            if tree is not None:
                print(tree.to_text(depth=1), end="")
    if args.json:
        print(json.dumps([d.model_dump() for d in documents], indent=2))
    if rejected:
        logger.warning(f"{rejected} of {len(documents)} graphs were not 3-connected cubic")
        return EXIT_INFRASTRUCTURE
    return EXIT_OK


def cmd_schema(args) -> int:
    names = [args.name] if args.name else list(SCHEMA_MODELS)
    print(json.dumps({name: SCHEMA_MODELS[name].model_json_schema() for name in names}, indent=2))
    return EXIT_OK


# ---------------------------------------------------------
# ENTRY POINT
# ---------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nbverify", description="Removable edges in near-bipartite bricks")
    parser.add_argument("--log-level", default=DEFAULT_LOG_LEVEL, help="logging level (default from NB_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full structural report for every graph in a file")
    p.add_argument("input", nargs="?", default="-", help="graph file, or - for stdin")
    p.add_argument("--format", choices=["auto", "g6", "edges"], default="auto")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("verify", help="run a verification campaign over a corpus")
    p.add_argument("--corpus", required=True, help="builtin:cubic:N, builtin:atlas:N, builtin:triladders:N or a file")
    p.add_argument("--checks", default="all", help="'all' or a comma-separated list of checks")
    p.add_argument("--workers", type=int, default=DEFAULT_WORKERS)
    p.add_argument("--out", help="JSON report path; counterexample sidecars are written next to it")
    p.add_argument("--lenient", action="store_true", help="skip unparseable graphs with a warning")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("generate", help="emit generated graph families")
    p.add_argument("--triladders", action="store_true")
    p.add_argument("--max-n", type=int, default=TRILADDER_MAX_VERTICES)
    p.add_argument("--near-bipartite-only", action="store_true")
    p.add_argument("--format", choices=["g6", "edges"], default="g6")
    p.add_argument("--blueprints", metavar="DIR", help="write one blueprint text file per graph into DIR")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("decompose", help="3-cut-decomposition of 3-connected cubic graphs")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--format", choices=["auto", "g6", "edges"], default="auto")
    p.add_argument("--k4", action="store_true", help="search for a K4-decomposition")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("schema", help="print the JSON schemas of the report documents")
    p.add_argument("name", nargs="?", choices=sorted(SCHEMA_MODELS))
    p.set_defaults(handler=cmd_schema)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except GraphFormatError as e:
        return _fail(str(e))


if __name__ == "__main__":
    sys.exit(main())
