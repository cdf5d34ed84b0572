"""Command-line entry point.

Exit status: 0 when the outcome is clean (report conforms, diff empty),
1 when violations or differences were found, 2 on usage, parse or engine
errors. Machine-readable summaries go to standard output; diagnostics go to
standard error.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from pathlib import Path

from shaclds.graph import Dataset, Graph, union_all
from shaclds.terms import IRI

logger = logging.getLogger("shaclds")

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_ERROR = 2


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load(path: str) -> Dataset:
    from shaclds.rdfio import ParseError, load_dataset

    if not Path(path).is_file():
        raise CliError(f"no such file: {path}")
    try:
        return load_dataset(path)
    except ParseError as exc:
        raise CliError(str(exc)) from None
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None


def _select_graphs(data: Dataset, specs: list[str] | None) -> list[IRI] | str:
    if not specs:
        return "all"
    selected: list[IRI] = []
    for spec in specs:
        if spec.startswith("re:"):
            try:
                rx = re.compile(spec[3:])
            except re.error as exc:
                raise CliError(f"bad graph pattern {spec[3:]!r}: {exc}") from None
            selected.extend(n for n in data.graph_names() if rx.search(n.value))
        else:
            try:
                selected.append(IRI(spec.strip("<>")))
            except ValueError as exc:
                raise CliError(f"bad graph IRI {spec!r}: {exc}") from None
    return list(dict.fromkeys(selected))


def _write(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {output}: {exc.strerror or exc}") from None


def cmd_validate(args: argparse.Namespace) -> int:
    from shaclds.ds import flatten, load_shapes_dataset, validate_dataset
    from shaclds.rdfio import serialize_report
    from shaclds.reports import dedup
    from shaclds.shacl import VIOLATION, load_shapes, validate_graph

    data = _load(args.data)
    shapes_ds = _load(args.shapes)
    diagnostics: list[str] = []
    if args.mode == "ds":
        if args.graphs:
            raise CliError("--graphs applies to --mode flat; ds mode takes its targets from the shapes dataset")
        sd = load_shapes_dataset(shapes_ds, diagnostics)
        report = validate_dataset(sd, data, parallel=args.parallel)
    else:
        shapes_graph: Graph = union_all([shapes_ds.default, *shapes_ds.named.values()])
        shapes = load_shapes(shapes_graph, diagnostics)
        merged = flatten(data, _select_graphs(data, args.graphs))
        report = validate_graph(shapes, merged)
    removed = 0
    total = len(report)
    if args.dedup:
        report, removed = dedup(report)
    if args.output:
        _write(serialize_report(report), args.output)
    violations = sum(1 for r in report.results if r.severity == VIOLATION)
    print(f"results={total} removed={removed} kept={len(report)} violations={violations} conforms={str(report.conforms).lower()}")
    return EXIT_OK if report.conforms else EXIT_FOUND


def cmd_query(args: argparse.Namespace) -> int:
    from shaclds.ds import EvaluationDataset
    from shaclds.namespaces import SHDS_DEFAULT
    from shaclds.sparql import evaluate, parse_query

    data = _load(args.data)
    query = parse_query(_read(args.query))
    if args.focus:
        focus = data.default if args.focus in ("default", SHDS_DEFAULT.value) else data.graph(IRI(args.focus.strip("<>")))
        eds: Dataset = EvaluationDataset(data, focus)
    else:
        eds = data
    pre = {"this": IRI(args.this.strip("<>"))} if args.this else None
    rows = evaluate(query, eds, pre)
    names = [v.name for v in query.variables] if not query.star else sorted({k for r in rows for k in r})
    out = ["\t".join("?" + n for n in names)]
    for r in rows:
        out.append("\t".join(r[n].n3() if n in r else "" for n in names))
    _write("\n".join(out) + "\n", args.output)
    return EXIT_OK


def _load_report(path: str):
    from shaclds.rdfio import ParseError, parse_report

    try:
        return parse_report(_read(path))
    except ParseError as exc:
        raise CliError(f"{path}: {exc}") from None


def cmd_report(args: argparse.Namespace) -> int:
    from shaclds.rdfio import serialize_report
    from shaclds.reports import counts_csv, dedup, diff_counts, format_counts, format_diff, group_counts

    if args.action == "dedup":
        report, removed = dedup(_load_report(args.inputs[0]))
        _write(serialize_report(report), args.output)
        print(f"input={len(report) + removed} removed={removed} output={len(report)}", file=sys.stdout if args.output else sys.stderr)
        return EXIT_OK
    if args.action == "counts":
        table = group_counts(_load_report(args.inputs[0]))
        _write(counts_csv(table) if args.csv else format_counts(table), args.output)
        return EXIT_OK
    if len(args.inputs) != 2:
        raise CliError("report diff takes exactly two report files")
    a = group_counts(_load_report(args.inputs[0]))
    b = group_counts(_load_report(args.inputs[1]))
    rows = diff_counts(a, b)
    if args.csv:
        text = "shape,count_a,count_b\n" + "".join(f"{s.n3()[1:-1]},{ca},{cb}\n" for s, ca, cb in rows)
    else:
        text = format_diff(rows)
    _write(text, args.output)
    print(f"differing_shapes={len(rows)}", file=sys.stderr)
    return EXIT_OK if not rows else EXIT_FOUND


def cmd_bench(args: argparse.Namespace) -> int:
    from shaclds.bench.harness import format_summary, load_bench_config, run_bench, summarize

    bc = load_bench_config(_read(args.config))
    if args.repeats is not None:
        bc.repeats = args.repeats
    records, rows = run_bench(bc, Path(args.output_dir))
    sys.stdout.write(format_summary(rows, summarize(records, "total")))
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    from shaclds.bench.generator import generate
    from shaclds.bench.harness import generator_config_from, parse_key_values
    from shaclds.namespaces import STANDARD_PREFIXES
    from shaclds.rdfio import write_dataset

    values = parse_key_values(_read(args.config))
    allowed = {"seed", "operators", "triples_per_operator", "shared_triples", "shared_k", "shared_violating", "full", "unlabelled_properties", "unlabelled_concepts", "violations", "divergence"}
    unknown = set(values) - allowed
    if unknown:
        raise CliError(f"unknown generator keys: {', '.join(sorted(unknown))}")
    cfg = generator_config_from(values)
    data, truth = generate(cfg)
    prefixes = dict(STANDARD_PREFIXES)
    prefixes.update({"era": "http://data.europa.eu/949/", "era-g": "http://data.europa.eu/949/graph/", "era-rinf": "http://data.europa.eu/949/graph/rinf/"})
    try:
        write_dataset(data, args.output, prefixes)
    except OSError as exc:
        raise CliError(f"cannot write {args.output}: {exc.strerror or exc}") from None
    _write("view\tshape\tgraph\tcount\n" + truth.to_text(), args.output + ".truth.tsv")
    print(f"quads={len(data)} graphs={len(data.named)} output={args.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shaclds", description="Validate RDF datasets with graph-level SHACL targeting.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more detail on standard error")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="validate a data dataset against shapes")
    v.add_argument("data", help="data dataset (.trig, .nq, .ttl, .nt)")
    v.add_argument("shapes", help="shapes dataset (.trig) or shapes graph for --mode flat")
    v.add_argument("--mode", choices=("ds", "flat"), default="ds")
    v.add_argument("--graphs", nargs="+", metavar="IRI|re:REGEX", help="graphs merged in flat mode (default: all)")
    v.add_argument("-o", "--output", help="write the Turtle report here")
    v.add_argument("--dedup", action="store_true", help="deduplicate results ignoring graph provenance")
    v.add_argument("--parallel", type=int, default=1, metavar="N", help="validate up to N graph pairs concurrently")
    v.set_defaults(func=cmd_validate)

    q = sub.add_parser("query", help="evaluate a SELECT query, tab-separated output")
    q.add_argument("data")
    q.add_argument("query", help="file holding the query text")
    q.add_argument("--focus", help="graph IRI (or 'default') used as the default graph of the evaluation view")
    q.add_argument("--this", help="pre-bind $this to this IRI")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_query)

    r = sub.add_parser("report", help="post-process validation reports")
    r.add_argument("action", choices=("dedup", "counts", "diff"))
    r.add_argument("inputs", nargs="+", help="report file(s); diff takes two")
    r.add_argument("-o", "--output")
    r.add_argument("--csv", action="store_true", help="comma-separated output")
    r.set_defaults(func=cmd_report)

    b = sub.add_parser("bench", help="run the strategy benchmark")
    b.add_argument("config", help="key = value benchmark configuration")
    b.add_argument("output_dir")
    b.add_argument("--repeats", type=int, help="override the configured repeat count")
    b.set_defaults(func=cmd_bench)

    g = sub.add_parser("generate", help="write a synthetic dataset and its ground truth")
    g.add_argument("config", help="key = value generator configuration")
    g.add_argument("output", help=".trig or .nq")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "parallel", 1) is not None and getattr(args, "parallel", 1) < 1:
        print("error: --parallel must be at least 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (ValueError, RuntimeError) as exc:
        # parse, load and engine errors all derive from these
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
