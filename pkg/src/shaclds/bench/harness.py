"""The six benchmark configurations, timed runs and their summaries.

Each run has two timed phases. *Creation* builds whatever graph the
configuration validates: the merged graph for the plain-SHACL configurations,
the combined focus graphs for the combination strategy, and only the
evaluation views for the target strategy. *Validation* is the engine run.
Shapes are parsed fresh for every run, outside both timers; the data
dataset is loaded once by the caller and never timed.
"""

from __future__ import annotations

import csv
import logging
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

from shaclds.bench import shapes as bench_shapes
from shaclds.bench.generator import GeneratorConfig, baseline_graphs, generate, operator_graphs, parse_violation_plan
from shaclds.ds import ShapesDataset, flatten, load_shapes_dataset, plan_pairs, validate_pairs
from shaclds.graph import Dataset, Graph
from shaclds.shacl.loader import load_shapes
from shaclds.shacl.validator import validate_graph
from shaclds.sparql.algebra import Filter, FilterExists, GraphNode, Join, UnionNode

logger = logging.getLogger(__name__)

CONFIG_IDS = ("shacl-baseline", "shacl-full", "ds-target", "ds-target-extra", "ds-combo", "ds-combo-extra")


class BenchError(ValueError):
    pass


@dataclass(frozen=True)
class RunRecord:
    config: str
    run: int
    creation_s: float
    validation_s: float
    errors: int
    note: str = ""


@dataclass(frozen=True)
class SummaryRow:
    config: str
    n: int
    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean: float


def quartiles(values: list[float]) -> tuple[float, float, float]:
    """Q1, median, Q3 by linear interpolation between closest ranks:
    for sorted x[0..n-1] the p-quantile is x[h] with h = (n - 1) p,
    interpolating linearly between x[floor h] and x[ceil h]."""
    if len(values) == 1:
        return values[0], values[0], values[0]
    q1, med, q3 = statistics.quantiles(values, n=4, method="inclusive")
    return q1, med, q3


def summarize(runs: list[RunRecord], phase: str = "validation") -> list[SummaryRow]:
    """One six-number row per configuration (in first-seen order).

    ``phase`` picks the timed value: ``validation``, ``creation`` or ``total``.
    """
    if not runs:
        raise BenchError("cannot summarize an empty run list")
    grouped: dict[str, list[float]] = {}
    for r in runs:
        if phase == "validation":
            v = r.validation_s
        elif phase == "creation":
            v = r.creation_s
        elif phase == "total":
            v = r.creation_s + r.validation_s
        else:
            raise BenchError(f"unknown phase {phase!r}")
        grouped.setdefault(r.config, []).append(v)
    rows = []
    for config, values in grouped.items():
        q1, med, q3 = quartiles(values)
        rows.append(SummaryRow(config, len(values), min(values), q1, med, q3, max(values), statistics.fmean(values)))
    return rows


def _has_graph_clause(node) -> bool:
    if isinstance(node, GraphNode):
        return True
    if isinstance(node, (Join, UnionNode)):
        return _has_graph_clause(node.left) or _has_graph_clause(node.right)
    if isinstance(node, Filter):
        return _has_graph_clause(node.child)
    if isinstance(node, FilterExists):
        return _has_graph_clause(node.outer) or _has_graph_clause(node.pattern)
    return False


def _lacks_graph_rewrites(sd: ShapesDataset) -> bool:
    queries = [c.value.query for shapes in sd.shapes_graphs.values() for s in shapes for c in s.constraints if c.component == "sparql"]
    return bool(queries) and not any(_has_graph_clause(q.pattern) for q in queries)


def default_shapes_text(config: str, data: Dataset) -> str:
    ops = operator_graphs(data)
    if config in ("shacl-baseline", "shacl-full"):
        return bench_shapes.original_shapes_text()
    strategy = "target" if config.startswith("ds-target") else "combo"
    return bench_shapes.shapes_dataset_text(strategy, ops, extra=config.endswith("-extra"))


def _load_run_shapes(config: str, data: Dataset, shapes_text: str | None):
    from shaclds.rdfio import parse_trig, parse_turtle

    text = shapes_text if shapes_text is not None else default_shapes_text(config, data)
    if config.startswith("shacl-"):
        outcome = parse_turtle(text)
        if not outcome.ok:
            raise BenchError(f"shapes for {config} do not parse: {outcome.diagnostics[0]}")
        ds = outcome.dataset
        if ds.named:
            raise BenchError(f"{config} expects a single shapes graph, got a shapes dataset")
        return load_shapes(ds.default)
    outcome = parse_trig(text)
    if not outcome.ok:
        raise BenchError(f"shapes for {config} do not parse: {outcome.diagnostics[0]}")
    sd = load_shapes_dataset(outcome.dataset)
    if not sd.declarations:
        raise BenchError(f"{config} expects a shapes dataset with target declarations")
    return sd


def run_config(
    config: str,
    data: Dataset,
    shapes_text: str | None = None,
    repeats: int = 10,
    warmup: bool = True,
    parallel: int = 1,
) -> list[RunRecord]:
    """Time ``repeats`` runs of one configuration over an already loaded dataset."""
    if config not in CONFIG_IDS:
        raise BenchError(f"unknown configuration {config!r}; expected one of {', '.join(CONFIG_IDS)}")
    if repeats < 1:
        raise BenchError("repeats must be at least 1")
    records = []
    for i in range(-1 if warmup else 0, repeats):
        shapes = _load_run_shapes(config, data, shapes_text)
        note = ""
        if config.startswith("shacl-"):
            selected = "all" if config == "shacl-full" else baseline_graphs(data)
            t0 = time.perf_counter()
            merged: Graph = flatten(data, selected)
            t1 = time.perf_counter()
            report = validate_graph(shapes, merged)
            t2 = time.perf_counter()
        else:
            if config.startswith("ds-target") and _lacks_graph_rewrites(shapes):
                note = "sparql constraints carry no GRAPH clauses"
                logger.warning("%s: %s", config, note)
            t0 = time.perf_counter()
            pairs = plan_pairs(shapes, data)
            t1 = time.perf_counter()
            report = validate_pairs(pairs, parallel)
            t2 = time.perf_counter()
        if i < 0:
            continue
        records.append(RunRecord(config, i + 1, t1 - t0, t2 - t1, len(report.results), note))
        logger.info("%s run %d: creation %.4fs validation %.4fs errors %d", config, i + 1, t1 - t0, t2 - t1, len(report.results))
    return records


@dataclass
class BenchConfig:
    """Settings read from a ``key = value`` file; ``#`` starts a comment."""

    generator: GeneratorConfig = field(default_factory=lambda: GeneratorConfig(full=True))
    configs: tuple[str, ...] = CONFIG_IDS
    repeats: int = 10
    warmup: bool = True
    parallel: int = 1
    data: str | None = None  # optional TriG/N-Quads dump used instead of the generator


def _bool(value: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise BenchError(f"not a boolean: {value!r}")


def parse_key_values(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise BenchError(f"line {lineno}: expected key = value")
        out[key.strip()] = value.strip()
    return out


GENERATOR_KEYS = {
    "seed": int,
    "operators": int,
    "triples_per_operator": int,
    "shared_triples": int,
    "shared_k": int,
    "shared_violating": _bool,
    "full": _bool,
    "unlabelled_properties": int,
    "unlabelled_concepts": int,
}
_GENERATOR_FIELDS = {"operators": "operator_count", "shared_triples": "shared_triple_count"}


def generator_config_from(values: dict[str, str], base: GeneratorConfig | None = None) -> GeneratorConfig:
    kwargs = dict(base.__dict__) if base is not None else {}
    for key, conv in GENERATOR_KEYS.items():
        if key in values:
            try:
                kwargs[_GENERATOR_FIELDS.get(key, key)] = conv(values[key])
            except ValueError as exc:
                raise BenchError(f"{key}: {exc}") from None
    if "violations" in values:
        kwargs["violations"] = parse_violation_plan(values["violations"])
    if "divergence" in values:
        kwargs["divergence"] = frozenset(filter(None, (d.strip() for d in values["divergence"].split(","))))
    cfg = GeneratorConfig(**kwargs)
    cfg.validate()
    return cfg


def load_bench_config(text: str) -> BenchConfig:
    values = parse_key_values(text)
    known = set(GENERATOR_KEYS) | {"violations", "divergence", "configs", "repeats", "warmup", "parallel", "data"}
    unknown = set(values) - known
    if unknown:
        raise BenchError(f"unknown keys: {', '.join(sorted(unknown))}")
    bc = BenchConfig()
    bc.generator = generator_config_from(values, bc.generator)
    if "configs" in values:
        ids = tuple(c.strip() for c in values["configs"].split(",") if c.strip())
        bad = [c for c in ids if c not in CONFIG_IDS]
        if bad or not ids:
            raise BenchError(f"unknown configuration ids: {', '.join(bad) or '(none given)'}")
        bc.configs = ids
    try:
        if "repeats" in values:
            bc.repeats = int(values["repeats"])
        if "parallel" in values:
            bc.parallel = int(values["parallel"])
    except ValueError as exc:
        raise BenchError(str(exc)) from None
    if bc.repeats < 1 or bc.parallel < 1:
        raise BenchError("repeats and parallel must be at least 1")
    if "warmup" in values:
        bc.warmup = _bool(values["warmup"])
    bc.data = values.get("data")
    return bc


RUN_HEADER = ["config", "run", "creation_s", "validation_s", "errors"]
SUMMARY_HEADER = ["config", "n", "min_s", "q1_s", "median_s", "q3_s", "max_s", "mean_s"]


def write_runs(records: list[RunRecord], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RUN_HEADER)
        for r in records:
            w.writerow([r.config, r.run, f"{r.creation_s:.6f}", f"{r.validation_s:.6f}", r.errors])


def write_summary(rows: list[SummaryRow], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_HEADER)
        for s in rows:
            w.writerow([s.config, s.n] + [f"{v:.6f}" for v in (s.min, s.q1, s.median, s.q3, s.max, s.mean)])


def format_summary(rows: list[SummaryRow], totals: list[SummaryRow] | None = None) -> str:
    """Aligned table: one line per configuration, plus a ``+ creation`` line
    (creation and validation together) when totals are given."""
    head = ["Configuration", "Min (s)", "Q1 (s)", "Median (s)", "Q3 (s)", "Max (s)", "Mean (s)"]
    body = []
    by_config = {t.config: t for t in totals or []}
    for s in rows:
        body.append([s.config] + [f"{v:.4f}" for v in (s.min, s.q1, s.median, s.q3, s.max, s.mean)])
        t = by_config.get(s.config)
        if t is not None and not s.config.startswith("ds-target"):
            body.append(["  + creation"] + [f"{v:.4f}" for v in (t.min, t.q1, t.median, t.q3, t.max, t.mean)])
    widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
    lines = ["  ".join(c.ljust(widths[0]) if i == 0 else c.rjust(widths[i]) for i, c in enumerate(r)) for r in [head] + body]
    return "\n".join(lines) + "\n"


def run_bench(bc: BenchConfig, out_dir: Path) -> tuple[list[RunRecord], list[SummaryRow]]:
    """Generate (or load) the data once, run every configuration serially and
    write ``runs.csv``, ``summary.csv``, ``summary_total.csv``, ``summary.txt``
    and ``metadata.txt`` into ``out_dir``."""
    out_dir.mkdir(parents=True, exist_ok=True)
    if bc.data:
        from shaclds.rdfio import load_dataset

        data = load_dataset(bc.data)
    else:
        data, _ = generate(bc.generator)
    records: list[RunRecord] = []
    for config in bc.configs:
        records.extend(run_config(config, data, repeats=bc.repeats, warmup=bc.warmup, parallel=bc.parallel))
    rows = summarize(records)
    totals = summarize(records, "total")
    write_runs(records, out_dir / "runs.csv")
    write_summary(rows, out_dir / "summary.csv")
    write_summary(totals, out_dir / "summary_total.csv")
    (out_dir / "summary.txt").write_text(format_summary(rows, totals))
    notes = sorted({f"{r.config}: {r.note}" for r in records if r.note})
    meta = [
        f"quads = {len(data)}",
        f"named_graphs = {len(data.named)}",
        f"repeats = {bc.repeats}",
        f"warmup = {str(bc.warmup).lower()}",
        f"parallel = {bc.parallel}",
        f"source = {bc.data or 'generator seed ' + str(bc.generator.seed)}",
    ] + [f"note = {n}" for n in notes]
    (out_dir / "metadata.txt").write_text("\n".join(meta) + "\n")
    return records, rows
