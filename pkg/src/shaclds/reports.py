"""Report post-processing: dedup, per-shape counts and count diffs."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from shaclds.shacl.model import ValidationReport, ValidationResult
from shaclds.terms import Term

ABSENT = "<absent>"


class DedupKey(NamedTuple):
    focus_node: Term
    path: object
    value: object
    source_shape: Term
    source_constraint_component: Term
    severity: Term
    message: str


def dedup_key(r: ValidationResult) -> DedupKey:
    """Every standard result field; the two graph-provenance fields are left out."""
    return DedupKey(
        r.focus_node,
        r.path if r.path is not None else ABSENT,
        r.value if r.value is not None else ABSENT,
        r.source_shape,
        r.source_constraint_component,
        r.severity,
        r.message.lexical if r.message is not None else ABSENT,
    )


def dedup(report: ValidationReport) -> tuple[ValidationReport, int]:
    seen: set[DedupKey] = set()
    kept = []
    for r in report.results:
        k = dedup_key(r)
        if k in seen:
            continue
        seen.add(k)
        kept.append(r)
    return ValidationReport(kept), len(report.results) - len(kept)


@dataclass
class ShapeCountTable:
    counts: dict[Term, int] = field(default_factory=dict)
    total: int = 0
    deduped_total: int = 0
    by_focus_graph: dict[Optional[Term], int] = field(default_factory=dict)

    def rows(self) -> list[tuple[Term, int]]:
        return sorted(self.counts.items(), key=lambda kv: kv[0].sort_key())


def group_counts(report: ValidationReport) -> ShapeCountTable:
    counts = Counter(r.source_shape for r in report.results)
    graphs = Counter(r.focus_graph for r in report.results)
    return ShapeCountTable(
        counts=dict(counts),
        total=len(report.results),
        deduped_total=len({dedup_key(r) for r in report.results}),
        by_focus_graph=dict(graphs),
    )


def diff_counts(a: ShapeCountTable, b: ShapeCountTable) -> list[tuple[Term, int, int]]:
    """Shapes whose counts differ: largest absolute delta first, then growth
    before shrinkage, then shape."""
    out = []
    for shape in set(a.counts) | set(b.counts):
        ca, cb = a.counts.get(shape, 0), b.counts.get(shape, 0)
        if ca != cb:
            out.append((shape, ca, cb))
    out.sort(key=lambda row: (-abs(row[2] - row[1]), row[1] - row[2], row[0].sort_key()))
    return out


def _label(term: Optional[Term]) -> str:
    if term is None:
        return "(default)"
    return getattr(term, "value", None) or term.n3()


def format_counts(table: ShapeCountTable) -> str:
    rows = [(_label(s), str(c)) for s, c in table.rows()]
    rows.append(("TOTAL", str(table.total)))
    rows.append(("TOTAL (deduplicated)", str(table.deduped_total)))
    width = max([len("shape")] + [len(r[0]) for r in rows])
    cwidth = max([len("count")] + [len(r[1]) for r in rows])
    lines = [f"{'shape':<{width}}  {'count':>{cwidth}}"]
    lines += [f"{name:<{width}}  {count:>{cwidth}}" for name, count in rows]
    return "\n".join(lines) + "\n"


def counts_csv(table: ShapeCountTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["shape", "count"])
    for shape, count in table.rows():
        w.writerow([_label(shape), count])
    return buf.getvalue()


def format_diff(rows: list[tuple[Term, int, int]]) -> str:
    if not rows:
        return ""
    width = max(len(_label(s)) for s, _, _ in rows)
    lines = [f"{'shape':<{width}}  {'a':>8}  {'b':>8}  {'delta':>8}"]
    for shape, ca, cb in rows:
        lines.append(f"{_label(shape):<{width}}  {ca:>8}  {cb:>8}  {cb - ca:>+8}")
    return "\n".join(lines) + "\n"
