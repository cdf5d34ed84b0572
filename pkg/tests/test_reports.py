from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import ex
from shaclds.namespaces import SH
from shaclds.reports import ABSENT, ShapeCountTable, counts_csv, dedup, dedup_key, diff_counts, format_counts, format_diff, group_counts
from shaclds.shacl.model import WARNING, ValidationReport, ValidationResult
from shaclds.terms import Literal

A, B = ex("ShapeA"), ex("ShapeB")


def result(focus="f", shape=A, graph=None, value=None, message=None, **kw) -> ValidationResult:
    return ValidationResult(
        ex(focus),
        shape,
        kw.pop("component", SH.PatternConstraintComponent),
        value=value,
        message=message,
        focus_graph=graph,
        source_shapes_graph=ex("sg") if graph else None,
        **kw,
    )


def random_report(rng: random.Random, n: int) -> ValidationReport:
    return ValidationReport(
        [
            result(
                focus=f"f{rng.randrange(4)}",
                shape=rng.choice([A, B]),
                graph=rng.choice([None, ex("g1"), ex("g2"), ex("g3")]),
                value=rng.choice([None, Literal("1"), Literal("2")]),
                message=rng.choice([None, Literal("m", language="en"), Literal("m")]),
                severity=rng.choice([SH.Violation, WARNING]),
            )
            for _ in range(n)
        ]
    )


class TestDedup:
    def test_repeats_across_graphs_collapse(self):
        report = ValidationReport([result(graph=ex("g1")), result(graph=ex("g2"))])
        out, removed = dedup(report)
        assert removed == 1 and len(out) == 1
        assert out.results[0].focus_graph == ex("g1")

    def test_distinct_keys_kept(self):
        report = ValidationReport([result("a"), result("b"), result("a", shape=B), result("a", value=Literal("x"))])
        out, removed = dedup(report)
        assert removed == 0 and out.results == report.results

    def test_message_lexical_form_only(self):
        a = result(message=Literal("m", language="en"))
        b = result(message=Literal("m"))
        assert dedup_key(a) == dedup_key(b)
        assert dedup_key(result(message=Literal("other"))) != dedup_key(a)

    def test_absent_marker(self):
        k = dedup_key(result())
        assert k.value == ABSENT and k.path == ABSENT and k.message == ABSENT
        assert dedup_key(result(value=Literal(ABSENT))) != k

    def test_arithmetic_shape(self):
        # output = input - removed, on a large example and on random reports
        assert 1_250_354 - 32_712 == 1_217_642
        rng = random.Random(4)
        for _ in range(20):
            report = random_report(rng, rng.randrange(60))
            out, removed = dedup(report)
            assert len(out) == len(report) - removed

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10_000), st.integers(0, 40))
    def test_properties(self, seed, n):
        report = random_report(random.Random(seed), n)
        once, removed = dedup(report)
        twice, removed_again = dedup(once)
        assert twice.results == once.results and removed_again == 0
        keys = {dedup_key(r) for r in report.results}
        assert {dedup_key(r) for r in once.results} == keys
        assert group_counts(once).total == len(keys)
        assert group_counts(report).deduped_total == len(keys)


class TestGroup:
    def test_counts(self):
        report = ValidationReport([result("a"), result("b"), result("c"), result("d", shape=B)])
        table = group_counts(report)
        assert table.counts == {A: 3, B: 1} and table.total == 4
        assert table.rows() == [(A, 3), (B, 1)]

    def test_empty(self):
        table = group_counts(ValidationReport())
        assert table.counts == {} and table.total == 0 and table.deduped_total == 0

    def test_per_focus_graph(self):
        report = ValidationReport([result("a", graph=ex("op1")), result("b", graph=ex("op1")), result("a", graph=ex("op2"))])
        assert group_counts(report).by_focus_graph == {ex("op1"): 2, ex("op2"): 1}

    def test_total_is_sum(self):
        rng = random.Random(5)
        for _ in range(20):
            t = group_counts(random_report(rng, rng.randrange(30)))
            assert t.total == sum(t.counts.values())
            assert t.deduped_total <= t.total


class TestDiff:
    def test_identical(self):
        t = ShapeCountTable({A: 3, B: 1}, 4)
        assert diff_counts(t, t) == []
        assert format_diff([]) == ""

    def test_example(self):
        a = ShapeCountTable({A: 3}, 3)
        b = ShapeCountTable({A: 2, B: 1}, 3)
        assert diff_counts(a, b) == [(B, 0, 1), (A, 3, 2)]

    def test_larger_delta_first(self):
        a = ShapeCountTable({A: 1, B: 1}, 2)
        b = ShapeCountTable({A: 2, B: 5}, 7)
        assert [row[0] for row in diff_counts(a, b)] == [B, A]

    def test_format(self):
        text = format_diff([(B, 0, 1), (A, 3, 2)])
        lines = text.splitlines()
        assert lines[0].split() == ["shape", "a", "b", "delta"]
        assert lines[1].split() == [B.value, "0", "1", "+1"]
        assert lines[2].split() == [A.value, "3", "2", "-1"]


class TestFormat:
    def test_text_table(self):
        report = ValidationReport([result("a", graph=ex("g1")), result("a", graph=ex("g2")), result("b", shape=B)])
        lines = format_counts(group_counts(report)).splitlines()
        assert lines[0].split() == ["shape", "count"]
        assert lines[1].split() == [A.value, "2"]
        assert lines[2].split() == [B.value, "1"]
        assert lines[3].split() == ["TOTAL", "3"]
        assert lines[4].split() == ["TOTAL", "(deduplicated)", "2"]
        assert len({len(line) for line in lines}) == 1

    def test_csv(self):
        report = ValidationReport([result("a"), result("b", shape=B)])
        assert counts_csv(group_counts(report)) == f"shape,count\n{A.value},1\n{B.value},1\n"
