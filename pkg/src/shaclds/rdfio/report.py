"""Turtle serialization of validation reports.

Results are written in a fixed order: focus graph, source shape, focus node,
path, value lexical form, then the remaining fields. Blank nodes sort as equal
(their labels are not stable across parses) and are relabelled in order of
appearance, so writing a parsed report reproduces the same text.
"""

from __future__ import annotations

from shaclds.graph import Graph
from shaclds.namespaces import RDF_TYPE, SH, SHDS
from shaclds.rdfio.common import ParseError
from shaclds.rdfio.serialize import TermWriter
from shaclds.rdfio.turtle import parse_turtle
from shaclds.shacl.model import ValidationReport, ValidationResult
from shaclds.terms import IRI, BNode, Literal, Term

REPORT_PREFIXES = {
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "sh": "http://www.w3.org/ns/shacl#",
    "shds": "http://www.w3id.org/shacl-ds#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}


def _k(term: Term | None) -> tuple:
    if term is None:
        return (-1, "")
    if isinstance(term, BNode):
        return (1, "")
    if isinstance(term, Literal):
        return (2, term.lexical, term.datatype, term.language or "")
    return term.sort_key()


def report_sort_key(r: ValidationResult) -> tuple:
    return (
        _k(r.focus_graph),
        _k(r.source_shape),
        _k(r.focus_node),
        _k(r.path),
        _k(r.value),
        _k(r.source_constraint_component),
        _k(r.severity),
        _k(r.message),
        _k(r.source_shapes_graph),
    )


_FIELDS = (
    ("focus_node", SH.focusNode),
    ("path", SH.resultPath),
    ("value", SH.value),
    ("source_shape", SH.sourceShape),
    ("source_constraint_component", SH.sourceConstraintComponent),
    ("severity", SH.resultSeverity),
    ("message", SH.resultMessage),
    ("focus_graph", SHDS.focusGraph),
    ("source_shapes_graph", SHDS.sourceShapeGraph),
)


class _CanonicalWriter(TermWriter):
    def bnode(self, term: BNode) -> str:
        label = self._bnodes.get(term)
        if label is None:
            label = self._bnodes[term] = f"n{len(self._bnodes)}"
        return "_:" + label


def serialize_report(report: ValidationReport) -> str:
    w = _CanonicalWriter(REPORT_PREFIXES)
    results = sorted(report.results, key=report_sort_key)
    out = [w.prefix_block(), "\n"]
    head = f"_:report a sh:ValidationReport ;\n    sh:conforms {'true' if report.conforms else 'false'}"
    if results:
        head += " ;\n    sh:result " + ", ".join(f"_:r{i}" for i in range(len(results)))
    out.append(head + " .\n")
    for i, r in enumerate(results):
        lines = [f"\n_:r{i} a sh:ValidationResult"]
        for attr, pred in _FIELDS:
            value = getattr(r, attr)
            if value is not None:
                lines.append(f"    {w(pred)} {w(value)}")
        out.append(" ;\n".join(lines) + " .\n")
    return "".join(out)


def report_from_graph(graph: Graph) -> ValidationReport:
    reports = graph.subjects(RDF_TYPE, SH.ValidationReport)
    if len(reports) != 1:
        raise ParseError(f"expected exactly one sh:ValidationReport, found {len(reports)}")
    nodes = graph.objects(reports[0], SH.result)
    results = []
    for node in nodes:
        fields: dict[str, Term] = {}
        for attr, pred in _FIELDS:
            values = graph.objects(node, pred)
            if len(values) > 1:
                raise ParseError(f"result has {len(values)} values for {pred.value}")
            if values:
                fields[attr] = values[0]
        for required in ("focus_node", "source_shape", "source_constraint_component"):
            if required not in fields:
                raise ParseError(f"result is missing {required}")
        fields.setdefault("severity", SH.Violation)
        for attr in ("path", "source_constraint_component", "severity", "focus_graph", "source_shapes_graph"):
            if attr in fields and not isinstance(fields[attr], IRI):
                raise ParseError(f"result field {attr} must be an IRI")
        if "message" in fields and not isinstance(fields["message"], Literal):
            raise ParseError("result message must be a literal")
        results.append(ValidationResult(**fields))  # type: ignore[arg-type]
    return ValidationReport(results)


def parse_report(text: str) -> ValidationReport:
    """Parse a Turtle report; raises :class:`ParseError` on bad input."""
    outcome = parse_turtle(text)
    return report_from_graph(outcome.unwrap().default)
