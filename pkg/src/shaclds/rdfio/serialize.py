"""Deterministic Turtle and TriG writers."""

from __future__ import annotations

import re
from collections.abc import Mapping

from shaclds.graph import Dataset, Graph
from shaclds.terms import IRI, BNode, Literal, Term

_SAFE_LOCAL = re.compile(r"^[A-Za-z0-9_](?:[A-Za-z0-9_\-]*[A-Za-z0-9_\-])?$")
_SAFE_PREFIX = re.compile(r"^(?:[A-Za-z](?:[A-Za-z0-9_\-]*[A-Za-z0-9_\-])?)?$")
_SAFE_BNODE = re.compile(r"^[A-Za-z0-9_](?:[A-Za-z0-9_\-.]*[A-Za-z0-9_\-])?$")

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
XSD_INTEGER = "http://www.w3.org/2001/XMLSchema#integer"
XSD_BOOLEAN = "http://www.w3.org/2001/XMLSchema#boolean"
_INTEGER_LEX = re.compile(r"^[+-]?[0-9]+$")


class TermWriter:
    """Renders terms with prefixed names where the local part is plain."""

    def __init__(self, prefixes: Mapping[str, str] | None = None) -> None:
        self.prefixes = {p: ns for p, ns in (prefixes or {}).items() if _SAFE_PREFIX.match(p)}
        self._by_length = sorted(self.prefixes.items(), key=lambda kv: -len(kv[1]))
        self._bnodes: dict[BNode, str] = {}

    def prefix_block(self) -> str:
        return "".join(f"@prefix {p}: <{ns}> .\n" for p, ns in sorted(self.prefixes.items()))

    def iri(self, term: IRI) -> str:
        value = term.value
        for prefix, ns in self._by_length:
            if value.startswith(ns) and _SAFE_LOCAL.match(value[len(ns):]):
                return f"{prefix}:{value[len(ns):]}"
        return term.n3()

    def bnode(self, term: BNode) -> str:
        label = self._bnodes.get(term)
        if label is None:
            label = term.label if _SAFE_BNODE.match(term.label) else f"b{len(self._bnodes)}"
            self._bnodes[term] = label
        return "_:" + label

    def __call__(self, term: Term, predicate: bool = False) -> str:
        if isinstance(term, IRI):
            if predicate and term.value == RDF_TYPE:
                return "a"
            return self.iri(term)
        if isinstance(term, BNode):
            return self.bnode(term)
        assert isinstance(term, Literal)
        if term.datatype == XSD_INTEGER and _INTEGER_LEX.match(term.lexical):
            return term.lexical
        if term.datatype == XSD_BOOLEAN and term.lexical in ("true", "false"):
            return term.lexical
        if term.language or term.datatype == "http://www.w3.org/2001/XMLSchema#string":
            return term.n3()
        return term.n3().split("^^", 1)[0] + "^^" + self.iri(IRI(term.datatype))


def _triple_block(graph: Graph, w: TermWriter, indent: str = "") -> list[str]:
    lines = []
    by_subject: dict[Term, list] = {}
    for t in graph:
        by_subject.setdefault(t[0], []).append(t)
    for subject in sorted(by_subject, key=lambda t: t.sort_key()):
        triples = sorted(by_subject[subject], key=lambda t: (t[1] != IRI(RDF_TYPE), t[1].value, t[2].sort_key()))
        parts = []
        current = None
        for _, p, o in triples:
            if p != current:
                parts.append([p, [o]])
                current = p
            else:
                parts[-1][1].append(o)
        body = (" ;\n" + indent + "    ").join(f"{w(p, predicate=True)} " + ", ".join(w(o) for o in objs) for p, objs in parts)
        lines.append(f"{indent}{w(subject)} {body} .\n")
    return lines


def serialize_turtle(graph: Graph, prefixes: Mapping[str, str] | None = None) -> str:
    w = TermWriter(prefixes)
    body = _triple_block(graph, w)
    head = w.prefix_block()
    return head + ("\n" if head and body else "") + "".join(body)


def serialize_trig(dataset: Dataset, prefixes: Mapping[str, str] | None = None) -> str:
    w = TermWriter(prefixes)
    chunks = []
    if len(dataset.default):
        chunks.append("".join(_triple_block(dataset.default, w)))
    for name in dataset.graph_names():
        body = "".join(_triple_block(dataset.named[name], w, indent="    "))
        chunks.append(f"GRAPH {w(name)} {{\n{body}}}\n")
    head = w.prefix_block()
    return head + ("\n" if head else "") + "\n".join(chunks)
