"""N-Triples and N-Quads: line-based parsing and sorted serialization."""

from __future__ import annotations

import re

from shaclds.graph import Dataset, Graph
from shaclds.rdfio.common import (
    ParseError,
    ParseOutcome,
    is_absolute_iri,
    new_document_scope,
    unescape_iri,
    unescape_string,
)
from shaclds.terms import IRI, BNode, Literal, Term

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t]+)
  | (?P<iri><(?:[^\x00-\x20<>"{}|^`\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*>)
  | (?P<bnode>_:[A-Za-z0-9_À-￿](?:[A-Za-z0-9_.\-·À-￿]*[A-Za-z0-9_\-·À-￿])?)
  | (?P<string>"(?:[^"\\\n\r]|\\.)*")
  | (?P<lang>@[A-Za-z]+(?:-[A-Za-z0-9]+)*)
  | (?P<dtype>\^\^)
  | (?P<dot>\.)
  | (?P<comment>\#.*)
    """,
    re.VERBOSE,
)


class _LineParser:
    def __init__(self, scope: str, allow_graph: bool) -> None:
        self.scope = scope
        self.allow_graph = allow_graph

    def tokens(self, text: str, lineno: int) -> list[tuple[str, str, int]]:
        out = []
        pos = 0
        n = len(text)
        while pos < n:
            m = _TOKEN.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
            kind = m.lastgroup
            if kind == "comment":
                break
            if kind != "ws":
                out.append((kind, m.group(), pos + 1))
            pos = m.end()
        return out

    def iri(self, raw: str, lineno: int, col: int) -> IRI:
        value = unescape_iri(raw[1:-1], lineno, col + 1)
        if not is_absolute_iri(value):
            raise ParseError(f"invalid IRI <{value}>: not absolute", lineno, col)
        try:
            return IRI(value)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, col) from None

    def parse_line(self, text: str, lineno: int):
        toks = self.tokens(text, lineno)
        if not toks:
            return None
        pos = 0

        def need(kinds: tuple[str, ...], what: str) -> tuple[str, str, int]:
            nonlocal pos
            if pos >= len(toks):
                raise ParseError(f"expected {what} before end of line", lineno, len(text) + 1)
            tok = toks[pos]
            if tok[0] not in kinds:
                raise ParseError(f"expected {what}, found {tok[1]!r}", lineno, tok[2])
            pos += 1
            return tok

        kind, raw, col = need(("iri", "bnode"), "subject")
        s: Term = self.iri(raw, lineno, col) if kind == "iri" else BNode(f"{self.scope}_{raw[2:]}")
        kind, raw, col = need(("iri",), "predicate IRI")
        p = self.iri(raw, lineno, col)
        kind, raw, col = need(("iri", "bnode", "string"), "object")
        if kind == "iri":
            o: Term = self.iri(raw, lineno, col)
        elif kind == "bnode":
            o = BNode(f"{self.scope}_{raw[2:]}")
        else:
            lexical = unescape_string(raw[1:-1], lineno, col + 1)
            if pos < len(toks) and toks[pos][0] == "lang":
                o = Literal(lexical, language=toks[pos][1][1:])
                pos += 1
            elif pos < len(toks) and toks[pos][0] == "dtype":
                pos += 1
                _, draw, dcol = need(("iri",), "datatype IRI")
                o = Literal(lexical, self.iri(draw, lineno, dcol))
            else:
                o = Literal(lexical)
        g = None
        if pos < len(toks) and toks[pos][0] != "dot":
            kind, raw, col = toks[pos]
            if not self.allow_graph:
                raise ParseError(f"unexpected {raw!r}: N-Triples has no graph term", lineno, col)
            if kind == "bnode":
                raise ParseError("blank-node graph names are not supported", lineno, col)
            if kind != "iri":
                raise ParseError(f"expected graph IRI or '.', found {raw!r}", lineno, col)
            g = self.iri(raw, lineno, col)
            pos += 1
        need(("dot",), "'.'")
        if pos != len(toks):
            raise ParseError(f"unexpected {toks[pos][1]!r} after '.'", lineno, toks[pos][2])
        return s, p, o, g


def _parse_lines(text: str, allow_graph: bool) -> ParseOutcome:
    parser = _LineParser(new_document_scope(), allow_graph)
    dataset = Dataset()
    try:
        for lineno, line in enumerate(text.splitlines(), start=1):
            quad = parser.parse_line(line, lineno)
            if quad is not None:
                s, p, o, g = quad
                dataset.add(s, p, o, g)
    except ParseError as exc:
        return ParseOutcome(None, {}, [exc.diagnostic()])
    return ParseOutcome(dataset, {}, [])


def parse_nquads(text: str) -> ParseOutcome:
    """Parse an N-Quads document; a fourth term names the graph."""
    return _parse_lines(text, allow_graph=True)


def parse_ntriples(text: str) -> ParseOutcome:
    """Parse an N-Triples document into the default graph."""
    return _parse_lines(text, allow_graph=False)


def _sort_key(quad) -> tuple:
    s, p, o, g = quad
    return ((g.value if g is not None else ""), s.sort_key(), p.value, o.sort_key())


def serialize_nquads(dataset: Dataset) -> str:
    lines = []
    for s, p, o, g in sorted(dataset.quads(), key=_sort_key):
        if g is None:
            lines.append(f"{s.n3()} {p.n3()} {o.n3()} .\n")
        else:
            lines.append(f"{s.n3()} {p.n3()} {o.n3()} {g.n3()} .\n")
    return "".join(lines)


def serialize_ntriples(graph: Graph) -> str:
    return "".join(
        f"{s.n3()} {p.n3()} {o.n3()} .\n" for s, p, o in sorted(graph, key=lambda t: (t[0].sort_key(), t[1].value, t[2].sort_key()))
    )
