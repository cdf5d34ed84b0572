"""Turtle and TriG parsing.

Supported: ``@prefix``/``PREFIX``, ``@base``/``BASE``, prefixed names, ``a``,
predicate lists (``;``), object lists (``,``), blank-node property lists,
collections, short and long strings, integer/decimal/double and boolean
literals, datatypes, language tags, and (TriG only) ``GRAPH <iri> { ... }``,
``<iri> { ... }`` and bare ``{ ... }`` default-graph blocks.

Blank node labels are scoped to one document by prefixing them with a fresh
document id.
"""

from __future__ import annotations

import re
from urllib.parse import urljoin

from shaclds.graph import Dataset, Graph
from shaclds.namespaces import RDF_FIRST, RDF_NIL, RDF_REST, RDF_TYPE
from shaclds.rdfio.common import (
    ParseError,
    ParseOutcome,
    is_absolute_iri,
    new_document_scope,
    unescape_iri,
    unescape_string,
)
from shaclds.terms import IRI, BNode, Literal, Term

XSD = "http://www.w3.org/2001/XMLSchema#"

_PN_CHARS_BASE = r"A-Za-z\u00C0-\u00D6\u00D8-\u00F6\u00F8-\u02FF\u0370-\u037D\u037F-\u1FFF\u200C-\u200D\u2070-\u218F\u2C00-\u2FEF\u3001-\uD7FF\uF900-\uFDCF\uFDF0-\uFFFD\U00010000-\U000EFFFF"
_PN_CHARS_U = _PN_CHARS_BASE + "_"
_PN_CHARS = _PN_CHARS_U + r"\-0-9\u00B7\u0300-\u036F\u203F-\u2040"
_PLX = r"(?:%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%])"
_PN_PREFIX = rf"[{_PN_CHARS_BASE}](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"
_PN_LOCAL = rf"(?:[{_PN_CHARS_U}:0-9]|{_PLX})(?:(?:[{_PN_CHARS}.:]|{_PLX})*(?:[{_PN_CHARS}:]|{_PLX}))?"

_TOKEN = re.compile(
    rf"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<iri><(?:[^\x00-\x20<>"{{}}|^`\\]|\\u[0-9A-Fa-f]{{4}}|\\U[0-9A-Fa-f]{{8}})*>)
  | (?P<bnode>_:[{_PN_CHARS_U}0-9](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?)
  | (?P<long1>\"\"\"(?:[^"\\]|\\.|"(?!""))*\"\"\")
  | (?P<long2>'''(?:[^'\\]|\\.|'(?!''))*''')
  | (?P<str1>"(?:[^"\\\n\r]|\\.)*")
  | (?P<str2>'(?:[^'\\\n\r]|\\.)*')
  | (?P<directive>@(?:prefix|base)\b)
  | (?P<lang>@[A-Za-z]+(?:-[A-Za-z0-9]+)*)
  | (?P<dtype>\^\^)
  | (?P<double>[+-]?(?:[0-9]+\.[0-9]*[eE][+-]?[0-9]+|\.[0-9]+[eE][+-]?[0-9]+|[0-9]+[eE][+-]?[0-9]+))
  | (?P<decimal>[+-]?[0-9]*\.[0-9]+)
  | (?P<integer>[+-]?[0-9]+)
  | (?P<pname>(?:{_PN_PREFIX})?:(?:{_PN_LOCAL})?)
  | (?P<word>[A-Za-z]+)
  | (?P<punct>[.;,\[\](){{}}])
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind: str, text: str, line: int, col: int) -> None:
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self) -> str:
        return f"{self.kind}:{self.text!r}@{self.line}:{self.col}"


def tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, value, line, pos - line_start + 1))  # type: ignore[arg-type]
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


_LOCAL_ESCAPE = re.compile(r"\\([_~.\-!$&'()*+,;=/?#@%])")


class _Parser:
    def __init__(self, text: str, base: str | None, trig: bool) -> None:
        self.tokens = tokenize(text)
        self.pos = 0
        self.base = base
        self.trig = trig
        self.prefixes: dict[str, str] = {}
        self.scope = new_document_scope()
        self.fresh = 0
        self.dataset = Dataset()
        self.graph: Graph = self.dataset.default

    # token helpers -----------------------------------------------------
    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def is_punct(self, ch: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == ch

    def expect_punct(self, ch: str) -> _Token:
        if not self.is_punct(ch):
            found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
            raise self.error(f"expected {ch!r}, found {found}")
        return self.advance()

    def is_keyword(self, word: str) -> bool:
        return self.tok.kind == "word" and self.tok.text.upper() == word

    # terms -------------------------------------------------------------
    def make_iri(self, value: str, tok: _Token) -> IRI:
        if not is_absolute_iri(value):
            if self.base is None:
                raise self.error(f"relative IRI <{value}> with no base", tok)
            value = urljoin(self.base, value)
            if not is_absolute_iri(value):
                raise self.error(f"cannot resolve IRI <{value}>", tok)
        try:
            return IRI(value)
        except ValueError as exc:
            raise self.error(str(exc), tok) from None

    def iri_token(self, tok: _Token) -> IRI:
        return self.make_iri(unescape_iri(tok.text[1:-1], tok.line, tok.col + 1), tok)

    def pname(self, tok: _Token) -> IRI:
        prefix, _, local = tok.text.partition(":")
        if prefix not in self.prefixes:
            raise self.error(f"undefined prefix {prefix!r}", tok)
        local = _LOCAL_ESCAPE.sub(r"\1", local)
        return self.make_iri(self.prefixes[prefix] + local, tok)

    def iri(self) -> IRI:
        tok = self.tok
        if tok.kind == "iri":
            self.advance()
            return self.iri_token(tok)
        if tok.kind == "pname":
            self.advance()
            return self.pname(tok)
        raise self.error(f"expected an IRI, found {tok.text!r}" if tok.kind != "eof" else "expected an IRI, found end of input")

    def new_bnode(self) -> BNode:
        self.fresh += 1
        return BNode(f"{self.scope}g{self.fresh}")

    def labelled_bnode(self, tok: _Token) -> BNode:
        return BNode(f"{self.scope}_{tok.text[2:]}")

    def literal(self) -> Literal:
        tok = self.advance()
        kind = tok.kind
        if kind in ("long1", "long2"):
            lexical = unescape_string(tok.text[3:-3], tok.line, tok.col + 3)
        else:
            lexical = unescape_string(tok.text[1:-1], tok.line, tok.col + 1)
        if self.tok.kind == "lang":
            lang = self.advance().text[1:]
            return Literal(lexical, language=lang)
        if self.tok.kind == "dtype":
            self.advance()
            return Literal(lexical, self.iri())
        return Literal(lexical)

    # grammar -----------------------------------------------------------
    def parse(self) -> Dataset:
        while self.tok.kind != "eof":
            self.statement()
        return self.dataset

    def statement(self) -> None:
        tok = self.tok
        if tok.kind == "directive":
            self.advance()
            if tok.text == "@prefix":
                self.prefix_decl()
            else:
                self.base_decl()
            self.expect_punct(".")
            return
        if self.is_keyword("PREFIX"):
            self.advance()
            self.prefix_decl()
            return
        if self.is_keyword("BASE"):
            self.advance()
            self.base_decl()
            return
        if self.trig:
            if self.is_keyword("GRAPH"):
                self.advance()
                if self.tok.kind == "bnode" or self.is_punct("["):
                    raise self.error("blank-node graph names are not supported")
                name = self.iri()
                self.graph_block(name)
                return
            if self.is_punct("{"):
                self.graph_block(None)
                return
            if tok.kind in ("iri", "pname") and self.tokens[self.pos + 1].kind == "punct" and self.tokens[self.pos + 1].text == "{":
                name = self.iri()
                self.graph_block(name)
                return
        elif self.is_keyword("GRAPH") or self.is_punct("{"):
            raise self.error("graph blocks are only allowed in TriG")
        self.triples()
        self.expect_punct(".")

    def prefix_decl(self) -> None:
        tok = self.tok
        if tok.kind != "pname" or not tok.text.endswith(":") or tok.text.count(":") != 1:
            raise self.error("expected a prefix name like 'ex:'")
        self.advance()
        iri_tok = self.tok
        if iri_tok.kind != "iri":
            raise self.error("expected an IRI in prefix declaration")
        self.advance()
        self.prefixes[tok.text[:-1]] = str(self.iri_token(iri_tok))

    def base_decl(self) -> None:
        iri_tok = self.tok
        if iri_tok.kind != "iri":
            raise self.error("expected an IRI in base declaration")
        self.advance()
        self.base = str(self.iri_token(iri_tok))

    def graph_block(self, name: IRI | None) -> None:
        self.expect_punct("{")
        outer = self.graph
        self.graph = self.dataset.default if name is None else self.dataset.add_graph(name)
        try:
            while not self.is_punct("}"):
                if self.tok.kind == "eof":
                    raise self.error("unterminated graph block")
                self.triples()
                if self.is_punct("."):
                    self.advance()
                elif not self.is_punct("}"):
                    raise self.error(f"expected '.' or '}}', found {self.tok.text!r}")
            self.advance()
        finally:
            self.graph = outer

    def triples(self) -> None:
        tok = self.tok
        if self.is_punct("["):
            subject = self.blank_node_property_list()
            if self.is_punct(".") or self.is_punct("}") or self.tok.kind == "eof":
                return
            self.predicate_object_list(subject)
            return
        subject = self.subject()
        self.predicate_object_list(subject)

    def subject(self) -> Term:
        tok = self.tok
        if tok.kind in ("iri", "pname"):
            return self.iri()
        if tok.kind == "bnode":
            self.advance()
            return self.labelled_bnode(tok)
        if self.is_punct("("):
            return self.collection()
        raise self.error(f"expected a subject, found {tok.text!r}" if tok.kind != "eof" else "expected a subject, found end of input")

    def predicate_object_list(self, subject: Term) -> None:
        self.verb_objects(subject)
        while self.is_punct(";"):
            while self.is_punct(";"):
                self.advance()
            if self.is_punct(".") or self.is_punct("]") or self.is_punct("}") or self.tok.kind == "eof":
                return
            self.verb_objects(subject)

    def verb_objects(self, subject: Term) -> None:
        if self.tok.kind == "word" and self.tok.text == "a":
            self.advance()
            predicate: IRI = RDF_TYPE
        else:
            predicate = self.iri()
        self.graph.add(subject, predicate, self.object())
        while self.is_punct(","):
            self.advance()
            self.graph.add(subject, predicate, self.object())

    def object(self) -> Term:
        tok = self.tok
        kind = tok.kind
        if kind in ("iri", "pname"):
            return self.iri()
        if kind == "bnode":
            self.advance()
            return self.labelled_bnode(tok)
        if kind in ("str1", "str2", "long1", "long2"):
            return self.literal()
        if kind == "integer":
            self.advance()
            return Literal(tok.text, XSD + "integer")
        if kind == "decimal":
            self.advance()
            return Literal(tok.text, XSD + "decimal")
        if kind == "double":
            self.advance()
            return Literal(tok.text, XSD + "double")
        if kind == "word" and tok.text in ("true", "false"):
            self.advance()
            return Literal(tok.text, XSD + "boolean")
        if self.is_punct("["):
            return self.blank_node_property_list()
        if self.is_punct("("):
            return self.collection()
        raise self.error(f"expected an object, found {tok.text!r}" if kind != "eof" else "expected an object, found end of input")

    def blank_node_property_list(self) -> BNode:
        self.expect_punct("[")
        node = self.new_bnode()
        if self.is_punct("]"):
            self.advance()
            return node
        self.predicate_object_list(node)
        self.expect_punct("]")
        return node

    def collection(self) -> Term:
        self.expect_punct("(")
        items = []
        while not self.is_punct(")"):
            if self.tok.kind == "eof":
                raise self.error("unterminated collection")
            items.append(self.object())
        self.advance()
        if not items:
            return RDF_NIL
        head = self.new_bnode()
        node = head
        for i, item in enumerate(items):
            self.graph.add(node, RDF_FIRST, item)
            nxt: Term = self.new_bnode() if i + 1 < len(items) else RDF_NIL
            self.graph.add(node, RDF_REST, nxt)
            node = nxt  # type: ignore[assignment]
        return head


def _run(text: str, base: str | None, trig: bool) -> ParseOutcome:
    try:
        parser = _Parser(text, base, trig)
        dataset = parser.parse()
    except ParseError as exc:
        return ParseOutcome(None, {}, [exc.diagnostic()])
    except RecursionError:
        return ParseOutcome(None, {}, [ParseError("nesting too deep").diagnostic()])
    return ParseOutcome(dataset, parser.prefixes, [])


def parse_turtle(text: str, base: str | None = None) -> ParseOutcome:
    """Parse a Turtle document; triples land in the dataset's default graph."""
    return _run(text, base, trig=False)


def parse_trig(text: str, base: str | None = None) -> ParseOutcome:
    """Parse a TriG document. Repeated blocks for one graph merge; empty
    blocks still create the named graph."""
    return _run(text, base, trig=True)
