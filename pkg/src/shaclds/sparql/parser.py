"""Recursive-descent parser for the supported SELECT fragment.

Anything outside the fragment that the grammar recognises (OPTIONAL, BIND,
property paths, aggregates, ...) raises :class:`UnsupportedFeature` naming
the construct rather than a generic syntax error.
"""

from __future__ import annotations

import re

from shaclds.rdfio.common import ParseError, is_absolute_iri, unescape_iri, unescape_string
from shaclds.sparql.algebra import (
    BGP,
    Call,
    Const,
    Filter,
    FilterExists,
    GraphNode,
    Join,
    Node,
    Projection,
    Query,
    TriplePattern,
    UnionNode,
    Var,
    VarRef,
    pattern_vars,
)
from shaclds.terms import IRI, Literal

XSD = "http://www.w3.org/2001/XMLSchema#"
RDF_TYPE = IRI("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")


class SparqlSyntaxError(ParseError):
    pass


class UnsupportedFeature(SparqlSyntaxError):
    def __init__(self, construct: str, line: int = 0, column: int = 0) -> None:
        super().__init__(f"unsupported SPARQL feature: {construct}", line, column)
        self.construct = construct


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<iri><[^<>"{}|^`\\\x00-\x20]*>)
  | (?P<var>[?$][A-Za-z0-9_À-￿]+)
  | (?P<bnode>_:[A-Za-z0-9_À-￿](?:[A-Za-z0-9_.\-À-￿]*[A-Za-z0-9_\-À-￿])?)
  | (?P<long1>\"\"\"(?:[^"\\]|\\.|"(?!""))*\"\"\")
  | (?P<long2>'''(?:[^'\\]|\\.|'(?!''))*''')
  | (?P<str1>"(?:[^"\\\n\r]|\\.)*")
  | (?P<str2>'(?:[^'\\\n\r]|\\.)*')
  | (?P<lang>@[A-Za-z]+(?:-[A-Za-z0-9]+)*)
  | (?P<dtype>\^\^)
  | (?P<double>[+-]?(?:[0-9]+\.[0-9]*[eE][+-]?[0-9]+|\.[0-9]+[eE][+-]?[0-9]+|[0-9]+[eE][+-]?[0-9]+))
  | (?P<decimal>[0-9]*\.[0-9]+)
  | (?P<integer>[0-9]+)
  | (?P<pname>(?:[A-Za-z](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)?:(?:[A-Za-z0-9_:](?:[A-Za-z0-9_.\-:]*[A-Za-z0-9_\-:])?)?)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>&&|\|\||!=|<=|>=|[=<>!])
  | (?P<punct>[{}().,;*/|^+\-?\[\]])
    """,
    re.VERBOSE,
)

_BUILTINS = {
    "REGEX": (2, 3),
    "STR": (1, 1),
    "DATATYPE": (1, 1),
    "LANG": (1, 1),
    "BOUND": (1, 1),
    "ISIRI": (1, 1),
    "ISURI": (1, 1),
    "ISBLANK": (1, 1),
    "ISLITERAL": (1, 1),
    "SAMETERM": (2, 2),
}

_UNSUPPORTED_KEYWORDS = {
    "OPTIONAL": "OPTIONAL",
    "MINUS": "MINUS",
    "BIND": "BIND",
    "VALUES": "VALUES",
    "SERVICE": "SERVICE",
    "FROM": "FROM/FROM NAMED",
    "ORDER": "ORDER BY",
    "GROUP": "GROUP BY",
    "HAVING": "HAVING",
    "LIMIT": "LIMIT",
    "OFFSET": "OFFSET",
    "CONSTRUCT": "CONSTRUCT queries",
    "ASK": "ASK queries",
    "DESCRIBE": "DESCRIBE queries",
    "REDUCED": "REDUCED",
    "IN": "IN",
    "NOT": "NOT IN",
}

_AGGREGATES = {"COUNT", "SUM", "MIN", "MAX", "AVG", "SAMPLE", "GROUP_CONCAT"}


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SparqlSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        value = m.group()
        if m.lastgroup not in ("ws", "comment"):
            toks.append(_Tok(m.lastgroup, value, line, pos - line_start + 1))
        if "\n" in value:
            line += value.count("\n")
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str, prefixes: dict[str, str] | None) -> None:
        self.toks = _tokenize(text)
        self.i = 0
        self.prefixes: dict[str, str] = dict(prefixes or {})
        self.base: str | None = None

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None) -> SparqlSyntaxError:
        tok = tok or self.tok
        return SparqlSyntaxError(msg, tok.line, tok.col)

    def unsupported(self, construct: str, tok: _Tok | None = None) -> UnsupportedFeature:
        tok = tok or self.tok
        return UnsupportedFeature(construct, tok.line, tok.col)

    def kw(self, word: str) -> bool:
        return self.tok.kind == "word" and self.tok.text.upper() == word

    def punct(self, ch: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == ch

    def expect(self, ch: str) -> _Tok:
        if not self.punct(ch):
            found = "end of query" if self.tok.kind == "eof" else repr(self.tok.text)
            raise self.error(f"expected {ch!r}, found {found}")
        return self.advance()

    def expect_kw(self, word: str) -> None:
        if not self.kw(word):
            raise self.error(f"expected {word}, found {self.tok.text!r}")
        self.advance()

    # terms ------------------------------------------------------------------
    def resolve(self, value: str, tok: _Tok) -> IRI:
        if not is_absolute_iri(value):
            if self.base is None:
                raise self.error(f"relative IRI <{value}> with no BASE", tok)
            from urllib.parse import urljoin

            value = urljoin(self.base, value)
        try:
            return IRI(value)
        except ValueError as exc:
            raise self.error(str(exc), tok) from None

    def iri_of(self, tok: _Tok) -> IRI:
        if tok.kind == "iri":
            return self.resolve(unescape_iri(tok.text[1:-1], tok.line, tok.col), tok)
        prefix, _, local = tok.text.partition(":")
        if prefix not in self.prefixes:
            raise self.error(f"undefined prefix {prefix!r}", tok)
        return self.resolve(self.prefixes[prefix] + local, tok)

    def literal(self) -> Literal:
        tok = self.advance()
        if tok.kind in ("long1", "long2"):
            lexical = unescape_string(tok.text[3:-3], tok.line, tok.col)
        else:
            lexical = unescape_string(tok.text[1:-1], tok.line, tok.col)
        if self.tok.kind == "lang":
            return Literal(lexical, language=self.advance().text[1:])
        if self.tok.kind == "dtype":
            self.advance()
            dt = self.advance()
            if dt.kind not in ("iri", "pname"):
                raise self.error("expected a datatype IRI", dt)
            return Literal(lexical, self.iri_of(dt))
        return Literal(lexical)

    def number(self) -> Literal:
        tok = self.advance()
        kind = {"integer": "integer", "decimal": "decimal", "double": "double"}[tok.kind]
        return Literal(tok.text, XSD + kind)

    def graph_term(self, position: str):
        tok = self.tok
        if tok.kind == "var":
            self.advance()
            return Var(tok.text[1:])
        if tok.kind in ("iri", "pname"):
            self.advance()
            return self.iri_of(tok)
        if tok.kind == "bnode":
            if position == "predicate":
                raise self.error("blank node in predicate position")
            self.advance()
            return Var(tok.text)  # non-distinguished variable
        if position == "predicate":
            if tok.kind == "word" and tok.text == "a":
                self.advance()
                return RDF_TYPE
            if tok.kind == "punct" and tok.text in ("^", "("):
                raise self.unsupported("property paths")
            if tok.kind == "op" and tok.text == "!":
                raise self.unsupported("property paths")
        else:
            if tok.kind in ("str1", "str2", "long1", "long2"):
                return self.literal()
            if tok.kind in ("integer", "decimal", "double"):
                return self.number()
            if tok.kind == "word" and tok.text in ("true", "false"):
                self.advance()
                return Literal(tok.text, XSD + "boolean")
            if self.punct("["):
                raise self.unsupported("blank node property lists in patterns")
            if self.punct("("):
                raise self.unsupported("collections in patterns")
        found = "end of query" if tok.kind == "eof" else repr(tok.text)
        raise self.error(f"expected {position}, found {found}")

    # query ------------------------------------------------------------------
    def query(self, text: str) -> Query:
        while True:
            if self.kw("PREFIX"):
                self.advance()
                ns = self.advance()
                if ns.kind != "pname" or not ns.text.endswith(":") or ns.text.count(":") != 1:
                    raise self.error("expected a prefix name like 'ex:'", ns)
                iri = self.advance()
                if iri.kind != "iri":
                    raise self.error("expected an IRI in PREFIX", iri)
                self.prefixes[ns.text[:-1]] = self.iri_of(iri).value
            elif self.kw("BASE"):
                self.advance()
                iri = self.advance()
                if iri.kind != "iri":
                    raise self.error("expected an IRI in BASE", iri)
                self.base = self.iri_of(iri).value
            else:
                break
        if not self.kw("SELECT"):
            for word, name in _UNSUPPORTED_KEYWORDS.items():
                if self.kw(word) and word in ("CONSTRUCT", "ASK", "DESCRIBE"):
                    raise self.unsupported(name)
            raise self.error(f"expected SELECT, found {self.tok.text!r}")
        self.advance()
        distinct = False
        if self.kw("DISTINCT"):
            self.advance()
            distinct = True
        elif self.kw("REDUCED"):
            raise self.unsupported("REDUCED")
        projection: list[Projection] = []
        star = False
        if self.punct("*"):
            self.advance()
            star = True
        else:
            while self.tok.kind == "var" or self.punct("("):
                if self.tok.kind == "var":
                    projection.append(Projection(Var(self.advance().text[1:])))
                else:
                    self.advance()
                    expr = self.expression()
                    self.expect_kw("AS")
                    v = self.advance()
                    if v.kind != "var":
                        raise self.error("expected a variable after AS", v)
                    self.expect(")")
                    projection.append(Projection(Var(v.text[1:]), expr))
            if not projection:
                raise self.error("empty projection")
        if self.kw("FROM"):
            raise self.unsupported("FROM/FROM NAMED dataset clauses")
        if self.kw("WHERE"):
            self.advance()
        pattern = self.group()
        if self.tok.kind != "eof":
            for word, name in _UNSUPPORTED_KEYWORDS.items():
                if self.kw(word):
                    raise self.unsupported(name)
            raise self.error(f"unexpected {self.tok.text!r} after query pattern")
        q = Query(projection, pattern, distinct, dict(self.prefixes), star, text)
        bound = pattern_vars(pattern)
        seen = set()
        for p in projection:
            if p.var in seen:
                raise self.error(f"variable {p.var} projected twice")
            seen.add(p.var)
            if p.expr is not None and p.var in bound:
                raise self.error(f"AS target {p.var} is already bound in the pattern")
            if p.expr is None and p.var not in bound:
                raise self.error(f"projected variable {p.var} does not occur in the pattern")
        return q

    def group(self) -> Node:
        """GroupGraphPattern -> algebra. Filters scope over the whole group."""
        self.expect("{")
        if self.kw("SELECT"):
            raise self.unsupported("subqueries")
        parts: list[Node] = []
        filters: list[tuple] = []
        pending: list[TriplePattern] = []

        def flush() -> None:
            if pending:
                parts.append(BGP(tuple(pending)))
                pending.clear()

        while not self.punct("}"):
            tok = self.tok
            if tok.kind == "eof":
                raise self.error("unterminated group pattern")
            if self.punct("."):
                self.advance()
                continue
            if self.kw("FILTER"):
                self.advance()
                filters.append(self.filter_clause())
                continue
            if self.kw("GRAPH"):
                self.advance()
                name = self.graph_term("graph name")
                flush()
                parts.append(GraphNode(name, self.group()))
                continue
            if self.punct("{"):
                flush()
                node = self.group()
                while self.kw("UNION"):
                    self.advance()
                    node = UnionNode(node, self.group())
                parts.append(node)
                continue
            if tok.kind == "word":
                upper = tok.text.upper()
                if upper in _UNSUPPORTED_KEYWORDS and upper not in ("IN", "NOT"):
                    raise self.unsupported(_UNSUPPORTED_KEYWORDS[upper])
            self.triples_same_subject(pending)
            if not (self.punct(".") or self.punct("}")):
                if self.kw("FILTER") or self.kw("GRAPH") or self.punct("{"):
                    continue
                for word, name in _UNSUPPORTED_KEYWORDS.items():
                    if self.kw(word):
                        raise self.unsupported(name)
                raise self.error(f"expected '.' or '}}', found {self.tok.text!r}")
        self.advance()
        flush()

        node: Node | None = None
        for part in parts:
            if node is None:
                node = part
            elif isinstance(node, BGP) and not node.patterns:
                node = part
            else:
                node = Join(node, part)
        if node is None:
            node = BGP(())
        for kind, payload in filters:
            if kind == "expr":
                node = Filter(payload, node)
            else:
                negated, inner = payload
                node = FilterExists(inner, node, negated)
        return node

    def triples_same_subject(self, out: list[TriplePattern]) -> None:
        s = self.graph_term("subject")
        while True:
            p = self.graph_term("predicate")
            if self.tok.kind == "punct" and self.tok.text in ("/", "|", "*", "+", "?"):
                raise self.unsupported("property paths")
            while True:
                o = self.graph_term("object")
                out.append(TriplePattern(s, p, o))
                if self.punct(","):
                    self.advance()
                    continue
                break
            if self.punct(";"):
                while self.punct(";"):
                    self.advance()
                if self.punct(".") or self.punct("}"):
                    return
                continue
            return

    def filter_clause(self) -> tuple:
        if self.kw("NOT"):
            self.advance()
            self.expect_kw("EXISTS")
            return ("exists", (True, self.group()))
        if self.kw("EXISTS"):
            self.advance()
            return ("exists", (False, self.group()))
        if self.punct("("):
            self.advance()
            expr = self.expression()
            self.expect(")")
            return ("expr", expr)
        if self.tok.kind == "word":
            return ("expr", self.primary())
        raise self.error(f"expected a filter constraint, found {self.tok.text!r}")

    # expressions --------------------------------------------------------------
    def expression(self):
        left = self.and_expr()
        while self.tok.kind == "op" and self.tok.text == "||":
            self.advance()
            left = Call("||", (left, self.and_expr()))
        return left

    def and_expr(self):
        left = self.relational()
        while self.tok.kind == "op" and self.tok.text == "&&":
            self.advance()
            left = Call("&&", (left, self.relational()))
        return left

    def relational(self):
        left = self.unary()
        if self.tok.kind == "op" and self.tok.text in ("=", "!=", "<", ">", "<=", ">="):
            op = self.advance().text
            return Call(op, (left, self.unary()))
        if self.kw("IN") or (self.kw("NOT") and self.peek().kind == "word" and self.peek().text.upper() == "IN"):
            raise self.unsupported("IN / NOT IN")
        if self.tok.kind == "punct" and self.tok.text in ("+", "-", "*", "/"):
            raise self.unsupported("arithmetic expressions")
        return left

    def unary(self):
        if self.tok.kind == "op" and self.tok.text == "!":
            self.advance()
            return Call("!", (self.unary(),))
        if self.tok.kind == "punct" and self.tok.text in ("+", "-"):
            raise self.unsupported("arithmetic expressions")
        return self.primary()

    def primary(self):
        tok = self.tok
        if self.punct("("):
            self.advance()
            e = self.expression()
            self.expect(")")
            return e
        if tok.kind == "var":
            self.advance()
            return VarRef(Var(tok.text[1:]))
        if tok.kind in ("iri", "pname"):
            self.advance()
            if self.punct("("):
                raise self.unsupported("IRI function calls", tok)
            return Const(self.iri_of(tok))
        if tok.kind in ("str1", "str2", "long1", "long2"):
            return Const(self.literal())
        if tok.kind in ("integer", "decimal", "double"):
            return Const(self.number())
        if tok.kind == "word":
            upper = tok.text.upper()
            if tok.text in ("true", "false"):
                self.advance()
                return Const(Literal(tok.text, XSD + "boolean"))
            if upper in ("EXISTS", "NOT"):
                raise self.unsupported("EXISTS inside a compound filter expression")
            if upper in _AGGREGATES:
                raise self.unsupported("aggregates")
            if upper in _BUILTINS:
                self.advance()
                lo, hi = _BUILTINS[upper]
                self.expect("(")
                args = []
                if upper == "BOUND":
                    v = self.advance()
                    if v.kind != "var":
                        raise self.error("BOUND expects a variable", v)
                    args.append(VarRef(Var(v.text[1:])))
                else:
                    args.append(self.expression())
                    while self.punct(","):
                        self.advance()
                        args.append(self.expression())
                self.expect(")")
                if not lo <= len(args) <= hi:
                    raise self.error(f"{upper} takes {lo}..{hi} arguments, got {len(args)}", tok)
                op = "isiri" if upper == "ISURI" else upper.lower()
                return Call(op, tuple(args))
            if self.peek().kind == "punct" and self.peek().text == "(":
                raise self.unsupported(f"function {tok.text}")
        found = "end of query" if tok.kind == "eof" else repr(tok.text)
        raise self.error(f"expected an expression, found {found}")


def parse_query(text: str, prefixes: dict[str, str] | None = None) -> Query:
    """Parse a SELECT query. ``prefixes`` pre-seeds the prefix map."""
    try:
        return _Parser(text, prefixes).query(text)
    except RecursionError:
        raise SparqlSyntaxError("query nesting too deep") from None
