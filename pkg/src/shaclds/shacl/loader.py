"""Build :class:`Shape` objects from a shapes graph."""

from __future__ import annotations

import logging
import re

from shaclds.graph import Graph
from shaclds.namespaces import RDF_FIRST, RDF_NIL, RDF_REST, RDF_TYPE, SH
from shaclds.shacl.model import Constraint, Shape, SparqlConstraint
from shaclds.sparql.algebra import Var
from shaclds.sparql.parser import SparqlSyntaxError, parse_query
from shaclds.terms import IRI, BNode, Literal, Term

logger = logging.getLogger(__name__)

NODE_KINDS = {
    SH.IRI,
    SH.BlankNode,
    SH.Literal,
    SH.BlankNodeOrIRI,
    SH.BlankNodeOrLiteral,
    SH.IRIOrLiteral,
}

_TARGETS = {
    SH.targetClass: "class",
    SH.targetNode: "node",
    SH.targetSubjectsOf: "subjectsOf",
    SH.targetObjectsOf: "objectsOf",
}

_CONSTRAINT_PARAMS = {
    SH.datatype: "datatype",
    SH.pattern: "pattern",
    SH.minCount: "minCount",
    SH.maxCount: "maxCount",
    SH["class"]: "class",
    SH.nodeKind: "nodeKind",
    SH["in"]: "in",
    SH["or"]: "or",
    SH["not"]: "not",
    SH.node: "node",
    SH.property: "property",
    SH.sparql: "sparql",
}

# sh: predicates that are understood but are not constraint parameters
_KNOWN_OTHER = {
    SH.path,
    SH.flags,
    SH.severity,
    SH.message,
    SH.deactivated,
    SH.name,
    SH.description,
    SH.order,
    SH.group,
    SH.defaultValue,
}

_INTEGER = re.compile(r"^\+?[0-9]+$")


class ShapeLoadError(ValueError):
    def __init__(self, shape: Term, message: str) -> None:
        super().__init__(f"shape {shape.n3()}: {message}")
        self.shape = shape


def read_list(graph: Graph, head: Term, owner: Term) -> list[Term]:
    """Items of an RDF collection; rejects branching, cycles and gaps."""
    items: list[Term] = []
    seen: set[Term] = set()
    node = head
    while node != RDF_NIL:
        if node in seen:
            raise ShapeLoadError(owner, "cyclic RDF list")
        seen.add(node)
        firsts = graph.objects(node, RDF_FIRST)
        rests = graph.objects(node, RDF_REST)
        if len(firsts) != 1 or len(rests) != 1:
            raise ShapeLoadError(owner, f"malformed RDF list at {node.n3()}")
        items.append(firsts[0])
        node = rests[0]
    return items


def _shape_candidates(g: Graph) -> list[Term]:
    found: dict[Term, None] = {}
    for cls in (SH.NodeShape, SH.PropertyShape):
        for s in g.subjects(RDF_TYPE, cls):
            found[s] = None
    for pred in (*_TARGETS, SH.path, *_CONSTRAINT_PARAMS):
        for s in g.subjects(pred):
            found[s] = None
    return list(found)


def _referenced_shapes(g: Graph, node: Term) -> list[Term]:
    refs = []
    for pred in (SH.property, SH.node, SH["not"]):
        refs.extend(g.objects(node, pred))
    for head in g.objects(node, SH["or"]):
        refs.extend(read_list(g, head, node))
    return refs


def _boolean(value: Term) -> bool:
    return isinstance(value, Literal) and value.lexical in ("true", "1")


def _non_negative_int(shape: Term, param: str, value: Term) -> int:
    if not isinstance(value, Literal) or not _INTEGER.match(value.lexical):
        raise ShapeLoadError(shape, f"sh:{param} must be a non-negative integer, got {value.n3()}")
    return int(value.lexical)


class _Loader:
    def __init__(self, g: Graph, diagnostics: list[str]) -> None:
        self.g = g
        self.diagnostics = diagnostics
        self.shapes: dict[Term, Shape] = {}

    def note(self, message: str, level: int = logging.WARNING) -> None:
        self.diagnostics.append(message)
        logger.log(level, message)

    def collect(self) -> None:
        pending = _shape_candidates(self.g)
        while pending:
            node = pending.pop()
            if node in self.shapes:
                continue
            if isinstance(node, Literal):
                raise ShapeLoadError(node, "a literal cannot be a shape")
            self.shapes[node] = Shape(node)
            pending.extend(_referenced_shapes(self.g, node))

    def build(self, shape: Shape) -> None:
        g = self.g
        node = shape.id
        types = set(g.objects(node, RDF_TYPE))
        paths = g.objects(node, SH.path)
        if len(paths) > 1:
            raise ShapeLoadError(node, "more than one sh:path")
        if paths:
            shape.kind = "property"
            path = paths[0]
            if isinstance(path, IRI):
                shape.path = path
            else:
                inverse = g.objects(path, SH.inversePath)
                if isinstance(path, BNode) and len(inverse) == 1 and isinstance(inverse[0], IRI) and len(g.predicates_of(path)) == 1:
                    shape.path = inverse[0]
                    shape.inverse = True
                else:
                    raise ShapeLoadError(node, "unsupported path expression: only predicates and sh:inversePath of a predicate are supported")
        elif SH.PropertyShape in types:
            raise ShapeLoadError(node, "property shape without sh:path")

        for pred, kind in _TARGETS.items():
            for value in g.objects(node, pred):
                shape.targets.append((kind, value))

        severities = g.objects(node, SH.severity)
        if len(severities) > 1:
            raise ShapeLoadError(node, "more than one sh:severity")
        if severities:
            if not isinstance(severities[0], IRI):
                raise ShapeLoadError(node, "sh:severity must be an IRI")
            shape.severity = severities[0]
        shape.messages = sorted((m for m in g.objects(node, SH.message) if isinstance(m, Literal)), key=lambda t: t.sort_key())
        shape.deactivated = any(_boolean(v) for v in g.objects(node, SH.deactivated))

        flags_values = g.objects(node, SH.flags)
        flags = flags_values[0].lexical if flags_values and isinstance(flags_values[0], Literal) else ""

        for pred in g.predicates_of(node):
            if not isinstance(pred, IRI) or not pred.value.startswith(str(SH)):
                continue
            kind = _CONSTRAINT_PARAMS.get(pred)
            if kind is None:
                if pred not in _KNOWN_OTHER and pred not in _TARGETS:
                    self.note(f"shape {node.n3()}: unsupported constraint parameter {pred.n3()} ignored")
                continue
            for value in g.objects(node, pred):
                shape.constraints.append(self.constraint(shape, kind, value, flags))

    def constraint(self, shape: Shape, kind: str, value: Term, flags: str) -> Constraint:
        node = shape.id
        if kind in ("minCount", "maxCount"):
            return Constraint(kind, _non_negative_int(node, kind, value))
        if kind == "pattern":
            if not isinstance(value, Literal):
                raise ShapeLoadError(node, "sh:pattern must be a literal")
            from shaclds.sparql.expressions import compile_regex

            try:
                compile_regex(value.lexical, flags)
            except (re.error, ValueError) as exc:
                raise ShapeLoadError(node, f"invalid sh:pattern {value.lexical!r}: {exc}") from None
            return Constraint("pattern", value.lexical, flags)
        if kind in ("datatype", "class"):
            if not isinstance(value, IRI):
                raise ShapeLoadError(node, f"sh:{kind} must be an IRI")
            return Constraint(kind, value)
        if kind == "nodeKind":
            if value not in NODE_KINDS:
                raise ShapeLoadError(node, f"unknown sh:nodeKind {value.n3()}")
            return Constraint(kind, value)
        if kind == "in":
            return Constraint(kind, tuple(read_list(self.g, value, node)))
        if kind == "or":
            return Constraint(kind, tuple(self.shapes[m] for m in read_list(self.g, value, node)))
        if kind in ("not", "node", "property"):
            target = self.shapes[value]
            if kind == "property" and target.kind != "property" and not self.g.objects(value, SH.path):
                raise ShapeLoadError(node, f"sh:property value {value.n3()} has no sh:path")
            return Constraint(kind, target)
        if kind == "sparql":
            return Constraint(kind, self.sparql(node, value))
        raise AssertionError(kind)

    def sparql(self, owner: Term, node: Term) -> SparqlConstraint:
        g = self.g
        selects = g.objects(node, SH.select)
        if len(selects) != 1 or not isinstance(selects[0], Literal):
            raise ShapeLoadError(owner, f"SPARQL constraint {node.n3()} needs exactly one literal sh:select")
        if g.objects(node, SH.prefixes):
            self.note(f"shape {owner.n3()}: sh:prefixes is ignored; declare prefixes inside the query text", logging.INFO)
        text = selects[0].lexical
        try:
            query = parse_query(text)
        except SparqlSyntaxError as exc:
            raise ShapeLoadError(owner, f"SPARQL constraint {node.n3()}: {exc}") from None
        if Var("this") not in query.variables:
            raise ShapeLoadError(owner, f"SPARQL constraint {node.n3()} does not project $this")
        messages = [m for m in g.objects(node, SH.message) if isinstance(m, Literal)]
        return SparqlConstraint(
            node=node,
            select=text,
            query=query,
            message=min(messages, key=lambda t: t.sort_key()) if messages else None,
            deactivated=any(_boolean(v) for v in g.objects(node, SH.deactivated)),
        )


def _mark_cycles(shapes: dict[Term, Shape]) -> None:
    """Flag every shape whose reference closure contains a cycle."""
    edges: dict[Term, list[Term]] = {}
    for sid, shape in shapes.items():
        out = []
        for c in shape.constraints:
            if c.component == "or":
                out.extend(m.id for m in c.value)
            elif c.component in ("not", "node", "property"):
                out.append(c.value.id)
        edges[sid] = out

    state: dict[Term, int] = {}  # 1 = on stack, 2 = done
    cyclic: dict[Term, bool] = {}

    def visit(start: Term) -> None:
        stack = [(start, iter(edges[start]))]
        state[start] = 1
        cyclic[start] = False
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                st = state.get(nxt)
                if st is None:
                    state[nxt] = 1
                    cyclic[nxt] = False
                    stack.append((nxt, iter(edges[nxt])))
                    advanced = True
                    break
                if st == 1:
                    for member, _ in stack:
                        cyclic[member] = True
                elif cyclic[nxt]:
                    cyclic[node] = True
            if not advanced:
                stack.pop()
                state[node] = 2
                if stack and cyclic[node]:
                    cyclic[stack[-1][0]] = True

    for sid in shapes:
        if sid not in state:
            visit(sid)
    for sid, shape in shapes.items():
        shape.cyclic = cyclic[sid]


def load_shapes(g: Graph, diagnostics: list[str] | None = None) -> list[Shape]:
    """All shapes of ``g``, sorted by id. Unsupported ``sh:`` parameters are
    appended to ``diagnostics`` (and logged) instead of being dropped silently."""
    loader = _Loader(g, diagnostics if diagnostics is not None else [])
    loader.collect()
    for shape in loader.shapes.values():
        loader.build(shape)
    _mark_cycles(loader.shapes)
    return sorted(loader.shapes.values(), key=lambda s: s.id.sort_key())

