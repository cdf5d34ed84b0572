"""Single data graph validation."""

from __future__ import annotations

import re

from shaclds.graph import Dataset, Graph
from shaclds.namespaces import RDF_TYPE, RDFS, SH, XSD
from shaclds.shacl.model import (
    COMPONENT_IRIS,
    Shape,
    ValidationReport,
    ValidationResult,
    result_sort_key,
)
from shaclds.sparql.evaluate import evaluate
from shaclds.sparql.expressions import compile_regex
from shaclds.terms import IRI, BNode, Literal, Term

SUBCLASS = RDFS.subClassOf


class ShapeCycleError(RuntimeError):
    pass


def _superclasses(cls: Term, lookup: Graph) -> set[Term]:
    seen = {cls}
    stack = [cls]
    while stack:
        for sup in lookup.objects(stack.pop(), SUBCLASS):
            if sup not in seen:
                seen.add(sup)
                stack.append(sup)
    return seen


def _subclasses(cls: Term, lookup: Graph) -> set[Term]:
    seen = {cls}
    stack = [cls]
    while stack:
        for sub in lookup.subjects(SUBCLASS, stack.pop()):
            if sub not in seen:
                seen.add(sub)
                stack.append(sub)
    return seen


def check_class(value: Term, cls: Term, lookup: Graph) -> bool:
    """Whether ``value`` is typed ``cls`` or a subclass of it in ``lookup``."""
    return any(cls in _superclasses(t, lookup) for t in lookup.objects(value, RDF_TYPE))


def resolve_targets(shape: Shape, data: Graph) -> set[Term]:
    focus: set[Term] = set()
    for kind, value in shape.targets:
        if kind == "node":
            focus.add(value)
        elif kind == "class":
            for cls in _subclasses(value, data):
                focus.update(data.subjects(RDF_TYPE, cls))
        elif kind == "subjectsOf":
            focus.update(data.subjects(value))
        elif kind == "objectsOf":
            focus.update(o for _, _, o in data.match(None, value, None))
    return focus


_INTEGER_LEX = re.compile(r"^[+-]?[0-9]+$")
_DECIMAL_LEX = re.compile(r"^[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)$")
_DOUBLE_LEX = re.compile(r"^(?:[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?|[+-]?INF|NaN)$")
_BOUNDED_INTS = {
    "int": (-(2**31), 2**31 - 1),
    "long": (-(2**63), 2**63 - 1),
    "short": (-(2**15), 2**15 - 1),
    "byte": (-128, 127),
    "nonNegativeInteger": (0, None),
    "positiveInteger": (1, None),
    "nonPositiveInteger": (None, 0),
    "negativeInteger": (None, -1),
    "unsignedInt": (0, 2**32 - 1),
    "unsignedLong": (0, 2**64 - 1),
    "unsignedShort": (0, 2**16 - 1),
    "unsignedByte": (0, 255),
}
_DATE_LEX = re.compile(r"^-?[0-9]{4,}-[0-9]{2}-[0-9]{2}(Z|[+-][0-9]{2}:[0-9]{2})?$")


def well_formed(lit: Literal) -> bool:
    """Lexical validity for the XSD types the engine knows; others pass."""
    dt = lit.datatype
    if not dt.startswith(str(XSD)):
        return True
    local = dt[len(str(XSD)) :]
    lex = lit.lexical
    if local == "integer":
        return bool(_INTEGER_LEX.match(lex))
    if local in _BOUNDED_INTS:
        if not _INTEGER_LEX.match(lex):
            return False
        lo, hi = _BOUNDED_INTS[local]
        v = int(lex)
        return (lo is None or v >= lo) and (hi is None or v <= hi)
    if local == "decimal":
        return bool(_DECIMAL_LEX.match(lex))
    if local in ("double", "float"):
        return bool(_DOUBLE_LEX.match(lex))
    if local == "boolean":
        return lex in ("true", "false", "1", "0")
    if local == "date":
        return bool(_DATE_LEX.match(lex))
    return True


def _node_kind_ok(value: Term, kind: IRI) -> bool:
    if isinstance(value, IRI):
        return kind in (SH.IRI, SH.BlankNodeOrIRI, SH.IRIOrLiteral)
    if isinstance(value, BNode):
        return kind in (SH.BlankNode, SH.BlankNodeOrIRI, SH.BlankNodeOrLiteral)
    return kind in (SH.Literal, SH.BlankNodeOrLiteral, SH.IRIOrLiteral)


class _Engine:
    def __init__(self, data: Graph, eds: Dataset) -> None:
        self.data = data
        self.eds = eds
        self._supers: dict[Term, set[Term]] = {}
        self._conforms: dict[tuple[int, Term], bool] = {}

    def has_class(self, value: Term, cls: Term) -> bool:
        for t in self.data.objects(value, RDF_TYPE):
            sup = self._supers.get(t)
            if sup is None:
                sup = self._supers[t] = _superclasses(t, self.data)
            if cls in sup:
                return True
        return False

    def conforms(self, shape: Shape, node: Term) -> bool:
        key = (id(shape), node)
        hit = self._conforms.get(key)
        if hit is None:
            hit = self._conforms[key] = not self.validate(shape, node)
        return hit

    def value_nodes(self, shape: Shape, focus: Term) -> list[Term]:
        if shape.kind != "property":
            return [focus]
        if shape.inverse:
            return self.data.subjects(shape.path, focus)
        return self.data.objects(focus, shape.path)

    def validate(self, shape: Shape, focus: Term) -> list[ValidationResult]:
        if shape.deactivated:
            return []
        if shape.cyclic:
            raise ShapeCycleError(f"shape {shape.id.n3()} is part of a reference cycle")
        values = self.value_nodes(shape, focus)
        out: list[ValidationResult] = []

        def emit(component: str, value: Term | None, message=None) -> None:
            out.append(
                ValidationResult(
                    focus_node=focus,
                    source_shape=shape.id,
                    source_constraint_component=COMPONENT_IRIS[component],
                    severity=shape.severity,
                    path=shape.path,
                    value=value,
                    message=message if message is not None else shape.message,
                )
            )

        for c in shape.constraints:
            comp = c.component
            if comp == "minCount":
                if len(values) < c.value:
                    emit(comp, None)
            elif comp == "maxCount":
                if len(values) > c.value:
                    emit(comp, None)
            elif comp == "datatype":
                for v in values:
                    if not (isinstance(v, Literal) and v.datatype == c.value.value and well_formed(v)):
                        emit(comp, v)
            elif comp == "pattern":
                rx = compile_regex(c.value, c.flags)
                for v in values:
                    if isinstance(v, BNode):
                        emit(comp, v)
                        continue
                    text = v.value if isinstance(v, IRI) else v.lexical
                    if rx.search(text) is None:
                        emit(comp, v)
            elif comp == "class":
                for v in values:
                    if isinstance(v, Literal) or not self.has_class(v, c.value):
                        emit(comp, v)
            elif comp == "nodeKind":
                for v in values:
                    if not _node_kind_ok(v, c.value):
                        emit(comp, v)
            elif comp == "in":
                allowed = set(c.value)
                for v in values:
                    if v not in allowed:
                        emit(comp, v)
            elif comp == "or":
                for v in values:
                    if not any(self.conforms(m, v) for m in c.value):
                        emit(comp, v)
            elif comp == "not":
                for v in values:
                    if self.conforms(c.value, v):
                        emit(comp, v)
            elif comp == "node":
                for v in values:
                    if not self.conforms(c.value, v):
                        emit(comp, v)
            elif comp == "property":
                for v in values:
                    out.extend(self.validate(c.value, v))
            elif comp == "sparql":
                out.extend(self.sparql(shape, c.value, focus))
        return out

    def sparql(self, shape: Shape, constraint, focus: Term) -> list[ValidationResult]:
        if constraint.deactivated:
            return []
        message = constraint.message if constraint.message is not None else shape.message
        results = []
        for row in evaluate(constraint.query, self.eds, {"this": focus}):
            path = row.get("path")
            results.append(
                ValidationResult(
                    focus_node=row.get("this", focus),
                    source_shape=shape.id,
                    source_constraint_component=COMPONENT_IRIS["sparql"],
                    severity=shape.severity,
                    path=path if isinstance(path, IRI) else shape.path,
                    value=row.get("value"),
                    message=message,
                )
            )
        return results


def validate_graph(shapes: list[Shape], data: Graph, eds: Dataset | None = None) -> ValidationReport:
    """Validate ``data`` against every targeted shape.

    SPARQL constraints run against ``eds``; without one, the data graph is
    wrapped as the default graph of a dataset with no named graphs.
    """
    engine = _Engine(data, eds if eds is not None else Dataset(default=data))
    results: list[ValidationResult] = []
    for shape in shapes:
        if not shape.targets or shape.deactivated:
            continue
        focus_nodes = resolve_targets(shape, data)
        if shape.cyclic and focus_nodes:
            raise ShapeCycleError(f"shape {shape.id.n3()} is part of a reference cycle")
        for node in sorted(focus_nodes, key=lambda t: t.sort_key()):
            results.extend(engine.validate(shape, node))
    results.sort(key=result_sort_key)
    return ValidationReport(results)


__all__ = [
    "ShapeCycleError",
    "check_class",
    "resolve_targets",
    "validate_graph",
    "well_formed",
]
