"""Shapes, constraints and validation results."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Optional

from shaclds.namespaces import SH
from shaclds.terms import IRI, Literal, Term

VIOLATION = SH.Violation
WARNING = SH.Warning
INFO = SH.Info


@dataclass(eq=False)
class SparqlConstraint:
    node: Term
    select: str
    query: Any  # sparql.algebra.Query
    message: Optional[Literal] = None
    deactivated: bool = False


@dataclass(eq=False)
class Constraint:
    """One constraint component instance.

    ``component`` is the local name (``datatype``, ``pattern``, ``minCount``,
    ``maxCount``, ``class``, ``nodeKind``, ``in``, ``or``, ``not``, ``node``,
    ``property`` or ``sparql``); ``value`` holds the parameter, already
    resolved to Shape objects for the shape-valued components.
    """

    component: str
    value: Any
    flags: str = ""

    @property
    def component_iri(self) -> IRI:
        return COMPONENT_IRIS[self.component]


COMPONENT_IRIS: dict[str, IRI] = {
    "datatype": SH.DatatypeConstraintComponent,
    "pattern": SH.PatternConstraintComponent,
    "minCount": SH.MinCountConstraintComponent,
    "maxCount": SH.MaxCountConstraintComponent,
    "class": SH.ClassConstraintComponent,
    "nodeKind": SH.NodeKindConstraintComponent,
    "in": SH.InConstraintComponent,
    "or": SH.OrConstraintComponent,
    "not": SH.NotConstraintComponent,
    "node": SH.NodeConstraintComponent,
    "property": SH.PropertyConstraintComponent,
    "sparql": SH.SPARQLConstraintComponent,
}


@dataclass(eq=False)
class Shape:
    id: Term
    kind: str = "node"  # "node" | "property"
    path: Optional[IRI] = None
    inverse: bool = False
    targets: list[tuple[str, Term]] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    severity: IRI = VIOLATION
    messages: list[Literal] = field(default_factory=list)
    deactivated: bool = False
    cyclic: bool = False

    def __repr__(self) -> str:
        return f"<Shape {self.id!r} {self.kind} {len(self.constraints)} constraints>"

    @property
    def message(self) -> Optional[Literal]:
        return self.messages[0] if self.messages else None


@dataclass(frozen=True)
class ValidationResult:
    focus_node: Term
    source_shape: Term
    source_constraint_component: IRI
    severity: IRI = VIOLATION
    path: Optional[IRI] = None
    value: Optional[Term] = None
    message: Optional[Literal] = None
    focus_graph: Optional[IRI] = None
    source_shapes_graph: Optional[IRI] = None

    def annotate(self, focus_graph: IRI, source_shapes_graph: IRI) -> "ValidationResult":
        return replace(self, focus_graph=focus_graph, source_shapes_graph=source_shapes_graph)

    def strip_provenance(self) -> "ValidationResult":
        return replace(self, focus_graph=None, source_shapes_graph=None)


def _key(term: Term | None) -> tuple:
    return (-1,) if term is None else term.sort_key()


def result_sort_key(r: ValidationResult) -> tuple:
    """Normalized result order used by the single-graph engine."""
    return (
        _key(r.focus_node),
        _key(r.source_shape),
        _key(r.path),
        _key(r.value),
        _key(r.source_constraint_component),
        _key(r.severity),
        _key(r.message),
    )


@dataclass
class ValidationReport:
    results: list[ValidationResult] = field(default_factory=list)

    @property
    def conforms(self) -> bool:
        return not any(r.severity == VIOLATION for r in self.results)

    def __len__(self) -> int:
        return len(self.results)

    def __iter__(self):
        return iter(self.results)
