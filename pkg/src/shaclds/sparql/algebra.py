"""Algebra for the supported SELECT fragment."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from shaclds.terms import Term


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return "?" + self.name


PatternTerm = Union[Term, Var]


@dataclass(frozen=True)
class TriplePattern:
    s: PatternTerm
    p: PatternTerm
    o: PatternTerm

    def __iter__(self):
        return iter((self.s, self.p, self.o))


# --- expressions -----------------------------------------------------------


@dataclass(frozen=True)
class Const:
    term: Term


@dataclass(frozen=True)
class VarRef:
    var: Var


@dataclass(frozen=True)
class Call:
    """Operators and builtins: ``=``, ``!=``, ``<``, ``>``, ``<=``, ``>=``,
    ``&&``, ``||``, ``!``, ``regex``, ``str``, ``datatype``, ``lang``,
    ``bound``, ``isiri``, ``isblank``, ``isliteral``, ``sameterm``."""

    op: str
    args: tuple


Expr = Union[Const, VarRef, Call]


# --- graph patterns --------------------------------------------------------


@dataclass(frozen=True)
class BGP:
    patterns: tuple[TriplePattern, ...] = ()


@dataclass(frozen=True)
class GraphNode:
    name: PatternTerm
    child: "Node"


@dataclass(frozen=True)
class Join:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class UnionNode:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Filter:
    expr: Expr
    child: "Node"


@dataclass(frozen=True)
class FilterExists:
    """``FILTER [NOT] EXISTS { pattern }`` applied over ``outer``."""

    pattern: "Node"
    outer: "Node"
    negated: bool = True


Node = Union[BGP, GraphNode, Join, UnionNode, Filter, FilterExists]


@dataclass(frozen=True)
class Projection:
    var: Var
    expr: Expr | None = None


@dataclass
class Query:
    projection: list[Projection]
    pattern: Node
    distinct: bool = False
    prefixes: dict[str, str] = field(default_factory=dict)
    star: bool = False
    text: str = ""

    @property
    def variables(self) -> list[Var]:
        if self.star:
            return sorted(pattern_vars(self.pattern), key=lambda v: v.name)
        return [p.var for p in self.projection]


def pattern_vars(node: Node) -> set[Var]:
    """Variables that a pattern can bind (filter-only variables excluded)."""
    if isinstance(node, BGP):
        return {t for tp in node.patterns for t in tp if isinstance(t, Var)}
    if isinstance(node, GraphNode):
        own = {node.name} if isinstance(node.name, Var) else set()
        return own | pattern_vars(node.child)
    if isinstance(node, (Join, UnionNode)):
        return pattern_vars(node.left) | pattern_vars(node.right)
    if isinstance(node, Filter):
        return pattern_vars(node.child)
    if isinstance(node, FilterExists):
        return pattern_vars(node.outer)
    raise TypeError(f"unknown algebra node {node!r}")


def substitute_term(t: PatternTerm, binding: dict[str, Term]) -> PatternTerm:
    if isinstance(t, Var) and t.name in binding:
        return binding[t.name]
    return t


def substitute_expr(e: Expr, binding: dict[str, Term]) -> Expr:
    if isinstance(e, VarRef):
        if e.var.name in binding:
            # bound(?x) of a substituted variable must stay true
            return Const(binding[e.var.name])
        return e
    if isinstance(e, Call):
        if e.op == "bound" and isinstance(e.args[0], VarRef) and e.args[0].var.name in binding:
            return Call("bound", (Const(binding[e.args[0].var.name]),))
        return Call(e.op, tuple(substitute_expr(a, binding) for a in e.args))
    return e


def substitute(node: Node, binding: dict[str, Term]) -> Node:
    """Replace variables bound in ``binding`` by their values, everywhere."""
    if not binding:
        return node
    if isinstance(node, BGP):
        return BGP(
            tuple(
                TriplePattern(
                    substitute_term(tp.s, binding),
                    substitute_term(tp.p, binding),
                    substitute_term(tp.o, binding),
                )
                for tp in node.patterns
            )
        )
    if isinstance(node, GraphNode):
        return GraphNode(substitute_term(node.name, binding), substitute(node.child, binding))
    if isinstance(node, Join):
        return Join(substitute(node.left, binding), substitute(node.right, binding))
    if isinstance(node, UnionNode):
        return UnionNode(substitute(node.left, binding), substitute(node.right, binding))
    if isinstance(node, Filter):
        return Filter(substitute_expr(node.expr, binding), substitute(node.child, binding))
    if isinstance(node, FilterExists):
        return FilterExists(substitute(node.pattern, binding), substitute(node.outer, binding), node.negated)
    raise TypeError(f"unknown algebra node {node!r}")
