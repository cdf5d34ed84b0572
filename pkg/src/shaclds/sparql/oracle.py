"""Reference evaluator used only to cross-check :func:`evaluate`.

Bottom-up and deliberately naive: a basic graph pattern is answered by trying
every assignment of candidate terms to its variables and testing each
instantiated triple for membership; joins are nested loops over full
solution lists; pre-bound variables are applied as a final equality filter.
"""

from __future__ import annotations

import itertools
from typing import Mapping

from shaclds.graph import Dataset, Graph
from shaclds.sparql.algebra import (
    BGP,
    Filter,
    FilterExists,
    GraphNode,
    Join,
    Query,
    UnionNode,
    Var,
    substitute,
)
from shaclds.sparql.expressions import ExprError, evaluate_expr, filter_passes
from shaclds.terms import IRI, Term

MAX_TRIPLES = 10_000
MAX_ASSIGNMENTS = 2_000_000


class OracleLimitError(ValueError):
    pass


def _constants(node, acc: set) -> None:
    if isinstance(node, BGP):
        for tp in node.patterns:
            acc.update(t for t in tp if not isinstance(t, Var))
    elif isinstance(node, GraphNode):
        if not isinstance(node.name, Var):
            acc.add(node.name)
        _constants(node.child, acc)
    elif isinstance(node, (Join, UnionNode)):
        _constants(node.left, acc)
        _constants(node.right, acc)
    elif isinstance(node, Filter):
        _constants(node.child, acc)
    elif isinstance(node, FilterExists):
        _constants(node.outer, acc)
        _constants(node.pattern, acc)


def _merge(a: dict, b: dict) -> dict | None:
    for k, v in a.items():
        if k in b and b[k] != v:
            return None
    return {**a, **b}


class _Oracle:
    def __init__(self, ds: Dataset, candidates: list[Term]) -> None:
        self.ds = ds
        self.candidates = candidates

    def bgp(self, node: BGP, graph: Graph) -> list[dict]:
        variables: list[str] = []
        for tp in node.patterns:
            for t in tp:
                if isinstance(t, Var) and t.name not in variables:
                    variables.append(t.name)
        if len(self.candidates) ** len(variables) > MAX_ASSIGNMENTS:
            raise OracleLimitError("too many candidate assignments for exhaustive evaluation")
        out = []
        for combo in itertools.product(self.candidates, repeat=len(variables)):
            binding = dict(zip(variables, combo))
            ok = True
            for tp in node.patterns:
                triple = tuple(binding[t.name] if isinstance(t, Var) else t for t in tp)
                if triple not in graph:
                    ok = False
                    break
            if ok:
                out.append(binding)
        return out

    def run(self, node, graph: Graph) -> list[dict]:
        if isinstance(node, BGP):
            return self.bgp(node, graph)
        if isinstance(node, Join):
            left = self.run(node.left, graph)
            right = self.run(node.right, graph)
            out = []
            for a in left:
                for b in right:
                    m = _merge(a, b)
                    if m is not None:
                        out.append(m)
            return out
        if isinstance(node, UnionNode):
            return self.run(node.left, graph) + self.run(node.right, graph)
        if isinstance(node, Filter):
            return [s for s in self.run(node.child, graph) if filter_passes(node.expr, s)]
        if isinstance(node, FilterExists):
            out = []
            for s in self.run(node.outer, graph):
                exists = len(self.run(substitute(node.pattern, s), graph)) > 0
                if exists != node.negated:
                    out.append(s)
            return out
        if isinstance(node, GraphNode):
            if isinstance(node.name, Var):
                out = []
                for name in sorted(self.ds.named, key=lambda n: n.value):
                    for s in self.run(node.child, self.ds.named[name]):
                        m = _merge(s, {node.name.name: name})
                        if m is not None:
                            out.append(m)
                return out
            if isinstance(node.name, IRI) and node.name in self.ds.named:
                return self.run(node.child, self.ds.named[node.name])
            return []
        raise TypeError(f"unknown algebra node {node!r}")


def evaluate_oracle(query: Query, eds: Dataset, pre_bound: Mapping[str, Term] | None = None) -> list[dict]:
    if len(eds) > MAX_TRIPLES:
        raise OracleLimitError(f"dataset has {len(eds)} triples; the oracle accepts at most {MAX_TRIPLES}")
    terms: set[Term] = set(eds.named)
    for g in [eds.default, *eds.named.values()]:
        for t in g:
            terms.update(t)
    _constants(query.pattern, terms)
    terms.update((pre_bound or {}).values())
    candidates = sorted(terms, key=lambda t: t.sort_key())
    solutions = _Oracle(eds, candidates).run(query.pattern, eds.default)
    for name, value in (pre_bound or {}).items():
        # post-filter: FILTER(?name = value), unbound -> error -> dropped
        solutions = [s for s in solutions if name in s and s[name] == value]
    rows = []
    for s in solutions:
        if query.star:
            row = dict(s)
        else:
            row = {}
            for item in query.projection:
                if item.expr is None:
                    if item.var.name in s:
                        row[item.var.name] = s[item.var.name]
                    continue
                try:
                    row[item.var.name] = evaluate_expr(item.expr, s)
                except ExprError:
                    pass
        if query.distinct and row in rows:
            continue
        rows.append(row)
    return rows
