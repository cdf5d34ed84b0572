"""Query evaluation over a dataset view.

Bare triple patterns match the dataset's default graph; ``GRAPH <iri>`` the
named graph of that IRI (empty when absent); ``GRAPH ?g`` every named graph.

Evaluation is top-down: each node receives the bindings already fixed by the
surrounding join (plus any pre-bound variables) and yields only its own
solutions that are compatible with them. Filters therefore still see exactly
the variables of the pattern they scope over. Joins run left to right as
written.
"""

from __future__ import annotations

from collections.abc import Iterator
from typing import Mapping

from shaclds.graph import Dataset, Graph
from shaclds.sparql.algebra import (
    BGP,
    Filter,
    FilterExists,
    GraphNode,
    Join,
    Node,
    Query,
    UnionNode,
    Var,
    substitute,
)
from shaclds.sparql.expressions import ExprError, evaluate_expr, filter_passes
from shaclds.terms import IRI, Term

Binding = dict[str, Term]


def _compatible(a: Mapping[str, Term], b: Mapping[str, Term]) -> bool:
    if len(a) > len(b):
        a, b = b, a
    for k, v in a.items():
        w = b.get(k)
        if w is not None and w != v:
            return False
    return True


def _match_bgp(patterns, i: int, current: Binding, graph: Graph, out_vars: list[str]) -> Iterator[Binding]:
    if i == len(patterns):
        yield {v: current[v] for v in out_vars}
        return
    tp = patterns[i]
    s, p, o = tp.s, tp.p, tp.o
    sv = s.name if isinstance(s, Var) else None
    pv = p.name if isinstance(p, Var) else None
    ov = o.name if isinstance(o, Var) else None
    sk = current.get(sv) if sv else s
    pk = current.get(pv) if pv else p
    ok = current.get(ov) if ov else o
    for ts, tpred, to in graph.match(sk, pk, ok):
        added = []
        good = True
        for var, val in ((sv, ts), (pv, tpred), (ov, to)):
            if var is None:
                continue
            bound = current.get(var)
            if bound is None:
                current[var] = val
                added.append(var)
            elif bound != val:
                good = False
                break
        if good:
            yield from _match_bgp(patterns, i + 1, current, graph, out_vars)
        for var in added:
            del current[var]


def _eval(node: Node, mu: Binding, graph: Graph, ds: Dataset) -> Iterator[Binding]:
    if isinstance(node, BGP):
        out_vars = []
        for tp in node.patterns:
            for t in tp:
                if isinstance(t, Var) and t.name not in out_vars:
                    out_vars.append(t.name)
        seed = {v: mu[v] for v in out_vars if v in mu}
        yield from _match_bgp(node.patterns, 0, seed, graph, out_vars)
    elif isinstance(node, Join):
        for left in _eval(node.left, mu, graph, ds):
            merged = {**mu, **left}
            for right in _eval(node.right, merged, graph, ds):
                yield {**left, **right}
    elif isinstance(node, UnionNode):
        yield from _eval(node.left, mu, graph, ds)
        yield from _eval(node.right, mu, graph, ds)
    elif isinstance(node, Filter):
        for sol in _eval(node.child, mu, graph, ds):
            if filter_passes(node.expr, sol):
                yield sol
    elif isinstance(node, FilterExists):
        for sol in _eval(node.outer, mu, graph, ds):
            inner = substitute(node.pattern, sol)
            found = next(_eval(inner, {}, graph, ds), None) is not None
            if found != node.negated:
                yield sol
    elif isinstance(node, GraphNode):
        name = node.name
        if isinstance(name, Var):
            fixed = mu.get(name.name)
            if fixed is not None:
                names = [fixed] if fixed in ds.named else []
            else:
                names = sorted(ds.named, key=lambda n: n.value)
            for g in names:
                scoped = {**mu, name.name: g}
                for sol in _eval(node.child, scoped, ds.named[g], ds):
                    sol[name.name] = g
                    yield sol
        else:
            target = ds.named.get(name) if isinstance(name, IRI) else None
            if target is not None:
                yield from _eval(node.child, mu, target, ds)
    else:
        raise TypeError(f"unknown algebra node {node!r}")


def project(query: Query, solutions) -> list[Binding]:
    rows: list[Binding] = []
    seen: set = set()
    for sol in solutions:
        if query.star:
            row = dict(sol)
        else:
            row = {}
            for item in query.projection:
                if item.expr is None:
                    value = sol.get(item.var.name)
                else:
                    try:
                        value = evaluate_expr(item.expr, sol)
                    except ExprError:
                        value = None
                if value is not None:
                    row[item.var.name] = value
        if query.distinct:
            key = frozenset(row.items())
            if key in seen:
                continue
            seen.add(key)
        rows.append(row)
    return rows


def evaluate(query: Query, eds: Dataset, pre_bound: Mapping[str, Term] | None = None) -> list[Binding]:
    """Solutions of ``query`` over ``eds``; ``pre_bound`` fixes variables
    (typically ``this``) before evaluation. A solution is kept only if the
    pattern itself binds every pre-bound variable."""
    mu = dict(pre_bound or {})
    sols = _eval(query.pattern, mu, eds.default, eds)
    if mu:
        sols = (s for s in sols if all(k in s for k in mu))
    return project(query, sols)
