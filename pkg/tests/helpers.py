"""Random inputs and reference checkers shared by the test modules."""

from __future__ import annotations

import random
import re
from collections import Counter

from shaclds.graph import Dataset, Graph
from shaclds.namespaces import RDF_TYPE, RDFS, SH, XSD
from shaclds.terms import IRI, BNode, Literal

EX = "http://example.org/"


def ex(name: str) -> IRI:
    return IRI(EX + name)


def random_graph(rng: random.Random, n: int, subjects: int = 20, predicates: int = 5, objects: int = 30) -> Graph:
    g = Graph()
    for _ in range(n):
        s = ex(f"s{rng.randrange(subjects)}") if rng.random() < 0.9 else BNode(f"b{rng.randrange(5)}")
        p = ex(f"p{rng.randrange(predicates)}")
        r = rng.random()
        if r < 0.5:
            o = ex(f"s{rng.randrange(objects)}")
        elif r < 0.8:
            o = Literal(str(rng.randrange(10)), str(XSD.integer))
        else:
            o = Literal(rng.choice(["a", "b", "abc"]))
        g.add(s, p, o)
    return g


def scan(g: Graph, s=None, p=None, o=None) -> set:
    return {t for t in g.triples() if (s is None or t[0] == s) and (p is None or t[1] == p) and (o is None or t[2] == o)}


def rows_multiset(rows) -> Counter:
    return Counter(frozenset(r.items()) for r in rows)


# ---------------------------------------------------------------- queries

QUERY_VARS = ["a", "b", "c"]
_POSITION_VARS = {"s": ["a", "c"], "p": ["p"], "o": ["b", "c", "a"]}
_Q_SUBJECTS = [ex(f"s{i}") for i in range(4)]
_Q_PREDICATES = [ex(f"p{i}") for i in range(3)]
_Q_LITERALS = [Literal("1", str(XSD.integer)), Literal("2", str(XSD.integer)), Literal("x"), Literal("y", language="en")]
Q_GRAPHS = [ex("g0"), ex("g1")]


def random_query_dataset(rng: random.Random, size: int = 80) -> Dataset:
    ds = Dataset()

    def fill(g: Graph, n: int) -> None:
        for _ in range(n):
            s = rng.choice(_Q_SUBJECTS)
            p = rng.choice(_Q_PREDICATES)
            o = rng.choice(_Q_SUBJECTS + _Q_LITERALS)
            g.add(s, p, o)

    fill(ds.default, rng.randrange(size // 2))
    for name in Q_GRAPHS:
        fill(ds.add_graph(name), rng.randrange(size // 2))
    return ds


def _term_text(t) -> str:
    return t.n3()


class QueryGen:
    """Random SELECT queries inside the supported grammar."""

    def __init__(self, rng: random.Random) -> None:
        self.rng = rng

    def term(self, pos: str, visible: set[str]) -> str:
        rng = self.rng
        if rng.random() < (0.25 if pos == "p" else 0.65):
            v = rng.choice(_POSITION_VARS[pos])
            visible.add(v)
            return "?" + v
        if pos == "s":
            return _term_text(rng.choice(_Q_SUBJECTS))
        if pos == "p":
            return _term_text(rng.choice(_Q_PREDICATES))
        return _term_text(rng.choice(_Q_SUBJECTS + _Q_LITERALS))

    def triple(self, visible: set[str]) -> str:
        return f"{self.term('s', visible)} {self.term('p', visible)} {self.term('o', visible)} ."

    def expr(self, depth: int = 0) -> str:
        rng = self.rng
        v = "?" + rng.choice(QUERY_VARS)
        choice = rng.randrange(11 if depth < 2 else 8)
        if choice == 0:
            return f"{v} = {_term_text(rng.choice(_Q_SUBJECTS + _Q_LITERALS))}"
        if choice == 1:
            return f"{v} != {_term_text(rng.choice(_Q_SUBJECTS + _Q_LITERALS))}"
        if choice == 2:
            return f"{v} {rng.choice(['<', '>', '<=', '>='])} {rng.randrange(3)}"
        if choice == 3:
            return f"bound({v})"
        if choice == 4:
            return f"{rng.choice(['isIRI', 'isLiteral', 'isBlank'])}({v})"
        if choice == 5:
            return f'regex(str({v}), "{rng.choice(["s1", "^x", "1$", "."])}")'
        if choice == 6:
            return f"datatype({v}) = <{XSD.integer.value}>"
        if choice == 7:
            return f'lang({v}) = "en"'
        if choice == 8:
            return f"!({self.expr(depth + 1)})"
        if choice == 9:
            return f"({self.expr(depth + 1)} && {self.expr(depth + 1)})"
        return f"({self.expr(depth + 1)} || {self.expr(depth + 1)})"

    def group(self, visible: set[str], depth: int = 0) -> str:
        rng = self.rng
        parts = []
        for _ in range(rng.randint(1, 3)):
            r = rng.random()
            if r < 0.5 or depth >= 2:
                parts.append(self.triple(visible))
            elif r < 0.65:
                name = "?g" if rng.random() < 0.5 else _term_text(rng.choice(Q_GRAPHS * 3 + [ex("missing")]))
                if name == "?g":
                    visible.add("g")
                parts.append(f"GRAPH {name} {{ {self.group(visible, depth + 1)} }}")
            elif r < 0.8:
                parts.append(f"{{ {self.group(visible, depth + 1)} }} UNION {{ {self.group(visible, depth + 1)} }}")
            elif r < 0.9:
                inner: set[str] = set()
                kw = rng.choice(["EXISTS", "NOT EXISTS"])
                parts.append(f"FILTER {kw} {{ {self.group(inner, depth + 1)} }}")
            else:
                parts.append(f"FILTER({self.expr()})")
        if all(p.startswith("FILTER") for p in parts):
            parts.insert(0, self.triple(visible))
        return " ".join(parts)

    def query(self) -> str:
        rng = self.rng
        visible: set[str] = set()
        body = self.group(visible)
        distinct = "DISTINCT " if rng.random() < 0.3 else ""
        if not visible or rng.random() < 0.2:
            proj = "*"
        else:
            chosen = sorted(rng.sample(sorted(visible), rng.randint(1, len(visible))))
            proj = " ".join("?" + v for v in chosen)
            if rng.random() < 0.2:
                proj += f" (str(?{chosen[0]}) AS ?z)"
        return f"SELECT {distinct}{proj} WHERE {{ {body} }}"


# ------------------------------------------------------------------ shacl

SHAPE_CLASSES = [ex("C"), ex("D")]


def random_shacl_case(rng: random.Random) -> tuple[str, Graph]:
    """A shapes graph (Turtle) with one targeted property shape carrying one
    constraint, plus a small data graph."""
    data = Graph()
    data.add(ex("D"), RDFS.subClassOf, ex("C"))
    nodes = [ex(f"n{i}") for i in range(6)]
    for n in nodes:
        if rng.random() < 0.7:
            data.add(n, RDF_TYPE, rng.choice(SHAPE_CLASSES + [ex("E")]))
    values = nodes + [
        BNode("v0"),
        Literal("5", str(XSD.integer)),
        Literal("x5", str(XSD.integer)),
        Literal("12"),
        Literal("abc"),
        Literal("true", str(XSD.boolean)),
        Literal("hi", language="en"),
    ]
    for n in nodes:
        for _ in range(rng.randrange(4)):
            data.add(n, ex("p"), rng.choice(values))

    target = rng.choice(
        [
            f"sh:targetClass <{EX}C>",
            f"sh:targetNode <{EX}n0>, <{EX}n1>, <{EX}n9>",
            f"sh:targetSubjectsOf <{EX}p>",
            f"sh:targetObjectsOf <{EX}p>",
        ]
    )
    simple = [
        "sh:datatype xsd:integer",
        "sh:datatype xsd:string",
        'sh:pattern "^[a-z]"',
        'sh:pattern "B" ; sh:flags "i"',
        f"sh:class <{EX}C>",
        "sh:nodeKind sh:IRI",
        "sh:nodeKind sh:Literal",
        "sh:nodeKind sh:BlankNodeOrIRI",
        f'sh:in ( <{EX}n1> "abc" 5 )',
    ]
    kind = rng.choice(["simple"] * 4 + ["minCount", "maxCount", "or", "not", "node"])
    if kind == "simple":
        constraint = rng.choice(simple)
    elif kind == "minCount":
        constraint = f"sh:minCount {rng.randrange(4)}"
    elif kind == "maxCount":
        constraint = f"sh:maxCount {rng.randrange(3)}"
    elif kind == "or":
        a, b = rng.sample(simple, 2)
        constraint = f"sh:or ( [ {a} ] [ {b} ] )"
    elif kind == "not":
        constraint = f"sh:not [ {rng.choice(simple)} ]"
    else:
        constraint = f"sh:node [ {rng.choice(simple)} ]"
    ttl = f"""
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
<{EX}S> a sh:PropertyShape ; {target} ; sh:path <{EX}p> ; {constraint} .
"""
    return ttl, data


class ReferenceChecker:
    """Constraint definitions applied by enumeration over the triple set."""

    def __init__(self, data: Graph, shapes: Graph) -> None:
        self.triples = data.triples()
        self.shapes = shapes.triples()

    def objs(self, s, p) -> list:
        return [t[2] for t in self.shapes if t[0] == s and t[1] == p]

    def types(self, node) -> set:
        return {t[2] for t in self.triples if t[0] == node and t[1] == RDF_TYPE}

    def is_instance(self, node, cls) -> bool:
        frontier = set(self.types(node))
        seen = set()
        while frontier:
            c = frontier.pop()
            if c == cls:
                return True
            seen.add(c)
            frontier |= {t[2] for t in self.triples if t[0] == c and t[1] == RDFS.subClassOf} - seen
        return False

    def rdf_list(self, head) -> list:
        out = []
        while head != IRI("http://www.w3.org/1999/02/22-rdf-syntax-ns#nil"):
            out.append(self.objs(head, IRI("http://www.w3.org/1999/02/22-rdf-syntax-ns#first"))[0])
            head = self.objs(head, IRI("http://www.w3.org/1999/02/22-rdf-syntax-ns#rest"))[0]
        return out

    def targets(self, shape) -> set:
        out = set()
        for t in self.shapes:
            if t[0] != shape:
                continue
            if t[1] == SH.targetNode:
                out.add(t[2])
            elif t[1] == SH.targetClass:
                out |= {x[0] for x in self.triples if x[1] == RDF_TYPE and self.is_instance(x[0], t[2])}
            elif t[1] == SH.targetSubjectsOf:
                out |= {x[0] for x in self.triples if x[1] == t[2]}
            elif t[1] == SH.targetObjectsOf:
                out |= {x[2] for x in self.triples if x[1] == t[2]}
        return out

    def value_ok(self, shape, v) -> list[str]:
        """Names of the constraints of ``shape`` that value ``v`` violates
        (value-level components only)."""
        bad = []
        for dt in self.objs(shape, SH.datatype):
            ok = isinstance(v, Literal) and v.datatype == dt.value
            if ok and dt == XSD.integer:
                ok = re.fullmatch(r"[+-]?[0-9]+", v.lexical) is not None
            if not ok:
                bad.append("datatype")
        for pat in self.objs(shape, SH.pattern):
            flags = self.objs(shape, SH.flags)
            rx = re.compile(pat.lexical, re.IGNORECASE if flags and "i" in flags[0].lexical else 0)
            if isinstance(v, BNode) or not rx.search(v.value if isinstance(v, IRI) else v.lexical):
                bad.append("pattern")
        for cls in self.objs(shape, SH["class"]):
            if isinstance(v, Literal) or not self.is_instance(v, cls):
                bad.append("class")
        for nk in self.objs(shape, SH.nodeKind):
            kinds = {
                SH.IRI: (IRI,),
                SH.Literal: (Literal,),
                SH.BlankNode: (BNode,),
                SH.BlankNodeOrIRI: (BNode, IRI),
                SH.BlankNodeOrLiteral: (BNode, Literal),
                SH.IRIOrLiteral: (IRI, Literal),
            }[nk]
            if not isinstance(v, kinds):
                bad.append("nodeKind")
        for head in self.objs(shape, SH["in"]):
            if v not in self.rdf_list(head):
                bad.append("in")
        for head in self.objs(shape, SH["or"]):
            if not any(not self.value_ok(m, v) for m in self.rdf_list(head)):
                bad.append("or")
        for m in self.objs(shape, SH["not"]):
            if not self.value_ok(m, v):
                bad.append("not")
        for m in self.objs(shape, SH.node):
            if self.value_ok(m, v):
                bad.append("node")
        return bad

    def results(self, shape) -> Counter:
        path = self.objs(shape, SH.path)[0]
        out = Counter()
        for focus in self.targets(shape):
            values = {t[2] for t in self.triples if t[0] == focus and t[1] == path}
            for mc in self.objs(shape, SH.minCount):
                if len(values) < int(mc.lexical):
                    out[(focus, "minCount", None)] += 1
            for mc in self.objs(shape, SH.maxCount):
                if len(values) > int(mc.lexical):
                    out[(focus, "maxCount", None)] += 1
            for v in values:
                for name in self.value_ok(shape, v):
                    out[(focus, name, v)] += 1
        return out


def engine_results(report) -> Counter:
    out = Counter()
    for r in report.results:
        name = r.source_constraint_component.value.rsplit("#", 1)[1].replace("ConstraintComponent", "")
        name = name[0].lower() + name[1:]
        out[(r.focus_node, name, r.value)] += 1
    return out

