"""In-memory graphs and datasets.

A :class:`Graph` stores triples with insertion order preserved and keeps three
single-key lookup indexes (by subject, predicate and object). Those three maps
are the only performance knob: a pattern with several bound positions probes
the smallest candidate bucket and filters it.

Graphs and datasets are meant to be built once (by a parser, a generator or a
set operation) and then shared read-only.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from typing import NamedTuple, Optional

from shaclds.terms import IRI, BNode, Literal, Term


class Triple(NamedTuple):
    s: Term
    p: IRI
    o: Term


class Quad(NamedTuple):
    s: Term
    p: IRI
    o: Term
    g: Optional[IRI] = None


def check_triple(s: Term, p: Term, o: Term) -> None:
    if not isinstance(s, (IRI, BNode)):
        raise TypeError(f"subject must be an IRI or blank node, got {s!r}")
    if not isinstance(p, IRI):
        raise TypeError(f"predicate must be an IRI, got {p!r}")
    if not isinstance(o, (IRI, BNode, Literal)):
        raise TypeError(f"object must be an RDF term, got {o!r}")


class Graph:
    """A set of triples with subject/predicate/object indexes."""

    __slots__ = ("_triples", "_by_s", "_by_p", "_by_o")

    def __init__(self, triples: Iterable[tuple[Term, Term, Term]] = ()) -> None:
        self._triples: dict[Triple, None] = {}
        self._by_s: dict[Term, dict[Triple, None]] = {}
        self._by_p: dict[Term, dict[Triple, None]] = {}
        self._by_o: dict[Term, dict[Triple, None]] = {}
        for t in triples:
            self.add(*t)

    def add(self, s: Term, p: Term, o: Term) -> None:
        t = Triple(s, p, o)  # type: ignore[arg-type]
        if t in self._triples:
            return
        check_triple(s, p, o)
        self._insert(t)

    def _insert(self, t: Triple) -> None:
        self._triples[t] = None
        s, p, o = t
        bucket = self._by_s.get(s)
        if bucket is None:
            self._by_s[s] = {t: None}
        else:
            bucket[t] = None
        bucket = self._by_p.get(p)
        if bucket is None:
            self._by_p[p] = {t: None}
        else:
            bucket[t] = None
        bucket = self._by_o.get(o)
        if bucket is None:
            self._by_o[o] = {t: None}
        else:
            bucket[t] = None

    def remove(self, s: Term, p: Term, o: Term) -> None:
        t = Triple(s, p, o)  # type: ignore[arg-type]
        if t not in self._triples:
            return
        del self._triples[t]
        for index, key in ((self._by_s, s), (self._by_p, p), (self._by_o, o)):
            bucket = index[key]
            del bucket[t]
            if not bucket:
                del index[key]

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple: object) -> bool:
        return triple in self._triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples.keys() == other._triples.keys()

    def __repr__(self) -> str:
        return f"<Graph with {len(self)} triples>"

    def triples(self) -> set[Triple]:
        return set(self._triples)

    def match(self, s: Term | None = None, p: Term | None = None, o: Term | None = None) -> list[Triple]:
        """All triples matching the bound positions; ``None`` is a wildcard."""
        candidates = None
        for index, key in ((self._by_s, s), (self._by_p, p), (self._by_o, o)):
            if key is None:
                continue
            bucket = index.get(key)
            if bucket is None:
                return []
            if candidates is None or len(bucket) < len(candidates):
                candidates = bucket
        if candidates is None:
            return list(self._triples)
        return [
            t
            for t in candidates
            if (s is None or t[0] == s) and (p is None or t[1] == p) and (o is None or t[2] == o)
        ]

    def objects(self, s: Term, p: Term) -> list[Term]:
        return [t[2] for t in self.match(s, p, None)]

    def subjects(self, p: Term, o: Term | None = None) -> list[Term]:
        return [t[0] for t in self.match(None, p, o)]

    def value(self, s: Term, p: Term) -> Term | None:
        for t in self.match(s, p, None):
            return t[2]
        return None

    def has_subject(self, s: Term) -> bool:
        return s in self._by_s

    def predicates_of(self, s: Term) -> list[Term]:
        return list(dict.fromkeys(t[1] for t in self._by_s.get(s, ())))

    def terms(self) -> set[Term]:
        return set(self._by_s) | set(self._by_p) | set(self._by_o)

    def copy(self) -> "Graph":
        g = Graph()
        g._triples = dict(self._triples)
        g._by_s = {k: dict(v) for k, v in self._by_s.items()}
        g._by_p = {k: dict(v) for k, v in self._by_p.items()}
        g._by_o = {k: dict(v) for k, v in self._by_o.items()}
        return g

    def update(self, triples: Iterable[Triple]) -> None:
        """Insert many already-validated triples."""
        own = self._triples
        for t in triples:
            if t not in own:
                self._insert(t)


def match(graph: Graph, s: Term | None = None, p: Term | None = None, o: Term | None = None) -> list[Triple]:
    return graph.match(s, p, o)


def graph_union(a: Graph, b: Graph) -> Graph:
    if len(a) < len(b):
        a, b = b, a
    result = a.copy()
    result.update(b)
    return result


def union_all(graphs: Iterable[Graph]) -> Graph:
    """Union of any number of graphs; collapses duplicates."""
    graphs = sorted(graphs, key=len, reverse=True)
    if not graphs:
        return Graph()
    result = graphs[0].copy()
    for g in graphs[1:]:
        result.update(g)
    return result


def graph_intersection(a: Graph, b: Graph) -> Graph:
    if len(a) > len(b):
        a, b = b, a
    result = Graph()
    result.update(t for t in a if t in b)
    return result


def graph_difference(a: Graph, b: Graph) -> Graph:
    result = Graph()
    result.update(t for t in a if t not in b)
    return result


class Dataset:
    """A default graph plus named graphs keyed by IRI."""

    __slots__ = ("default", "named")

    def __init__(self, default: Graph | None = None, named: Mapping[IRI, Graph] | None = None) -> None:
        self.default = default if default is not None else Graph()
        self.named: dict[IRI, Graph] = dict(named or {})
        for name in self.named:
            if not isinstance(name, IRI):
                raise TypeError(f"graph names must be IRIs, got {name!r}")

    def graph(self, name: IRI | None = None) -> Graph:
        return dataset_graph(self, name)

    def add_graph(self, name: IRI) -> Graph:
        """Return the named graph, creating it empty when missing."""
        if not isinstance(name, IRI):
            raise TypeError(f"graph names must be IRIs, got {name!r}")
        g = self.named.get(name)
        if g is None:
            g = self.named[name] = Graph()
        return g

    def add(self, s: Term, p: Term, o: Term, g: IRI | None = None) -> None:
        target = self.default if g is None else self.add_graph(g)
        target.add(s, p, o)

    def quads(self) -> Iterator[Quad]:
        for s, p, o in self.default:
            yield Quad(s, p, o, None)
        for name, g in self.named.items():
            for s, p, o in g:
                yield Quad(s, p, o, name)

    def graph_names(self) -> list[IRI]:
        return sorted(self.named, key=lambda n: n.value)

    def __len__(self) -> int:
        return len(self.default) + sum(len(g) for g in self.named.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.default == other.default and self.named == other.named

    def __repr__(self) -> str:
        return f"<Dataset default={len(self.default)} named={len(self.named)} quads={len(self)}>"


def dataset_graph(dataset: Dataset, name: IRI | None = None) -> Graph:
    """The named graph, the default graph when ``name`` is None, or an empty graph."""
    if name is None:
        return dataset.default
    g = dataset.named.get(name)  # type: ignore[arg-type]
    return g if g is not None else Graph()
