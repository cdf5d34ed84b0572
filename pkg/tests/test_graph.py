from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import ex, random_graph, scan
from shaclds.graph import Dataset, Graph, dataset_graph, graph_difference, graph_intersection, graph_union, match, union_all
from shaclds.namespaces import ERA, XSD
from shaclds.rdfio import parse_nquads, parse_turtle
from shaclds.terms import IRI, BNode, Literal

T1 = (ex("s1"), ex("p"), ex("o1"))
T2 = (ex("s2"), ex("p"), Literal("x"))
T3 = (ex("s3"), ex("q"), ex("o1"))


def g_of(*triples) -> Graph:
    g = Graph()
    for t in triples:
        g.add(*t)
    return g


class TestTerms:
    def test_language_forces_langstring(self):
        lit = Literal("hi", language="EN")
        assert lit.language == "en"
        assert lit.datatype.endswith("#langString")

    def test_langstring_without_tag_rejected(self):
        with pytest.raises(ValueError):
            Literal("hi", "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString")

    @pytest.mark.parametrize("bad", ["", "a b", "x\ty"])
    def test_iri_rejects_whitespace(self, bad):
        with pytest.raises(ValueError):
            IRI(bad)

    def test_structural_equality(self):
        assert IRI("http://a") == IRI("http://a")
        assert IRI("http://a") != BNode("http://a")
        assert Literal("1", XSD.integer) == Literal("1", str(XSD.integer))
        assert Literal("1", XSD.integer) != Literal("01", XSD.integer)
        assert Literal("1") != Literal("1", XSD.integer)

    def test_quad_position_checks(self):
        g = Graph()
        with pytest.raises(TypeError):
            g.add(Literal("x"), ex("p"), ex("o"))
        with pytest.raises(TypeError):
            g.add(ex("s"), BNode("b"), ex("o"))


class TestSetAlgebra:
    def test_union_examples(self):
        assert graph_union(g_of(T1), g_of(T1, T2)).triples() == {T1, T2}
        assert len(graph_union(Graph(), Graph())) == 0

    def test_intersection_examples(self):
        assert graph_intersection(g_of(T1, T2), g_of(T2, T3)).triples() == {T2}
        g = g_of(T1, T2, T3)
        assert graph_intersection(g, g).triples() == g.triples()

    def test_difference_examples(self):
        assert graph_difference(g_of(T1, T2), g_of(T2)).triples() == {T1}
        g = g_of(T1, T2)
        assert len(graph_difference(g, g)) == 0

    def test_inputs_unmodified(self):
        a, b = g_of(T1), g_of(T2)
        graph_union(a, b)
        graph_difference(a, b)
        assert a.triples() == {T1} and b.triples() == {T2}

    def test_union_of_three_random_graphs(self):
        rng = random.Random(11)
        graphs = [random_graph(rng, 100) for _ in range(3)]
        expected = set()
        for g in graphs:
            for t in g.triples():
                expected.add(t)
        merged = union_all(graphs)
        assert merged.triples() == expected
        for t in merged.triples():
            assert any(t in g.triples() for g in graphs)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(0, 60), st.integers(0, 60))
    def test_laws(self, seed, na, nb):
        rng = random.Random(seed)
        a, b = random_graph(rng, na, subjects=6), random_graph(rng, nb, subjects=6)
        ta, tb = a.triples(), b.triples()
        assert graph_union(a, b).triples() == graph_union(b, a).triples() == ta | tb
        assert graph_intersection(a, b).triples() == graph_intersection(b, a).triples()
        assert graph_intersection(a, b).triples() == {t for t in ta if t in tb}
        assert graph_difference(a, b).triples() <= ta
        assert graph_difference(a, b).triples() == {t for t in ta if t not in tb}
        assert graph_intersection(graph_union(a, b), a).triples() == ta


class TestMatch:
    def test_predicate_lookup(self):
        g = g_of((ex("cls"), ERA.maxTrainCurrent, Literal("1500", XSD.integer)), (ex("cls"), ERA.length, Literal("3", XSD.integer)))
        assert len(match(g, None, ERA.maxTrainCurrent, None)) == 1
        assert set(match(g)) == g.triples()

    def test_index_vs_scan(self):
        rng = random.Random(5)
        g = random_graph(rng, 1000)
        assert len(g) > 500
        terms = sorted(g.terms(), key=lambda t: t.sort_key())
        for _ in range(50):
            s = rng.choice(terms) if rng.random() < 0.5 else None
            p = ex(f"p{rng.randrange(5)}") if rng.random() < 0.5 else None
            o = rng.choice(terms) if rng.random() < 0.5 else None
            assert set(g.match(s, p, o)) == scan(g, s, p, o)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.tuples(st.booleans(), st.integers(0, 4), st.integers(0, 2), st.integers(0, 4)), max_size=80))
    def test_insert_remove_sequences(self, ops):
        g = Graph()
        model = set()
        for add, s, p, o in ops:
            t = (ex(f"s{s}"), ex(f"p{p}"), ex(f"s{o}"))
            if add:
                g.add(*t)
                model.add(t)
            else:
                g.remove(*t)
                model.discard(t)
        assert g.triples() == model
        assert len(g) == len(model)
        for s in range(5):
            for p in range(3):
                for pat in [(ex(f"s{s}"), None, None), (None, ex(f"p{p}"), None), (None, None, ex(f"s{s}")), (ex(f"s{s}"), ex(f"p{p}"), None)]:
                    assert set(g.match(*pat)) == scan(g, *pat)

    def test_set_semantics(self):
        g = g_of(T1)
        g.add(*T1)
        assert len(g) == 1

    def test_insertion_order(self):
        g = g_of(T3, T1, T2)
        assert list(g.match()) == [T3, T1, T2]


class TestDataset:
    def test_dataset_graph_lookup(self):
        ds = Dataset()
        ds.add(*T1)
        ds.add(*T2, g=ex("g"))
        assert dataset_graph(ds).triples() == {T1}
        assert dataset_graph(ds, ex("g")).triples() == {T2}
        assert len(dataset_graph(ds, ex("nope"))) == 0
        assert ex("nope") not in ds.named

    def test_graph_names_unique(self):
        ds = Dataset()
        a = ds.add_graph(ex("g"))
        assert ds.add_graph(ex("g")) is a
        assert ds.graph_names() == [ex("g")]

    def test_blank_nodes_scoped_per_document(self):
        a = parse_turtle("_:b0 <http://example.org/p> 1 .").unwrap().default
        b = parse_nquads("_:b0 <http://example.org/p> \"1\" .\n").unwrap().default
        sa = next(iter(a.triples()))[0]
        sb = next(iter(b.triples()))[0]
        assert isinstance(sa, BNode) and isinstance(sb, BNode)
        assert sa != sb
        assert len(graph_union(a, b)) == 2
