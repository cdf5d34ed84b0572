from __future__ import annotations

import random

import pytest

from helpers import ReferenceChecker, engine_results, ex, random_shacl_case
from listings import MAX_TRAIN_CURRENT, NOT_APPLICABLE_CORE, PREFIXES
from shaclds.graph import Dataset, Graph
from shaclds.namespaces import ERA, ERA_SH, OWL, RDF_TYPE, SH, XSD
from shaclds.rdfio import parse_turtle
from shaclds.shacl import (
    VIOLATION,
    WARNING,
    ShapeCycleError,
    ShapeLoadError,
    ValidationReport,
    ValidationResult,
    check_class,
    load_shapes,
    resolve_targets,
    validate_graph,
)
from shaclds.terms import Literal

INT = str(XSD.integer)


def shapes_of(text: str, diagnostics: list | None = None):
    return load_shapes(parse_turtle(text).unwrap().default, diagnostics)


def data_of(text: str) -> Graph:
    return parse_turtle(PREFIXES + "@prefix ex: <http://example.org/> .\n" + text).unwrap().default


def by_id(shapes, iri):
    return next(s for s in shapes if s.id == iri)


# the listing's node shape has no target; give it one for validation
LISTING_WITH_TARGET = MAX_TRAIN_CURRENT + "era-sh:ContactLineSystemShape sh:targetClass era:ContactLineSystem .\n"


class TestLoad:
    def test_listing(self):
        shapes = shapes_of(MAX_TRAIN_CURRENT)
        assert len(shapes) == 2
        node = by_id(shapes, ERA_SH.ContactLineSystemShape)
        prop = by_id(shapes, ERA_SH.MaximumTrainCurrent)
        assert node.kind == "node" and node.path is None
        assert [c.component for c in node.constraints] == ["property"]
        assert node.constraints[0].value is prop
        assert prop.kind == "property" and prop.path == ERA.maxTrainCurrent
        assert {c.component for c in prop.constraints} == {"datatype", "pattern", "maxCount"}
        assert prop.severity == VIOLATION
        assert prop.message.lexical.startswith("maxTrainCurrent")

    def test_empty_graph(self):
        assert load_shapes(Graph()) == []

    def test_or_members(self):
        shapes = shapes_of(NOT_APPLICABLE_CORE)
        prop = by_id(shapes, ERA_SH.NotApplicableProperty)
        (or_c,) = [c for c in prop.constraints if c.component == "or"]
        assert len(or_c.value) == 2
        assert [m.constraints[0].value for m in or_c.value] == [OWL.ObjectProperty, OWL.DatatypeProperty]
        assert all(m.kind == "node" and m.path is None for m in or_c.value)

    @pytest.mark.parametrize(
        "body, needle",
        [
            ('ex:S a sh:PropertyShape ; sh:path ex:p ; sh:maxCount "one" .', "maxCount"),
            ("ex:S a sh:PropertyShape ; sh:path ex:p ; sh:minCount -1 .", "minCount"),
            ("ex:S a sh:PropertyShape ; sh:path ( ex:p ex:q ) .", "path"),
            ("ex:S a sh:PropertyShape ; sh:path [ sh:alternativePath ( ex:p ex:q ) ] .", "path"),
            ('ex:S a sh:PropertyShape ; sh:path ex:p ; sh:pattern "(" .', "pattern"),
            ("ex:S a sh:PropertyShape ; sh:datatype xsd:string .", "path"),
            ('ex:S a sh:NodeShape ; sh:sparql [ sh:select "SELECT ?x WHERE { ?x ?p ?o }" ] .', "this"),
            ("ex:S a sh:NodeShape ; sh:nodeKind ex:Nope .", "nodeKind"),
        ],
    )
    def test_load_errors_name_the_shape(self, body, needle):
        with pytest.raises(ShapeLoadError) as info:
            shapes_of(PREFIXES + "@prefix ex: <http://example.org/> .\n" + body)
        msg = str(info.value)
        assert "http://example.org/S" in msg
        assert needle in msg

    def test_unknown_parameter_is_diagnosed(self):
        diags: list[str] = []
        shapes_of(PREFIXES + "<http://example.org/S> a sh:PropertyShape ; sh:path <http://example.org/p> ; sh:lessThan <http://example.org/q> .", diags)
        assert any("lessThan" in d for d in diags)

    def test_prefixes_link_is_diagnosed(self):
        from shaclds.bench.shapes import original_shapes_text

        diags: list[str] = []
        shapes = load_shapes(parse_turtle(original_shapes_text()).unwrap().default, diags)
        assert any("prefixes" in d for d in diags)
        etcs = by_id(shapes, ERA_SH.ETCSShape)
        assert etcs.constraints[0].component == "sparql"

    def test_cycle_flagged(self):
        shapes = shapes_of(PREFIXES + "<http://example.org/A> a sh:NodeShape ; sh:node <http://example.org/B> .\n<http://example.org/B> a sh:NodeShape ; sh:not <http://example.org/A> .")
        assert all(s.cyclic for s in shapes)


class TestTargets:
    def _shape(self, decl: str):
        return shapes_of(PREFIXES + f"<http://example.org/S> a sh:NodeShape ; {decl} .")[0]

    def test_class(self):
        assert resolve_targets(self._shape("sh:targetClass <http://example.org/C>"), data_of("ex:x a ex:C .")) == {ex("x")}

    def test_subclass_chain(self):
        shape = self._shape("sh:targetClass <http://example.org/C>")
        data = data_of("ex:D rdfs:subClassOf ex:C . ex:E rdfs:subClassOf ex:D . ex:x a ex:D . ex:y a ex:E . ex:z a ex:F .")
        assert resolve_targets(shape, data) == {ex("x"), ex("y")}

    def test_subjects_and_objects_of(self):
        data = data_of("ex:x ex:p ex:y . ex:z ex:p ex:w . ex:q ex:r ex:s .")
        assert resolve_targets(self._shape("sh:targetSubjectsOf <http://example.org/p>"), data) == {ex("x"), ex("z")}
        assert resolve_targets(self._shape("sh:targetObjectsOf <http://example.org/p>"), data) == {ex("y"), ex("w")}

    def test_target_node_needs_no_data(self):
        assert resolve_targets(self._shape("sh:targetNode <http://example.org/n>"), Graph()) == {ex("n")}


class TestCheckClass:
    def test_declared(self):
        onto = data_of("era:opStart a owl:ObjectProperty .")
        assert check_class(ERA.opStart, OWL.ObjectProperty, onto)

    def test_missing_ontology(self):
        onto = data_of("era:length a owl:DatatypeProperty .")
        assert not check_class(ERA.opStart, OWL.ObjectProperty, onto)

    def test_empty(self):
        assert not check_class(ERA.opStart, OWL.ObjectProperty, Graph())

    def test_subclass(self):
        g = data_of("ex:x a ex:D . ex:D rdfs:subClassOf ex:C .")
        assert check_class(ex("x"), ex("C"), g)
        assert not check_class(ex("x"), ex("E"), g)


def _mtc_report(*values: str) -> ValidationReport:
    data = Graph()
    cls = ex("cls1")
    data.add(cls, RDF_TYPE, ERA.ContactLineSystem)
    for v in values:
        data.add(cls, ERA.maxTrainCurrent, Literal(v, INT))
    return validate_graph(shapes_of(LISTING_WITH_TARGET), data)


class TestValidate:
    def test_pattern_violation(self):
        report = _mtc_report("20000")
        assert [(r.source_constraint_component, r.value) for r in report.results] == [(SH.PatternConstraintComponent, Literal("20000", INT))]
        r = report.results[0]
        assert r.source_shape == ERA_SH.MaximumTrainCurrent and r.path == ERA.maxTrainCurrent
        assert r.focus_graph is None and r.source_shapes_graph is None
        assert not report.conforms

    def test_conforming_value(self):
        assert _mtc_report("1500").results == []
        assert _mtc_report("0").results == []
        assert _mtc_report("9999").results == []

    def test_max_count_once(self):
        report = _mtc_report("1500", "1600", "1700")
        max_results = [r for r in report.results if r.source_constraint_component == SH.MaxCountConstraintComponent]
        assert len(max_results) == 1 and max_results[0].value is None
        assert len(report) == 1

    def test_datatype(self):
        data = Graph()
        data.add(ex("c"), RDF_TYPE, ERA.ContactLineSystem)
        data.add(ex("c"), ERA.maxTrainCurrent, Literal("150"))
        comps = {r.source_constraint_component for r in validate_graph(shapes_of(LISTING_WITH_TARGET), data).results}
        assert comps == {SH.DatatypeConstraintComponent}

    def test_malformed_integer_fails_datatype(self):
        data = Graph()
        data.add(ex("c"), RDF_TYPE, ERA.ContactLineSystem)
        data.add(ex("c"), ERA.maxTrainCurrent, Literal("15x", INT))
        comps = [r.source_constraint_component for r in validate_graph(shapes_of(LISTING_WITH_TARGET), data).results]
        assert SH.DatatypeConstraintComponent in comps

    def test_or_with_and_without_ontology(self):
        shapes = shapes_of(NOT_APPLICABLE_CORE)
        data = data_of("ex:x era:notApplicable era:opStart .")
        report = validate_graph(shapes, data)
        assert [(r.source_constraint_component, r.value) for r in report.results] == [(SH.OrConstraintComponent, ERA.opStart)]
        assert report.results[0].source_shape == ERA_SH.NotApplicableProperty
        data.add(ERA.opStart, RDF_TYPE, OWL.ObjectProperty)
        assert validate_graph(shapes, data).results == []

    def test_deactivated(self):
        text = LISTING_WITH_TARGET + "era-sh:MaximumTrainCurrent sh:deactivated true .\n"
        data = Graph()
        data.add(ex("c"), RDF_TYPE, ERA.ContactLineSystem)
        data.add(ex("c"), ERA.maxTrainCurrent, Literal("20000"))
        data.add(ex("c"), ERA.maxTrainCurrent, Literal("x"))
        assert validate_graph(shapes_of(text), data).results == []

    def test_severity_and_conforms(self):
        text = LISTING_WITH_TARGET.replace("sh:severity sh:Violation", "sh:severity sh:Warning")
        data = Graph()
        data.add(ex("c"), RDF_TYPE, ERA.ContactLineSystem)
        data.add(ex("c"), ERA.maxTrainCurrent, Literal("20000", INT))
        report = validate_graph(shapes_of(text), data)
        assert [r.severity for r in report.results] == [WARNING]
        assert report.conforms

    def test_inverse_path(self):
        text = PREFIXES + "<http://example.org/S> a sh:PropertyShape ; sh:targetNode <http://example.org/o> ; sh:path [ sh:inversePath <http://example.org/p> ] ; sh:maxCount 1 ."
        data = data_of("ex:a ex:p ex:o . ex:b ex:p ex:o .")
        (r,) = validate_graph(shapes_of(text), data).results
        assert r.focus_node == ex("o") and r.source_constraint_component == SH.MaxCountConstraintComponent

    def test_sparql_rows_become_results(self):
        text = PREFIXES + '''<http://example.org/S> a sh:NodeShape ; sh:targetSubjectsOf <http://example.org/p> ;
  sh:sparql [ sh:message "bad" ; sh:select """SELECT $this ?value WHERE { $this <http://example.org/p> ?value . $this <http://example.org/p> ?value2 . }""" ] .'''
        data = data_of("ex:a ex:p 1, 2 . ex:b ex:p 3 .")
        report = validate_graph(shapes_of(text), data)
        # a: 2 values x 2 = 4 rows, b: 1 row
        assert len(report) == 5
        assert all(r.source_constraint_component == SH.SPARQLConstraintComponent for r in report.results)
        assert all(r.message == Literal("bad") for r in report.results)
        assert sorted(r.value.lexical for r in report.results if r.focus_node == ex("a")) == ["1", "1", "2", "2"]

    def test_sparql_path_projection(self):
        from shaclds.bench.shapes import original_shapes_text

        shapes = shapes_of(original_shapes_text())
        data = data_of(
            """ex:e a era:ETCS ; era:etcsMVersion ex:c1, ex:c2 .
            era:etcsMVersion era:inSkosConceptScheme ex:cs .
            ex:c1 <http://www.w3.org/2004/02/skos/core#inScheme> ex:cs ."""
        )
        (r,) = validate_graph(shapes, data).results
        assert r.focus_node == ex("e") and r.path == ERA.etcsMVersion and r.value is None
        assert r.source_shape == ERA_SH.ETCSShape

    def test_cyclic_shapes_fail_fast(self):
        text = PREFIXES + """<http://example.org/A> a sh:NodeShape ; sh:targetNode <http://example.org/x> ; sh:node <http://example.org/B> .
<http://example.org/B> a sh:NodeShape ; sh:node <http://example.org/A> ."""
        with pytest.raises(ShapeCycleError):
            validate_graph(shapes_of(text), Graph())

    def test_results_are_order_normalized(self):
        shapes = shapes_of(LISTING_WITH_TARGET)
        data = Graph()
        for i in (3, 1, 2):
            data.add(ex(f"c{i}"), RDF_TYPE, ERA.ContactLineSystem)
            data.add(ex(f"c{i}"), ERA.maxTrainCurrent, Literal("99999", INT))
        assert [r.focus_node for r in validate_graph(shapes, data).results] == [ex("c1"), ex("c2"), ex("c3")]

    def test_eds_default_is_what_bare_patterns_see(self):
        text = PREFIXES + '''<http://example.org/S> a sh:NodeShape ; sh:targetNode <http://example.org/a> ;
  sh:sparql [ sh:select """SELECT $this WHERE { GRAPH <http://example.org/g> { $this <http://example.org/p> ?o } }""" ] .'''
        data = Dataset()
        data.add(ex("a"), ex("p"), ex("o"), ex("g"))
        shapes = shapes_of(text)
        assert len(validate_graph(shapes, Graph())) == 0
        assert len(validate_graph(shapes, Graph(), data)) == 1


@pytest.mark.parametrize("seed", range(5))
def test_reference_checker_agrees(seed):
    rng = random.Random(1000 + seed)
    for _ in range(20):
        ttl, data = random_shacl_case(rng)
        sg = parse_turtle(ttl).unwrap().default
        report = validate_graph(load_shapes(sg), data)
        assert engine_results(report) == ReferenceChecker(data, sg).results(ex("S")), ttl


def test_conforms_iff_no_violation():
    rng = random.Random(77)
    sev = [VIOLATION, WARNING]
    for _ in range(50):
        results = [ValidationResult(ex("f"), ex("S"), SH.PatternConstraintComponent, severity=rng.choice(sev)) for _ in range(rng.randrange(4))]
        report = ValidationReport(results)
        assert report.conforms == (not any(r.severity == VIOLATION for r in results))

