"""Shapes used by the benchmark, in their original and GRAPH-pinned forms."""

from __future__ import annotations

from functools import lru_cache

from shaclds.graph import Graph
from shaclds.namespaces import ERA_SH
from shaclds.rdfio import parse_trig, parse_turtle
from shaclds.terms import IRI

SG_RINF = ERA_SH["sg-rinf"]
SG_ONT = ERA_SH["sg-ont"]
SG_SKOS = ERA_SH["sg-skos"]
SG_SHACL = ERA_SH["sg-shacl"]

OPERATOR_PATTERN = ".*/graph/rinf/[A-Z0-9]{4}$"
CATEGORY_PATTERNS = {
    "ontology": ".*/ontology$",
    "skos": ".*/skos$",
    "shacl": ".*/shacl$",
}

PREFIXES = """\
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix shds: <http://www.w3id.org/shacl-ds#> .
@prefix era: <http://data.europa.eu/949/> .
@prefix era-g: <http://data.europa.eu/949/graph/> .
@prefix era-rinf: <http://data.europa.eu/949/graph/rinf/> .
@prefix era-sh: <http://data.europa.eu/949/shapes/> .
"""

_COMMON = r'''
era-sh:ContactLineSystemShape a sh:NodeShape ;
  sh:targetClass era:ContactLineSystem ;
  sh:property era-sh:MaximumTrainCurrent .

era-sh:MaximumTrainCurrent a sh:PropertyShape ;
  rdfs:comment "Indication of the maximum allowable train current"@en ;
  sh:path era:maxTrainCurrent ;
  sh:datatype xsd:integer ;
  sh:pattern "^([1-9]\\d{0,3}|0)$" ;
  sh:maxCount 1 ;
  sh:severity sh:Violation ;
  sh:message "maxTrainCurrent: at most one integer between 0 and 9999"@en .

era-sh:SectionOfLineShape a sh:NodeShape ;
  sh:targetClass era:SectionOfLine ;
  sh:property era-sh:OpStartProperty, era-sh:LengthProperty .

era-sh:OpStartProperty a sh:PropertyShape ;
  sh:path era:opStart ;
  sh:minCount 1 ;
  sh:message "A section of line needs a start operational point"@en .

era-sh:LengthProperty a sh:PropertyShape ;
  sh:path era:length ;
  sh:datatype xsd:integer ;
  sh:maxCount 1 ;
  sh:message "A section of line has at most one length"@en .

era-sh:OperationalPointShape a sh:NodeShape ;
  sh:targetClass era:OperationalPoint ;
  sh:property era-sh:NotApplicableProperty .
'''

_ORIGINAL = r'''
era-sh:ETCSShape a sh:NodeShape ;
  sh:targetClass era:ETCS ;
  sh:sparql era-sh:EtcsMVersionSKOS .

era-sh:EtcsMVersionSKOS a sh:SPARQLConstraint ;
  rdfs:comment "ETCS_M version according to SRS 7.5.1.9 "@en ;
  sh:message "Indication of the etcsMVersion must be a concept of its scheme"@en ;
  sh:prefixes era: ;
  sh:select """
 PREFIX era: <http://data.europa.eu/949/>
 PREFIX skos: <http://www.w3.org/2004/02/skos/core#>
 PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>
 SELECT $this  ?concept (era:etcsMVersion AS ?path)
 WHERE {
  $this era:etcsMVersion ?concept .
  era:etcsMVersion era:inSkosConceptScheme ?conceptScheme .
  FILTER NOT EXISTS{ ?concept skos:inScheme ?conceptScheme .} } """ .

era-sh:NotApplicableProperty a sh:PropertyShape ;
  sh:path era:notApplicable ;
  sh:or ( [ sh:class owl:ObjectProperty ] [ sh:class owl:DatatypeProperty ] ) ;
  sh:message "notApplicable must name a declared property"@en .
'''

_PINNED = r'''
era-sh:ETCSShape a sh:NodeShape ;
  sh:targetClass era:ETCS ;
  sh:sparql era-sh:EtcsMVersionSKOS .

era-sh:EtcsMVersionSKOS a sh:SPARQLConstraint ;
  rdfs:comment "ETCS_M version according to SRS 7.5.1.9 "@en ;
  sh:message "Indication of the etcsMVersion must be a concept of its scheme"@en ;
  sh:select """
 PREFIX era: <http://data.europa.eu/949/>
 PREFIX era-g: <http://data.europa.eu/949/graph/>
 PREFIX skos: <http://www.w3.org/2004/02/skos/core#>
 SELECT $this ?concept (era:etcsMVersion AS ?path) WHERE {
  $this era:etcsMVersion ?concept .
  GRAPH era-g:ontology { era:etcsMVersion era:inSkosConceptScheme ?conceptScheme . }
  FILTER NOT EXISTS { GRAPH era-g:skos { ?concept skos:inScheme ?conceptScheme . } } }""" .

era-sh:NotApplicableProperty a sh:PropertyShape ;
  sh:path era:notApplicable ;
  sh:message "notApplicable must name a declared property"@en ;
  sh:sparql [ sh:select """
 PREFIX era: <http://data.europa.eu/949/>
 PREFIX era-g: <http://data.europa.eu/949/graph/>
 PREFIX owl: <http://www.w3.org/2002/07/owl#>
 SELECT DISTINCT $this WHERE {
    $this era:notApplicable ?property .
    FILTER NOT EXISTS {
      { GRAPH era-g:ontology { ?property a owl:ObjectProperty . } }
      UNION
      { GRAPH era-g:ontology { ?property a owl:DatatypeProperty . } } }  }""" ] .
'''

_ONT_SHAPES = '''
era-sh:OntologyPropertyShape a sh:PropertyShape ;
  sh:targetClass owl:ObjectProperty, owl:DatatypeProperty ;
  sh:path rdfs:label ;
  sh:minCount 1 ;
  sh:message "Ontology properties carry a label"@en .
'''

_SKOS_SHAPES = '''
era-sh:ConceptShape a sh:PropertyShape ;
  sh:targetClass skos:Concept ;
  sh:path skos:prefLabel ;
  sh:minCount 1 ;
  sh:message "Concepts carry a preferred label"@en .
'''

_SHACL_SHAPES = '''
era-sh:PropertyShapeShape a sh:NodeShape ;
  sh:targetClass sh:PropertyShape ;
  sh:property [ sh:path sh:path ; sh:minCount 1 ; sh:maxCount 1 ] .
'''


def original_shapes_text() -> str:
    return PREFIXES + _COMMON + _ORIGINAL


def pinned_shapes_text() -> str:
    return PREFIXES + _COMMON + _PINNED


@lru_cache(maxsize=None)
def _original_graph() -> Graph:
    return parse_turtle(original_shapes_text()).unwrap().default


def original_shapes_graph() -> Graph:
    """A fresh copy of the unmodified shapes graph."""
    return _original_graph().copy()


def _graph_block(name: str, body: str) -> str:
    return f"{name} {{{body}}}\n"


def _extra_blocks() -> tuple[str, str]:
    decls = "".join(f'era-sh:sg-{"ont" if cat == "ontology" else cat} shds:targetGraphPattern "{pat}" .\n' for cat, pat in CATEGORY_PATTERNS.items())
    blocks = _graph_block("era-sh:sg-ont", _ONT_SHAPES) + _graph_block("era-sh:sg-skos", _SKOS_SHAPES) + _graph_block("era-sh:sg-shacl", _SHACL_SHAPES)
    return decls, blocks


def shapes_dataset_text(strategy: str, operators: list[IRI] | None = None, extra: bool = False) -> str:
    """TriG shapes dataset for ``target`` (pattern + pinned shapes), ``combo``
    (operator graph unioned with the reference graphs, original shapes) or
    ``all`` (a single union of every graph, original shapes)."""
    if strategy == "target":
        decls = f'era-sh:sg-rinf shds:targetGraphPattern "{OPERATOR_PATTERN}" .\n'
        body = _COMMON + _PINNED
    elif strategy == "combo":
        if operators is None:
            raise ValueError("the combination strategy needs the operator graph list")
        decls = "_:refGraphs shds:or ( era-g:ontology era-g:skos era-g:countries era-g:borders ) .\n"
        decls += "".join(f"era-sh:sg-rinf shds:targetGraphCombination [ shds:or ( <{op.value}> _:refGraphs ) ] .\n" for op in operators)
        body = _COMMON + _ORIGINAL
    elif strategy == "all":
        decls = "era-sh:sg-rinf shds:targetGraphCombination [ shds:or ( shds:all ) ] .\n"
        body = _COMMON + _ORIGINAL
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    text = PREFIXES + decls
    blocks = _graph_block("era-sh:sg-rinf", body)
    if extra:
        extra_decls, extra_blocks = _extra_blocks()
        text += extra_decls
        blocks += extra_blocks
    return text + blocks


def parse_shapes_dataset_text(text: str):
    return parse_trig(text).unwrap()
