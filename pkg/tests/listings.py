"""Shape and declaration listings used as fixtures."""

from __future__ import annotations

PREFIXES = """\
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix shds: <http://www.w3id.org/shacl-ds#> .
@prefix era: <http://data.europa.eu/949/> .
@prefix era-g: <http://data.europa.eu/949/graph/> .
@prefix era-rinf: <http://data.europa.eu/949/graph/rinf/> .
@prefix era-sh: <http://data.europa.eu/949/shapes/> .
"""

# the "MaximumTrainCurrenta" typo is corrected to the intended "MaximumTrainCurrent a"
MAX_TRAIN_CURRENT = PREFIXES + r"""
era-sh:ContactLineSystemShape sh:property era-sh:MaximumTrainCurrent .
era-sh:MaximumTrainCurrent a sh:PropertyShape ;
 rdfs:comment "Indication of the maximum allowable train current"@en;
 sh:path era:maxTrainCurrent ;
 sh:datatype xsd:integer ;
 sh:pattern "^([1-9]\\d{0,3}|0)$" ;
 sh:maxCount 1 ;
 sh:severity sh:Violation ;
 sh:message "maxTrainCurrent (1.1.1.2.2.2): Defines ...(truncated)"@en .
"""

ETCS_SELECT = """
 PREFIX era: <http://data.europa.eu/949/>
 PREFIX skos: <http://www.w3.org/2004/02/skos/core#>
 PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>
 SELECT $this  ?concept (era:etcsMVersion AS ?path)
 WHERE {
  $this era:etcsMVersion ?concept .
  era:etcsMVersion era:inSkosConceptScheme ?conceptScheme .
  FILTER NOT EXISTS{ ?concept skos:inScheme ?conceptScheme .} } """

ETCS_SELECT_PINNED = """
 PREFIX era: <http://data.europa.eu/949/>
 PREFIX era-g: <http://data.europa.eu/949/graph/>
 PREFIX skos: <http://www.w3.org/2004/02/skos/core#>
SELECT $this ?concept (era:etcsMVersion AS ?path) WHERE {
  $this era:etcsMVersion ?concept .
  GRAPH era-g:ontology { era:etcsMVersion era:inSkosConceptScheme ?conceptScheme . }
  FILTER NOT EXISTS { GRAPH era-g:skos { ?concept skos:inScheme ?conceptScheme . } } }"""

NOT_APPLICABLE_SELECT = """
 PREFIX era: <http://data.europa.eu/949/>
 PREFIX era-g: <http://data.europa.eu/949/graph/>
 PREFIX owl: <http://www.w3.org/2002/07/owl#>
  SELECT DISTINCT $this WHERE {
    $this era:notApplicable ?property .
    FILTER NOT EXISTS {
      { GRAPH era-g:ontology { ?property a owl:ObjectProperty . } }
      UNION
      { GRAPH era-g:ontology { ?property a owl:DatatypeProperty . } } }  } """

NOT_APPLICABLE_CORE = PREFIXES + """
era-sh:NotApplicableProperty a sh:PropertyShape ;
  sh:targetSubjectsOf era:notApplicable ;
  sh:path era:notApplicable ;
  sh:or ( [ sh:class owl:ObjectProperty ] [ sh:class owl:DatatypeProperty ] ) .
"""

ALL_DECLARATION = "era-sh:sg-rinf shds:targetGraphCombination [ shds:or ( shds:all ) ] .\n"

COMBINATION_DECLARATIONS = """_:refGraphs shds:or ( era-g:ontology era-g:skos era-g:countries era-g:borders ) .
era-sh:sg-rinf shds:targetGraphCombination [ shds:or ( era-rinf:0080 _:refGraphs ) ] .
era-sh:sg-rinf shds:targetGraphCombination [ shds:or ( era-rinf:0085 _:refGraphs ) ] .
"""

PATTERN_DECLARATION = 'era-sh:sg-rinf shds:targetGraphPattern ".*/graph/rinf/[A-Z0-9]{4}$" .\n'

CATEGORY_DECLARATIONS = """era-sh:sg-ont   shds:targetGraphPattern ".*/ontology$" .
era-sh:sg-skos  shds:targetGraphPattern ".*/skos$" .
era-sh:sg-shacl shds:targetGraphPattern ".*/shacl$" .
"""

SIMPLE_SHAPES = """
era-sh:MaximumTrainCurrent a sh:PropertyShape ;
  sh:targetClass era:ContactLineSystem ;
  sh:path era:maxTrainCurrent ;
  sh:pattern "^([1-9]\\\\d{0,3}|0)$" .
"""


def shapes_dataset(declarations: str, body: str = SIMPLE_SHAPES, graph: str = "era-sh:sg-rinf") -> str:
    return PREFIXES + declarations + f"{graph} {{{body}}}\n"
