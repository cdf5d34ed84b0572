"""Vocabulary IRIs used across the engine."""

from __future__ import annotations

from shaclds.terms import IRI


class Namespace(str):
    """A base IRI; attribute or item access yields an :class:`IRI` term."""

    def __getattr__(self, name: str) -> IRI:
        if name.startswith("__"):
            raise AttributeError(name)
        return IRI(self + name)

    def __getitem__(self, name):  # type: ignore[override]
        if isinstance(name, str):
            return IRI(self + name)
        return str.__getitem__(self, name)

    def term(self, name: str) -> IRI:
        return IRI(self + name)


RDF = Namespace("http://www.w3.org/1999/02/22-rdf-syntax-ns#")
RDFS = Namespace("http://www.w3.org/2000/01/rdf-schema#")
XSD = Namespace("http://www.w3.org/2001/XMLSchema#")
OWL = Namespace("http://www.w3.org/2002/07/owl#")
SKOS = Namespace("http://www.w3.org/2004/02/skos/core#")
SH = Namespace("http://www.w3.org/ns/shacl#")
SHDS = Namespace("http://www.w3id.org/shacl-ds#")

ERA = Namespace("http://data.europa.eu/949/")
ERA_G = Namespace("http://data.europa.eu/949/graph/")
ERA_RINF = Namespace("http://data.europa.eu/949/graph/rinf/")
ERA_315 = Namespace("http://data.europa.eu/949/graph/v3-1-5/")
ERA_SH = Namespace("http://data.europa.eu/949/shapes/")

RDF_TYPE = RDF.type
RDF_FIRST = RDF.first
RDF_REST = RDF.rest
RDF_NIL = RDF.nil

# Reserved graph names of the dataset layer.
SHDS_DEFAULT = SHDS.default
SHDS_ALL = SHDS.all

STANDARD_PREFIXES: dict[str, str] = {
    "rdf": str(RDF),
    "rdfs": str(RDFS),
    "xsd": str(XSD),
    "owl": str(OWL),
    "skos": str(SKOS),
    "sh": str(SH),
    "shds": str(SHDS),
}
