"""SHACL validation over RDF datasets with graph-level targeting.

The layers, bottom up: :mod:`shaclds.graph` (terms, graphs, datasets),
:mod:`shaclds.rdfio` (syntaxes), :mod:`shaclds.sparql` (the SELECT subset),
:mod:`shaclds.shacl` (single-graph validation), :mod:`shaclds.ds` (shapes
datasets and focus graphs), :mod:`shaclds.reports` and :mod:`shaclds.bench`.
"""

from shaclds.graph import Dataset, Graph
from shaclds.terms import IRI, BNode, Literal

__version__ = "0.1.0"

__all__ = ["BNode", "Dataset", "Graph", "IRI", "Literal", "__version__"]
