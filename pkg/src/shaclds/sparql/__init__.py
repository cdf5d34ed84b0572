"""The SELECT fragment used by SPARQL-based constraints."""

from shaclds.sparql.algebra import Query, Var
from shaclds.sparql.evaluate import evaluate
from shaclds.sparql.oracle import OracleLimitError, evaluate_oracle
from shaclds.sparql.parser import SparqlSyntaxError, UnsupportedFeature, parse_query

__all__ = [
    "Query",
    "Var",
    "evaluate",
    "evaluate_oracle",
    "OracleLimitError",
    "parse_query",
    "SparqlSyntaxError",
    "UnsupportedFeature",
]
