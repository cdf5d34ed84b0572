"""Shapes loading and single-graph validation."""

from shaclds.shacl.model import (
    INFO,
    VIOLATION,
    WARNING,
    Constraint,
    Shape,
    SparqlConstraint,
    ValidationReport,
    ValidationResult,
)

__all__ = [
    "INFO",
    "VIOLATION",
    "WARNING",
    "Constraint",
    "Shape",
    "SparqlConstraint",
    "ValidationReport",
    "ValidationResult",
    "load_shapes",
    "validate_graph",
    "resolve_targets",
    "check_class",
    "ShapeLoadError",
    "ShapeCycleError",
]


def __getattr__(name):
    # loader/validator pull in the SPARQL layer; import lazily to keep
    # rdfio.report -> shacl.model free of cycles
    if name in ("load_shapes", "ShapeLoadError"):
        from shaclds.shacl import loader

        return getattr(loader, name)
    if name in ("validate_graph", "resolve_targets", "check_class", "ShapeCycleError"):
        from shaclds.shacl import validator

        return getattr(validator, name)
    raise AttributeError(name)
