"""Concrete syntaxes: N-Quads, N-Triples, Turtle, TriG and report Turtle."""

from __future__ import annotations

from pathlib import Path

from shaclds.graph import Dataset
from shaclds.rdfio.common import Diagnostic, ParseError, ParseOutcome
from shaclds.rdfio.nquads import parse_nquads, parse_ntriples, serialize_nquads, serialize_ntriples
from shaclds.rdfio.report import parse_report, serialize_report
from shaclds.rdfio.serialize import serialize_trig, serialize_turtle
from shaclds.rdfio.turtle import parse_trig, parse_turtle

__all__ = [
    "Diagnostic",
    "ParseError",
    "ParseOutcome",
    "parse_nquads",
    "parse_ntriples",
    "parse_turtle",
    "parse_trig",
    "parse_report",
    "serialize_nquads",
    "serialize_ntriples",
    "serialize_turtle",
    "serialize_trig",
    "serialize_report",
    "parse_path",
    "load_dataset",
    "write_dataset",
]

_PARSERS = {
    ".nq": parse_nquads,
    ".nquads": parse_nquads,
    ".nt": parse_ntriples,
    ".ttl": parse_turtle,
    ".turtle": parse_turtle,
    ".trig": parse_trig,
}


def parse_path(path: str | Path) -> ParseOutcome:
    """Parse a file, choosing the syntax from its extension."""
    path = Path(path)
    parser = _PARSERS.get(path.suffix.lower())
    if parser is None:
        raise ValueError(f"unrecognised RDF file extension {path.suffix!r} (expected one of {', '.join(sorted(_PARSERS))})")
    return parser(path.read_text(encoding="utf-8"))


def load_dataset(path: str | Path) -> Dataset:
    outcome = parse_path(path)
    try:
        return outcome.unwrap()
    except ParseError as exc:
        raise ParseError(f"{path}: {exc.message}", exc.line, exc.column) from None


def write_dataset(dataset: Dataset, path: str | Path, prefixes: dict[str, str] | None = None) -> None:
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix in (".nq", ".nquads"):
        text = serialize_nquads(dataset)
    elif suffix == ".trig":
        text = serialize_trig(dataset, prefixes)
    else:
        raise ValueError(f"cannot write a dataset as {suffix!r}; use .trig or .nq")
    path.write_text(text, encoding="utf-8")
