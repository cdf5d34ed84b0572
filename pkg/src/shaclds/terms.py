"""RDF terms: IRIs, blank nodes and literals.

Terms are immutable and hashable. Equality is structural; literals compare by
lexical form, datatype IRI and language tag (no value-space canonicalization).
"""

from __future__ import annotations

XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"
RDF_LANGSTRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"

_WHITESPACE = frozenset(" \t\r\n\f\v")


class Term:
    """Base class for the three RDF term kinds."""

    __slots__ = ("_hash",)
    kind: str = ""

    def sort_key(self) -> tuple:
        raise NotImplementedError

    def __lt__(self, other: "Term") -> bool:
        return self.sort_key() < other.sort_key()


class IRI(Term):
    __slots__ = ("value",)
    kind = "iri"

    def __init__(self, value: str) -> None:
        if not value or not _WHITESPACE.isdisjoint(value):
            raise ValueError(f"invalid IRI {value!r}")
        object.__setattr__(self, "value", str(value))
        object.__setattr__(self, "_hash", hash(("iri", self.value)))

    def __setattr__(self, name, value):
        raise AttributeError("terms are immutable")

    def __eq__(self, other: object) -> bool:
        return self is other or (type(other) is IRI and other.value == self.value)  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"IRI({self.value!r})"

    def __str__(self) -> str:
        return self.value

    def __reduce__(self):
        return (IRI, (self.value,))

    def sort_key(self) -> tuple:
        return (0, self.value)

    def n3(self) -> str:
        return "<" + escape_iri(self.value) + ">"


class BNode(Term):
    __slots__ = ("label",)
    kind = "blank"

    def __init__(self, label: str) -> None:
        if not label:
            raise ValueError("blank node label must be non-empty")
        object.__setattr__(self, "label", str(label))
        object.__setattr__(self, "_hash", hash(("blank", self.label)))

    def __setattr__(self, name, value):
        raise AttributeError("terms are immutable")

    def __eq__(self, other: object) -> bool:
        return self is other or (type(other) is BNode and other.label == self.label)  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"BNode({self.label!r})"

    def __str__(self) -> str:
        return self.label

    def __reduce__(self):
        return (BNode, (self.label,))

    def sort_key(self) -> tuple:
        return (1, self.label)

    def n3(self) -> str:
        return "_:" + self.label


class Literal(Term):
    """A literal. ``datatype`` defaults to xsd:string, or rdf:langString when a
    language tag is given. Language tags are stored lower-cased."""

    __slots__ = ("lexical", "datatype", "language")
    kind = "literal"

    def __init__(self, lexical: str, datatype: str | IRI | None = None, language: str | None = None) -> None:
        if isinstance(datatype, IRI):
            datatype = datatype.value
        if language:
            if datatype is not None and datatype != RDF_LANGSTRING:
                raise ValueError("a literal with a language tag must have datatype rdf:langString")
            datatype = RDF_LANGSTRING
            language = language.lower()
        else:
            language = None
            if datatype is None:
                datatype = XSD_STRING
            elif datatype == RDF_LANGSTRING:
                raise ValueError("rdf:langString literal requires a language tag")
        object.__setattr__(self, "lexical", str(lexical))
        object.__setattr__(self, "datatype", datatype)
        object.__setattr__(self, "language", language)
        object.__setattr__(self, "_hash", hash(("literal", self.lexical, datatype, language)))

    def __setattr__(self, name, value):
        raise AttributeError("terms are immutable")

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            type(other) is Literal
            and other.lexical == self.lexical  # type: ignore[attr-defined]
            and other.datatype == self.datatype  # type: ignore[attr-defined]
            and other.language == self.language  # type: ignore[attr-defined]
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if self.language:
            return f"Literal({self.lexical!r}, language={self.language!r})"
        if self.datatype == XSD_STRING:
            return f"Literal({self.lexical!r})"
        return f"Literal({self.lexical!r}, datatype={self.datatype!r})"

    def __str__(self) -> str:
        return self.lexical

    def __reduce__(self):
        return (Literal, (self.lexical, self.datatype, self.language))

    def sort_key(self) -> tuple:
        return (2, self.lexical, self.datatype, self.language or "")

    def n3(self) -> str:
        body = '"' + escape_string(self.lexical) + '"'
        if self.language:
            return body + "@" + self.language
        if self.datatype == XSD_STRING:
            return body
        return body + "^^<" + escape_iri(self.datatype) + ">"


def escape_string(text: str) -> str:
    out = []
    for ch in text:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        elif ch == "\b":
            out.append("\\b")
        elif ch == "\f":
            out.append("\\f")
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


_IRI_ESCAPE = frozenset('<>"{}|^`\\')


def escape_iri(value: str) -> str:
    if not any(c in _IRI_ESCAPE or ord(c) <= 0x20 for c in value):
        return value
    out = []
    for ch in value:
        if ch in _IRI_ESCAPE or ord(ch) <= 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)
