"""Parse results, diagnostics and helpers shared by the concrete syntaxes."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import NamedTuple

from shaclds.graph import Dataset


class Diagnostic(NamedTuple):
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class ParseError(ValueError):
    """Raised for malformed input; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        super().__init__(f"{line}:{column}: {message}" if line else message)
        self.message = message
        self.line = line
        self.column = column

    def diagnostic(self) -> Diagnostic:
        return Diagnostic(self.line, self.column, self.message)


@dataclass
class ParseOutcome:
    dataset: Dataset | None
    prefixes: dict[str, str] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.dataset is not None

    def unwrap(self) -> Dataset:
        """The dataset, or :class:`ParseError` built from the first diagnostic."""
        if self.dataset is None:
            d = self.diagnostics[0] if self.diagnostics else Diagnostic(0, 0, "parse failed")
            raise ParseError(d.message, d.line, d.column)
        return self.dataset


_doc_ids = itertools.count()


def new_document_scope() -> str:
    """A fresh blank-node label prefix; one per parsed document."""
    return f"d{next(_doc_ids)}"


_ABSOLUTE_IRI = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:[^\s]*$")


def is_absolute_iri(value: str) -> bool:
    return bool(_ABSOLUTE_IRI.match(value))


_ECHAR = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}


def unescape_string(body: str, line: int = 0, column: int = 0) -> str:
    """Resolve ECHAR and UCHAR escapes inside a quoted string body."""
    if "\\" not in body:
        return body
    out = []
    i = 0
    n = len(body)
    while i < n:
        ch = body[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= n:
            raise ParseError("dangling backslash in string", line, column + i)
        esc = body[i + 1]
        if esc in _ECHAR:
            out.append(_ECHAR[esc])
            i += 2
        elif esc in "uU":
            width = 4 if esc == "u" else 8
            digits = body[i + 2 : i + 2 + width]
            if len(digits) != width or not all(c in "0123456789abcdefABCDEF" for c in digits):
                raise ParseError(f"bad \\{esc} escape sequence", line, column + i)
            code = int(digits, 16)
            if code > 0x10FFFF or 0xD800 <= code <= 0xDFFF:
                raise ParseError(f"escape \\{esc}{digits} is not a valid code point", line, column + i)
            out.append(chr(code))
            i += 2 + width
        else:
            raise ParseError(f"bad escape sequence \\{esc}", line, column + i)
    return "".join(out)


def unescape_iri(body: str, line: int = 0, column: int = 0) -> str:
    """Resolve UCHAR escapes inside an IRIREF body (no ECHAR allowed)."""
    if "\\" not in body:
        return body
    out = []
    i = 0
    n = len(body)
    while i < n:
        ch = body[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        esc = body[i + 1] if i + 1 < n else ""
        if esc not in ("u", "U"):
            raise ParseError("only \\u and \\U escapes are allowed in IRIs", line, column + i)
        width = 4 if esc == "u" else 8
        digits = body[i + 2 : i + 2 + width]
        if len(digits) != width or not all(c in "0123456789abcdefABCDEF" for c in digits):
            raise ParseError(f"bad \\{esc} escape sequence in IRI", line, column + i)
        code = int(digits, 16)
        if code > 0x10FFFF or 0xD800 <= code <= 0xDFFF:
            raise ParseError("IRI escape is not a valid code point", line, column + i)
        out.append(chr(code))
        i += 2 + width
    return "".join(out)
