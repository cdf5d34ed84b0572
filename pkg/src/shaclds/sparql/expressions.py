"""Filter expression evaluation with SPARQL error semantics.

Type errors raise :class:`ExprError`; a filter whose expression errors is
treated as false, and ``||``/``&&`` absorb errors where the other side decides
the outcome.
"""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from functools import lru_cache

from shaclds.sparql.algebra import Call, Const, VarRef
from shaclds.terms import IRI, BNode, Literal, Term

XSD = "http://www.w3.org/2001/XMLSchema#"
XSD_STRING = XSD + "string"
XSD_BOOLEAN = XSD + "boolean"
RDF_LANGSTRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"

TRUE = Literal("true", XSD_BOOLEAN)
FALSE = Literal("false", XSD_BOOLEAN)

_INTEGER_TYPES = {
    XSD + t
    for t in (
        "integer",
        "int",
        "long",
        "short",
        "byte",
        "nonNegativeInteger",
        "nonPositiveInteger",
        "positiveInteger",
        "negativeInteger",
        "unsignedInt",
        "unsignedLong",
        "unsignedShort",
        "unsignedByte",
    )
}
_INTEGER_LEX = re.compile(r"^[+-]?[0-9]+$")
_DECIMAL_LEX = re.compile(r"^[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)$")
_DOUBLE_LEX = re.compile(r"^(?:[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?|[+-]?INF|NaN)$")


class ExprError(Exception):
    pass


def numeric_value(term: Term) -> Decimal | float | None:
    """Numeric value of an integer/decimal/double literal, None otherwise."""
    if not isinstance(term, Literal):
        return None
    dt = term.datatype
    lex = term.lexical
    if dt in _INTEGER_TYPES:
        if not _INTEGER_LEX.match(lex):
            return None
        return Decimal(lex)
    if dt == XSD + "decimal":
        if not _DECIMAL_LEX.match(lex):
            return None
        return Decimal(lex)
    if dt in (XSD + "double", XSD + "float"):
        if not _DOUBLE_LEX.match(lex):
            return None
        return float(lex.replace("INF", "inf"))
    return None


def is_numeric(term: Term) -> bool:
    return isinstance(term, Literal) and (
        term.datatype in _INTEGER_TYPES or term.datatype in (XSD + "decimal", XSD + "double", XSD + "float")
    )


def _num(term: Term) -> Decimal | float:
    v = numeric_value(term)
    if v is None:
        raise ExprError(f"{term!r} is not a valid number")
    return v


def _cmp_numbers(a: Decimal | float, b: Decimal | float) -> int:
    if isinstance(a, float) or isinstance(b, float):
        a, b = float(a), float(b)
    if a != a or b != b:  # NaN
        raise ExprError("NaN comparison")
    return (a > b) - (a < b)


def ebv(term: Term) -> bool:
    """Effective boolean value."""
    if isinstance(term, Literal):
        if term.datatype == XSD_BOOLEAN:
            return term.lexical in ("true", "1")
        if is_numeric(term):
            v = numeric_value(term)
            if v is None:
                return False
            return v == v and v != 0
        if term.datatype in (XSD_STRING, RDF_LANGSTRING):
            return term.lexical != ""
    raise ExprError(f"no effective boolean value for {term!r}")


def _bool(value: bool) -> Literal:
    return TRUE if value else FALSE


@lru_cache(maxsize=512)
def compile_regex(pattern: str, flags: str = "") -> re.Pattern:
    f = 0
    for ch in flags:
        if ch == "i":
            f |= re.IGNORECASE
        elif ch == "m":
            f |= re.MULTILINE
        elif ch == "s":
            f |= re.DOTALL
        elif ch == "x":
            f |= re.VERBOSE
        elif ch == "q":
            pattern = re.escape(pattern)
        else:
            raise ValueError(f"unknown regex flag {ch!r}")
    return re.compile(pattern, f)


def _string_arg(term: Term) -> str:
    if isinstance(term, Literal) and term.datatype in (XSD_STRING, RDF_LANGSTRING):
        return term.lexical
    raise ExprError(f"{term!r} is not a string literal")


def evaluate_expr(expr, binding: dict[str, Term]) -> Term:
    if isinstance(expr, Const):
        return expr.term
    if isinstance(expr, VarRef):
        try:
            return binding[expr.var.name]
        except KeyError:
            raise ExprError(f"unbound variable {expr.var}") from None
    if not isinstance(expr, Call):
        raise ExprError(f"unknown expression {expr!r}")
    op = expr.op
    args = expr.args
    if op == "||":
        try:
            left = ebv(evaluate_expr(args[0], binding))
        except ExprError:
            if ebv(evaluate_expr(args[1], binding)):
                return TRUE
            raise
        if left:
            return TRUE
        return _bool(ebv(evaluate_expr(args[1], binding)))
    if op == "&&":
        try:
            left = ebv(evaluate_expr(args[0], binding))
        except ExprError:
            if not ebv(evaluate_expr(args[1], binding)):
                return FALSE
            raise
        if not left:
            return FALSE
        return _bool(ebv(evaluate_expr(args[1], binding)))
    if op == "!":
        return _bool(not ebv(evaluate_expr(args[0], binding)))
    if op == "bound":
        arg = args[0]
        if isinstance(arg, Const):
            return TRUE
        return _bool(arg.var.name in binding)
    values = [evaluate_expr(a, binding) for a in args]
    if op in ("=", "!="):
        a, b = values
        if is_numeric(a) and is_numeric(b):
            equal = _cmp_numbers(_num(a), _num(b)) == 0
        else:
            equal = a == b
        return _bool(equal if op == "=" else not equal)
    if op in ("<", ">", "<=", ">="):
        a, b = values
        if not (is_numeric(a) and is_numeric(b)):
            raise ExprError("ordering comparison needs numeric operands")
        c = _cmp_numbers(_num(a), _num(b))
        return _bool({"<": c < 0, ">": c > 0, "<=": c <= 0, ">=": c >= 0}[op])
    if op == "regex":
        text = _string_arg(values[0])
        pattern = _string_arg(values[1])
        flags = _string_arg(values[2]) if len(values) > 2 else ""
        try:
            rx = compile_regex(pattern, flags)
        except (re.error, ValueError) as exc:
            raise ExprError(str(exc)) from None
        return _bool(rx.search(text) is not None)
    if op == "str":
        (a,) = values
        if isinstance(a, IRI):
            return Literal(a.value)
        if isinstance(a, Literal):
            return Literal(a.lexical)
        raise ExprError("str() of a blank node")
    if op == "datatype":
        (a,) = values
        if isinstance(a, Literal):
            return IRI(a.datatype)
        raise ExprError("datatype() of a non-literal")
    if op == "lang":
        (a,) = values
        if isinstance(a, Literal):
            return Literal(a.language or "")
        raise ExprError("lang() of a non-literal")
    if op == "isiri":
        return _bool(isinstance(values[0], IRI))
    if op == "isblank":
        return _bool(isinstance(values[0], BNode))
    if op == "isliteral":
        return _bool(isinstance(values[0], Literal))
    if op == "sameterm":
        return _bool(values[0] == values[1])
    raise ExprError(f"unknown operator {op}")


def filter_passes(expr, binding: dict[str, Term]) -> bool:
    try:
        return ebv(evaluate_expr(expr, binding))
    except ExprError:
        return False
