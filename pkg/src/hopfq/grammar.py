"""Textual grammar for Laurent coefficients and noncommutative expressions.

    expr    := sum of terms joined by + and -, unary - allowed
    term    := factor (* factor)*
    factor  := NUMBER | q^k | gen | gen^k | conj(expr) | (expr)

Scalars commute with everything, generator products do not. The parse tree
is lowered to an ``NCPoly`` (or a ``LaurentPoly`` for coefficient-only text).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import TYPE_CHECKING, Any

import pyparsing as pp

from .coeffring import LaurentPoly
from .errors import ParseError, UnknownGeneratorError

if TYPE_CHECKING:
    from collections.abc import Collection

    from .ncalg import NCPoly

pp.ParserElement.enable_packrat()


@dataclass(frozen=True, slots=True)
class _Node:
    kind: str  # num | atom | conj | neg | mul | sum
    value: Any
    loc: int = 0


def _num_action(s: str, loc: int, toks: pp.ParseResults) -> _Node:
    return _Node("num", Fraction(toks[0]), loc)


def _atom_action(s: str, loc: int, toks: pp.ParseResults) -> _Node:
    name, _, exp = toks[0].partition("^")
    return _Node("atom", (name, exp), loc)


def _conj_action(s: str, loc: int, toks: pp.ParseResults) -> _Node:
    return _Node("conj", toks[0], loc)


def _neg_action(s: str, loc: int, toks: pp.ParseResults) -> _Node:
    return _Node("neg", toks[0][1], loc)


def _mul_action(s: str, loc: int, toks: pp.ParseResults) -> _Node:
    return _Node("mul", [t for t in toks[0] if isinstance(t, _Node)], loc)


def _sum_action(s: str, loc: int, toks: pp.ParseResults) -> _Node:
    items = list(toks[0])
    terms = [(1, items[0])]
    for op, node in zip(items[1::2], items[2::2], strict=True):
        terms.append((1 if op == "+" else -1, node))
    return _Node("sum", terms, loc)


@cache
def _grammar() -> pp.ParserElement:
    expr = pp.Forward()
    number = pp.Regex(r"\d+(/\d+)?").set_name("number").set_parse_action(_num_action)
    atom = (
        pp.Regex(r"[A-Za-z][A-Za-z0-9]*(\^-?\d+)?")
        .set_name("generator")
        .set_parse_action(_atom_action)
    )
    conj = (
        pp.Suppress(pp.Keyword("conj")) + pp.Suppress("(") + expr + pp.Suppress(")")
    ).set_parse_action(_conj_action)
    operand = number | conj | atom
    expr <<= pp.infix_notation(
        operand,
        [
            ("-", 1, pp.OpAssoc.RIGHT, _neg_action),
            ("*", 2, pp.OpAssoc.LEFT, _mul_action),
            (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, _sum_action),
        ],
    )
    return expr


def _parse_tree(text: str) -> _Node:
    if not text.strip():
        raise ParseError("empty expression", text=text, position=0)
    try:
        result = _grammar().parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise ParseError(e.msg, text=text, position=e.loc) from e
    return result[0]


def _lower(node: _Node, text: str, alphabet: Collection[str] | None) -> NCPoly:
    from .ncalg import GENERATORS, NCPoly

    match node.kind:
        case "num":
            return NCPoly.scalar(node.value)
        case "atom":
            name, exp = node.value
            if name == "q":
                k = int(exp) if exp else 1
                return NCPoly.scalar(LaurentPoly.monomial(k))
            if exp.startswith("-"):
                raise ParseError(
                    f"malformed exponent {exp!r} on generator {name!r}",
                    text=text,
                    position=node.loc,
                )
            if name not in GENERATORS or (alphabet is not None and name not in alphabet):
                raise UnknownGeneratorError(name, "this algebra" if alphabet else "")
            return NCPoly.word((name,) * (int(exp) if exp else 1))
        case "conj":
            return _lower(node.value, text, alphabet).star()
        case "neg":
            return -_lower(node.value, text, alphabet)
        case "mul":
            out = _lower(node.value[0], text, alphabet)
            for factor in node.value[1:]:
                out = out * _lower(factor, text, alphabet)
            return out
        case "sum":
            out = NCPoly.zero()
            for sign, term in node.value:
                lowered = _lower(term, text, alphabet)
                out = out + lowered if sign > 0 else out - lowered
            return out
    raise ParseError(f"unexpected node {node.kind}", text=text, position=node.loc)


def parse_expr(text: str, alphabet: Collection[str] | None = None) -> NCPoly:
    """Parse ``text`` into an unnormalized NCPoly.

    Raises ParseError on syntax errors and malformed exponents, and
    UnknownGeneratorError for names outside ``alphabet``.
    """
    return _lower(_parse_tree(text), text, alphabet)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse a coefficient-only expression such as ``-q^-2 + 1``."""
    poly = _lower(_parse_tree(text), text, alphabet=())
    return poly.coefficient(())
