"""Boundary checks for hopfq.grammar. Run: uv run python -m hopfq.grammar_check"""

from fractions import Fraction

from hopfq.coeffring import ONE, qpow
from hopfq.errors import ParseError, UnknownGeneratorError
from hopfq.grammar import parse_expr, parse_laurent
from hopfq.ncalg import SU2_ALPHABET, NCPoly, sphere_alphabet


def check_laurent_text() -> None:
    assert parse_laurent("1 - q^-2") == ONE - qpow(-2)
    assert parse_laurent("-3/2*q^4 + q") == qpow(4, Fraction(-3, 2)) + qpow(1)
    assert parse_laurent("q*q^-1") == ONE


def check_words_keep_order() -> None:
    e = parse_expr("x2*x1")
    assert e == NCPoly.word(("x2", "x1"))
    assert e != parse_expr("x1*x2")


def check_scalars_commute() -> None:
    assert parse_expr("x1*q^2*x2") == parse_expr("q^2*x1*x2")
    assert parse_expr("(1 - q^-2)*x1") == NCPoly.word(("x1",), ONE - qpow(-2))


def check_powers_and_conj() -> None:
    assert parse_expr("x1^3") == NCPoly.word(("x1", "x1", "x1"))
    assert parse_expr("conj(q*x2*x1)") == NCPoly.word(("xb1", "xb2"), qpow(1))
    assert parse_expr("-x1 + x2") ==NCPoly.word(("x2",)) - NCPoly.word(("x1",))


def check_rendering_parses_back() -> None:
    for text in ("x1*x2", "q^-1*x1*x2 + xb1", "1 - xb1*x1 - xb2*x2", "(1 - q^2)*alpha*gamma"):
        e = parse_expr(text)
        assert parse_expr(str(e)) == e, text


def check_syntax_errors() -> None:
    for text in ("", "x1 +", "x1 ** x2", "(x1", "x1^-2"):
        try:
            parse_expr(text)
        except ParseError as e:
            assert e.code == "parse_error"
            continue
        raise AssertionError(f"{text!r} parsed")


def check_unknown_generators() -> None:
    for text, alphabet in (("y1", None), ("alpha", sphere_alphabet(2)), ("x1", SU2_ALPHABET)):
        try:
            parse_expr(text, alphabet)
        except UnknownGeneratorError as e:
            assert e.name == text
            continue
        raise AssertionError(f"{text!r} accepted")


if __name__ == "__main__":
    check_laurent_text()
    check_words_keep_order()
    check_scalars_commute()
    check_powers_and_conj()
    check_rendering_parses_back()
    check_syntax_errors()
    check_unknown_generators()
    print("ok: hopfq.grammar")
