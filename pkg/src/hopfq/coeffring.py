"""Exact Laurent polynomials in q with rational coefficients.

A ``LaurentPoly`` is an immutable map ``exponent -> Fraction`` with no zero
coefficients stored; equality and hashing go through the sorted term tuple,
so two polynomials are equal iff their canonical forms are identical.

    >>> from hopfq.coeffring import Q, ONE
    >>> (ONE - Q**2) * (ONE + Q**2)
    LaurentPoly('1 - q^4')
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction
from typing import Literal, SupportsInt, Union

from .errors import ErrorCode, HopfqError, ValidationError

Scalar = Union[int, Fraction]
Coercible = Union["LaurentPoly", int, Fraction]


class LaurentPoly:
    """Element of Q[q, q^-1]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for exp, coeff in items:
            c = Fraction(coeff)
            if c:
                acc[int(exp)] = acc.get(int(exp), Fraction(0)) + c
        self._terms: tuple[tuple[int, Fraction], ...] = tuple(
            sorted((k, v) for k, v in acc.items() if v)
        )
        self._hash = hash(self._terms)

    # Construction

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> LaurentPoly:
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, value: Scalar) -> LaurentPoly:
        return cls({0: value})

    @classmethod
    def coerce(cls, value: Coercible) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int | Fraction):
            return cls.constant(value)
        raise TypeError(f"cannot use {type(value).__name__} as a Laurent coefficient")

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Inverse of ``str()``: exact round-trip of the canonical rendering."""
        from .grammar import parse_laurent

        return parse_laurent(text)

    # Inspection

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        """(exponent, coefficient) pairs, exponents ascending."""
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """Units of Q[q, q^-1] are exactly the nonzero monomials."""
        return len(self._terms) == 1

    def coefficient(self, exponent: int) -> Fraction:
        for k, v in self._terms:
            if k == exponent:
                return v
        return Fraction(0)

    def constant_term(self) -> Fraction:
        return self.coefficient(0)

    @property
    def min_degree(self) -> int:
        return self._terms[0][0] if self._terms else 0

    @property
    def max_degree(self) -> int:
        return self._terms[-1][0] if self._terms else 0

    # Ring operations

    def __add__(self, other: Coercible) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        acc = dict(self._terms)
        for k, v in other._terms:
            acc[k] = acc.get(k, Fraction(0)) + v
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly((k, -v) for k, v in self._terms)

    def __sub__(self, other: Coercible) -> LaurentPoly:
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: Coercible) -> LaurentPoly:
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Coercible) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        if not self._terms or not other._terms:
            return ZERO
        acc: dict[int, Fraction] = {}
        for k1, v1 in self._terms:
            for k2, v2 in other._terms:
                acc[k1 + k2] = acc.get(k1 + k2, Fraction(0)) + v1 * v2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: SupportsInt) -> LaurentPoly:
        e = int(exponent)
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> LaurentPoly:
        """Inverse of a unit; division by anything else leaves the ring."""
        if not self.is_unit():
            raise HopfqError(
                ErrorCode.NOT_A_UNIT,
                f"{self} is not invertible in Q[q, q^-1]",
            )
        (k, v), = self._terms
        return LaurentPoly.monomial(-k, 1 / v)

    def __truediv__(self, other: Coercible) -> LaurentPoly:
        return self * LaurentPoly.coerce(other).inverse()

    def invert_q(self) -> LaurentPoly:
        """Substitute q -> q^-1."""
        return LaurentPoly((-k, v) for k, v in self._terms)

    def evaluate(
        self, q0: Fraction | float | int, mode: Literal["exact", "float"] = "exact"
    ) -> Fraction | float:
        if q0 == 0:
            raise ValidationError("cannot evaluate a Laurent polynomial at q = 0")
        if mode == "exact":
            if isinstance(q0, float):
                q0 = Fraction(q0)
            q = Fraction(q0)
            return sum((v * q**k for k, v in self._terms), Fraction(0))
        qf = float(q0)
        return float(sum(float(v) * qf**k for k, v in self._terms))

    # Comparison and rendering

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for i, (k, v) in enumerate(self._terms):
            sign = "-" if v < 0 else "+"
            body = _monomial_text(k, abs(v))
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def _monomial_text(exponent: int, coeff: Fraction) -> str:
    """Render c*q^k with c > 0, dropping unit factors."""
    c = str(coeff)
    if exponent == 0:
        return c
    q = "q" if exponent == 1 else f"q^{exponent}"
    return q if coeff == 1 else f"{c}*{q}"


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
Q = LaurentPoly.monomial(1)


def qpow(k: int, coeff: Scalar = 1) -> LaurentPoly:
    """The monomial coeff * q^k."""
    return LaurentPoly.monomial(k, coeff)


def lp_arith(op: Literal["add", "mul", "neg"], a: LaurentPoly, b: LaurentPoly | None = None) -> LaurentPoly:
    """Exact ring operation; result in canonical form."""
    if op == "add":
        return a + (b if b is not None else ZERO)
    if op == "mul":
        return a * (b if b is not None else ONE)
    if op == "neg":
        return -a
    raise ValueError(f"unknown ring operation {op!r}")


def lp_eval(
    p: LaurentPoly, q0: Fraction | float | int, mode: Literal["exact", "float"] = "exact"
) -> Fraction | float:
    """Value of p at q = q0 in exact rational or binary float arithmetic."""
    return p.evaluate(q0, mode)


def lp_invert_q(p: LaurentPoly) -> LaurentPoly:
    return p.invert_q()
