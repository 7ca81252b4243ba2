"""Boundary checks for hopfq.coeffring. Run: uv run python -m hopfq.coeffring_check"""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hopfq.coeffring import ONE, ZERO, LaurentPoly, lp_arith, lp_eval, lp_invert_q, qpow
from hopfq.errors import ValidationError

polys = st.dictionaries(
    st.integers(-6, 6),
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
    max_size=4,
).map(LaurentPoly)
nonzero_q = st.fractions(min_value=Fraction(1, 9), max_value=3, max_denominator=9)


def check_worked_products() -> None:
    assert lp_arith("mul", ONE - qpow(2), ONE + qpow(2)) == ONE - qpow(4)
    assert lp_arith("add", qpow(1) - qpow(-1), qpow(-1) - qpow(1)).is_zero()
    lhs = lp_arith("mul", qpow(-4) * (ONE - qpow(2)), ONE - qpow(4))
    assert lhs == LaurentPoly({-4: 1, -2: -1, 0: -1, 2: 1})


def check_no_zero_coefficients_stored() -> None:
    p = LaurentPoly({1: 2, 3: 0, -1: Fraction(0)})
    assert p.terms == ((1, Fraction(2)),)
    assert LaurentPoly({2: 1, 0: 1}) - qpow(2) == ONE


def check_evaluation() -> None:
    ch0 = 2 - qpow(-4) * (ONE - qpow(2)) * (ONE - qpow(4))
    assert lp_eval(ch0, 1) == 2
    assert lp_eval(qpow(4), Fraction(1, 2)) == Fraction(1, 16)
    assert lp_eval(ONE - qpow(2), 1) == 0
    assert abs(lp_eval(qpow(-2), 0.5, "float") - 4.0) < 1e-15


def check_zero_rejected() -> None:
    try:
        lp_eval(qpow(-1), 0)
    except ValidationError:
        return
    raise AssertionError("evaluation at q = 0 accepted")


def check_inversion() -> None:
    assert lp_invert_q(qpow(2)) == qpow(-2)
    assert lp_invert_q(ONE - qpow(-4)) == ONE - qpow(4)


def check_rendering_round_trips() -> None:
    for p in (ZERO, ONE, qpow(-3, Fraction(-2, 3)), ONE - qpow(-2), qpow(1) + qpow(5, 7)):
        assert LaurentPoly.parse(str(p)) == p, str(p)
    assert str(qpow(-4) - qpow(-2)) == "q^-4 - q^-2"


def check_units() -> None:
    assert qpow(3, 2).is_unit()
    assert qpow(3, 2).inverse() == qpow(-3, Fraction(1, 2))
    assert not (ONE + qpow(1)).is_unit()


@settings(max_examples=200, deadline=None)
@given(polys, polys, polys)
def check_ring_axioms(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly) -> None:
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == ZERO


@settings(max_examples=100, deadline=None)
@given(polys, polys, nonzero_q)
def check_evaluation_is_multiplicative(a: LaurentPoly, b: LaurentPoly, q0: Fraction) -> None:
    assert lp_eval(a * b, q0) == lp_eval(a, q0) * lp_eval(b, q0)


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def check_inversion_is_automorphism(a: LaurentPoly, b: LaurentPoly) -> None:
    assert lp_invert_q(lp_invert_q(a)) == a
    assert lp_invert_q(a * b) == lp_invert_q(a) * lp_invert_q(b)


@settings(max_examples=100, deadline=None)
@given(polys)
def check_parse_inverts_render(a: LaurentPoly) -> None:
    assert LaurentPoly.parse(str(a)) == a


if __name__ == "__main__":
    check_worked_products()
    check_no_zero_coefficients_stored()
    check_evaluation()
    check_zero_rejected()
    check_inversion()
    check_rendering_round_trips()
    check_units()
    check_ring_axioms()
    check_evaluation_is_multiplicative()
    check_inversion_is_automorphism()
    check_parse_inverts_render()
    print("ok: hopfq.coeffring")
