"""Boundary checks for hopfq.coaction. Run: uv run python -m hopfq.coaction_check"""

from math import comb

from hypothesis import given, settings
from hypothesis import strategies as st

from hopfq.coaction import (
    SUq2Algebra,
    Tensor,
    canonical_map,
    delta_r,
    ell_denominator,
    hopf_bundle,
    jones_wenzl,
    q_number,
    strong_connection,
    su2_system,
)
from hopfq.coeffring import ONE, Q, ZERO, qpow
from hopfq.errors import ValidationError
from hopfq.ncalg import SU2_ALPHABET, Identity, NCPoly


def failing(identities: list[Identity]) -> list[str]:
    return [f"{i.name}: {i.residual}" for i in identities if not i.holds]


def gen(name: str) -> NCPoly:
    return NCPoly.gen(name)


def check_su2_unitarity() -> None:
    h = su2_system()
    assert h.normalize(NCPoly.parse("alpha*alphab + q^2*gammab*gamma", SU2_ALPHABET)) == 1
    assert h.normalize(NCPoly.parse("alphab*alpha + gammab*gamma", SU2_ALPHABET)) == 1


def check_su2_pbw_basis() -> None:
    su2 = SUq2Algebra()
    for d in range(4):
        normal = [w for w in su2.pbw_words(d) if len(w) == d]
        assert len(normal) == comb(d + 2, 2) + comb(d + 1, 2), d
        for w in normal:
            assert not ("alpha" in w and "alphab" in w), w
            assert list(w) == sorted(w, key=SU2_ALPHABET.index), w


def check_su2_overlaps_resolve() -> None:
    h = su2_system()
    rules = [(lead, rep) for lead, rep in h.relations() if len(lead) == 2]
    for (a, b), left in rules:
        for (b2, c), right in rules:
            if b == b2:
                assert h.normalize(left * gen(c)) == h.normalize(gen(a) * right), (a, b, c)


su2_words = st.lists(st.sampled_from(SU2_ALPHABET), max_size=4).map(tuple)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(su2_words, su2_words, su2_words)
def check_su2_normal_form_associative(a: tuple, b: tuple, c: tuple) -> None:
    h = su2_system()
    x, y, z = NCPoly.word(a), NCPoly.word(b), NCPoly.word(c)
    assert h.mul(h.mul(x, y), z) == h.mul(x, h.mul(y, z))


def check_hopf_structure() -> None:
    su2 = SUq2Algebra()
    hh = (su2.system, su2.system)
    expected = Tensor.of(hh, gen("alpha"), gen("alpha")) - Tensor.of(hh, gen("gammab"), gen("gamma")).scale(qpow(1))
    assert su2.coproduct["alpha"] == expected
    assert su2.antipode["alpha"] == gen("alphab")
    assert su2.antipode["alphab"] == gen("alpha")
    assert su2.antipode["gamma"] == NCPoly.gen("gamma", qpow(1, -1))
    assert su2.antipode["gammab"] == NCPoly.gen("gammab", qpow(-1, -1))
    assert su2.epsilon(("alpha", "alphab")) == 1
    assert su2.epsilon(("gamma",)) == 0
    assert failing(su2.hopf_axioms()) == []


def check_coaction_on_generators() -> None:
    bundle = hopf_bundle()
    ph = (bundle.total, bundle.structure)
    expected = Tensor.of(ph, gen("x1"), gen("alpha")) + Tensor.of(ph, gen("x2"), gen("gamma")).scale(qpow(1))
    assert delta_r(gen("x1")) == expected
    assert delta_r(NCPoly.one()) == Tensor.unit(ph)


def check_coaction_certificates() -> None:
    bundle = hopf_bundle()
    assert failing(bundle.verify_coaction_well_defined()) == []
    assert failing(bundle.verify_coinvariance()) == []
    assert failing(bundle.matrix_form()) == []
    assert failing(bundle.comodule()) == []


def check_a_generator_is_not_coinvariant() -> None:
    bundle = hopf_bundle()
    x1 = gen("x1")
    assert not (delta_r(x1) - bundle.coinvariant(x1)).is_zero()


def check_canonical_map() -> None:
    bundle = hopf_bundle()
    pairs = [(bundle.v.entry(k, 1).star(), bundle.v.entry(k, 1)) for k in range(1, 5)]
    assert canonical_map(pairs) == Tensor.of((bundle.total, bundle.structure), 1, gen("alpha"))
    assert failing(bundle.canonical_images()) == []


def check_top_spin_projector() -> None:
    assert q_number(2) == Q + Q**-1
    p2, s2 = jones_wenzl(2)
    assert s2 == q_number(2)
    assert p2 == {
        ((1, 1), (1, 1)): s2,
        ((2, 2), (2, 2)): s2,
        ((1, 2), (1, 2)): Q,
        ((1, 2), (2, 1)): ONE,
        ((2, 1), (1, 2)): ONE,
        ((2, 1), (2, 1)): Q**-1,
    }
    for n in (2, 3):
        p, s = jones_wenzl(n)
        square: dict = {}
        for (i, k), c1 in p.items():
            for (k2, j), c2 in p.items():
                if k == k2:
                    square[(i, j)] = square.get((i, j), ZERO) + c1 * c2
        assert {key: c for key, c in square.items() if c} == {key: s * c for key, c in p.items()}
    assert ell_denominator(1) == ONE
    assert ell_denominator(2) == q_number(2) ** 2


def check_strong_connection() -> None:
    bundle = hopf_bundle()
    pp = (bundle.total, bundle.total)
    ph = (bundle.total, bundle.structure)
    assert strong_connection(()).numerator == Tensor.unit(pp)
    value = strong_connection(("alpha",))
    assert value.numerator == bundle.double_bracket(1, 1)
    assert value.denominator == ONE
    assert str(value) == str(value.numerator)

    value = strong_connection(("alpha", "gamma"))
    assert value.denominator == q_number(2) ** 2
    folded = bundle._ell(("alpha", "gamma")).scale(Q) + bundle._ell(("gamma", "alpha"))
    assert value.numerator == folded.scale(q_number(2))
    assert bundle.chi(value.numerator) == Tensor.of(ph, value.denominator, NCPoly.word(("alpha", "gamma")))

    assert failing(bundle.verify_strong_connection(max_degree=1)) == []
    assert failing(bundle.verify_strong_connection(max_degree=2)) == []
    try:
        strong_connection(("gammab", "gamma"))
    except ValidationError:
        pass
    else:
        raise AssertionError("non-normal word accepted")


def check_associated_module() -> None:
    assert failing(hopf_bundle().associated_module_check()) == []


if __name__ == "__main__":
    check_su2_unitarity()
    check_su2_pbw_basis()
    check_su2_overlaps_resolve()
    check_su2_normal_form_associative()
    check_hopf_structure()
    check_coaction_on_generators()
    check_coaction_certificates()
    check_a_generator_is_not_coinvariant()
    check_canonical_map()
    check_top_spin_projector()
    check_strong_connection()
    check_associated_module()
    print("ok: hopfq.coaction")
