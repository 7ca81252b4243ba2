"""Boundary checks for hopfq.ncalg. Run: uv run python -m hopfq.ncalg_check"""

from hypothesis import given, settings
from hypothesis import strategies as st

from hopfq.coeffring import ONE, qpow
from hopfq.errors import HopfqError, InconsistentRelationsError, RewriteBudgetError, UnknownGeneratorError
from hopfq.ncalg import (
    NCMatrix,
    NCPoly,
    RewriteSystem,
    nc_mul,
    nc_normalize,
    nc_star,
    nc_substitute,
    orient_relations,
    sphere_alphabet,
    star_word,
    word_key,
)

PLANE = ("x1", "x2")


def quantum_plane(budget: int = 1000) -> RewriteSystem:
    """x2 x1 = q^-1 x1 x2."""
    return RewriteSystem("plane", PLANE, {("x2", "x1"): NCPoly.word(PLANE, qpow(-1))}, budget=budget)


words = st.lists(st.sampled_from(PLANE), max_size=5).map(tuple)


def check_order() -> None:
    assert sphere_alphabet(1) == ("xb1", "xb2", "x1", "x2")
    assert word_key(("x1", "x2")) < word_key(("x2", "x1")) < word_key(("x1", "x1", "x1"))
    assert word_key(("xb4",)) < word_key(("x1",))


def check_star() -> None:
    assert star_word(("x2", "x1")) == ("xb1", "xb2")
    e = NCPoly.word(("x2", "x1"), qpow(1)) + 3
    assert nc_star(e) == NCPoly.word(("xb1", "xb2"), qpow(1)) + 3
    assert nc_star(nc_star(e)) == e


def check_normalize() -> None:
    rs = quantum_plane()
    assert nc_normalize(NCPoly.word(("x2", "x1")), rs) == NCPoly.word(PLANE, qpow(-1))
    assert nc_normalize(NCPoly.word(("x2", "x2", "x1")), rs) == NCPoly.word(("x1", "x2", "x2"), qpow(-2))
    assert str(nc_mul(NCPoly.gen("x2"), NCPoly.gen("x1"), rs)) == "q^-1*x1*x2"


def check_budget_guard() -> None:
    rs = quantum_plane(budget=2)
    try:
        rs.normalize(NCPoly.word(("x2", "x2", "x1", "x1")))
    except RewriteBudgetError as e:
        assert e.code == "rewrite_budget_exceeded"
        return
    raise AssertionError("budget not enforced")


def check_rules_must_decrease() -> None:
    try:
        RewriteSystem("bad", PLANE, {("x1", "x2"): NCPoly.word(("x2", "x1"))})
    except HopfqError as e:
        assert e.code == "invalid_parameter"
        return
    raise AssertionError("non-decreasing rule accepted")


def check_alphabet_enforced() -> None:
    try:
        quantum_plane().normalize(NCPoly.gen("x3"))
    except UnknownGeneratorError as e:
        assert e.name == "x3"
        return
    raise AssertionError("foreign letter accepted")


def check_orientation() -> None:
    rel = NCPoly.word(("x2", "x1"), qpow(1)) - NCPoly.word(PLANE)
    rules = orient_relations([rel, rel.scale(qpow(3))], alphabet=PLANE, eligible=lambda w: True)
    assert rules == {("x2", "x1"): NCPoly.word(PLANE, qpow(-1))}


def check_orientation_rejects_contradictions() -> None:
    # x2 x1 = q^-1 x1 x2 and x2 x1 = x1 x2 force (q^-1 - 1) x1 x2 = 0
    rels = [
        NCPoly.word(("x2", "x1")) - NCPoly.word(PLANE, qpow(-1)),
        NCPoly.word(("x2", "x1")) - NCPoly.word(PLANE),
    ]
    try:
        orient_relations(rels, alphabet=PLANE, eligible=lambda w: w == ("x2", "x1"), labels=["a", "b"])
    except InconsistentRelationsError:
        return
    raise AssertionError("contradiction oriented")


def check_substitute() -> None:
    rs = quantum_plane()
    swapped = nc_substitute(NCPoly.word(PLANE), {"x1": NCPoly.gen("x2"), "x2": NCPoly.gen("x1")}, rs)
    assert swapped == NCPoly.word(PLANE, qpow(-1))


def check_matrix() -> None:
    m = NCMatrix.parse([["x1", "q*x2"], ["0", "1"]])
    assert m.shape == (2, 2)
    assert m.entry(1, 2) == NCPoly.word(("x2",), qpow(1))
    assert m.star().entry(2, 1) == NCPoly.word(("xb2",), qpow(1))
    assert m.trace() == NCPoly.gen("x1") + ONE
    sq = m.matmul(NCMatrix.identity(2))
    assert (sq - m).nonzero_entries() == []
    assert [(i, j) for i, j, _ in m.nonzero_entries()] == [(1, 1), (1, 2), (2, 2)]


@settings(max_examples=100, deadline=None)
@given(words, words, words)
def check_normal_form_associative(a: tuple, b: tuple, c: tuple) -> None:
    rs = quantum_plane()
    x, y, z = NCPoly.word(a), NCPoly.word(b), NCPoly.word(c)
    assert rs.mul(rs.mul(x, y), z) == rs.mul(x, rs.mul(y, z))


@settings(max_examples=100, deadline=None)
@given(words)
def check_normal_form_is_fixpoint(a: tuple) -> None:
    rs = quantum_plane()
    once = rs.normalize(NCPoly.word(a))
    assert rs.normalize(once) == once
    assert all(rs.is_normal(w) for w in once.terms)


def check_normal_form_cache_is_bounded() -> None:
    small = RewriteSystem("plane", PLANE, {("x2", "x1"): NCPoly.word(PLANE, qpow(-1))}, cache_size=3)
    full = quantum_plane()
    for k in range(1, 12):
        word = NCPoly.word(("x2",) * k + ("x1",))
        assert small.normalize(word) == full.normalize(word) == NCPoly.word(("x1",) + ("x2",) * k, qpow(-k))
        assert len(small._cache) <= 3
    assert small.normalize(NCPoly.word(("x2", "x1"))) == NCPoly.word(PLANE, qpow(-1))


if __name__ == "__main__":
    check_order()
    check_star()
    check_normalize()
    check_budget_guard()
    check_rules_must_decrease()
    check_alphabet_enforced()
    check_orientation()
    check_orientation_rejects_contradictions()
    check_substitute()
    check_matrix()
    check_normal_form_associative()
    check_normal_form_is_fixpoint()
    check_normal_form_cache_is_bounded()
    print("ok: hopfq.ncalg")
