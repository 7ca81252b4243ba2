"""Boundary checks for hopfq.rmatrix. Run: uv run python -m hopfq.rmatrix_check"""

from pydantic import ValidationError

from hopfq.coeffring import ONE, qpow
from hopfq.errors import InconsistentRelationsError
from hopfq.ncalg import NCPoly
from hopfq.rmatrix import (
    Family,
    LegOrder,
    SymplecticData,
    build_c,
    build_r,
    check_ybe,
    closed_form_relations,
    derive_relations,
    expected_entry_count,
    golden_relations,
    quadratic_system,
    radius,
    s7_system,
    sphere_relation,
)


def check_index_data() -> None:
    sd = SymplecticData(n=2)
    assert [sd.prime(i) for i in sd.indices] == [4, 3, 2, 1]
    assert [sd.rho(i) for i in sd.indices] == [2, 1, -1, -2]
    assert [sd.eps(i) for i in sd.indices] == [1, 1, -1, -1]
    try:
        SymplecticData(n=0)
    except ValidationError:
        return
    raise AssertionError("n = 0 accepted")


def check_r_entries() -> None:
    r = build_r(2)
    assert r[4, 4, 4, 4] == qpow(1)
    assert r[1, 2, 1, 2] == ONE
    assert r[4, 1, 4, 1] == qpow(-1)
    assert r[1, 3, 2, 4] == 0
    for n in (1, 2):
        assert len(build_r(n).entries) == expected_entry_count(n)


def check_ybe() -> None:
    for n in (1, 2):
        report = check_ybe(build_r(n))
        assert report.holds, report.differences[:3]
        assert report.checked_components == (2 * n) ** 3
    r = build_r(2)
    assert r[4, 4, 4, 4] == qpow(1)
    broken = r.without((4, 4, 4, 4))
    assert (4, 4, 4, 4) not in broken.entries
    assert len(broken.entries) == len(r.entries) - 1
    assert not check_ybe(broken).holds


def check_c_matrix() -> None:
    assert build_c(1).rows() == [[0, qpow(-1)], [qpow(1, -1), 0]]
    assert build_c(2)[1, 4] == qpow(-2)
    for n in (1, 2, 3):
        c = build_c(n)
        assert (c @ c.inverse()).is_identity()


def check_derived_relations_match_table() -> None:
    for family in (Family.XX, Family.VV, Family.XV, Family.SPHERE):
        derived = derive_relations(2, family)
        assert derived.diff(golden_relations(family)) == [], family


def check_sphere_rule_is_derived() -> None:
    for n in (1, 2, 3):
        assert derive_relations(n, Family.SPHERE).diff(sphere_relation(n)) == [], n
    derived = derive_relations(2, Family.SPHERE)
    assert derived.diff(golden_relations(Family.SPHERE)) == []
    assert derived.diff(golden_relations(Family.XX)) != []


def check_closed_forms_agree() -> None:
    for n in (1, 2):
        for family in (Family.XX, Family.VV, Family.XV):
            assert closed_form_relations(n, family).diff(derive_relations(n, family)) == [], (n, family)


def check_corrupted_table_is_caught() -> None:
    diff = derive_relations(2, Family.XX).diff(golden_relations(Family.XX, corrupted=True))
    assert len(diff) == 1
    assert diff[0].startswith("x2*x1:")


def check_swapped_legs_do_not_reproduce() -> None:
    try:
        swapped = derive_relations(2, Family.XX, LegOrder.SWAPPED)
    except InconsistentRelationsError:
        return
    assert swapped.diff(golden_relations(Family.XX))


def check_rendering() -> None:
    rules = dict(golden_relations(Family.XV).rendered())
    assert rules["x1*xb4"] == "q^-2*xb4*x1"
    assert sphere_relation(2).as_dict() == {
        "family": "sphere",
        "rules": [{"lhs": "xb4*x4", "rhs": "1 - xb1*x1 - xb2*x2 - xb3*x3"}],
    }


def check_s7_normal_forms() -> None:
    rs = s7_system()
    assert str(rs.normalize(NCPoly.parse("x2*x1"))) == "q^-1*x1*x2"
    assert str(rs.normalize(NCPoly.parse("xb4*x4"))) == "1 - xb1*x1 - xb2*x2 - xb3*x3"
    assert rs.normalize(radius()) == ONE


def check_radius_central() -> None:
    quad = quadratic_system()
    r = radius()
    for g in quad.alphabet:
        x = NCPoly.gen(g)
        assert quad.normalize(r * x - x * r).is_zero(), g


if __name__ == "__main__":
    check_index_data()
    check_r_entries()
    check_ybe()
    check_c_matrix()
    check_derived_relations_match_table()
    check_sphere_rule_is_derived()
    check_closed_forms_agree()
    check_corrupted_table_is_caught()
    check_swapped_legs_do_not_reproduce()
    check_rendering()
    check_s7_normal_forms()
    check_radius_central()
    print("ok: hopfq.rmatrix")
