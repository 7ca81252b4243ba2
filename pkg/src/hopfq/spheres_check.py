"""Boundary checks for hopfq.spheres. Run: uv run python -m hopfq.spheres_check"""

from functools import cache

from hopfq.coeffring import lp_eval, qpow
from hopfq.ncalg import S4_ALPHABET, Identity, NCMatrix, NCPoly, RewriteSystem
from hopfq.rmatrix import s7_system
from hopfq.spheres import (
    S4Generators,
    abstract_consistency,
    build_projection,
    build_v,
    ch0_coefficient,
    inner_products,
    naive_projection,
    p_entry_relations,
    plucker_check,
    projection_identities,
    q_inverse_iso_check,
    s4_system,
    span_check,
    verify_s4_relations,
)


@cache
def frame() -> tuple[RewriteSystem, NCMatrix, NCMatrix]:
    rs = s7_system()
    v = build_v(rs)
    return rs, v, build_projection(v, rs)


def failing(identities: list[Identity]) -> list[str]:
    return [f"{i.name}: {i.residual}" for i in identities if not i.holds]


def check_frame_orthonormal() -> None:
    rs, v, _ = frame()
    assert v.shape == (4, 2)
    products = inner_products(v, rs)
    assert products[1, 1] == 1
    assert products[2, 2] == 1
    assert products[1, 2].is_zero()


def check_projection() -> None:
    rs, _, p = frame()
    identities = projection_identities(p, rs)
    assert len(identities) == 16 + 16 + 3
    assert failing(identities) == []
    assert failing(p_entry_relations(p, rs)) == []
    assert failing(span_check(p, rs)) == []


def check_trace_coefficient() -> None:
    c = ch0_coefficient()
    assert c == -(qpow(-4) - qpow(-2) - 1 + qpow(2))
    assert lp_eval(c, 1) == 0


def check_s4_relations_on_images() -> None:
    rs, v, p = frame()
    g = S4Generators.from_projection(p)
    assert failing(verify_s4_relations(g, rs)) == []
    assert failing(abstract_consistency(g, rs)) == []
    assert failing(plucker_check(v, g, rs)) == []


def check_standalone_s4() -> None:
    s4 = s4_system()
    rel = NCPoly.parse("t*a - q^-2*a*t", S4_ALPHABET)
    assert s4.normalize(rel).is_zero()
    ab = NCPoly.parse("a*b", S4_ALPHABET)
    assert s4.normalize(ab) == s4.normalize(NCPoly.parse("q^4*b*a", S4_ALPHABET))


def check_q_inverse_isomorphism() -> None:
    assert failing(q_inverse_iso_check()) == []
    # without inverting q the same substitution is not an algebra map
    assert failing(q_inverse_iso_check(invert=False))


def check_naive_frame() -> None:
    rs = frame()[0]
    naive = naive_projection(rs)
    assert failing(naive.identities) == []
    # a projection, but p14 carries x1 xb4, which is not in A(S^4_q)
    assert not rs.normalize(naive.p.entry(1, 4)).is_zero()
    assert naive.p.entry(1, 4) != frame()[2].entry(1, 4)


if __name__ == "__main__":
    check_frame_orthonormal()
    check_projection()
    check_trace_coefficient()
    check_s4_relations_on_images()
    check_standalone_s4()
    check_q_inverse_isomorphism()
    check_naive_frame()
    print("ok: hopfq.spheres")
