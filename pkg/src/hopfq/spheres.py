"""The instanton projection p = v v* on S^7_q and the algebra A(S^4_q).

Every identity here is certified as ``normalize(lhs - rhs) == 0`` in a
rewrite system; an ``Identity`` carries the normalized residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from typing import TYPE_CHECKING

from .coeffring import ONE, LaurentPoly, qpow
from .errors import VerificationError
from .logging import logger
from .ncalg import (
    DEFAULT_BUDGET,
    S4_ALPHABET,
    Identity,
    NCMatrix,
    NCPoly,
    RewriteSystem,
    nc_substitute,
    orient_relations,
    sphere_alphabet,
)
from .rmatrix import s7_system

if TYPE_CHECKING:
    from collections.abc import Mapping

VMatrix = NCMatrix
Projection = NCMatrix

S7 = sphere_alphabet(2)

_V_ENTRIES = [
    ["q^-3*x1", "q^-2*x2"],
    ["-q^-1*xb2", "q^-1*xb1"],
    ["q^-1*x3", "-x4"],
    ["-xb4", "-xb3"],
]

_NAIVE_V_ENTRIES = [
    ["xb4", "x1"],
    ["q^-1*xb3", "x2"],
    ["-q^-3*xb2", "x3"],
    ["-q^-4*xb1", "x4"],
]

# p in terms of t, a, b and their conjugates
_P_CLOSED_FORM = [
    ["q^-2*t", "0", "a", "b"],
    ["0", "t", "q^-2*bb", "-q^2*ab"],
    ["ab", "q^-2*b", "1 - q^-4*t", "0"],
    ["bb", "-q^2*a", "0", "1 - q^2*t"],
]

# (name, statement, lhs - rhs) in the abstract generators
S4_RELATIONS: list[tuple[str, str, str]] = [
    ("ab", "a b = q^4 b a", "a*b - q^4*b*a"),
    ("abar_b", "abar b = b abar", "ab*b - b*ab"),
    ("ta", "t a = q^-2 a t", "t*a - q^-2*a*t"),
    ("tb", "t b = q^4 b t", "t*b - q^4*b*t"),
    ("sphere_1", "a abar + b bbar = q^-2 t (1 - q^-2 t)", "a*ab + b*bb - q^-2*t + q^-4*t*t"),
    ("sphere_2", "q^4 abar a + q^-4 bbar b = t (1 - t)", "q^4*ab*a + q^-4*bb*b - t + t*t"),
    ("sphere_3", "b bbar - q^-4 bbar b = (1 - q^-4) t^2", "b*bb - q^-4*bb*b - (1 - q^-4)*t*t"),
]

_PLUCKER = {
    (1, 2): "t",
    (1, 3): "b",
    (1, 4): "-q*a",
    (2, 3): "-q^2*ab",
    (2, 4): "-q^-1*bb",
    (3, 4): "q^-3*t - q",
}


@dataclass(frozen=True)
class S4Generators:
    """t = p22, a = p13, b = p14 and the conjugates p31, p41, as S^7_q polynomials."""

    t: NCPoly
    a: NCPoly
    ab: NCPoly
    b: NCPoly
    bb: NCPoly

    @classmethod
    def from_projection(cls, p: Projection) -> S4Generators:
        return cls(
            t=p.entry(2, 2), a=p.entry(1, 3), ab=p.entry(3, 1), b=p.entry(1, 4), bb=p.entry(4, 1)
        )

    def images(self) -> dict[str, NCPoly]:
        return {"t": self.t, "a": self.a, "ab": self.ab, "b": self.b, "bb": self.bb}


def s4_relations() -> list[tuple[str, str, NCPoly]]:
    """The defining relations of A(S^4_q) followed by their conjugates."""
    base = [(name, stmt, NCPoly.parse(text, S4_ALPHABET)) for name, stmt, text in S4_RELATIONS]
    conj = [(f"{name}.conj", f"conj({stmt})", rel.star()) for name, stmt, rel in base]
    return base + conj


@cache
def s4_system(budget: int = DEFAULT_BUDGET) -> RewriteSystem:
    """Standalone A(S^4_q) on t < abar < a < bbar < b, a and abar weighted by 1."""
    weights = {"a": 1, "ab": 1}
    rels = s4_relations()
    rules = orient_relations(
        [rel for _, _, rel in rels],
        alphabet=S4_ALPHABET,
        eligible=lambda w: True,
        weights=weights,
        labels=[name for name, _, _ in rels],
        name="S^4_q",
        budget=budget,
    )
    return RewriteSystem("S^4_q", S4_ALPHABET, rules, weights=weights, budget=budget)


def _check(name: str, statement: str, residual: NCPoly) -> Identity:
    identity = Identity(name, statement, residual)
    if not identity.holds:
        logger.debug(f"{name}: residual {residual}")
    return identity


def inner_products(v: VMatrix, rs: RewriteSystem) -> dict[tuple[int, int], NCPoly]:
    """<phi_i|phi_j> = sum_k conj(v_ki) v_kj, normalized."""
    return {(i + 1, j + 1): e for i, row in enumerate(v.star().matmul(v, rs).rows) for j, e in enumerate(row)}


def build_v(rs: RewriteSystem | None = None) -> VMatrix:
    """The 4x2 matrix with orthonormal columns phi_1, phi_2."""
    rs = rs or s7_system()
    v = NCMatrix.parse(_V_ENTRIES, S7)
    for (i, j), e in inner_products(v, rs).items():
        expected = NCPoly.one() if i == j else NCPoly.zero()
        if e != expected:
            raise VerificationError(
                f"<phi_{i}|phi_{j}> does not normalize to {expected}",
                residual=str(e - expected),
                details={"pair": (i, j)},
            )
    return v


def build_projection(v: VMatrix, rs: RewriteSystem | None = None) -> Projection:
    """p = v v*, checked entrywise against its form in t, a, b."""
    rs = rs or s7_system()
    p = v.matmul(v.star(), rs)
    closed = closed_form_projection(S4Generators.from_projection(p), rs)
    for i, j, e in (p - closed).nonzero_entries():
        raise VerificationError(
            f"p_{i}{j} differs from its closed form", residual=str(e), details={"entry": (i, j)}
        )
    return p


def closed_form_projection(g: S4Generators, rs: RewriteSystem) -> Projection:
    abstract = NCMatrix.parse(_P_CLOSED_FORM, S4_ALPHABET)
    images = g.images()
    return abstract.map(lambda e: rs.normalize(nc_substitute(e, images, rs)))


def projection_identities(p: Projection, rs: RewriteSystem) -> list[Identity]:
    """p^2 = p, p = p*, the trace relation, the quadratic sphere identity and ch_0."""
    out: list[Identity] = []
    square = p.matmul(p, rs)
    adjoint = p.star().normalize(rs)
    for i in range(1, 5):
        for j in range(1, 5):
            out.append(
                _check(f"idempotent.{i}{j}", f"(p^2)_{i}{j} = p_{i}{j}", rs.normalize(square.entry(i, j) - p.entry(i, j)))
            )
    for i in range(1, 5):
        for j in range(1, 5):
            out.append(
                _check(f"selfadjoint.{i}{j}", f"(p*)_{i}{j} = p_{i}{j}", rs.normalize(adjoint.entry(i, j) - p.entry(i, j)))
            )

    e = p.entry
    trace_rel = e(1, 1).scale(qpow(-2)) + e(2, 2).scale(qpow(2)) + e(3, 3) + e(4, 4) - 2
    out.append(_check("trace", "q^-2 p11 + q^2 p22 + p33 + p44 = 2", rs.normalize(trace_rel)))

    quad = (
        (e(1, 1) * e(1, 1)).scale(qpow(6) - qpow(8))
        + e(2, 2) * e(2, 2)
        + e(4, 4) * e(4, 4)
        + (e(1, 3) * e(3, 1) + e(1, 4) * e(4, 1)).scale(qpow(4))
        + (e(2, 4) * e(4, 2) + e(2, 3) * e(3, 2)).scale(qpow(2))
        - 1
    )
    out.append(_check("quadratic_sphere", "(q^6 - q^8) p11^2 + p22^2 + p44^2 + ... = 1", rs.normalize(quad)))

    g = S4Generators.from_projection(p)
    ch0 = rs.normalize(p.trace() - chern_character_0(g.t))
    out.append(_check("ch0", "tr p = 2 - q^-4 (1 - q^2)(1 - q^4) t", ch0))
    return out


def ch0_coefficient() -> LaurentPoly:
    """The coefficient -q^-4 (1 - q^2)(1 - q^4) of t in tr p."""
    return -(qpow(-4) * (ONE - qpow(2)) * (ONE - qpow(4)))


def chern_character_0(t: NCPoly) -> NCPoly:
    return NCPoly.scalar(2) + t.scale(ch0_coefficient())


def p_entry_relations(p: Projection, rs: RewriteSystem) -> list[Identity]:
    """p12 = p34 = 0, p23 = q^-2 conj(p14), p24 = -q^2 conj(p13)."""
    e = p.entry
    return [
        _check("p12", "p12 = 0", rs.normalize(e(1, 2))),
        _check("p34", "p34 = 0", rs.normalize(e(3, 4))),
        _check("p23", "p23 = q^-2 conj(p14)", rs.normalize(e(2, 3) - e(1, 4).star().scale(qpow(-2)))),
        _check("p24", "p24 = -q^2 conj(p13)", rs.normalize(e(2, 4) + e(1, 3).star().scale(qpow(2)))),
    ]


def verify_s4_relations(g: S4Generators, rs: RewriteSystem | None = None) -> list[Identity]:
    """Every relation of A(S^4_q) and its conjugate, evaluated on the S^7_q images."""
    rs = rs or s7_system()
    images = g.images()
    return [
        _check(name, stmt, rs.normalize(nc_substitute(rel, images, rs)))
        for name, stmt, rel in s4_relations()
    ]


def abstract_consistency(g: S4Generators, rs: RewriteSystem | None = None) -> list[Identity]:
    """Every rule of the standalone A(S^4_q) system vanishes on the S^7_q images."""
    rs = rs or s7_system()
    images = g.images()
    out = []
    for lead, rep in s4_system().relations():
        rel = NCPoly.word(lead) - rep
        out.append(_check(f"rule.{'_'.join(lead)}", f"{'*'.join(lead)} -> {rep}", rs.normalize(nc_substitute(rel, images, rs))))
    return out


@dataclass(frozen=True)
class NaiveProjection:
    v: VMatrix
    p: Projection
    identities: list[Identity]


def naive_projection(rs: RewriteSystem | None = None) -> NaiveProjection:
    """The first-guess frame whose projection needs two extra generators."""
    rs = rs or s7_system()
    v = NCMatrix.parse(_NAIVE_V_ENTRIES, S7)
    p = v.matmul(v.star(), rs)
    checks: list[Identity] = []
    for (i, j), e in inner_products(v, rs).items():
        expected = NCPoly.one() if i == j else NCPoly.zero()
        checks.append(_check(f"frame.{i}{j}", f"(v* v)_{i}{j} = {expected}", e - expected))
    defects = (p.matmul(p, rs) - p).nonzero_entries()
    checks.append(_check("idempotent", "p^2 = p", defects[0][2] if defects else NCPoly.zero()))
    extra = ONE - qpow(-2)
    checks.append(_check("p14", "p14 = (1 - q^-2) x1 xb4", rs.normalize(p.entry(1, 4) - NCPoly.word(("x1", "xb4"), extra))))
    checks.append(_check("p23", "p23 = (1 - q^-2) x2 xb3", rs.normalize(p.entry(2, 3) - NCPoly.word(("x2", "xb3"), extra))))
    return NaiveProjection(v, p, checks)


def q_minor(v: VMatrix, i: int, j: int) -> NCPoly:
    """a11 a22 - q a12 a21 on rows i, j of v."""
    a11, a12 = v.entry(i, 1), v.entry(i, 2)
    a21, a22 = v.entry(j, 1), v.entry(j, 2)
    return a11 * a22 - (a12 * a21).scale(qpow(1))


def plucker_check(v: VMatrix, g: S4Generators, rs: RewriteSystem | None = None) -> list[Identity]:
    """The six quantum 2x2 minors of v against their values in t, a, b."""
    rs = rs or s7_system()
    images = g.images()
    out = []
    for (i, j), text in _PLUCKER.items():
        target = nc_substitute(NCPoly.parse(text, S4_ALPHABET), images, rs)
        out.append(_check(f"m{i}{j}", f"m{i}{j} = {text}", rs.normalize(q_minor(v, i, j) - target)))
    return out


Q_INVERSE_IMAGES = {"a": "q^2*ab", "ab": "q^2*a", "b": "q^-2*bb", "bb": "q^-2*b", "t": "q^-2*t"}


def q_inverse_iso_check(
    system: RewriteSystem | None = None, images: Mapping[str, str] | None = None, *, invert: bool = True
) -> list[Identity]:
    """Apply q -> q^-1 with the generator substitution to each defining relation."""
    system = system or s4_system()
    mapping = {g: NCPoly.parse(text, S4_ALPHABET) for g, text in (images or Q_INVERSE_IMAGES).items()}
    out = []
    for name, stmt, rel in s4_relations():
        source = rel.invert_q() if invert else rel
        out.append(_check(name, stmt, system.normalize(nc_substitute(source, mapping, system))))
    return out


def span_check(p: Projection, rs: RewriteSystem) -> list[Identity]:
    """Every entry of p is a Laurent combination of 1, t, a, abar, b, bbar."""
    g = S4Generators.from_projection(p)
    closed = closed_form_projection(g, rs)
    return [
        _check(f"span.{i}{j}", f"p_{i}{j} in span(1, t, a, abar, b, bbar)", rs.normalize(p.entry(i, j) - closed.entry(i, j)))
        for i in range(1, 5)
        for j in range(1, 5)
    ]
