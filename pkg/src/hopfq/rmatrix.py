"""The C-series R-matrix, the C-matrix, and the quantum-sphere relations.

Relations of the odd spheres S^{4n-1}_q are derived by contracting the RTT
equations over ``build_r(n)`` and orienting the resulting identities with
``ncalg.orient_relations``. For n = 2 they are compared rule for rule with
the tabulated relations of A(S^7_q) (``golden_relations``).
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cache

from pydantic import BaseModel, ConfigDict, field_validator

from .coeffring import ONE, ZERO, LaurentPoly, qpow
from .logging import logger
from .ncalg import (
    DEFAULT_BUDGET,
    CentralRule,
    NCPoly,
    RewriteSystem,
    Word,
    orient_relations,
    render_word,
    sphere_alphabet,
)

Index4 = tuple[int, int, int, int]


class Family(StrEnum):
    XX = "xx"
    VV = "vv"
    XV = "xv"
    SPHERE = "sphere"


class LegOrder(StrEnum):
    """Which tensor leg of ``c e_a^b (x) e_c^d`` feeds which slot of R.

    STANDARD stores the term as R_{ac}^{bd}; SWAPPED as R_{bd}^{ac}.
    """

    STANDARD = "standard"
    SWAPPED = "swapped"


class SymplecticData(BaseModel):
    """Index data of the C_n series: i' = N+1-i, signs and the rho vector."""

    model_config = ConfigDict(frozen=True)

    n: int

    @field_validator("n")
    @classmethod
    def validate_n(cls, v: int) -> int:
        if v < 1:
            raise ValueError("n must be at least 1")
        return v

    @property
    def big_n(self) -> int:
        return 2 * self.n

    def prime(self, i: int) -> int:
        return self.big_n + 1 - i

    def eps(self, i: int) -> int:
        return 1 if i <= self.n else -1

    def rho(self, i: int) -> int:
        return self.n + 1 - i if i <= self.n else self.n - i

    @property
    def indices(self) -> range:
        return range(1, self.big_n + 1)


@dataclass(frozen=True)
class RMatrix:
    """Sparse R_{ij}^{kl}, stored as ``(i, j, k, l) -> LaurentPoly``."""

    data: SymplecticData
    entries: Mapping[Index4, LaurentPoly]
    leg_order: LegOrder = LegOrder.STANDARD

    @property
    def dim(self) -> int:
        return self.data.big_n

    def __getitem__(self, key: Index4) -> LaurentPoly:
        return self.entries.get(key, ZERO)

    def without(self, key: Index4) -> RMatrix:
        """Copy with one entry zeroed."""
        entries = {k: v for k, v in self.entries.items() if k != key}
        return RMatrix(self.data, entries, self.leg_order)


@dataclass(frozen=True)
class CMatrix:
    data: SymplecticData
    entries: Mapping[tuple[int, int], LaurentPoly]

    def __getitem__(self, key: tuple[int, int]) -> LaurentPoly:
        return self.entries.get(key, ZERO)

    def rows(self) -> list[list[LaurentPoly]]:
        idx = self.data.indices
        return [[self[i, j] for j in idx] for i in idx]

    def inverse(self) -> CMatrix:
        """C has exactly one unit entry per row, so its inverse is monomial too."""
        return CMatrix(self.data, {(j, i): c.inverse() for (i, j), c in self.entries.items()})

    def __matmul__(self, other: CMatrix) -> CMatrix:
        acc: dict[tuple[int, int], LaurentPoly] = defaultdict(lambda: ZERO)
        for (i, j), c in self.entries.items():
            for (j2, k), d in other.entries.items():
                if j == j2:
                    acc[i, k] = acc[i, k] + c * d
        return CMatrix(self.data, {k: v for k, v in acc.items() if v})

    def is_identity(self) -> bool:
        return self.entries == {(i, i): ONE for i in self.data.indices}


@dataclass(frozen=True)
class RelationSet:
    """Oriented rules ``lead -> replacement`` of one relation family."""

    family: Family
    rules: Mapping[Word, NCPoly]
    n: int = 2

    def rendered(self) -> list[tuple[str, str]]:
        return [(render_word(lead), str(rep)) for lead, rep in self.rules.items()]

    def as_dict(self) -> dict[str, object]:
        return {
            "family": self.family.value,
            "rules": [{"lhs": lhs, "rhs": rhs} for lhs, rhs in self.rendered()],
        }

    def relations(self) -> list[NCPoly]:
        return [NCPoly.word(lead) - rep for lead, rep in self.rules.items()]

    def diff(self, other: RelationSet) -> list[str]:
        """Human-readable differences, empty when rule sets agree."""
        out: list[str] = []
        for lead in sorted(set(self.rules) | set(other.rules)):
            a, b = self.rules.get(lead), other.rules.get(lead)
            if a != b:
                out.append(f"{render_word(lead)}: {a if a is not None else '-'} vs {b if b is not None else '-'}")
        return out


@dataclass
class YBEReport:
    holds: bool
    checked_components: int
    differences: list[str] = field(default_factory=list)


# R and C


def _place(
    entries: dict[Index4, LaurentPoly], leg_order: LegOrder, a: int, b: int, c: int, d: int, value: LaurentPoly
) -> None:
    key = (a, c, b, d) if leg_order is LegOrder.STANDARD else (b, d, a, c)
    entries[key] = entries.get(key, ZERO) + value


def build_r(n: int, leg_order: LegOrder = LegOrder.STANDARD) -> RMatrix:
    """Assemble the five sums of the C_n R-matrix."""
    sd = SymplecticData(n=n)
    q_minus = qpow(1) - qpow(-1)
    entries: dict[Index4, LaurentPoly] = {}
    for i in sd.indices:
        _place(entries, leg_order, i, i, i, i, qpow(1))
        _place(entries, leg_order, sd.prime(i), sd.prime(i), i, i, qpow(-1))
        for j in sd.indices:
            if j != i and j != sd.prime(i):
                _place(entries, leg_order, i, i, j, j, ONE)
    for i in sd.indices:
        for j in sd.indices:
            if i > j:
                _place(entries, leg_order, i, j, j, i, q_minus)
                coeff = qpow(sd.rho(i) - sd.rho(j), -sd.eps(i) * sd.eps(j)) * q_minus
                _place(entries, leg_order, i, j, sd.prime(i), sd.prime(j), coeff)
    entries = {k: v for k, v in entries.items() if v}
    return RMatrix(sd, entries, leg_order)


def expected_entry_count(n: int) -> int:
    """Nonzero entries predicted by the five sums; the two off-diagonal
    families share the n keys (i, i', i', i) with i > n."""
    big_n = 2 * n
    diagonal = big_n + big_n * (big_n - 2) + big_n
    return diagonal + big_n * (big_n - 1) - n


def build_c(n: int) -> CMatrix:
    """C_i^j = q^{rho_j} eps_i delta_{i j'}."""
    sd = SymplecticData(n=n)
    return CMatrix(sd, {(i, sd.prime(i)): qpow(sd.rho(sd.prime(i)), sd.eps(i)) for i in sd.indices})


def check_ybe(r: RMatrix) -> YBEReport:
    """Exact check of R12 R13 R23 = R23 R13 R12 on the triple tensor power."""
    rows: dict[tuple[int, int], list[tuple[tuple[int, int], LaurentPoly]]] = defaultdict(list)
    for (i, j, k, l), c in r.entries.items():
        rows[i, j].append(((k, l), c))
    idx = list(r.data.indices)
    triples = [(a, b, c) for a in idx for b in idx for c in idx]

    def leg(first: int, second: int) -> Callable[[tuple[int, int, int]], list]:
        def apply(t: tuple[int, int, int]) -> list[tuple[tuple[int, int, int], LaurentPoly]]:
            out = []
            for (k, l), c in rows.get((t[first], t[second]), ()):
                s = list(t)
                s[first], s[second] = k, l
                out.append((tuple(s), c))
            return out

        return apply

    r12, r13, r23 = leg(0, 1), leg(0, 2), leg(1, 2)

    def product(ops: list[Callable], start: tuple[int, int, int]) -> dict[tuple[int, int, int], LaurentPoly]:
        # row vector e_start times the operators, left to right
        current = {start: ONE}
        for op in ops:
            nxt: dict[tuple[int, int, int], LaurentPoly] = defaultdict(lambda: ZERO)
            for t, c in current.items():
                for s, d in op(t):
                    nxt[s] = nxt[s] + c * d
            current = {k: v for k, v in nxt.items() if v}
        return current

    differences: list[str] = []
    for t in triples:
        lhs = product([r12, r13, r23], t)
        rhs = product([r23, r13, r12], t)
        if lhs != rhs:
            for s in sorted(set(lhs) | set(rhs)):
                d = lhs.get(s, ZERO) - rhs.get(s, ZERO)
                if d:
                    differences.append(f"{t}->{s}: {d}")
    logger.debug(f"YBE over {len(triples)} rows: {len(differences)} differing components")
    return YBEReport(not differences, len(triples), differences)


# Relation derivation


def _x(i: int) -> str:
    return f"x{i}"


def _v(i: int) -> str:
    return f"xb{i}"


def _eligible(family: Family) -> Callable[[Word], bool]:
    def idx(g: str) -> int:
        return int(g.lstrip("xb"))

    def barred(g: str) -> bool:
        return g.startswith("xb")

    if family is Family.XX:
        return lambda w: not barred(w[0]) and not barred(w[1]) and idx(w[0]) > idx(w[1])
    if family is Family.VV:
        return lambda w: barred(w[0]) and barred(w[1]) and idx(w[0]) > idx(w[1])
    if family is Family.XV:
        return lambda w: not barred(w[0]) and barred(w[1])
    raise ValueError(f"family {family} has no quadratic orientation")


def contracted_identities(r: RMatrix, family: Family) -> dict[tuple[int, int], NCPoly]:
    """The contracted RTT identities, one per index pair, as ``lhs - rhs``."""
    acc: dict[tuple[int, int], NCPoly] = defaultdict(NCPoly.zero)
    q = qpow(1)
    for (i, j, k, l), c in sorted(r.entries.items()):
        if family is Family.XX:
            acc[i, j] = acc[i, j] + NCPoly.word((_x(k), _x(l)), c)
        elif family is Family.VV:
            acc[l, k] = acc[l, k] + NCPoly.word((_v(i), _v(j)), c)
        else:
            acc[i, l] = acc[i, l] + NCPoly.word((_v(j), _x(k)), c)
    for a in r.data.indices:
        for b in r.data.indices:
            if family is Family.XX:
                acc[a, b] = acc[a, b] - NCPoly.word((_x(b), _x(a)), q)
            elif family is Family.VV:
                acc[a, b] = acc[a, b] - NCPoly.word((_v(a), _v(b)), q)
            else:
                acc[a, b] = acc[a, b] - NCPoly.word((_x(a), _v(b)), q)
    return {k: v for k, v in sorted(acc.items())}


def _orient(
    n: int, family: Family, identities: Mapping[tuple[int, int], NCPoly], budget: int
) -> RelationSet:
    labels = list(identities)
    rules = orient_relations(
        [identities[k] for k in labels],
        alphabet=sphere_alphabet(n),
        eligible=_eligible(family),
        labels=labels,
        name=f"S^{4 * n - 1}_q {family.value}",
        budget=budget,
    )
    return RelationSet(family, rules, n)


def derive_relations(
    n: int,
    family: Family | str,
    leg_order: LegOrder | str = LegOrder.STANDARD,
    *,
    budget: int = DEFAULT_BUDGET,
) -> RelationSet:
    """Expand a contracted RTT identity over ``build_r(n)`` into rewrite rules.

    The sphere rule is r - 1 reduced in the quadratic algebra and oriented on
    its leading word.
    """
    family, leg_order = Family(family), LegOrder(leg_order)
    if family is Family.SPHERE:
        return _derive_sphere(n, budget)
    r = build_r(n, leg_order)
    return _orient(n, family, contracted_identities(r, family), budget)


def _derive_sphere(n: int, budget: int) -> RelationSet:
    rs = quadratic_system(n, budget=budget)
    rel = rs.normalize(radius(n) - NCPoly.one(), use_central=False)
    lead = rs.leading_word(rel)
    c = rel.terms[lead]
    rep = (NCPoly.word(lead, c) - rel).scale(c.inverse())
    return RelationSet(Family.SPHERE, {lead: rep}, n)


def sphere_relation(n: int) -> RelationSet:
    """xb_N x_N -> 1 - sum_{i<N} xb_i x_i."""
    big_n = 2 * n
    rep = NCPoly.one() - sum(
        (NCPoly.word((_v(i), _x(i))) for i in range(1, big_n)), NCPoly.zero()
    )
    return RelationSet(Family.SPHERE, {(_v(big_n), _x(big_n)): rep}, n)


def closed_form_relations(n: int, family: Family | str, *, budget: int = DEFAULT_BUDGET) -> RelationSet:
    """The same families built from the explicit index formulas."""
    family = Family(family)
    sd = SymplecticData(n=n)
    q = qpow(1)
    rels: dict[tuple[int, int], NCPoly] = {}

    def w(a: str, b: str, c: LaurentPoly = ONE) -> NCPoly:
        return NCPoly.word((a, b), c)

    for i in sd.indices:
        ip = sd.prime(i)
        for j in sd.indices:
            if family is Family.XX and i < j:
                if j != ip:
                    rels[i, j] = w(_x(i), _x(j)) - w(_x(j), _x(i), q)
                else:
                    rhs = w(_x(i), _x(ip), qpow(-2))
                    for k in range(1, i):
                        c = (qpow(-2) - ONE) * qpow(sd.rho(i) - sd.rho(k), sd.eps(i) * sd.eps(k))
                        rhs = rhs + w(_x(k), _x(sd.prime(k)), c)
                    rels[i, j] = w(_x(ip), _x(i)) - rhs
            elif family is Family.VV and i < j:
                if j != ip:
                    rels[i, j] = w(_v(i), _v(j)) - w(_v(j), _v(i), qpow(-1))
                else:
                    rhs = w(_v(i), _v(ip), qpow(2))
                    for k in range(ip + 1, sd.big_n + 1):
                        c = (qpow(2) - ONE) * qpow(sd.rho(k) - sd.rho(ip), sd.eps(k) * sd.eps(ip))
                        rhs = rhs + w(_v(k), _v(sd.prime(k)), c)
                    rels[i, j] = w(_v(ip), _v(i)) - rhs
            elif family is Family.XV:
                rels[i, j] = w(_x(i), _v(j)) - _xv_rhs(sd, i, j)
    if family is Family.SPHERE:
        return sphere_relation(n)
    return _orient(n, family, rels, budget)


def _xv_rhs(sd: SymplecticData, i: int, j: int) -> NCPoly:
    one_minus = ONE - qpow(-2)
    ip, jp = sd.prime(i), sd.prime(j)
    if i == j:
        rhs = NCPoly.word((_v(i), _x(i)))
        for k in range(1, i):
            rhs = rhs + NCPoly.word((_v(k), _x(k)), one_minus)
        if i > ip:
            rhs = rhs + NCPoly.word((_v(ip), _x(ip)), one_minus * qpow(sd.rho(i) - sd.rho(ip)))
        return rhs
    if j == ip:
        return NCPoly.word((_v(j), _x(i)), qpow(-2))
    rhs = NCPoly.word((_v(j), _x(i)), qpow(-1))
    if i > jp:
        c = (qpow(-2) - ONE) * qpow(sd.rho(i) - sd.rho(jp), sd.eps(i) * sd.eps(jp))
        rhs = rhs + NCPoly.word((_v(ip), _x(jp)), c)
    return rhs


# The tabulated relations of A(S^7_q), written as rules lead -> replacement.

_GOLDEN: dict[Family, list[tuple[str, str]]] = {
    Family.XX: [
        ("x2*x1", "q^-1*x1*x2"),
        ("x3*x1", "q^-1*x1*x3"),
        ("x4*x2", "q^-1*x2*x4"),
        ("x4*x3", "q^-1*x3*x4"),
        ("x4*x1", "q^-2*x1*x4"),
        ("x3*x2", "q^-2*x2*x3 + q^-2*(q^-1 - q)*x1*x4"),
    ],
    Family.VV: [
        ("xb2*xb1", "q*xb1*xb2"),
        ("xb3*xb1", "q*xb1*xb3"),
        ("xb4*xb2", "q*xb2*xb4"),
        ("xb4*xb3", "q*xb3*xb4"),
        ("xb4*xb1", "q^2*xb1*xb4"),
        ("xb3*xb2", "q^2*xb2*xb3 + (q^3 - q)*xb1*xb4"),
    ],
    Family.XV: [
        ("x1*xb1", "xb1*x1"),
        ("x1*xb2", "q^-1*xb2*x1"),
        ("x1*xb3", "q^-1*xb3*x1"),
        ("x1*xb4", "q^-2*xb4*x1"),
        ("x2*xb2", "xb2*x2 + (1 - q^-2)*xb1*x1"),
        ("x2*xb3", "q^-2*xb3*x2"),
        ("x2*xb4", "q^-1*xb4*x2 + q^-1*(q^-2 - 1)*xb3*x1"),
        ("x3*xb3", "xb3*x3 + (1 - q^-2)*(xb1*x1 + (1 + q^-2)*xb2*x2)"),
        ("x3*xb4", "q^-1*xb4*x3 + (1 - q^-2)*q^-3*xb2*x1"),
        ("x4*xb4", "xb4*x4 + (1 - q^-2)*((1 + q^-4)*xb1*x1 + xb2*x2 + xb3*x3)"),
        ("x2*xb1", "q^-1*xb1*x2"),
        ("x3*xb1", "q^-1*xb1*x3"),
        ("x3*xb2", "q^-2*xb2*x3"),
        ("x4*xb1", "q^-2*xb1*x4"),
        ("x4*xb2", "q^-1*xb2*x4 + (q^-3 - q^-1)*xb1*x3"),
        ("x4*xb3", "q^-1*xb3*x4 + (q^-3 - q^-5)*xb1*x2"),
    ],
    Family.SPHERE: [("xb4*x4", "1 - xb1*x1 - xb2*x2 - xb3*x3")],
}


def golden_relations(family: Family | str, *, corrupted: bool = False) -> RelationSet:
    """Tabulated n = 2 rules; ``corrupted`` flips one XX coefficient (negative control)."""
    family = Family(family)
    alphabet = sphere_alphabet(2)
    rules: dict[Word, NCPoly] = {}
    for lhs, rhs in _GOLDEN[family]:
        lead = tuple(NCPoly.parse(lhs, alphabet).words()[0])
        rules[lead] = NCPoly.parse(rhs, alphabet)
    if corrupted and family is Family.XX:
        rules[("x2", "x1")] = NCPoly.word(("x1", "x2"), qpow(1))
    return RelationSet(family, rules, 2)


@cache
def s7_system(
    n: int = 2, leg_order: LegOrder = LegOrder.STANDARD, budget: int = DEFAULT_BUDGET
) -> RewriteSystem:
    """A(S^{4n-1}_q): the three quadratic families plus the central sphere rule."""
    rules: dict[Word, NCPoly] = {}
    for family in (Family.XX, Family.VV, Family.XV):
        rules.update(derive_relations(n, family, leg_order, budget=budget).rules)
    ((lead, rep),) = sphere_relation(n).rules.items()
    return RewriteSystem(
        f"S^{4 * n - 1}_q",
        sphere_alphabet(n),
        rules,
        central=CentralRule(lead, rep),
        budget=budget,
    )


def quadratic_system(n: int = 2, budget: int = DEFAULT_BUDGET) -> RewriteSystem:
    """The same rules without the sphere relation (the algebra before r = 1)."""
    full = s7_system(n, budget=budget)
    return RewriteSystem(f"{full.name} (quadratic)", full.alphabet, full.rules, budget=budget)


def radius(n: int = 2) -> NCPoly:
    """r = sum_i xb_i x_i."""
    return sum((NCPoly.word((_v(i), _x(i))) for i in range(1, 2 * n + 1)), NCPoly.zero())

