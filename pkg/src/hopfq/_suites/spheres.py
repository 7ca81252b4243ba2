"""The projection p on S^7_q and the algebra A(S^4_q)."""

from __future__ import annotations

from functools import cached_property

from hopfq.coeffring import ONE, qpow
from hopfq.models import CheckResult, Report
from hopfq.ncalg import NCMatrix, NCPoly, RewriteSystem
from hopfq.rmatrix import s7_system
from hopfq.spheres import (
    S4Generators,
    abstract_consistency,
    build_projection,
    build_v,
    inner_products,
    naive_projection,
    p_entry_relations,
    plucker_check,
    projection_identities,
    q_inverse_iso_check,
    span_check,
    verify_s4_relations,
)

from .base import BaseSuite, Outcome

# <phi_1|phi_1> and <phi_2|phi_2> written out before normalization
_NORM_SUMS = {
    1: "q^-6*xb1*x1 + q^-2*x2*xb2 + q^-2*xb3*x3 + x4*xb4",
    2: "q^-2*x1*xb1 + q^-4*xb2*x2 + x3*xb3 + xb4*x4",
}


class SpheresSuite(BaseSuite):
    """Certificates for v, p = v v* and the generators t, a, b."""

    name = "spheres"

    @cached_property
    def system(self) -> RewriteSystem:
        return s7_system(budget=self.config.rewrite_budget)

    @cached_property
    def v(self) -> NCMatrix:
        return build_v(self.system)

    @cached_property
    def p(self) -> NCMatrix:
        return build_projection(self.v, self.system)

    @cached_property
    def generators(self) -> S4Generators:
        return S4Generators.from_projection(self.p)

    def frame(self) -> Outcome:
        products = inner_products(self.v, self.system)
        bad = [f"<phi_{i}|phi_{j}> = {e}" for (i, j), e in products.items() if e != (NCPoly.one() if i == j else NCPoly.zero())]
        return not bad, "; ".join(bad)

    def norm_sum(self, i: int) -> Outcome:
        rs = self.system
        residual = rs.normalize(NCPoly.parse(_NORM_SUMS[i]) - 1)
        return residual.is_zero(), str(residual)

    def naive_vanishes_at_q1(self) -> Outcome:
        extra = ONE - qpow(-2)
        value = extra.evaluate(1)
        return value == 0 and extra.evaluate(2) != 0, f"1 - q^-2 at q = 1 is {value}"

    def run(self) -> Report:
        checks: list[CheckResult] = [
            self._check("frame", "v* v = 1 (2x2)", self.frame),
            *(self._check(f"norm.phi{i}", f"{_NORM_SUMS[i]} = 1", lambda i=i: self.norm_sum(i)) for i in (1, 2)),
        ]
        checks += self._identities("projection", "p^2 = p, p* = p and the trace identities", lambda: projection_identities(self.p, self.system))
        checks += self._identities("entries", "relations among the entries of p", lambda: p_entry_relations(self.p, self.system))
        checks += self._identities("span", "entries of p lie in the span of 1, t, a, b", lambda: span_check(self.p, self.system))
        checks += self._identities("s4", "A(S^4_q) relations hold on the S^7_q images", lambda: verify_s4_relations(self.generators, self.system))
        checks += self._identities("abstract", "standalone A(S^4_q) rules vanish on the images", lambda: abstract_consistency(self.generators, self.system))
        checks += self._identities("plucker", "quantum minors of v in terms of t, a, b", lambda: plucker_check(self.v, self.generators, self.system))
        checks += self._identities("naive", "the naive frame needs extra generators", lambda: naive_projection(self.system).identities)
        checks.append(self._check("naive.q1", "the naive defects vanish at q = 1", self.naive_vanishes_at_q1))
        checks += self._identities("q_inverse", "q -> q^-1 with a -> q^2 abar, b -> q^-2 bbar, t -> q^-2 t is an isomorphism", q_inverse_iso_check)
        return Report(checks=checks)
