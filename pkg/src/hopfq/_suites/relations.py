"""R-matrix, C-matrix and the relations of the odd quantum spheres."""

from __future__ import annotations

from hopfq.errors import InconsistentRelationsError
from hopfq.models import Report
from hopfq.ncalg import NCPoly
from hopfq.rmatrix import (
    Family,
    LegOrder,
    build_c,
    build_r,
    check_ybe,
    closed_form_relations,
    derive_relations,
    expected_entry_count,
    golden_relations,
    quadratic_system,
    radius,
)

from .base import BaseSuite, Outcome

QUADRATIC = (Family.XX, Family.VV, Family.XV)
YBE_TRAP_ENTRY = (4, 4, 4, 4)


class RelationsSuite(BaseSuite):
    """Derived relations against the tabulated ones and the closed formulas."""

    name = "relations"

    def golden(self, family: Family) -> Outcome:
        budget = self.config.rewrite_budget
        derived = derive_relations(2, family, budget=budget)
        corrupted = self.config.inject_fault and family is Family.XX
        diff = derived.diff(golden_relations(family, corrupted=corrupted))
        return not diff, "; ".join(diff), {"rules": len(derived.rules)}

    def closed_form(self, n: int, family: Family) -> Outcome:
        budget = self.config.rewrite_budget
        diff = derive_relations(n, family, budget=budget).diff(closed_form_relations(n, family, budget=budget))
        return not diff, "; ".join(diff)

    def ybe(self, n: int) -> Outcome:
        report = check_ybe(build_r(n))
        return report.holds, "; ".join(report.differences[:5]), {"components": report.checked_components}

    def ybe_trap(self) -> Outcome:
        """Zeroing the diagonal entry R_44^44 must break Yang-Baxter."""
        r = build_r(2)
        key = YBE_TRAP_ENTRY
        broken = check_ybe(r.without(key))
        return not broken.holds, "" if not broken.holds else f"YBE still holds without R{key}"

    def leg_order_trap(self) -> Outcome:
        """The swapped leg order must not reproduce the tabulated XX rules."""
        try:
            swapped = derive_relations(2, Family.XX, LegOrder.SWAPPED, budget=self.config.rewrite_budget)
        except InconsistentRelationsError as e:
            return True, "", {"rejected": e.message}
        same = not swapped.diff(golden_relations(Family.XX))
        return not same, "swapped leg order reproduced the tabulated rules" if same else ""

    def entry_count(self, n: int) -> Outcome:
        count = len(build_r(n).entries)
        expected = expected_entry_count(n)
        return count == expected, f"{count} entries, expected {expected}"

    def c_inverse(self, n: int) -> Outcome:
        c = build_c(n)
        return (c @ c.inverse()).is_identity() and (c.inverse() @ c).is_identity()

    def radius_central(self, g: str) -> Outcome:
        rs = quadratic_system(budget=self.config.rewrite_budget)
        r = radius()
        x = NCPoly.gen(g)
        comm = rs.normalize(r * x - x * r, use_central=False)
        return comm.is_zero(), str(comm)

    def run(self) -> Report:
        checks = [self._check(f"golden.{f.value}", f"derive_relations(2, {f.value}) equals the tabulated rules", lambda f=f: self.golden(f)) for f in (*QUADRATIC, Family.SPHERE)]
        for n in (1, 2, 3):
            checks += [
                self._check(
                    f"closed_form.n{n}.{f.value}",
                    f"derived {f.value} rules for n = {n} equal the closed index formulas",
                    lambda n=n, f=f: self.closed_form(n, f),
                )
                for f in QUADRATIC
            ]
        for n in (1, 2):
            checks.append(self._check(f"ybe.n{n}", f"R12 R13 R23 = R23 R13 R12 for n = {n}", lambda n=n: self.ybe(n)))
            checks.append(self._check(f"r_entries.n{n}", f"R has the expected number of nonzero entries for n = {n}", lambda n=n: self.entry_count(n)))
        checks.append(self._check("ybe.trap", "R with one entry removed violates Yang-Baxter", self.ybe_trap))
        checks.append(self._check("leg_order.trap", "the swapped leg order is rejected", self.leg_order_trap))
        checks += [self._check(f"c_inverse.n{n}", f"C C^-1 = C^-1 C = 1 for n = {n}", lambda n=n: self.c_inverse(n)) for n in (1, 2, 3)]
        checks += [
            self._check(f"radius_central.{g}", f"r {g} = {g} r before imposing r = 1", lambda g=g: self.radius_central(g))
            for g in quadratic_system().alphabet
        ]
        return Report(checks=checks)
