"""The representations sigma and beta, traces, and the index pairing."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from hopfq.models import PairingReport, Report, TraceReport
from hopfq.representation import (
    OperatorSet,
    adjointness_residual,
    build_beta,
    build_sigma,
    exact_q,
    exact_relation_residuals,
    index_pairing,
    recursion_residual,
    trace_report,
    verify_relations_numeric,
)

from .base import BaseSuite, Outcome

# exact cross-checks run on a small window; the relations are local in (m, n)
EXACT_WINDOW = 8


class PairingSuite(BaseSuite):
    """Operator relations at q0, traces, and <[mu], [p]> = -1."""

    name = "pairing"

    @cached_property
    def sigma(self) -> OperatorSet:
        return build_sigma(self.config.q0, self.config.m_cutoff, self.config.n_cutoff)

    @cached_property
    def traces(self) -> TraceReport:
        return trace_report(self.sigma)

    @cached_property
    def pairing(self) -> PairingReport:
        c = self.config
        return index_pairing(c.q0, c.m_cutoff, c.n_cutoff)

    def numeric_relations(self, ops: OperatorSet) -> list[tuple[bool, str, dict[str, str]]]:
        return [
            (r.holds(self.config.relation_tol), f"{r.residual:.3e} at {r.worst_state}", {"relation": r.name})
            for r in verify_relations_numeric(ops, self.config.relation_tol)
        ]

    def sigma_relations(self) -> Outcome:
        results = self.numeric_relations(self.sigma)
        bad = [f"{d['relation']}: {res}" for ok, res, d in results if not ok]
        return not bad, "; ".join(bad), {"relations": len(results)}

    def beta_relations(self) -> Outcome:
        results = self.numeric_relations(build_beta(self.config.q0))
        bad = [f"{d['relation']}: {res}" for ok, res, d in results if not ok]
        return not bad, "; ".join(bad)

    def exact_relations(self) -> Outcome:
        q0 = exact_q(self.config.q0)
        bad = [
            f"{r.name}: {len(r.nonzero)} nonzero, first {r.nonzero[0]}"
            for r in exact_relation_residuals(q0, EXACT_WINDOW, EXACT_WINDOW)
            if not r.holds
        ]
        return not bad, "; ".join(bad), {"q0": str(q0), "window": EXACT_WINDOW}

    def adjoint(self) -> Outcome:
        res = adjointness_residual(self.sigma)
        return res < self.config.relation_tol, f"{res:.3e}"

    def recursion(self) -> Outcome:
        c = self.config
        res = recursion_residual(c.q0, c.m_cutoff, c.n_cutoff)
        return res < c.relation_tol, f"{res:.3e}"

    def trace_t(self) -> Outcome:
        r = self.traces
        c = self.config
        # omitted geometric tail plus float summation slack
        bound = r.closed_form * (c.q0 ** (2 * c.m_cutoff) + c.q0 ** (4 * c.n_cutoff)) + c.relation_tol
        return r.tail < bound, f"|Tr t - closed form| = {r.tail:.3e}, bound {bound:.3e}", {"trace": r.trace_t}

    def trace_abs(self) -> Outcome:
        r = self.traces
        ok = r.trace_abs_a < r.bound_abs_a and r.trace_abs_b < r.bound_abs_b
        return ok, f"Tr|a| = {r.trace_abs_a:.6f} (< {r.bound_abs_a:.6f}), Tr|b| = {r.trace_abs_b:.6f} (< {r.bound_abs_b:.6f})"

    def pairing_value(self) -> Outcome:
        r = self.pairing
        dev = abs(r.pairing_value + 1)
        return dev <= self.config.pairing_tol, f"tau^1(ch_0 p) = {r.pairing_value!r}", {"bound": r.truncation_error_bound}

    def pairing_bound(self) -> Outcome:
        r = self.pairing
        dev = abs(r.pairing_value + 1)
        bound = r.truncation_error_bound + self.config.pairing_tol
        return dev <= bound, f"|tau^1 + 1| = {dev:.3e}, tail bound {bound:.3e}"

    def pairing_tau0(self) -> Outcome:
        r = self.pairing
        return r.tau0_value == 2, f"tau^0(ch_0 p) = {r.tau0_value!r}"

    def pairing_trivial(self) -> Outcome:
        r = self.pairing
        return r.trivial_pairing == 0, f"tau^1(1) = {r.trivial_pairing!r}"

    def pairing_exact(self) -> Outcome:
        """With rational q0 the truncated pairing is -(1 - q0^2M)(1 - q0^4N) exactly."""
        c = self.config
        q0 = exact_q(c.q0)
        r = index_pairing(q0, c.m_cutoff, c.n_cutoff, exact=True)
        expected = -(1 - q0 ** (2 * c.m_cutoff)) * (1 - q0 ** (4 * c.n_cutoff))
        return Fraction(r.exact_pairing_value) == expected, f"{r.exact_pairing_value} vs {expected}"

    def run(self) -> Report:
        checks = [
            self._check("sigma.relations", "A(S^4_q) relations hold for sigma on the interior", self.sigma_relations),
            self._check("sigma.exact", "A(S^4_q) relations hold exactly for sigma at rational q0", self.exact_relations),
            self._check("sigma.adjoint", "sigma(abar) = sigma(a)*, sigma(bbar) = sigma(b)*", self.adjoint),
            self._check("sigma.recursion", "a_{m,n+1} = q^2 a_{m,n}, b_{m+1,n} = q^2 b_{m,n}", self.recursion),
            self._check("beta.relations", "A(S^4_q) relations hold for beta", self.beta_relations),
            self._check("trace.t", "Tr sigma(t) = q^4 / ((1 - q^2)(1 - q^4))", self.trace_t),
            self._check("trace.abs", "Tr|a| and Tr|b| are below their bounds", self.trace_abs),
            self._check("value", "<[mu], [p]> = -1", self.pairing_value),
            self._check("bound", "|<[mu], [p]> + 1| <= q0^2M + q0^4N", self.pairing_bound),
            self._check("tau0", "tau^0(ch_0(p)) = 2", self.pairing_tau0),
            self._check("trivial", "tau^1(ch_0(1)) = 0", self.pairing_trivial),
            self._check("exact", "exact truncated pairing = -(1 - q0^2M)(1 - q0^4N)", self.pairing_exact),
        ]
        return Report(checks=checks)
