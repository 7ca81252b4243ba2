"""SU_q(2), the coaction on S^7_q and the principal bundle structure."""

from __future__ import annotations

from functools import cached_property

from hopfq.coaction import HopfBundle, hopf_bundle
from hopfq.models import Report

from .base import BaseSuite


class BundleSuite(BaseSuite):
    name = "bundle"

    @cached_property
    def bundle(self) -> HopfBundle:
        return hopf_bundle(self.config.rewrite_budget)

    def run(self) -> Report:
        b = self.bundle
        degree = self.config.max_degree
        checks = self._identities("hopf", "SU_q(2) is a Hopf algebra", lambda: b.hopf.hopf_axioms())
        checks += self._identities("coaction", "delta_R preserves every relation of S^7_q", b.verify_coaction_well_defined)
        checks += self._identities("coinvariance", "t, a, b and their conjugates are coinvariant", b.verify_coinvariance)
        checks += self._identities("matrix", "delta_R(v) = v (x) u entrywise", b.matrix_form)
        checks += self._identities("comodule", "(delta_R (x) id) delta_R = (id (x) Delta) delta_R", b.comodule)
        checks += self._identities("chi", "canonical map images", b.canonical_images)
        checks += self._identities("ell", f"strong connection conditions up to degree {degree}", lambda: b.verify_strong_connection(degree))
        checks += self._identities("associated", "v* p = v* and p v = v", b.associated_module_check)
        return Report(checks=checks)
