"""The classical bundle at q = 1 and its second Chern number."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from hopfq.classical import (
    D,
    S7Point,
    analytic_c2,
    chern_numbers,
    classical_projection,
    frame_checks,
    hopf_map,
    q1_gauge_check,
    rotation_residual,
)
from hopfq.coaction import hopf_bundle
from hopfq.models import ChernReport, Report

from .base import BaseSuite, Outcome

C2_TOL = 0.05
C1_TOL = 1e-6
POINT_TOL = 1e-12
ROTATION_TOL = 1e-6


class ClassicalSuite(BaseSuite):
    """Hopf map, classical projection, c_1 = 0 and c_2 = -1."""

    name = "classical"

    @cached_property
    def chern(self) -> ChernReport:
        c = self.config
        return chern_numbers(c.samples, c.fd_step, c.seed)

    @cached_property
    def frames(self) -> dict[str, float]:
        return frame_checks(points=10, seed=self.config.seed)

    def poles(self) -> Outcome:
        north = hopf_map(S7Point(np.array([1, 0, 0, 0])))
        south = hopf_map(S7Point(np.array([0, 0, 1, 0])))
        p = classical_projection(north)
        ok = (north.x, north.alpha, north.beta) == (1, 0, 0) and (south.x, south.alpha, south.beta) == (-1, 0, 0)
        ok = ok and bool(np.allclose(p, np.diag([1, 1, 0, 0]), atol=POINT_TOL, rtol=0))
        return ok, f"north {north}, south {south}"

    def frame(self, key: str) -> Outcome:
        value = self.frames[key]
        return value < POINT_TOL * 10, f"{value:.3e}"

    def c2(self) -> Outcome:
        r = self.chern
        ok = abs(r.c2_value + 1) < C2_TOL
        return ok, f"c2 = {r.c2_value:.6f} +/- {r.c2_stderr:.1e}", r.model_dump()

    def c1(self) -> Outcome:
        r = self.chern
        return r.c1_max_residual < C1_TOL, f"max |tr(p (dp)^2)| = {r.c1_max_residual:.3e}"

    def oracle(self) -> Outcome:
        value = analytic_c2()
        return abs(value + 1) < 1e-14, f"{value!r}"

    def rotation(self) -> Outcome:
        res = rotation_residual(seed=self.config.seed, h=self.config.fd_step)
        return res < ROTATION_TOL, f"{res:.3e}"

    def gauge(self) -> Outcome:
        p = hopf_bundle(self.config.rewrite_budget).p
        r = q1_gauge_check(p, seed=self.config.seed, tol=POINT_TOL)
        involution = bool(np.array_equal(D @ D, np.eye(4)))
        return involution, "", r.model_dump()

    def run(self) -> Report:
        checks = [
            self._check("hopf_map.poles", "hopf_map(1,0,0,0) = (1,0,0), hopf_map(0,0,1,0) = (-1,0,0)", self.poles),
            self._check("hopf_map.invariant", "hopf_map(z . w) = hopf_map(z)", lambda: self.frame("invariant")),
            self._check("projection.defects", "p^2 = p, p* = p, tr p = 2", lambda: self.frame("defects")),
            self._check("projection.frame", "p(hopf_map(z)) = v v*", lambda: self.frame("projection")),
            self._check("frame.orthonormal", "v* v = 1", lambda: self.frame("orthonormal")),
            self._check("frame.equivariant", "v(z . w) = v(z) w", lambda: self.frame("equivariant")),
            self._check("chern.oracle", "-3/(8 pi^2) vol(S^4) = -1", self.oracle),
            self._check("chern.rotation", "the chart density of tr(p (dp)^4) is rotation invariant", self.rotation),
            self._check("chern.c1", "C_1(p) = 0", self.c1),
            self._check("chern.c2", "c_2(p) = -1", self.c2),
            self._check("gauge.q1", "D p_classical D = p at q = 1 up to a renaming", self.gauge),
        ]
        return Report(checks=checks)
