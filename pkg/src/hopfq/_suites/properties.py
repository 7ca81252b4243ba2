"""Randomized algebraic properties: associativity, confluence, star, parsing."""

from __future__ import annotations

import numpy as np

from hopfq.classical import S7Point, act, hopf_map, random_su2
from hopfq.coaction import su2_system
from hopfq.coeffring import qpow
from hopfq.grammar import parse_expr
from hopfq.models import Report
from hopfq.ncalg import NCPoly, RewriteSystem
from hopfq.rmatrix import Family, golden_relations, s7_system
from hopfq.spheres import s4_relations, s4_system

from .base import BaseSuite, Outcome

PARSER_FIXTURES = [
    "x2 * x1",
    "conj(x1)",
    "q^-1 * x1 * x2 + (1 - q^-2) * t",
    "alpha*alphab + q^2*gammab*gamma",
    "3/2*xb4*x4 - q^3*x1",
]


class PropertiesSuite(BaseSuite):
    """Seeded random trials over the three rewrite systems."""

    name = "properties"

    def systems(self) -> dict[str, RewriteSystem]:
        budget = self.config.rewrite_budget
        return {"s7": s7_system(budget=budget), "su2": su2_system(budget), "s4": s4_system(budget)}

    def _rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.config.seed, salt])

    def _random_poly(self, rng: np.random.Generator, rs: RewriteSystem, max_len: int = 2) -> NCPoly:
        out = NCPoly.zero()
        for _ in range(int(rng.integers(1, 3))):
            length = int(rng.integers(0, max_len + 1))
            word = tuple(rs.alphabet[int(i)] for i in rng.integers(0, len(rs.alphabet), size=length))
            coeff = qpow(int(rng.integers(-2, 3)), int(rng.choice([-2, -1, 1, 2])))
            out = out + NCPoly.word(word, coeff)
        return out

    def _random_word(self, rng: np.random.Generator, rs: RewriteSystem, max_len: int = 4) -> NCPoly:
        length = int(rng.integers(0, max_len + 1))
        return NCPoly.word(tuple(rs.alphabet[int(i)] for i in rng.integers(0, len(rs.alphabet), size=length)))

    def associativity(self, key: str) -> Outcome:
        """u(vw) = (uv)w for random words of length 0..4."""
        rs = self.systems()[key]
        rng = self._rng(1)
        for trial in range(self.config.confluence_trials):
            u, v, w = (self._random_word(rng, rs) for _ in range(3))
            left = rs.mul(u, rs.mul(v, w))
            right = rs.mul(rs.mul(u, v), w)
            if left != right:
                return False, f"trial {trial}: ({u})({v})({w}) gives {left - right}", {"trial": trial}
        return True, "", {"trials": self.config.confluence_trials}

    def confluence(self, key: str) -> Outcome:
        """Every overlap abc of two leading words resolves; random words normalize alike at every cut."""
        rs = self.systems()[key]
        rules = [(lead, rep) for lead, rep in rs.relations() if len(lead) == 2]
        overlaps = 0
        for (a, b), left in rules:
            for (b2, c), right in rules:
                if b != b2:
                    continue
                overlaps += 1
                diff = rs.normalize(left * NCPoly.gen(c)) - rs.normalize(NCPoly.gen(a) * right)
                if not diff.is_zero():
                    return False, f"overlap {a}*{b}*{c}: {diff}", {"overlap": f"{a}*{b}*{c}"}
        rng = self._rng(2)
        for trial in range(self.config.confluence_trials):
            length = int(rng.integers(2, 6))
            word = tuple(rs.alphabet[int(i)] for i in rng.integers(0, len(rs.alphabet), size=length))
            direct = rs.normal_word(word)
            for cut in range(1, length):
                split = rs.mul(rs.normal_word(word[:cut]), rs.normal_word(word[cut:]))
                if direct != split:
                    return False, f"{'*'.join(word)} split at {cut}: {direct - split}", {"trial": trial}
        return True, "", {"overlaps": overlaps, "trials": self.config.confluence_trials}

    def star(self, key: str) -> Outcome:
        """* is an involutive antihomomorphism compatible with the relations."""
        rs = self.systems()[key]
        rng = self._rng(3)
        for trial in range(self.config.confluence_trials // 10):
            a, b = self._random_poly(rng, rs), self._random_poly(rng, rs)
            if a.star().star() != a:
                return False, f"star(star({a})) != {a}"
            anti = rs.normalize((a * b).star()) - rs.normalize(b.star() * a.star())
            if not anti.is_zero():
                return False, f"trial {trial}: (ab)* - b* a* = {anti}"
            compat = rs.normalize(rs.normalize(a).star()) - rs.normalize(a.star())
            if not compat.is_zero():
                return False, f"trial {trial}: star does not preserve the relations on {a}: {compat}"
        return True

    def hopf_invariance(self) -> Outcome:
        rng = self._rng(4)
        worst = 0.0
        for _ in range(100):
            z = S7Point.random(rng)
            w = random_su2(rng)
            before, after = hopf_map(z), hopf_map(act(z, w))
            worst = max(worst, abs(before.x - after.x), abs(before.alpha - after.alpha), abs(before.beta - after.beta))
        return worst < 1e-12, f"{worst:.3e}"

    def parser_roundtrip(self) -> Outcome:
        texts = list(PARSER_FIXTURES)
        for family in Family:
            texts += [rhs for _, rhs in golden_relations(family).rendered()]
        texts += [str(rel) for _, _, rel in s4_relations()]
        for text in texts:
            e = parse_expr(text)
            again = parse_expr(str(e))
            if again != e:
                return False, f"{text!r} -> {e} -> {again}"
        return True, "", {"expressions": len(texts)}

    def run(self) -> Report:
        checks = []
        for key in ("s7", "su2", "s4"):
            checks.append(self._check(f"associativity.{key}", f"(ab)c = a(bc) in normal form ({key})", lambda k=key: self.associativity(k)))
            checks.append(self._check(f"confluence.{key}", f"normal forms do not depend on the reduction path ({key})", lambda k=key: self.confluence(k)))
            checks.append(self._check(f"star.{key}", f"star is an involutive antihomomorphism ({key})", lambda k=key: self.star(k)))
        checks.append(self._check("hopf_invariance", "hopf_map(z . w) = hopf_map(z) for random z, w", self.hopf_invariance))
        checks.append(self._check("parser.roundtrip", "parse(render(e)) = e", self.parser_roundtrip))
        return Report(checks=checks)
