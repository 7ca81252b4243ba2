"""SU_q(2), the right coaction on A(S^7_q) and the principal bundle structure.

Tensors are sums of pure tensors of normal words, one rewrite system per leg.
Every bundle identity is certified leg-wise in normal form and reported as an
``Identity`` whose residual is a ``Tensor``.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cache, cached_property

from .coeffring import ONE, ZERO, LaurentPoly, qpow
from .errors import ErrorCode, HopfqError, ValidationError, VerificationError
from .logging import logger
from .ncalg import (
    DEFAULT_BUDGET,
    GENERATORS,
    SU2_ALPHABET,
    Coeff,
    Identity,
    NCMatrix,
    NCPoly,
    RewriteSystem,
    Word,
    orient_relations,
    render_word,
    star_word,
)
from .rmatrix import s7_system
from .spheres import S4Generators, S7, build_projection, build_v

Key = tuple[Word, ...]

SU2_RELATIONS: list[tuple[str, str]] = [
    ("alpha_gamma", "alpha*gamma - q*gamma*alpha"),
    ("alpha_gammab", "alpha*gammab - q*gammab*alpha"),
    ("gamma_gammab", "gamma*gammab - gammab*gamma"),
    ("unitary_1", "alpha*alphab + q^2*gammab*gamma - 1"),
    ("unitary_2", "alphab*alpha + gammab*gamma - 1"),
]

# u = ((alpha, -q gammab), (gamma, alphab)); Delta(u) = u (x). u
_FUNDAMENTAL = [["alpha", "-q*gammab"], ["gamma", "alphab"]]

# S(u) has the shape of the adjugate of u
_ANTIPODE_PATTERN = [["alphab", "gammab"], ["gamma", "alpha"]]

_COUNIT = {"alpha": 1, "alphab": 1, "gamma": 0, "gammab": 0}

_COACTION: dict[str, list[tuple[str, str]]] = {
    "x1": [("x1", "alpha"), ("q*x2", "gamma")],
    "x2": [("-x1", "gammab"), ("x2", "alphab")],
    "x3": [("x3", "alpha"), ("-q*x4", "gamma")],
    "x4": [("x3", "gammab"), ("x4", "alphab")],
    "xb1": [("q*xb2", "gammab"), ("xb1", "alphab")],
    "xb2": [("xb2", "alpha"), ("-xb1", "gamma")],
    "xb3": [("-q*xb4", "gammab"), ("xb3", "alphab")],
    "xb4": [("xb4", "alpha"), ("xb3", "gamma")],
}

# delta_R(x1, x2, x3, x4) = (x1, x2, x3, x4) (x). BLOCK
_BLOCK = [
    ["alpha", "-gammab", "0", "0"],
    ["q*gamma", "alphab", "0", "0"],
    ["0", "0", "alpha", "gammab"],
    ["0", "0", "-q*gamma", "alphab"],
]


class Tensor:
    """Element of A_1 (x) ... (x) A_k over Q[q, q^-1], legs in normal form."""

    __slots__ = ("systems", "_terms")

    def __init__(
        self,
        systems: Sequence[RewriteSystem],
        terms: Mapping[Key, Coeff] | Iterable[tuple[Key, Coeff]] = (),
        *,
        normalized: bool = False,
    ) -> None:
        self.systems: tuple[RewriteSystem, ...] = tuple(systems)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, LaurentPoly] = {}
        for key, coeff in items:
            if len(key) != len(self.systems):
                raise ValueError(f"term {key} does not have {len(self.systems)} legs")
            c = LaurentPoly.coerce(coeff)
            if not c:
                continue
            if normalized:
                acc[key] = acc.get(key, ZERO) + c
                continue
            legs = [rs.normal_word(w).terms.items() for rs, w in zip(self.systems, key, strict=True)]
            for combo in itertools.product(*legs):
                k = tuple(w for w, _ in combo)
                value = c
                for _, f in combo:
                    value = value * f
                acc[k] = acc.get(k, ZERO) + value
        self._terms: dict[Key, LaurentPoly] = {k: v for k, v in acc.items() if v}

    @classmethod
    def of(cls, systems: Sequence[RewriteSystem], *factors: NCPoly | Coeff) -> Tensor:
        """The pure tensor f_1 (x) ... (x) f_k."""
        if len(factors) != len(systems):
            raise ValueError("one factor per leg")
        polys = [NCPoly.coerce(f) for f in factors]
        terms: dict[Key, LaurentPoly] = {}
        for combo in itertools.product(*(p.terms.items() for p in polys)):
            key = tuple(w for w, _ in combo)
            value = ONE
            for _, c in combo:
                value = value * c
            terms[key] = terms.get(key, ZERO) + value
        return cls(systems, terms)

    @classmethod
    def scalar(cls, c: Coeff) -> Tensor:
        return cls((), {(): c}, normalized=True)

    @classmethod
    def unit(cls, systems: Sequence[RewriteSystem]) -> Tensor:
        return cls(systems, {tuple(() for _ in systems): ONE}, normalized=True)

    @property
    def terms(self) -> Mapping[Key, LaurentPoly]:
        return self._terms

    @property
    def arity(self) -> int:
        return len(self.systems)

    def is_zero(self) -> bool:
        return not self._terms

    def _compatible(self, other: Tensor) -> None:
        if [rs.name for rs in self.systems] != [rs.name for rs in other.systems]:
            raise HopfqError(
                ErrorCode.INVALID_PARAMETER,
                f"tensor legs differ: {self._leg_names()} vs {other._leg_names()}",
            )

    def _leg_names(self) -> str:
        return " (x) ".join(rs.name for rs in self.systems) or "scalars"

    def __add__(self, other: Tensor) -> Tensor:
        self._compatible(other)
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, ZERO) + v
        return Tensor(self.systems, acc, normalized=True)

    def __neg__(self) -> Tensor:
        return Tensor(self.systems, {k: -v for k, v in self._terms.items()}, normalized=True)

    def __sub__(self, other: Tensor) -> Tensor:
        return self + (-other)

    def scale(self, c: Coeff) -> Tensor:
        c = LaurentPoly.coerce(c)
        return Tensor(self.systems, {k: c * v for k, v in self._terms.items()}, normalized=True)

    def __mul__(self, other: Tensor) -> Tensor:
        """Leg-wise product (a (x) h)(b (x) k) = ab (x) hk."""
        self._compatible(other)
        acc: dict[Key, LaurentPoly] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                key = tuple(a + b for a, b in zip(k1, k2, strict=True))
                acc[key] = acc.get(key, ZERO) + v1 * v2
        return Tensor(self.systems, acc)

    def star(self) -> Tensor:
        """Leg-wise involution (a (x) h)* = a* (x) h*."""
        return Tensor(self.systems, {tuple(star_word(w) for w in k): v for k, v in self._terms.items()})

    def expand_leg(
        self, index: int, fn: Callable[[Word], Tensor], into: Sequence[RewriteSystem]
    ) -> Tensor:
        """Replace leg ``index`` by the legs of ``fn(word)``; ``into`` names them."""
        systems = self.systems[:index] + tuple(into) + self.systems[index + 1 :]
        acc: dict[Key, LaurentPoly] = {}
        for key, c in self._terms.items():
            image = fn(key[index])
            for ikey, ic in image.terms.items():
                k = key[:index] + ikey + key[index + 1 :]
                acc[k] = acc.get(k, ZERO) + c * ic
        return Tensor(systems, acc, normalized=True)

    def map_leg(self, index: int, fn: Callable[[Word], NCPoly], system: RewriteSystem) -> Tensor:
        return self.expand_leg(index, lambda w: Tensor.of((system,), fn(w)), (system,))

    def merge_legs(self, index: int) -> Tensor:
        """Multiply leg ``index`` into leg ``index + 1`` of the same algebra."""
        left, right = self.systems[index], self.systems[index + 1]
        if left.name != right.name:
            raise HopfqError(
                ErrorCode.INVALID_PARAMETER, f"cannot multiply {left.name} by {right.name}"
            )
        systems = self.systems[: index + 1] + self.systems[index + 2 :]
        terms = [
            (key[:index] + (key[index] + key[index + 1],) + key[index + 2 :], c)
            for key, c in self._terms.items()
        ]
        return Tensor(systems, terms)

    def permute(self, order: Sequence[int]) -> Tensor:
        if sorted(order) != list(range(self.arity)):
            raise ValueError(f"{order} is not a permutation of the legs")
        return Tensor(
            [self.systems[i] for i in order],
            {tuple(k[i] for i in order): v for k, v in self._terms.items()},
            normalized=True,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return [rs.name for rs in self.systems] == [rs.name for rs in other.systems] and (
            self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        keys = sorted(
            self._terms,
            key=lambda k: tuple(rs.key(w) for rs, w in zip(self.systems, k, strict=True)),
        )
        out: list[str] = []
        for i, key in enumerate(keys):
            body = " (x) ".join(render_word(w) for w in key) or "1"
            coeff = self._terms[key]
            if coeff == 1:
                text = body
            elif coeff == -1:
                text = f"-{body}"
            else:
                c = str(coeff) if coeff.is_unit() else f"({coeff})"
                text = f"{c}*{body}"
            if i == 0:
                out.append(text)
            elif text.startswith("-"):
                out.append(f" - {text[1:]}")
            else:
                out.append(f" + {text}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"Tensor({str(self)!r})"


# A(S^7_q) (x) A(SU_q(2)) and A(S^7_q) (x) A(S^7_q)
TensorElem = Tensor
PPTensor = Tensor


@cache
def su2_system(budget: int = DEFAULT_BUDGET) -> RewriteSystem:
    """A(SU_q(2)) on alpha < alphab < gamma < gammab, alpha and alphab weighted by 1.

    Normal words are the PBW basis alpha^k gamma^m gammab^n, alphab^k gamma^m gammab^n.
    """
    weights = {"alpha": 1, "alphab": 1}
    base = [(name, NCPoly.parse(text, SU2_ALPHABET)) for name, text in SU2_RELATIONS]
    rels = base + [(f"{name}.conj", rel.star()) for name, rel in base]
    rules = orient_relations(
        [rel for _, rel in rels],
        alphabet=SU2_ALPHABET,
        eligible=lambda w: True,
        weights=weights,
        labels=[name for name, _ in rels],
        name="SU_q(2)",
        budget=budget,
    )
    return RewriteSystem("SU_q(2)", SU2_ALPHABET, rules, weights=weights, budget=budget)


def su2_relations() -> list[tuple[str, NCPoly]]:
    base = [(name, NCPoly.parse(text, SU2_ALPHABET)) for name, text in SU2_RELATIONS]
    return base + [(f"{name}.conj", rel.star()) for name, rel in base]


def fundamental_matrix() -> NCMatrix:
    return NCMatrix.parse(_FUNDAMENTAL, SU2_ALPHABET)


def _positions(u: NCMatrix) -> dict[str, tuple[int, int, LaurentPoly]]:
    """Generator -> (i, j, c) with u_ij = c * generator."""
    out = {}
    for i, j, e in u.nonzero_entries():
        ((word, c),) = e.terms.items()
        out[word[0]] = (i, j, c)
    return out


def _unit_candidates(max_power: int = 3) -> list[LaurentPoly]:
    return [qpow(k, s) for k in range(-max_power, max_power + 1) for s in (1, -1)]


def derive_antipode(rs: RewriteSystem) -> dict[str, NCPoly]:
    """Solve u S(u) = 1 column by column over S(u)_ij = c_ij * adjugate pattern."""
    u = fundamental_matrix()
    pattern = NCMatrix.parse(_ANTIPODE_PATTERN, SU2_ALPHABET)
    solution: dict[tuple[int, int], NCPoly] = {}
    for j in (1, 2):
        for c1, c2 in itertools.product(_unit_candidates(), repeat=2):
            column = [pattern.entry(1, j).scale(c1), pattern.entry(2, j).scale(c2)]
            ok = all(
                rs.normalize(u.entry(i, 1) * column[0] + u.entry(i, 2) * column[1])
                == (NCPoly.one() if i == j else NCPoly.zero())
                for i in (1, 2)
            )
            if ok:
                solution[(1, j)], solution[(2, j)] = column
                break
        else:
            raise VerificationError(f"no antipode of adjugate shape solves column {j} of u S(u) = 1")
    antipode = {}
    for g, (i, j, c) in _positions(u).items():
        antipode[g] = solution[(i, j)].scale(c.inverse())
    logger.debug("antipode: " + ", ".join(f"S({g}) = {antipode[g]}" for g in SU2_ALPHABET))
    return antipode


class SUq2Algebra:
    """The Hopf *-algebra A(SU_q(2)) with tables on generators, extended to words."""

    def __init__(self, budget: int = DEFAULT_BUDGET) -> None:
        self.system = su2_system(budget)
        self.budget = budget

    @cached_property
    def coproduct(self) -> dict[str, Tensor]:
        u = fundamental_matrix()
        hh = (self.system, self.system)
        out = {}
        for g, (i, j, c) in _positions(u).items():
            total = Tensor(hh)
            for k in (1, 2):
                total = total + Tensor.of(hh, u.entry(i, k), u.entry(k, j))
            out[g] = total.scale(c.inverse())
        return out

    @cached_property
    def counit(self) -> dict[str, LaurentPoly]:
        return {g: LaurentPoly.constant(v) for g, v in _COUNIT.items()}

    @cached_property
    def antipode(self) -> dict[str, NCPoly]:
        return derive_antipode(self.system)

    @cached_property
    def antipode_inverse(self) -> dict[str, NCPoly]:
        """S^-1 = * o S o *."""
        return {g: self.antipode[GENERATORS[g].star].star() for g in SU2_ALPHABET}

    def normalize(self, e: NCPoly) -> NCPoly:
        return self.system.normalize(e)

    def is_normal(self, word: Word) -> bool:
        return self.system.is_normal(word)

    def delta(self, word: Word) -> Tensor:
        return self._delta(tuple(word))

    @cache  # noqa: B019
    def _delta(self, word: Word) -> Tensor:
        if not word:
            return Tensor.unit((self.system, self.system))
        return self._delta(word[:-1]) * self.coproduct[word[-1]]

    def delta_poly(self, e: NCPoly) -> Tensor:
        total = Tensor((self.system, self.system))
        for word, c in e.terms.items():
            total = total + self.delta(word).scale(c)
        return total

    def epsilon(self, word: Word) -> LaurentPoly:
        value = ONE
        for g in word:
            value = value * self.counit[g]
        return value

    def epsilon_poly(self, e: NCPoly) -> LaurentPoly:
        return sum((c * self.epsilon(w) for w, c in e.terms.items()), ZERO)

    def _anti(self, table: Mapping[str, NCPoly], word: Word) -> NCPoly:
        out = NCPoly.one()
        for g in reversed(word):
            out = self.system.normalize(out * table[g])
        return out

    def s(self, word: Word) -> NCPoly:
        return self._anti(self.antipode, word)

    def s_inv(self, word: Word) -> NCPoly:
        return self._anti(self.antipode_inverse, word)

    def s_poly(self, e: NCPoly) -> NCPoly:
        return sum((self.s(w).scale(c) for w, c in e.terms.items()), NCPoly.zero())

    def pbw_words(self, max_degree: int) -> list[Word]:
        """Normal words of length <= max_degree, graded order."""
        words: list[Word] = [()]
        for d in range(1, max_degree + 1):
            words.extend(w for w in itertools.product(SU2_ALPHABET, repeat=d) if self.is_normal(w))
        return sorted(words, key=self.system.key)

    def hopf_axioms(self) -> list[Identity]:
        """Coassociativity, counit, antipode, S^-1 o S = id and Delta, epsilon, S on relations."""
        h = self.system
        out: list[Identity] = []
        unit = Tensor.of((h,), NCPoly.one())
        for g in SU2_ALPHABET:
            dg = self.coproduct[g]
            left = dg.expand_leg(0, self.delta, (h, h))
            right = dg.expand_leg(1, self.delta, (h, h))
            out.append(_check(f"coassociative.{g}", f"(D (x) id) D({g}) = (id (x) D) D({g})", left - right))
            gen = Tensor.of((h,), NCPoly.gen(g))
            counit_l = dg.expand_leg(0, lambda w: Tensor.scalar(self.epsilon(w)), ())
            counit_r = dg.expand_leg(1, lambda w: Tensor.scalar(self.epsilon(w)), ())
            out.append(_check(f"counit.left.{g}", f"(e (x) id) D({g}) = {g}", counit_l - gen))
            out.append(_check(f"counit.right.{g}", f"(id (x) e) D({g}) = {g}", counit_r - gen))
            eps = unit.scale(self.counit[g])
            s_left = dg.map_leg(0, self.s, h).merge_legs(0)
            s_right = dg.map_leg(1, self.s, h).merge_legs(0)
            out.append(_check(f"antipode.left.{g}", f"m (S (x) id) D({g}) = e({g}) 1", s_left - eps))
            out.append(_check(f"antipode.right.{g}", f"m (id (x) S) D({g}) = e({g}) 1", s_right - eps))
            round_trip = h.normalize(self._s_inv_poly(self.s((g,))) - NCPoly.gen(g))
            out.append(_check(f"antipode.inverse.{g}", f"S^-1(S({g})) = {g}", round_trip))
        for name, rel in su2_relations():
            out.append(_check(f"coproduct.relation.{name}", f"D({rel}) = 0", self.delta_poly(rel)))
            out.append(_check(f"counit.relation.{name}", f"e({rel}) = 0", NCPoly.scalar(self.epsilon_poly(rel))))
            out.append(_check(f"antipode.relation.{name}", f"S({rel}) = 0", h.normalize(self.s_poly(rel))))
        u = fundamental_matrix()
        s_u = u.map(lambda e: h.normalize(self.s_poly(e)))
        ident = NCMatrix.identity(2)
        for i, j, e in _entries(s_u.matmul(u, h) - ident):
            out.append(_check(f"antipode.matrix.{i}{j}", f"(S(u) u)_{i}{j} = {int(i == j)}", h.normalize(e)))
        return out

    def _s_inv_poly(self, e: NCPoly) -> NCPoly:
        return sum((self.s_inv(w).scale(c) for w, c in e.terms.items()), NCPoly.zero())


def _check(name: str, statement: str, residual: Tensor | NCPoly) -> Identity:
    identity = Identity(name, statement, residual)
    if not identity.holds:
        logger.debug(f"{name}: residual {residual}")
    return identity


MultiIndex = tuple[int, ...]
ScalarMatrix = dict[tuple[MultiIndex, MultiIndex], LaurentPoly]

# a_12 = 1, a_21 = -q spans the trivial summand of u (x) u
_SINGLET: dict[MultiIndex, LaurentPoly] = {(1, 2): ONE, (2, 1): qpow(1, -1)}


def q_number(k: int) -> LaurentPoly:
    """[k] = q^(k-1) + q^(k-3) + ... + q^(1-k)."""
    return sum((qpow(k - 1 - 2 * i) for i in range(k)), ZERO)


def _matmul(a: ScalarMatrix, b: ScalarMatrix) -> ScalarMatrix:
    by_row: dict[MultiIndex, list[tuple[MultiIndex, LaurentPoly]]] = {}
    for (k, j), c in b.items():
        by_row.setdefault(k, []).append((j, c))
    out: ScalarMatrix = {}
    for (i, k), c1 in a.items():
        for j, c2 in by_row.get(k, ()):
            out[(i, j)] = out.get((i, j), ZERO) + c1 * c2
    return {key: c for key, c in out.items() if c}


def _combine(*parts: tuple[LaurentPoly, ScalarMatrix]) -> ScalarMatrix:
    out: ScalarMatrix = {}
    for scale, m in parts:
        for key, c in m.items():
            out[key] = out.get(key, ZERO) + scale * c
    return {key: c for key, c in out.items() if c}


def _cup_cap(n: int, i: int) -> ScalarMatrix:
    """q^-1 a b on tensor factors i and i + 1 of (C^2)^(x)n; squares to [2] times itself."""
    out: ScalarMatrix = {}
    for left in itertools.product((1, 2), repeat=i):
        for right in itertools.product((1, 2), repeat=n - i - 2):
            for pa, ca in _SINGLET.items():
                for pb, cb in _SINGLET.items():
                    out[(left + pa + right, left + pb + right)] = qpow(-1) * ca * cb
    return out


@cache
def jones_wenzl(n: int) -> tuple[ScalarMatrix, LaurentPoly]:
    """(s P, s) with P the projector of (C^2)^(x)n onto its top spin summand.

    Built by P_n = P_(n-1) - ([n-1] / [n]) P_(n-1) E P_(n-1), cleared of denominators.
    """
    if n <= 1:
        return {(i, i): ONE for i in itertools.product((1, 2), repeat=n)}, ONE
    prev, s = jones_wenzl(n - 1)
    lifted = {(i + (k,), j + (k,)): c for (i, j), c in prev.items() for k in (1, 2)}
    sandwich = _matmul(_matmul(lifted, _cup_cap(n, n - 2)), lifted)
    return _combine((q_number(n) * s, lifted), (-q_number(n - 1), sandwich)), s * s * q_number(n)


@cache
def ell_denominator(n: int) -> LaurentPoly:
    """Common denominator of ell on words of length n."""
    if n <= 1:
        return ONE
    return jones_wenzl(n)[1] ** 2 * ell_denominator(n - 2)


def _lift_ratio(low: int, high: int) -> LaurentPoly:
    """ell_denominator(high) / ell_denominator(low) for low = high mod 2."""
    out = ONE
    for k in range(low + 2, high + 1, 2):
        out = out * jones_wenzl(k)[1] ** 2
    return out


@dataclass(frozen=True)
class ConnectionValue:
    """ell(h) = numerator / denominator in A(S^7_q) (x) A(S^7_q)."""

    numerator: Tensor
    denominator: LaurentPoly

    def __str__(self) -> str:
        if self.denominator == ONE:
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"


class HopfBundle:
    """A(S^4_q) in A(S^7_q) with the right SU_q(2) coaction."""

    def __init__(self, budget: int = DEFAULT_BUDGET) -> None:
        self.budget = budget
        self.total = s7_system(budget=budget)
        self.hopf = SUq2Algebra(budget)

    @property
    def structure(self) -> RewriteSystem:
        return self.hopf.system

    @cached_property
    def v(self) -> NCMatrix:
        return build_v(self.total)

    @cached_property
    def p(self) -> NCMatrix:
        return build_projection(self.v, self.total)

    @cached_property
    def generators(self) -> S4Generators:
        return S4Generators.from_projection(self.p)

    @cached_property
    def table(self) -> dict[str, Tensor]:
        ph = (self.total, self.structure)
        out = {}
        for g, pairs in _COACTION.items():
            total = Tensor(ph)
            for left, right in pairs:
                total = total + Tensor.of(ph, NCPoly.parse(left, S7), NCPoly.parse(right, SU2_ALPHABET))
            out[g] = total
        return out

    # Coaction

    def delta_word(self, word: Word) -> Tensor:
        return self._delta_word(tuple(word))

    @cache  # noqa: B019
    def _delta_word(self, word: Word) -> Tensor:
        if not word:
            return Tensor.unit((self.total, self.structure))
        return self._delta_word(word[:-1]) * self.table[word[-1]]

    def delta_r(self, e: NCPoly) -> Tensor:
        """Multiplicative extension of the generator table, word by word."""
        self.total.check_letters(e)
        total = Tensor((self.total, self.structure))
        for word, c in e.terms.items():
            total = total + self.delta_word(word).scale(c)
        return total

    def delta_l(self, word: Word) -> Tensor:
        """p -> S^-1(p_(1)) (x) p_(0)."""
        return self.delta_word(word).map_leg(1, self.hopf.s_inv, self.structure).permute((1, 0))

    def coinvariant(self, e: NCPoly) -> Tensor:
        return Tensor.of((self.total, self.structure), e, 1)

    # Galois map and strong connection

    def canonical_map(self, pairs: Iterable[tuple[NCPoly, NCPoly]]) -> Tensor:
        """chi(p' (x) p) = p' p_(0) (x) p_(1), summed over the explicit lifts."""
        ph = (self.total, self.structure)
        total = Tensor(ph)
        for left, right in pairs:
            total = total + Tensor.of(ph, left, 1) * self.delta_r(right)
        return total

    def chi(self, pp: Tensor) -> Tensor:
        return pp.expand_leg(1, self.delta_word, (self.total, self.structure)).merge_legs(0)

    def double_bracket(self, i: int, j: int) -> Tensor:
        """<<phi_i|phi_j>> = sum_k conj(v_ki) (x) v_kj."""
        pp = (self.total, self.total)
        total = Tensor(pp)
        for k in range(1, 5):
            total = total + Tensor.of(pp, self.v.entry(k, i).star(), self.v.entry(k, j))
        return total

    @cached_property
    def ell_table(self) -> dict[str, Tensor]:
        return {
            "alpha": self.double_bracket(1, 1),
            "alphab": self.double_bracket(2, 2),
            "gamma": self.double_bracket(2, 1),
            "gammab": self.double_bracket(1, 2).scale(qpow(-1, -1)),
        }

    def strong_connection(self, word: Word) -> ConnectionValue:
        """ell on a PBW word of length n, with denominator ``ell_denominator(n)``.

        The fold ell(gh) = h1 g1 (x) g2 h2 is projected onto the top spin block
        of u (x) ... (x) u; the rest of the word is lowered in degree and
        recursed on.
        """
        word = tuple(word)
        if not self.hopf.is_normal(word):
            raise ValidationError(f"{render_word(word)} is not a normal SU_q(2) word")
        return ConnectionValue(self._ell_scaled(word), ell_denominator(len(word)))

    @cache  # noqa: B019
    def _ell(self, word: Word) -> Tensor:
        """Right-to-left fold of ``ell_table``; any word, normal or not."""
        pp = (self.total, self.total)
        if not word:
            return Tensor.unit(pp)
        head, rest = self.ell_table[word[0]], self._ell(word[1:])
        acc: dict[Key, LaurentPoly] = {}
        for (g1, g2), c1 in head.terms.items():
            for (h1, h2), c2 in rest.terms.items():
                key = (h1 + g1, g2 + h2)
                acc[key] = acc.get(key, ZERO) + c1 * c2
        return Tensor(pp, acc)

    @cached_property
    def _by_index(self) -> dict[tuple[int, int], tuple[str, LaurentPoly]]:
        return {(i, j): (g, c) for g, (i, j, c) in _positions(fundamental_matrix()).items()}

    def _corep_word(self, rows: MultiIndex, cols: MultiIndex) -> tuple[Word, LaurentPoly]:
        """(w, c) with u_(r1 c1) ... u_(rn cn) = c w."""
        word, coeff = [], ONE
        for i, j in zip(rows, cols, strict=True):
            g, c = self._by_index[(i, j)]
            word.append(g)
            coeff = coeff * c
        return tuple(word), coeff

    @cache  # noqa: B019
    def _ell_scaled(self, word: Word) -> Tensor:
        """ell_denominator(len(word)) * ell(word) for a normal word."""
        n = len(word)
        if n <= 1:
            return self._ell(word)
        pos = _positions(fundamental_matrix())
        rows = tuple(pos[g][0] for g in word)
        cols = tuple(pos[g][1] for g in word)
        raw, unit = self._corep_word(rows, cols)
        proj, s = jones_wenzl(n)
        left = [(k, c) for (i, k), c in proj.items() if i == rows]
        right = [(m, c) for (m, j), c in proj.items() if j == cols]

        top = Tensor((self.total, self.total))
        sandwich = NCPoly.zero()
        for k, c1 in left:
            for m, c2 in right:
                w, c = self._corep_word(k, m)
                top = top + self._ell(w).scale(c1 * c2 * c)
                sandwich = sandwich + NCPoly.word(w, c1 * c2 * c)
        lower = self.hopf.normalize(NCPoly.word(raw, unit * s * s) - sandwich)

        acc = top.scale(ell_denominator(n - 2))
        for w, c in lower.terms.items():
            acc = acc + self._ell_over(w, n - 2).scale(c)
        return acc.scale(unit.inverse())

    def _ell_over(self, word: Word, degree: int) -> Tensor:
        """ell_denominator(degree) * ell(word) for a normal word of length <= degree."""
        if len(word) > degree or (degree - len(word)) % 2:
            raise VerificationError(
                f"{render_word(word)} does not lie in degree {degree}",
                residual=render_word(word),
            )
        return self._ell_scaled(word).scale(_lift_ratio(len(word), degree))

    # Certificates

    def verify_coaction_well_defined(self) -> list[Identity]:
        out = []
        for lead, rep in self.total.relations():
            name = "sphere" if self.total.central and lead == self.total.central.lead else "rule." + "_".join(lead)
            residual = self.delta_word(lead) - self.delta_r(rep)
            out.append(_check(name, f"d({render_word(lead)}) = d({rep})", residual))
        for g in self.total.alphabet:
            if g.startswith("xb"):
                partner = "x" + g[2:]
                out.append(
                    _check(
                        f"star.{g}",
                        f"d({g}) = conj(d({partner}))",
                        self.delta_word((g,)) - self.delta_word((partner,)).star(),
                    )
                )
        return out

    def verify_coinvariance(self) -> list[Identity]:
        out = []
        for name, e in self.generators.images().items():
            out.append(_check(f"generator.{name}", f"d({name}) = {name} (x) 1", self.delta_r(e) - self.coinvariant(e)))
        for i in range(1, 5):
            for j in range(1, 5):
                e = self.p.entry(i, j)
                out.append(_check(f"p.{i}{j}", f"d(p_{i}{j}) = p_{i}{j} (x) 1", self.delta_r(e) - self.coinvariant(e)))
        raw = self.v.star().matmul(self.v).entry(1, 2)
        out.append(_check("phi12", "d(<phi_1|phi_2>) = 0", self.delta_r(raw)))
        return out

    def matrix_form(self) -> list[Identity]:
        """delta_R(v) = v (x). u, delta_R(v* v) = 1 (x) 1 and the block form on (x1..x4)."""
        ph = (self.total, self.structure)
        u = fundamental_matrix()
        out = []
        for i in range(1, 5):
            for j in (1, 2):
                expected = Tensor(ph)
                for k in (1, 2):
                    expected = expected + Tensor.of(ph, self.v.entry(i, k), u.entry(k, j))
                out.append(_check(f"v.{i}{j}", f"d(v_{i}{j}) = sum_k v_{i}k (x) u_k{j}", self.delta_r(self.v.entry(i, j)) - expected))
        raw = self.v.star().matmul(self.v)
        for i in (1, 2):
            for j in (1, 2):
                target = Tensor.unit(ph) if i == j else Tensor(ph)
                out.append(_check(f"vstar_v.{i}{j}", f"d((v* v)_{i}{j}) = {1 if i == j else 0}", self.delta_r(raw.entry(i, j)) - target))
        block = NCMatrix.parse(_BLOCK, SU2_ALPHABET)
        for j in range(1, 5):
            expected = Tensor(ph)
            for i in range(1, 5):
                expected = expected + Tensor.of(ph, NCPoly.gen(f"x{i}"), block.entry(i, j))
            out.append(_check(f"block.x{j}", f"d(x{j}) = sum_i x_i (x) B_i{j}", self.delta_word((f"x{j}",)) - expected))
        twist = NCMatrix.of([[1, 0], [0, -1]])
        second = NCMatrix.of([[block.entry(3, 3), block.entry(3, 4)], [block.entry(4, 3), block.entry(4, 4)]])
        first = NCMatrix.of([[block.entry(1, 1), block.entry(1, 2)], [block.entry(2, 1), block.entry(2, 2)]])
        twisted = twist.matmul(second).matmul(twist, self.structure) - first
        for i in (1, 2):
            for j in (1, 2):
                out.append(_check(f"block.twist.{i}{j}", "first block = D (second block) D", self.structure.normalize(twisted.entry(i, j))))
        return out

    def comodule(self) -> list[Identity]:
        """(d (x) id) d = (id (x) D) d and (id (x) e) d = id on every generator."""
        ph = (self.total, self.structure)
        out = []
        for g in self.total.alphabet:
            dg = self.delta_word((g,))
            left = dg.expand_leg(0, self.delta_word, ph)
            right = dg.expand_leg(1, self.hopf.delta, (self.structure, self.structure))
            out.append(_check(f"comodule.{g}", f"(d (x) id) d({g}) = (id (x) D) d({g})", left - right))
            counit = dg.expand_leg(1, lambda w: Tensor.scalar(self.hopf.epsilon(w)), ())
            out.append(_check(f"comodule.counit.{g}", f"(id (x) e) d({g}) = {g}", counit - Tensor.of((self.total,), NCPoly.gen(g))))
        return out

    def canonical_images(self) -> list[Identity]:
        """Preimages of 1 (x) h under chi for h = 1 and the four generators."""
        ph = (self.total, self.structure)
        cases = [
            ("alpha", self.double_bracket(1, 1), NCPoly.gen("alpha")),
            ("gamma", self.double_bracket(2, 1), NCPoly.gen("gamma")),
            ("alphab", self.double_bracket(2, 2), NCPoly.gen("alphab")),
            ("phi12", self.double_bracket(1, 2), NCPoly.gen("gammab", qpow(1, -1))),
            ("unit", Tensor.unit((self.total, self.total)), NCPoly.one()),
        ]
        return [
            _check(f"chi.{name}", f"chi(<<.|.>>) = 1 (x) {h}", self.chi(pp) - Tensor.of(ph, 1, h))
            for name, pp, h in cases
        ]

    def verify_strong_connection(self, max_degree: int = 2) -> list[Identity]:
        """The three conditions on ell for every PBW word up to ``max_degree``.

        Both sides of each condition are multiplied by ``ell_denominator(n)``
        for a word of length n.
        """
        h = self.structure
        ph = (self.total, h)
        pp = (self.total, self.total)
        out = []
        for word in self.hopf.pbw_words(max_degree):
            n = len(word)
            name = render_word(word)
            ell = self._ell_scaled(word)

            def lift(w: Word, n: int = n) -> Tensor:
                return self._ell_over(w, n)

            target = Tensor.of(ph, ell_denominator(n), NCPoly.word(word))
            out.append(_check(f"ell.{name}.1", f"chi(ell({name})) = 1 (x) {name}", self.chi(ell) - target))
            lhs = ell.expand_leg(1, self.delta_word, ph)
            rhs = self.hopf.delta(word).expand_leg(0, lift, pp)
            out.append(_check(f"ell.{name}.2", f"(id (x) d) ell({name}) = ell(h1) (x) h2", lhs - rhs))
            lhs = ell.expand_leg(0, self.delta_l, (h, self.total))
            rhs = self.hopf.delta(word).expand_leg(1, lift, pp)
            out.append(_check(f"ell.{name}.3", f"(d_l (x) id) ell({name}) = h1 (x) ell(h2)", lhs - rhs))
        return out

    def associated_module_check(self) -> list[Identity]:
        """v* p = v* and p v = v entrywise."""
        rs = self.total
        vstar = self.v.star()
        out = []
        for i, j, e in _entries(vstar.matmul(self.p, rs) - vstar):
            out.append(_check(f"vstar_p.{i}{j}", f"(v* p)_{i}{j} = (v*)_{i}{j}", rs.normalize(e)))
        for i, j, e in _entries(self.p.matmul(self.v, rs) - self.v):
            out.append(_check(f"p_v.{i}{j}", f"(p v)_{i}{j} = v_{i}{j}", rs.normalize(e)))
        return out


def _entries(m: NCMatrix) -> list[tuple[int, int, NCPoly]]:
    return [(i + 1, j + 1, e) for i, row in enumerate(m.rows) for j, e in enumerate(row)]


@cache
def hopf_bundle(budget: int = DEFAULT_BUDGET) -> HopfBundle:
    return HopfBundle(budget)


def delta_r(e: NCPoly) -> TensorElem:
    return hopf_bundle().delta_r(e)


def verify_coaction_well_defined() -> list[Identity]:
    return hopf_bundle().verify_coaction_well_defined()


def verify_coinvariance() -> list[Identity]:
    return hopf_bundle().verify_coinvariance()


def canonical_map(pairs: Iterable[tuple[NCPoly, NCPoly]]) -> TensorElem:
    return hopf_bundle().canonical_map(pairs)


def strong_connection(word: Word) -> ConnectionValue:
    return hopf_bundle().strong_connection(word)


def verify_strong_connection(max_degree: int = 2) -> list[Identity]:
    return hopf_bundle().verify_strong_connection(max_degree)


def associated_module_check() -> list[Identity]:
    return hopf_bundle().associated_module_check()
