"""Free *-algebras over Q[q, q^-1] and rewrite-system normal forms.

Words are tuples of generator names. An ``NCPoly`` maps words to nonzero
Laurent coefficients; the empty word is the unit. A ``RewriteSystem`` holds
quadratic rules ``(g, h) -> NCPoly`` plus an optional central rule, and
normalizes by always rewriting the largest pending word first.
"""

from __future__ import annotations

import heapq
from collections import OrderedDict
from collections.abc import Callable, Collection, Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Literal, Protocol

from .coeffring import ONE, ZERO, LaurentPoly
from .errors import (
    ErrorCode,
    HopfqError,
    InconsistentRelationsError,
    RewriteBudgetError,
    UnknownGeneratorError,
)
from .logging import logger

Word = tuple[str, ...]
Coeff = LaurentPoly | int | Fraction

DEFAULT_BUDGET = 1_000_000
NORMAL_FORM_CACHE_SIZE = 1 << 16
MAX_SPHERE_INDEX = 8


@dataclass(frozen=True, slots=True)
class GenId:
    """A generator: its name, its star partner and its rank in the total order."""

    name: str
    star: str
    barred: bool
    rank: int


def _registry() -> dict[str, GenId]:
    gens: dict[str, GenId] = {}
    for i in range(1, MAX_SPHERE_INDEX + 1):
        gens[f"xb{i}"] = GenId(f"xb{i}", f"x{i}", True, i)
        gens[f"x{i}"] = GenId(f"x{i}", f"xb{i}", False, 100 + i)
    for rank, (name, star, barred) in enumerate(
        [
            ("alpha", "alphab", False),
            ("alphab", "alpha", True),
            ("gamma", "gammab", False),
            ("gammab", "gamma", True),
        ]
    ):
        gens[name] = GenId(name, star, barred, 200 + rank)
    for rank, (name, star, barred) in enumerate(
        [("t", "t", False), ("ab", "a", True), ("a", "ab", False), ("bb", "b", True), ("b", "bb", False)]
    ):
        gens[name] = GenId(name, star, barred, 300 + rank)
    return gens


GENERATORS: Mapping[str, GenId] = MappingProxyType(_registry())

SU2_ALPHABET: tuple[str, ...] = ("alpha", "alphab", "gamma", "gammab")
S4_ALPHABET: tuple[str, ...] = ("t", "ab", "a", "bb", "b")


def sphere_alphabet(n: int = 2) -> tuple[str, ...]:
    """xb1 < ... < xbN < x1 < ... < xN for N = 2n."""
    big_n = 2 * n
    if not 1 <= big_n <= MAX_SPHERE_INDEX:
        raise HopfqError(ErrorCode.INVALID_PARAMETER, f"n = {n} is out of range")
    return tuple(f"xb{i}" for i in range(1, big_n + 1)) + tuple(
        f"x{i}" for i in range(1, big_n + 1)
    )


def word_key(word: Word, weights: Mapping[str, int] | None = None) -> tuple[int, int, tuple[int, ...]]:
    """Graded order: length, then total weight, then lexicographic by rank."""
    w = sum(weights.get(g, 0) for g in word) if weights else 0
    return (len(word), w, tuple(GENERATORS[g].rank for g in word))


def star_word(word: Word) -> Word:
    return tuple(GENERATORS[g].star for g in reversed(word))


def render_word(word: Word) -> str:
    return "*".join(word) if word else "1"


class NCPoly:
    """Finite sum of words with Laurent coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Coeff] | Iterable[tuple[Word, Coeff]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, LaurentPoly] = {}
        for word, coeff in items:
            c = LaurentPoly.coerce(coeff)
            if c:
                word = tuple(word)
                acc[word] = acc.get(word, ZERO) + c
        self._terms: Mapping[Word, LaurentPoly] = MappingProxyType(
            {w: c for w, c in acc.items() if c}
        )
        self._hash: int | None = None

    @classmethod
    def zero(cls) -> NCPoly:
        return cls()

    @classmethod
    def one(cls) -> NCPoly:
        return cls({(): ONE})

    @classmethod
    def scalar(cls, c: Coeff) -> NCPoly:
        return cls({(): c})

    @classmethod
    def word(cls, word: Iterable[str], coeff: Coeff = 1) -> NCPoly:
        return cls({tuple(word): coeff})

    @classmethod
    def gen(cls, name: str, coeff: Coeff = 1) -> NCPoly:
        if name not in GENERATORS:
            raise UnknownGeneratorError(name)
        return cls({(name,): coeff})

    @classmethod
    def parse(cls, text: str, alphabet: Collection[str] | None = None) -> NCPoly:
        from .grammar import parse_expr

        return parse_expr(text, alphabet)

    @staticmethod
    def coerce(value: NCPoly | Coeff) -> NCPoly:
        if isinstance(value, NCPoly):
            return value
        return NCPoly.scalar(value)

    @property
    def terms(self) -> Mapping[Word, LaurentPoly]:
        return self._terms

    def words(self) -> list[Word]:
        return sorted(self._terms, key=word_key)

    def coefficient(self, word: Word) -> LaurentPoly:
        return self._terms.get(tuple(word), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def letters(self) -> set[str]:
        return {g for w in self._terms for g in w}

    @property
    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    # Algebra

    def __add__(self, other: NCPoly | Coeff) -> NCPoly:
        other = NCPoly.coerce(other)
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, ZERO) + c
        return NCPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> NCPoly:
        return NCPoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: NCPoly | Coeff) -> NCPoly:
        return self + (-NCPoly.coerce(other))

    def __rsub__(self, other: NCPoly | Coeff) -> NCPoly:
        return NCPoly.coerce(other) - self

    def __mul__(self, other: NCPoly | Coeff) -> NCPoly:
        if not isinstance(other, NCPoly):
            return self.scale(other)
        acc: dict[Word, LaurentPoly] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                acc[w] = acc.get(w, ZERO) + c1 * c2
        return NCPoly(acc)

    def __rmul__(self, other: Coeff) -> NCPoly:
        return self.scale(other)

    def scale(self, c: Coeff) -> NCPoly:
        c = LaurentPoly.coerce(c)
        return NCPoly({w: c * v for w, v in self._terms.items()})

    def star(self) -> NCPoly:
        """Antimultiplicative involution; coefficients are real, so fixed."""
        return NCPoly({star_word(w): c for w, c in self._terms.items()})

    def map_coefficients(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> NCPoly:
        return NCPoly({w: fn(c) for w, c in self._terms.items()})

    def invert_q(self) -> NCPoly:
        return self.map_coefficients(LaurentPoly.invert_q)

    def specialize(
        self, q0: Fraction | float | int, mode: Literal["exact", "float"] = "exact"
    ) -> dict[Word, Fraction | float]:
        """Coefficients evaluated at q = q0; zero values dropped."""
        out = {w: c.evaluate(q0, mode) for w, c in self._terms.items()}
        return {w: v for w, v in out.items() if v}

    def commutative_image(
        self, q0: Fraction | float | int = 1, mode: Literal["exact", "float"] = "exact"
    ) -> dict[Word, Fraction | float]:
        """Image in the commutative polynomial ring at q = q0 (words sorted)."""
        acc: dict[Word, Any] = {}
        for w, v in self.specialize(q0, mode).items():
            key = tuple(sorted(w, key=lambda g: GENERATORS[g].rank))
            acc[key] = acc.get(key, 0) + v
        return {w: v for w, v in acc.items() if v}

    # Comparison and rendering

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly | int | Fraction):
            other = NCPoly.scalar(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out: list[str] = []
        for i, word in enumerate(self.words()):
            text = _term_text(self._terms[word], word)
            if i == 0:
                out.append(text)
            elif text.startswith("-"):
                out.append(f" - {text[1:]}")
            else:
                out.append(f" + {text}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"NCPoly({str(self)!r})"


def _term_text(coeff: LaurentPoly, word: Word) -> str:
    c = str(coeff) if coeff.is_unit() else f"({coeff})"
    if not word:
        return c
    w = render_word(word)
    if coeff == 1:
        return w
    if coeff == -1:
        return f"-{w}"
    return f"{c}*{w}"


@dataclass(frozen=True)
class CentralRule:
    """A rule ``lead -> replacement`` whose relation is central in the quadratic algebra.

    A normal word containing both letters of ``lead`` is rewritten through
    ``W' * (lead - replacement) = 0`` with W' the word minus the last
    occurrence of each letter.
    """

    lead: Word
    replacement: NCPoly

    @property
    def relation(self) -> NCPoly:
        return NCPoly.word(self.lead) - self.replacement

    def applies_to(self, word: Word) -> bool:
        return self.lead[0] in word and self.lead[1] in word

    def cofactor(self, word: Word) -> Word:
        letters = list(word)
        for g in reversed(self.lead):
            idx = len(letters) - 1 - letters[::-1].index(g)
            del letters[idx]
        return tuple(letters)


class _WordCache:
    """Normal forms of single words; the least recently used entry goes first."""

    def __init__(self, maxsize: int) -> None:
        self.maxsize = maxsize
        self._data: OrderedDict[Word, NCPoly] = OrderedDict()

    def get(self, word: Word) -> NCPoly | None:
        out = self._data.get(word)
        if out is not None:
            self._data.move_to_end(word)
        return out

    def put(self, word: Word, value: NCPoly) -> None:
        self._data[word] = value
        self._data.move_to_end(word)
        while len(self._data) > self.maxsize:
            self._data.popitem(last=False)

    def __len__(self) -> int:
        return len(self._data)


class RewriteSystem:
    """Ordered reduction rules presenting an algebra.

    Every replacement word must be strictly smaller than its leading word in
    the weighted graded order, which makes normalization terminate.
    """

    def __init__(
        self,
        name: str,
        alphabet: Sequence[str],
        rules: Mapping[Word, NCPoly],
        *,
        weights: Mapping[str, int] | None = None,
        central: CentralRule | None = None,
        budget: int = DEFAULT_BUDGET,
        cache_size: int = NORMAL_FORM_CACHE_SIZE,
        validate: bool = True,
    ) -> None:
        self.name = name
        self.alphabet: tuple[str, ...] = tuple(alphabet)
        self.rules: Mapping[Word, NCPoly] = MappingProxyType(dict(rules))
        self.weights: Mapping[str, int] = MappingProxyType(dict(weights or {}))
        self.central = central
        self.budget = budget
        self._letters = frozenset(self.alphabet)
        self._cache = _WordCache(cache_size)
        self._quadratic_cache = _WordCache(cache_size)
        if validate:
            self._validate()

    def _validate(self) -> None:
        leads = list(self.rules.items())
        if self.central is not None:
            leads.append((self.central.lead, self.central.replacement))
        for lead, rep in leads:
            self.check_letters(NCPoly.word(lead) + rep)
            top = self.key(lead)
            for w in rep.terms:
                if self.key(w) >= top:
                    raise HopfqError(
                        ErrorCode.INVALID_PARAMETER,
                        f"{self.name}: rule {render_word(lead)} -> {rep} does not decrease "
                        f"(word {render_word(w)})",
                    )

    def key(self, word: Word) -> tuple[int, int, tuple[int, ...]]:
        return word_key(word, self.weights)

    def leading_word(self, e: NCPoly) -> Word:
        return max(e.terms, key=self.key)

    def check_letters(self, e: NCPoly) -> None:
        for g in e.letters():
            if g not in self._letters:
                raise UnknownGeneratorError(g, self.name)

    def with_budget(self, budget: int) -> RewriteSystem:
        return RewriteSystem(
            self.name,
            self.alphabet,
            self.rules,
            weights=self.weights,
            central=self.central,
            budget=budget,
            validate=False,
        )

    def relations(self) -> list[tuple[Word, NCPoly]]:
        """Every rule as ``(lead, replacement)``, central rule last."""
        out = sorted(self.rules.items(), key=lambda kv: self.key(kv[0]))
        if self.central is not None:
            out.append((self.central.lead, self.central.replacement))
        return out

    def _quadratic_redex(self, word: Word) -> int | None:
        for i in range(len(word) - 1):
            if word[i : i + 2] in self.rules:
                return i
        return None

    def is_normal(self, word: Word) -> bool:
        if self._quadratic_redex(word) is not None:
            return False
        return self.central is None or not self.central.applies_to(word)

    def normalize(self, e: NCPoly, *, use_central: bool = True) -> NCPoly:
        self.check_letters(e)
        return self._reduce(e, use_central=use_central, source=e)

    def normal_word(self, word: Word) -> NCPoly:
        return self.normalize(NCPoly.word(word))

    def mul(self, a: NCPoly, b: NCPoly) -> NCPoly:
        return self.normalize(a * b)

    def _reduce(self, e: NCPoly, *, use_central: bool, source: NCPoly) -> NCPoly:
        cache = self._cache if use_central else self._quadratic_cache
        pending: dict[Word, LaurentPoly] = dict(e.terms)
        heap = [(_neg_key(self.key(w)), w) for w in pending]
        heapq.heapify(heap)
        result: dict[Word, LaurentPoly] = {}
        steps = 0

        def push(word: Word, coeff: LaurentPoly) -> None:
            if word in pending:
                pending[word] = pending[word] + coeff
            else:
                pending[word] = coeff
                heapq.heappush(heap, (_neg_key(self.key(word)), word))

        while heap:
            _, word = heapq.heappop(heap)
            coeff = pending.pop(word, ZERO)
            if not coeff:
                continue
            hit = cache.get(word)
            if hit is not None:
                for w, c in hit.terms.items():
                    result[w] = result.get(w, ZERO) + coeff * c
                continue
            i = self._quadratic_redex(word)
            if i is not None:
                rep = NCPoly.word(word[:i]) * self.rules[word[i : i + 2]] * NCPoly.word(word[i + 2 :])
            elif use_central and self.central is not None and self.central.applies_to(word):
                rep = self._central_step(word)
            else:
                result[word] = result.get(word, ZERO) + coeff
                continue
            steps += 1
            if steps > self.budget:
                raise RewriteBudgetError(
                    f"{self.name}: more than {self.budget} rule applications normalizing {source}",
                    source=str(source),
                )
            for w, c in rep.terms.items():
                push(w, coeff * c)
        out = NCPoly(result)
        if len(e.terms) == 1:
            (word, coeff), = e.terms.items()
            if coeff == 1:
                cache.put(word, out)
        return out

    def _central_step(self, word: Word) -> NCPoly:
        """Rewrite a quadratic-normal word containing both central letters."""
        assert self.central is not None
        cofactor = self.central.cofactor(word)
        expanded = self._reduce(
            NCPoly.word(cofactor) * self.central.relation,
            use_central=False,
            source=NCPoly.word(word),
        )
        top = self.leading_word(expanded)
        c = expanded.coefficient(word)
        if top != word or not c.is_unit():
            raise HopfqError(
                ErrorCode.LEAD_NOT_ISOLATED,
                f"{self.name}: cannot isolate {render_word(word)} "
                f"(leading word {render_word(top)}, coefficient {c})",
                {"word": render_word(word)},
            )
        rest = expanded - NCPoly.word(word, c)
        return (-rest).scale(c.inverse())


def _neg_key(key: tuple[int, int, tuple[int, ...]]) -> tuple[int, int, tuple[int, ...]]:
    length, weight, ranks = key
    return (-length, -weight, tuple(-r for r in ranks))


def orient_relations(
    relations: Sequence[NCPoly],
    *,
    alphabet: Sequence[str],
    eligible: Callable[[Word], bool],
    weights: Mapping[str, int] | None = None,
    labels: Sequence[Any] | None = None,
    name: str = "relations",
    budget: int = DEFAULT_BUDGET,
) -> dict[Word, NCPoly]:
    """Turn relations ``rel = 0`` into quadratic rules ``lead -> replacement``.

    Each relation is reduced by the rules found so far; a zero remainder is a
    consequence, otherwise its largest word becomes a rule when it is
    eligible and has a unit coefficient. Relations that cannot be oriented yet
    are retried after the others. Raises InconsistentRelationsError naming the
    label of the first relation that can never be oriented.
    """
    labels = list(labels) if labels is not None else list(range(len(relations)))
    rules: dict[Word, NCPoly] = {}
    pending = list(zip(labels, relations, strict=True))
    consequences = 0
    while pending:
        deferred: list[tuple[Any, NCPoly]] = []
        progress = False
        for label, rel in pending:
            rs = RewriteSystem(name, alphabet, rules, weights=weights, budget=budget, validate=False)
            reduced = rs.normalize(rel)
            if reduced.is_zero():
                consequences += 1
                progress = True
                continue
            lead = rs.leading_word(reduced)
            c = reduced.coefficient(lead)
            if len(lead) != 2 or not eligible(lead) or not c.is_unit():
                deferred.append((label, reduced))
                continue
            rules[lead] = (-(reduced - NCPoly.word(lead, c))).scale(c.inverse())
            progress = True
        if not progress:
            label, reduced = deferred[0]
            raise InconsistentRelationsError(
                f"{name}: relation {label} leaves the unorientable remainder {reduced}",
                index_pair=label if isinstance(label, tuple) else None,
            )
        pending = deferred

    final = RewriteSystem(name, alphabet, rules, weights=weights, budget=budget, validate=False)
    oriented = {
        lead: final.normalize(rep)
        for lead, rep in sorted(rules.items(), key=lambda kv: final.key(kv[0]))
    }
    logger.debug(
        f"{name}: {len(oriented)} rules from {len(relations)} relations "
        f"({consequences} consequences)"
    )
    return oriented


def nc_normalize(e: NCPoly, rs: RewriteSystem) -> NCPoly:
    """Normal form of ``e`` modulo ``rs``."""
    return rs.normalize(e)


def nc_mul(a: NCPoly, b: NCPoly, rs: RewriteSystem) -> NCPoly:
    return rs.normalize(a * b)


def nc_star(e: NCPoly) -> NCPoly:
    return e.star()


def nc_substitute(
    e: NCPoly, images: Mapping[str, NCPoly], rs: RewriteSystem | None = None
) -> NCPoly:
    """Algebra map sending each generator ``g`` to ``images[g]`` (identity if absent).

    Products are normalized in ``rs`` word by word when a system is given.
    """
    out = NCPoly.zero()
    for word, coeff in e.terms.items():
        img = NCPoly.one()
        for g in word:
            img = img * images.get(g, NCPoly.gen(g))
            if rs is not None:
                img = rs.normalize(img)
        out = out + img.scale(coeff)
    return out


@dataclass(frozen=True)
class NCMatrix:
    """Rectangular matrix of NCPoly entries. Indices in ``entry`` are 1-based."""

    rows: tuple[tuple[NCPoly, ...], ...]

    @classmethod
    def of(cls, rows: Iterable[Iterable[NCPoly | Coeff]]) -> NCMatrix:
        return cls(tuple(tuple(NCPoly.coerce(e) for e in row) for row in rows))

    @classmethod
    def parse(cls, rows: Iterable[Iterable[str]], alphabet: Collection[str] | None = None) -> NCMatrix:
        return cls.of([[NCPoly.parse(e, alphabet) for e in row] for row in rows])

    @classmethod
    def identity(cls, size: int) -> NCMatrix:
        return cls.of([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def entry(self, i: int, j: int) -> NCPoly:
        return self.rows[i - 1][j - 1]

    def star(self) -> NCMatrix:
        """Conjugate transpose."""
        n_rows, n_cols = self.shape
        return NCMatrix.of([[self.rows[i][j].star() for i in range(n_rows)] for j in range(n_cols)])

    def map(self, fn: Callable[[NCPoly], NCPoly]) -> NCMatrix:
        return NCMatrix.of([[fn(e) for e in row] for row in self.rows])

    def normalize(self, rs: RewriteSystem) -> NCMatrix:
        return self.map(rs.normalize)

    def matmul(self, other: NCMatrix, rs: RewriteSystem | None = None) -> NCMatrix:
        n_rows, inner = self.shape
        if other.shape[0] != inner:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for i in range(n_rows):
            row = []
            for j in range(other.shape[1]):
                acc = sum((self.rows[i][k] * other.rows[k][j] for k in range(inner)), NCPoly.zero())
                row.append(rs.normalize(acc) if rs is not None else acc)
            out.append(row)
        return NCMatrix.of(out)

    def __sub__(self, other: NCMatrix) -> NCMatrix:
        return NCMatrix.of(
            [[a - b for a, b in zip(r1, r2, strict=True)] for r1, r2 in zip(self.rows, other.rows, strict=True)]
        )

    def trace(self) -> NCPoly:
        return sum((self.rows[i][i] for i in range(min(self.shape))), NCPoly.zero())

    def nonzero_entries(self) -> list[tuple[int, int, NCPoly]]:
        return [
            (i + 1, j + 1, e)
            for i, row in enumerate(self.rows)
            for j, e in enumerate(row)
            if not e.is_zero()
        ]


class Residual(Protocol):
    def is_zero(self) -> bool: ...


@dataclass(frozen=True)
class Identity:
    """A certified (or refuted) identity and its normalized residual."""

    name: str
    statement: str
    residual: Residual

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()
