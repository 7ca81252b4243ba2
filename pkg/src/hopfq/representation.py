"""The *-representations beta and sigma of A(S^4_q) and the index pairings.

sigma acts on |m,n>, 0 <= m < M, 0 <= n < N, by weighted shifts:

    t |m,n>    = q^(2m+4n+4) |m,n>
    abar |m,n> = (1 - q^(2m+2))^(1/2) q^(m+2n+1) |m+1,n>
    a |m,n>    = (1 - q^(2m))^(1/2) q^(m+2n) |m-1,n>
    b |m,n>    = (1 - q^(4n+4))^(1/2) q^(2(m+n+2)) |m,n+1>
    bbar |m,n> = (1 - q^(4n))^(1/2) q^(2(m+n+1)) |m,n-1>

Shifts that leave the window give zero. beta is the trivial representation
t = a = b = 0 on a one-dimensional space.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np
from scipy import sparse

from .coeffring import LaurentPoly
from .errors import ValidationError
from .logging import logger
from .models import PairingReport, TraceReport
from .ncalg import NCPoly, Word
from .spheres import ch0_coefficient, chern_character_0, s4_relations

Number = Fraction | float

# generator -> (dm, dn, (m, n) -> (k, power)); the weight is (1 - q^k)^(1/2) q^power,
# k = None meaning no square-root factor
_SHIFTS: dict[str, tuple[int, int, Callable[[int, int], tuple[int | None, int]]]] = {
    "t": (0, 0, lambda m, n: (None, 2 * m + 4 * n + 4)),
    "ab": (1, 0, lambda m, n: (2 * m + 2, m + 2 * n + 1)),
    "a": (-1, 0, lambda m, n: (2 * m, m + 2 * n)),
    "b": (0, 1, lambda m, n: (4 * n + 4, 2 * (m + n + 2))),
    "bb": (0, -1, lambda m, n: (4 * n, 2 * (m + n + 1))),
}


def _validate_q0(q0: Number) -> None:
    if not 0 < q0 < 1:
        raise ValidationError(f"q0 must lie in (0, 1), got {q0}")


EXACT_Q_DENOMINATOR = 1 << 20


def exact_q(q0: Number | str) -> Fraction:
    """q0 as a rational for exact mode.

    Fractions and strings like "1/2" are taken as given; floats are rounded
    to the nearest fraction with denominator at most 2^20.
    """
    if isinstance(q0, float):
        return Fraction(q0).limit_denominator(EXACT_Q_DENOMINATOR)
    return Fraction(q0)


@dataclass(frozen=True)
class TruncatedBasis:
    """|m,n> for 0 <= m < M, 0 <= n < N, enumerated row-major with m outer."""

    m_cutoff: int
    n_cutoff: int

    def __post_init__(self) -> None:
        if self.m_cutoff < 1 or self.n_cutoff < 1:
            raise ValidationError(f"cutoffs must be positive, got M={self.m_cutoff}, N={self.n_cutoff}")

    @property
    def size(self) -> int:
        return self.m_cutoff * self.n_cutoff

    def index(self, m: int, n: int) -> int:
        return m * self.n_cutoff + n

    def state(self, index: int) -> tuple[int, int]:
        return divmod(index, self.n_cutoff)

    def contains(self, m: int, n: int) -> bool:
        return 0 <= m < self.m_cutoff and 0 <= n < self.n_cutoff

    def interior(self) -> np.ndarray:
        """Indices with m < M-2 and n < N-2, where no quadratic word leaves the window."""
        return np.array(
            [
                self.index(m, n)
                for m in range(max(self.m_cutoff - 2, 0))
                for n in range(max(self.n_cutoff - 2, 0))
            ],
            dtype=int,
        )


@dataclass(frozen=True)
class OperatorSet:
    """sigma(t), sigma(a), sigma(abar), sigma(b), sigma(bbar) as sparse matrices."""

    q0: float
    basis: TruncatedBasis
    t: sparse.csr_matrix
    a: sparse.csr_matrix
    abar: sparse.csr_matrix
    b: sparse.csr_matrix
    bbar: sparse.csr_matrix
    kind: Literal["sigma", "beta"] = "sigma"

    def by_name(self) -> dict[str, sparse.csr_matrix]:
        return {"t": self.t, "a": self.a, "ab": self.abar, "b": self.b, "bb": self.bbar}

    def word(self, word: Word) -> sparse.csr_matrix:
        ops = self.by_name()
        out = sparse.identity(self.basis.size, format="csr")
        for g in word:
            out = out @ ops[g]
        return out

    def evaluate(self, e: NCPoly) -> sparse.csr_matrix:
        """The operator of an A(S^4_q) polynomial at q = q0."""
        out = sparse.csr_matrix((self.basis.size, self.basis.size))
        for w, c in e.terms.items():
            out = out + float(c.evaluate(self.q0, "float")) * self.word(w)
        return out

    def interior(self) -> np.ndarray:
        if self.kind == "beta":
            return np.arange(self.basis.size)
        return self.basis.interior()


def _weight(name: str, m: int, n: int, q0: float) -> float:
    k, power = _SHIFTS[name][2](m, n)
    root = 1.0 if k is None else math.sqrt(1.0 - q0**k)
    return root * q0**power


def _shift_matrix(name: str, basis: TruncatedBasis, q0: float) -> sparse.csr_matrix:
    dm, dn, _ = _SHIFTS[name]
    rows, cols, data = [], [], []
    for m in range(basis.m_cutoff):
        for n in range(basis.n_cutoff):
            if not basis.contains(m + dm, n + dn):
                continue
            w = _weight(name, m, n, q0)
            if w == 0.0:
                continue
            rows.append(basis.index(m + dm, n + dn))
            cols.append(basis.index(m, n))
            data.append(w)
    return sparse.csr_matrix((data, (rows, cols)), shape=(basis.size, basis.size))


def build_sigma(q0: float, m_cutoff: int, n_cutoff: int) -> OperatorSet:
    """The five weighted-shift operators on the M x N window."""
    _validate_q0(q0)
    basis = TruncatedBasis(m_cutoff, n_cutoff)
    mats = {name: _shift_matrix(name, basis, q0) for name in _SHIFTS}
    logger.debug(f"sigma at q0={q0}: {basis.size} basis vectors")
    return OperatorSet(
        q0=q0,
        basis=basis,
        t=mats["t"],
        a=mats["a"],
        abar=mats["ab"],
        b=mats["b"],
        bbar=mats["bb"],
    )


def build_beta(q0: float = 0.5) -> OperatorSet:
    """The trivial representation t = a = b = 0 on C."""
    _validate_q0(q0)
    basis = TruncatedBasis(1, 1)
    zero = sparse.csr_matrix((1, 1))
    return OperatorSet(q0=q0, basis=basis, t=zero, a=zero, abar=zero, b=zero, bbar=zero, kind="beta")


@dataclass(frozen=True)
class RelationResidual:
    """Max-norm residual of one relation on the interior subspace."""

    name: str
    statement: str
    residual: float
    worst_state: tuple[int, int] | None = None

    def holds(self, tol: float) -> bool:
        return self.residual < tol


def verify_relations_numeric(ops: OperatorSet, tol: float = 1e-12) -> list[RelationResidual]:
    """Every relation of A(S^4_q) and its conjugate as an operator on the interior."""
    cols = ops.interior()
    out = []
    for name, stmt, rel in s4_relations():
        r = ops.evaluate(rel)
        block = np.abs(r[:, cols].toarray()) if cols.size else np.zeros((0, 0))
        if block.size == 0:
            out.append(RelationResidual(name, stmt, 0.0))
            continue
        worst = float(block.max())
        col = int(np.unravel_index(int(block.argmax()), block.shape)[1])
        state = ops.basis.state(int(cols[col]))
        if worst >= tol:
            logger.warning(f"sigma relation {name}: residual {worst:.3e} at |{state[0]},{state[1]}>")
        out.append(RelationResidual(name, stmt, worst, state))
    return out


@dataclass(frozen=True)
class _Root:
    """s * sqrt(prod factors) with each factor kept at most once."""

    s: Fraction
    factors: tuple[Fraction, ...] = ()

    def times(self, s: Fraction, factor: Fraction | None) -> _Root:
        if factor is None:
            return _Root(self.s * s, self.factors)
        factors = list(self.factors)
        if factor in factors:
            factors.remove(factor)
            return _Root(self.s * s * factor, tuple(factors))
        return _Root(self.s * s, tuple(sorted([*factors, factor])))


def _apply_exact(word: Word, m: int, n: int, q0: Fraction, basis: TruncatedBasis) -> tuple[tuple[int, int], _Root] | None:
    """Apply a word (rightmost letter first) to |m,n> in exact arithmetic."""
    state = (m, n)
    value = _Root(Fraction(1))
    for g in reversed(word):
        dm, dn, weight = _SHIFTS[g]
        k, power = weight(*state)
        target = (state[0] + dm, state[1] + dn)
        if not basis.contains(*target):
            return None
        factor = None if k is None else 1 - q0**k
        if factor == 0:
            return None
        value = value.times(q0**power, factor)
        state = target
    return state, value


@dataclass(frozen=True)
class ExactResidual:
    name: str
    statement: str
    nonzero: list[tuple[tuple[int, int], Fraction]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.nonzero


def exact_relation_residuals(q0: Fraction, m_cutoff: int, n_cutoff: int) -> list[ExactResidual]:
    """Interior residuals of every relation with square roots tracked symbolically.

    Terms are grouped by target state and by the surviving square-root
    factors; a group summing to zero is certified zero in rational arithmetic.
    """
    q0 = exact_q(q0)
    _validate_q0(q0)
    basis = TruncatedBasis(m_cutoff, n_cutoff)
    out = []
    for name, stmt, rel in s4_relations():
        bad: list[tuple[tuple[int, int], Fraction]] = []
        coeffs = {w: c.evaluate(q0, "exact") for w, c in rel.terms.items()}
        for index in basis.interior():
            m, n = basis.state(int(index))
            groups: dict[tuple[tuple[int, int], tuple[Fraction, ...]], Fraction] = {}
            for w, c in coeffs.items():
                hit = _apply_exact(w, m, n, q0, basis)
                if hit is None:
                    continue
                target, value = hit
                key = (target, value.factors)
                groups[key] = groups.get(key, Fraction(0)) + c * value.s
            bad.extend(((m, n), v) for v in groups.values() if v != 0)
        out.append(ExactResidual(name, stmt, bad))
    return out


def adjointness_residual(ops: OperatorSet) -> float:
    """max |a - abar^T| and |b - bbar^T| over the interior columns."""
    cols = ops.interior()
    diffs = [(ops.a - ops.abar.T).tocsr(), (ops.b - ops.bbar.T).tocsr()]
    return max(float(np.abs(d[:, cols].toarray()).max(initial=0.0)) for d in diffs)


def recursion_residual(q0: float, m_cutoff: int, n_cutoff: int) -> float:
    """a_{m,n+1} = q^2 a_{m,n} and b_{m+1,n} = q^2 b_{m,n} for the shift weights."""
    worst = 0.0
    for m in range(m_cutoff - 1):
        for n in range(n_cutoff - 1):
            worst = max(
                worst,
                abs(_weight("ab", m, n + 1, q0) - q0**2 * _weight("ab", m, n, q0)),
                abs(_weight("b", m + 1, n, q0) - q0**2 * _weight("b", m, n, q0)),
            )
    return worst


def closed_form_trace(q0: Number) -> Number:
    """Tr(sigma(t)) = q^4 / ((1 - q^2)(1 - q^4))."""
    return q0**4 / ((1 - q0**2) * (1 - q0**4))


def truncated_trace(q0: Number, m_cutoff: int, n_cutoff: int) -> Number:
    """The geometric sum of t over the window."""
    return closed_form_trace(q0) * (1 - q0 ** (2 * m_cutoff)) * (1 - q0 ** (4 * n_cutoff))


def trace_report(ops: OperatorSet) -> TraceReport:
    q0 = ops.q0
    basis = ops.basis
    return TraceReport(
        q0=q0,
        m_cutoff=basis.m_cutoff,
        n_cutoff=basis.n_cutoff,
        trace_t=float(ops.t.diagonal().sum()),
        truncated_closed_form=float(truncated_trace(q0, basis.m_cutoff, basis.n_cutoff)),
        closed_form=float(closed_form_trace(q0)),
        # weighted shifts: |x| has the absolute weights as eigenvalues
        trace_abs_a=float(np.abs(ops.abar.data).sum()),
        bound_abs_a=q0 / ((1 - q0) * (1 - q0**2)),
        trace_abs_b=float(np.abs(ops.b.data).sum()),
        bound_abs_b=q0**4 / (1 - q0**2) ** 2,
    )


def _exact_trace_t(q0: Fraction, m_cutoff: int, n_cutoff: int) -> Fraction:
    return sum(
        (q0 ** (2 * m + 4 * n + 4) for m in range(m_cutoff) for n in range(n_cutoff)),
        Fraction(0),
    )


def tau1(e: NCPoly, ops: OperatorSet) -> float:
    """Tr(sigma(e) - beta(e)); the unit contributes Tr(1 - 1) = 0, beta kills every word."""
    total = 0.0
    for w, c in e.terms.items():
        if w:
            total += float(c.evaluate(ops.q0, "float")) * float(ops.word(w).diagonal().sum())
    return total


def tau0(e: NCPoly) -> LaurentPoly:
    """beta(e): the constant term, every generator acting as zero."""
    return e.coefficient(())


def index_pairing(q0: Number, m_cutoff: int, n_cutoff: int, *, exact: bool = False) -> PairingReport:
    """<[mu], [p]> = tau^1(ch_0(p)) at truncation M x N, plus tau^0 and the trivial pairing."""
    _validate_q0(q0)
    ch0 = chern_character_0(NCPoly.gen("t"))
    coeff = ch0_coefficient()
    bound = float(q0) ** (2 * m_cutoff) + float(q0) ** (4 * n_cutoff)
    tau0_value = tau0(ch0).evaluate(1)
    if exact:
        qf = exact_q(q0)
        trace = _exact_trace_t(qf, m_cutoff, n_cutoff)
        value = coeff.evaluate(qf, "exact") * trace
        return PairingReport(
            q0=float(q0),
            m_cutoff=m_cutoff,
            n_cutoff=n_cutoff,
            exact=True,
            trace_t=float(trace),
            closed_form=float(closed_form_trace(qf)),
            pairing_value=float(value),
            tau0_value=float(tau0_value),
            trivial_pairing=0.0,
            truncation_error_bound=bound,
            exact_trace_t=str(trace),
            exact_pairing_value=str(value),
        )
    ops = build_sigma(float(q0), m_cutoff, n_cutoff)
    value = tau1(ch0, ops)
    return PairingReport(
        q0=float(q0),
        m_cutoff=m_cutoff,
        n_cutoff=n_cutoff,
        trace_t=float(ops.t.diagonal().sum()),
        closed_form=float(closed_form_trace(float(q0))),
        pairing_value=value,
        tau0_value=float(tau0_value),
        trivial_pairing=tau1(NCPoly.one(), ops),
        truncation_error_bound=bound,
    )
