"""Boundary checks for hopfq.representation. Run: uv run python -m hopfq.representation_check"""

from fractions import Fraction

from hopfq.errors import ValidationError
from hopfq.ncalg import NCPoly
from hopfq.representation import (
    TruncatedBasis,
    adjointness_residual,
    build_beta,
    build_sigma,
    closed_form_trace,
    exact_q,
    exact_relation_residuals,
    index_pairing,
    recursion_residual,
    tau0,
    tau1,
    trace_report,
    truncated_trace,
    verify_relations_numeric,
)
from hopfq.spheres import chern_character_0


def check_basis() -> None:
    basis = TruncatedBasis(3, 4)
    assert basis.size == 12
    assert basis.state(basis.index(2, 3)) == (2, 3)
    assert not basis.contains(3, 0)
    assert basis.interior().tolist() == [basis.index(0, 0), basis.index(0, 1)]
    assert TruncatedBasis(2, 2).interior().size == 0


def check_rejects_bad_input() -> None:
    for q0 in (0.0, 1.0, 1.5):
        try:
            build_sigma(q0, 4, 4)
        except ValidationError:
            continue
        raise AssertionError(f"q0 = {q0} accepted")
    try:
        TruncatedBasis(0, 5)
    except ValidationError:
        return
    raise AssertionError("empty window accepted")


def check_shift_weights() -> None:
    ops = build_sigma(0.5, 5, 5)
    t = ops.t.toarray()
    i = ops.basis.index(1, 2)
    assert abs(t[i, i] - 0.5 ** (2 + 8 + 4)) < 1e-18
    # a lowers m and kills the m = 0 row
    assert ops.a[:, ops.basis.index(0, 3)].nnz == 0
    assert adjointness_residual(ops) < 1e-15
    assert recursion_residual(0.5, 5, 5) < 1e-15


def check_sigma_relations() -> None:
    for q0 in (0.3, 0.5, 0.8):
        for r in verify_relations_numeric(build_sigma(q0, 12, 12)):
            assert r.holds(1e-12), (q0, r.name, r.residual, r.worst_state)


def check_sigma_relations_exact() -> None:
    for r in exact_relation_residuals(Fraction(1, 2), 6, 6):
        assert r.holds, (r.name, r.nonzero[:3])


def check_beta_relations() -> None:
    assert all(r.holds(1e-15) for r in verify_relations_numeric(build_beta()))


def check_traces() -> None:
    q0 = 0.5
    report = trace_report(build_sigma(q0, 30, 30))
    assert abs(report.trace_t - report.truncated_closed_form) < 1e-12
    assert report.tail < report.closed_form * (q0**60 + q0**120) + 1e-15
    assert abs(closed_form_trace(q0) - q0**4 / ((1 - q0**2) * (1 - q0**4))) < 1e-15
    assert report.trace_abs_a < report.bound_abs_a
    assert report.trace_abs_b < report.bound_abs_b
    exact = truncated_trace(Fraction(1, 2), 2, 1)
    assert exact == sum(Fraction(1, 2) ** (2 * m + 4) for m in range(2))


def check_pairing() -> None:
    report = index_pairing(0.5, 30, 30)
    assert abs(report.pairing_value + 1) < 1e-9
    assert abs(report.pairing_value + 1) <= report.truncation_error_bound + 1e-12
    assert report.tau0_value == 2
    assert report.trivial_pairing == 0
    coarse = index_pairing(0.5, 3, 2)
    assert 0 < coarse.pairing_value + 1 <= coarse.truncation_error_bound


def check_pairing_exact() -> None:
    q0 = Fraction(1, 2)
    report = index_pairing(q0, 4, 3, exact=True)
    expected = -(1 - q0**8) * (1 - q0**12)
    assert Fraction(report.exact_pairing_value) == expected
    assert report.model_dump(by_alias=True)["M"] == 4


def check_functionals() -> None:
    ch0 = chern_character_0(NCPoly.gen("t"))
    assert tau0(ch0) == 2
    assert tau1(NCPoly.one(), build_sigma(0.5, 4, 4)) == 0.0


def check_exact_q_normalization() -> None:
    assert exact_q(0.1) == Fraction(1, 10)
    assert exact_q(1 / 3) == Fraction(1, 3)
    assert exact_q("1/3") == Fraction(1, 3)
    assert exact_q(Fraction(2, 7)) == Fraction(2, 7)
    from_float = index_pairing(1 / 3, 3, 2, exact=True)
    from_fraction = index_pairing(Fraction(1, 3), 3, 2, exact=True)
    assert from_float.exact_pairing_value == from_fraction.exact_pairing_value
    assert exact_relation_residuals(0.1, 3, 3) == exact_relation_residuals(Fraction(1, 10), 3, 3)


if __name__ == "__main__":
    check_basis()
    check_rejects_bad_input()
    check_shift_weights()
    check_sigma_relations()
    check_sigma_relations_exact()
    check_beta_relations()
    check_traces()
    check_pairing()
    check_pairing_exact()
    check_exact_q_normalization()
    check_functionals()
    print("ok: hopfq.representation")
