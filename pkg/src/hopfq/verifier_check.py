"""Boundary checks for hopfq.verifier. Run: uv run python -m hopfq.verifier_check"""

from hopfq.errors import ConfigurationError
from hopfq.models import CheckResult, Config, Report
from hopfq.rmatrix import Family
from hopfq.verifier import ACCEPTANCE_CHECKS, Verifier, coverage_check, missing_criteria


def check_invalid_config_rejected() -> None:
    try:
        Verifier(q0=2.0)
    except ConfigurationError:
        pass
    else:
        raise AssertionError("q0 = 2 accepted")
    try:
        Verifier().suite("everything")
    except ConfigurationError:
        return
    raise AssertionError("unknown suite accepted")


def check_injected_fault_is_caught() -> None:
    clean = Verifier(config=Config())
    faulty = Verifier(config=Config(inject_fault=True))
    assert clean.relations.golden(Family.XX)[0] is True
    ok, residual, _ = faulty.relations.golden(Family.XX)
    assert ok is False
    assert "x2*x1" in residual
    assert faulty.relations.golden(Family.VV)[0] is True


def check_crash_becomes_error() -> None:
    suite = Verifier().relations
    result = suite._check("boom", "1/0 is defined", lambda: 1 / 0)
    assert result.check_id == "relations.boom"
    assert result.status == "error"
    assert result.details["exception"] == "ZeroDivisionError"


def check_pairing_suite() -> None:
    report = Verifier(config=Config()).pairing.run()
    assert report.exit_code == 0, [(c.check_id, c.residual) for c in report.failed]
    assert {"pairing.value", "pairing.tau0", "pairing.trivial", "pairing.exact"} <= report.ids()


def check_coverage_audit() -> None:
    empty = coverage_check(Report())
    assert empty.status == "fail"
    assert set(missing_criteria(Report())) == set(ACCEPTANCE_CHECKS)
    ids = {p.replace("*", "x") for patterns in ACCEPTANCE_CHECKS.values() for p in patterns}
    full = Report(checks=[CheckResult(check_id=i, statement="", status="pass") for i in sorted(ids)])
    assert missing_criteria(full) == {}
    assert coverage_check(full).status == "pass"


def check_bundle_suite_at_default_degree() -> None:
    config = Config()
    assert config.max_degree == 2
    report = Verifier(config=config).bundle.run()
    assert report.exit_code == 0, [(c.check_id, c.residual) for c in report.failed]
    assert {"bundle.ell.gamma*gammab.2", "bundle.ell.alpha*gamma.3"} <= report.ids()


def check_su2_properties() -> None:
    suite = Verifier(config=Config()).properties
    assert suite.associativity("su2") == (True, "", {"trials": 1000})
    ok, residual, details = suite.confluence("su2")
    assert ok, residual
    assert details["overlaps"] > 0


if __name__ == "__main__":
    check_invalid_config_rejected()
    check_injected_fault_is_caught()
    check_crash_becomes_error()
    check_pairing_suite()
    check_bundle_suite_at_default_degree()
    check_su2_properties()
    check_coverage_audit()
    print("ok: hopfq.verifier")
