"""Boundary checks for hopfq.models. Run: uv run python -m hopfq.models_check"""

import os
from unittest import mock

from pydantic import ValidationError

from hopfq.models import CheckResult, Config, PairingReport, Report


def check_defaults() -> None:
    cfg = Config()
    assert (cfg.q0, cfg.m_cutoff, cfg.n_cutoff) == (0.5, 30, 30)
    assert cfg.samples == 2_000_000
    assert cfg.inject_fault is False


def check_invalid_values_rejected() -> None:
    for kwargs in ({"q0": 1.0}, {"q0": 0}, {"m_cutoff": 0}, {"samples": 10}, {"fd_step": 0.5}, {"log_level": "LOUD"}):
        try:
            Config(**kwargs)
        except ValidationError:
            continue
        raise AssertionError(f"Config accepted {kwargs}")


def check_env_and_overrides() -> None:
    env = {"HOPFQ_Q": "0.25", "HOPFQ_M": "12", "HOPFQ_INJECT_FAULT": "yes", "HOPFQ_LOG_LEVEL": "debug"}
    with mock.patch.dict(os.environ, env, clear=True):
        cfg = Config.from_env()
        assert cfg.q0 == 0.25
        assert cfg.m_cutoff == 12
        assert cfg.inject_fault is True
        assert cfg.log_level == "DEBUG"
        assert Config.from_env(q0=0.75, m_cutoff=None).q0 == 0.75
        assert Config.from_env(m_cutoff=None).m_cutoff == 12


def check_report_ids_unique() -> None:
    ok = CheckResult(check_id="a.b", statement="x = x", status="pass")
    try:
        Report(checks=[ok, ok])
    except ValidationError:
        pass
    else:
        raise AssertionError("duplicate check ids accepted")
    bad = CheckResult(check_id="a.c", statement="x = y", status="fail", residual="x - y")
    report = Report(checks=[ok]) + Report(checks=[bad])
    assert report.exit_code == 1
    assert [c.check_id for c in report.failed] == ["a.c"]
    assert report.ids() == {"a.b", "a.c"}
    assert Report(checks=[ok]).exit_code == 0


def check_pairing_aliases() -> None:
    report = PairingReport(
        q0=0.5, M=3, N=2, trace_t=0.1, closed_form=0.1, pairing_value=-1.0,
        tau0_value=2.0, trivial_pairing=0.0, truncation_error_bound=0.02,
    )
    assert report.m_cutoff == 3
    dumped = report.model_dump(mode="json", by_alias=True)
    assert dumped["M"] == 3
    assert dumped["N"] == 2


if __name__ == "__main__":
    check_defaults()
    check_invalid_values_rejected()
    check_env_and_overrides()
    check_report_ids_unique()
    check_pairing_aliases()
    print("ok: hopfq.models")
