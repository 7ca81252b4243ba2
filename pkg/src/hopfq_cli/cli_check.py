"""CLI boundary checks: normal forms, JSON reports, exit codes and config resolution.

Run: uv run python -m hopfq_cli.cli_check

Every invocation points the config file at a temp dir so the checks are
hermetic regardless of ~/.config/hopfq/config.yaml.
"""

import json
import tempfile
from pathlib import Path
from unittest import mock

import yaml
from click.testing import CliRunner

from hopfq_cli import __main__ as cli_module
from hopfq_cli.__main__ import cli


def invoke(*args: str, env: dict[str, str] | None = None):
    with tempfile.TemporaryDirectory() as home, mock.patch.object(cli_module, "CONFIG_FILE", Path(home) / "config.yaml"):
        return CliRunner().invoke(cli, list(args), env=env, catch_exceptions=False)


def invoke_json(*args: str, env: dict[str, str] | None = None) -> dict:
    r = invoke("--quiet", *args, env=env)
    assert r.exit_code == 0, r.output
    return json.loads(r.stdout)


def check_normal_forms() -> None:
    cases = [
        (("x2*x1",), "q^-1*x1*x2"),
        (("xb4*x4",), "1 - xb1*x1 - xb2*x2 - xb3*x3"),
        (("alpha*alphab + q^2*gammab*gamma", "--algebra", "su2"), "1"),
        (("conj(x2*x1)",), "xb1*xb2"),
    ]
    for args, expected in cases:
        r = invoke("normalize", *args)
        assert r.exit_code == 0, r.output
        assert r.stdout.strip() == expected, (args, r.stdout)


def check_normalize_json() -> None:
    data = invoke_json("normalize", "x2*x1", "--json")
    assert data == {"input": "x2*x1", "algebra": "s7", "normal_form": "q^-1*x1*x2"}


def check_usage_errors_exit_2() -> None:
    for args in (
        ("normalize", "y1"),
        ("normalize", "x1 +"),
        ("normalize", "alpha", "--algebra", "s4"),
        ("pairing", "--m", "0"),
        ("pairing", "--q", "abc"),
        ("pairing", "--q", "1.5"),
        ("chern-classical", "--samples", "10"),
        ("derive-relations", "--family", "yy"),
    ):
        r = invoke(*args)
        assert r.exit_code == 2, (args, r.exit_code, r.output)


def check_derive_relations_json() -> None:
    data = invoke_json("derive-relations", "--n", "2", "--family", "xx", "--json")
    assert data["family"] == "xx"
    rules = {rule["lhs"]: rule["rhs"] for rule in data["rules"]}
    assert rules["x2*x1"] == "q^-1*x1*x2"
    assert len(rules) == 6
    both = invoke_json("-o", "json", "derive-relations", "--n", "1")
    assert [s["family"] for s in both] == ["xx", "vv", "xv", "sphere"]


def check_pairing_json() -> None:
    data = invoke_json("pairing", "--json")
    assert data["M"] == 30
    assert data["N"] == 30
    assert abs(data["pairing_value"] + 1) < 1e-9
    assert data["tau0_value"] == 2
    exact = invoke_json("pairing", "--exact", "--q", "1/2", "--m", "2", "--n", "1", "--json")
    assert exact["exact"] is True
    assert exact["exact_pairing_value"] == "-225/256"


def check_coarse_pairing_within_bound() -> None:
    r = invoke("--quiet", "pairing", "--m", "1", "--n", "1", "--q", "0.9")
    assert r.exit_code == 0, r.output  # still within the truncation bound
    r = invoke("--quiet", "pairing", "--m", "1", "--n", "1", "--q", "0.9", "--json")
    data = json.loads(r.stdout)
    assert abs(data["pairing_value"] + 1) <= data["truncation_error_bound"]


def check_config_resolution() -> None:
    with tempfile.TemporaryDirectory() as home:
        path = Path(home) / "config.yaml"
        path.write_text(yaml.dump({"profiles": {"default": {}, "small": {"m_cutoff": 12, "q0": 0.25}}}))
        env = {"HOPFQ_N": "7", "HOPFQ_M": "99"}
        # profile beats env, env fills what the profile leaves out
        data = invoke_json("--config", str(path), "--profile", "small", "-o", "json", "config", "show", env=env)
        assert (data["m_cutoff"], data["n_cutoff"], data["q0"]) == (12, 7, 0.25)
        # flags beat the profile
        data = invoke_json("--config", str(path), "--profile", "small", "pairing", "--m", "5", "--json", env=env)
        assert data["M"] == 5
        assert data["q0"] == 0.25
        r = invoke("--config", str(path), "--profile", "missing", "config", "show")
        assert r.exit_code == 2


def check_invalid_env_is_usage_error() -> None:
    r = invoke("config", "show", env={"HOPFQ_Q": "3"})
    assert r.exit_code == 2


def check_completion_script() -> None:
    r = invoke("completion", "bash")
    assert r.exit_code == 0
    assert "_HOPFQ_COMPLETE" in r.stdout


if __name__ == "__main__":
    check_normal_forms()
    check_normalize_json()
    check_usage_errors_exit_2()
    check_derive_relations_json()
    check_pairing_json()
    check_coarse_pairing_within_bound()
    check_config_resolution()
    check_invalid_env_is_usage_error()
    check_completion_script()
    print("ok: hopfq_cli")
