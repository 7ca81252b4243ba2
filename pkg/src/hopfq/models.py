"""Pydantic models for configuration and verification reports."""

from __future__ import annotations

import os
from typing import TYPE_CHECKING, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

if TYPE_CHECKING:
    from typing import Self

SCHEMA_VERSION = "1"

Status = Literal["pass", "fail", "error"]


class ReportModel(BaseModel):
    """Base for everything that ends up in a JSON report."""

    model_config = ConfigDict(
        populate_by_name=True,
        frozen=True,
        extra="forbid",
    )


class CheckResult(ReportModel):
    """Outcome of certifying one identity or numeric property."""

    check_id: str = Field(description="Stable dotted id, unique within a report")
    statement: str = Field(description="The identity being certified")
    status: Status
    residual: str = Field(default="", description="Rendered residual, empty on pass")
    wall_time: float = Field(default=0.0, ge=0.0, description="Seconds")
    details: dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


class Report(ReportModel):
    """Every check run by one command, in execution order."""

    schema_version: str = SCHEMA_VERSION
    checks: list[CheckResult] = Field(default_factory=list)

    @field_validator("checks")
    @classmethod
    def unique_ids(cls, v: list[CheckResult]) -> list[CheckResult]:
        seen: set[str] = set()
        for check in v:
            if check.check_id in seen:
                raise ValueError(f"duplicate check id {check.check_id!r}")
            seen.add(check.check_id)
        return v

    @property
    def passed(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == "pass"]

    @property
    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status != "pass"]

    @property
    def exit_code(self) -> int:
        return 0 if not self.failed else 1

    def ids(self) -> set[str]:
        return {c.check_id for c in self.checks}

    def __add__(self, other: Report) -> Report:
        return Report(checks=[*self.checks, *other.checks])


class TraceReport(ReportModel):
    """Truncated traces of sigma(t), |sigma(a)|, |sigma(b)| against their closed forms."""

    q0: float
    m_cutoff: int
    n_cutoff: int
    trace_t: float
    truncated_closed_form: float
    closed_form: float
    trace_abs_a: float
    bound_abs_a: float
    trace_abs_b: float
    bound_abs_b: float

    @property
    def tail(self) -> float:
        return abs(self.trace_t - self.closed_form)


class PairingReport(ReportModel):
    """The pairing of the Fredholm module with ch_0(p) at fixed truncation."""

    q0: float
    m_cutoff: int = Field(alias="M")
    n_cutoff: int = Field(alias="N")
    exact: bool = False
    trace_t: float = Field(description="Truncated Tr(sigma(t))")
    closed_form: float
    pairing_value: float = Field(description="tau^1(ch_0(p))")
    tau0_value: float = Field(description="tau^0(ch_0(p)) = beta(ch_0(p))")
    trivial_pairing: float = Field(description="tau^1 of the trivial idempotent 1")
    truncation_error_bound: float
    exact_trace_t: str = Field(default="", description="Tr(sigma(t)) as a fraction in exact mode")
    exact_pairing_value: str = Field(default="", description="tau^1(ch_0(p)) as a fraction in exact mode")


class ChernReport(ReportModel):
    """Monte Carlo estimate of c_2 on the stereographic chart."""

    samples: int
    fd_step: float
    seed: int
    c1_max_residual: float
    c2_value: float
    c2_stderr: float
    rejected_samples: int = 0


class GaugeReport(ReportModel):
    """The renaming that makes D p_classical D agree with p at q = 1."""

    renaming: str
    candidates_tried: int
    points: int
    max_deviation: float
    t_affine: str = ""


class Config(BaseModel):
    """Numeric knobs of a verification run."""

    q0: float = Field(default=0.5, description="Deformation parameter for numeric checks")
    m_cutoff: int = Field(default=30, ge=1, description="Truncation in m")
    n_cutoff: int = Field(default=30, ge=1, description="Truncation in n")
    relation_tol: float = Field(default=1e-12, gt=0)
    pairing_tol: float = Field(default=1e-9, gt=0)
    samples: int = Field(default=2_000_000, ge=1024)
    fd_step: float = Field(default=1e-4, gt=0, lt=0.1)
    seed: int = 42
    max_degree: int = Field(default=2, ge=0, le=4)
    rewrite_budget: int = Field(default=1_000_000, ge=1)
    confluence_trials: int = Field(default=1000, ge=1)
    exact: bool = Field(default=False, description="Exact rational arithmetic in the pairing")
    inject_fault: bool = Field(default=False, description="Corrupt one golden fixture")
    log_level: str = Field(default="INFO", description="Logging level")

    model_config = ConfigDict(
        str_strip_whitespace=True,
        validate_default=True,
    )

    @field_validator("q0")
    @classmethod
    def validate_q0(cls, v: float) -> float:
        if not 0 < v < 1:
            raise ValueError(f"q0 must lie in (0, 1), got {v}")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if v.upper() not in valid_levels:
            raise ValueError(f"Invalid log level: {v}. Must be one of {valid_levels}")
        return v.upper()

    @classmethod
    def from_env(cls, **overrides: Any) -> Self:
        """Load from os.environ with constructor overrides.

        The library does not read `.env` files implicitly; the CLI calls
        `load_dotenv()` before building its config.
        """

        def get_value(key: str, env_key: str, default: Any = None) -> Any:
            if key in overrides and overrides[key] is not None:
                return overrides[key]
            return os.environ.get(env_key, default)

        def get_flag(key: str, env_key: str) -> bool:
            if key in overrides and overrides[key] is not None:
                return bool(overrides[key])
            return os.environ.get(env_key, "false").lower() in ("true", "1", "yes", "on")

        return cls(
            q0=get_value("q0", "HOPFQ_Q", 0.5),
            m_cutoff=get_value("m_cutoff", "HOPFQ_M", 30),
            n_cutoff=get_value("n_cutoff", "HOPFQ_N", 30),
            relation_tol=get_value("relation_tol", "HOPFQ_TOL", 1e-12),
            pairing_tol=get_value("pairing_tol", "HOPFQ_PAIRING_TOL", 1e-9),
            samples=get_value("samples", "HOPFQ_SAMPLES", 2_000_000),
            fd_step=get_value("fd_step", "HOPFQ_FD_STEP", 1e-4),
            seed=get_value("seed", "HOPFQ_SEED", 42),
            max_degree=get_value("max_degree", "HOPFQ_MAX_DEGREE", 2),
            rewrite_budget=get_value("rewrite_budget", "HOPFQ_REWRITE_BUDGET", 1_000_000),
            confluence_trials=get_value("confluence_trials", "HOPFQ_CONFLUENCE_TRIALS", 1000),
            exact=get_flag("exact", "HOPFQ_EXACT"),
            inject_fault=get_flag("inject_fault", "HOPFQ_INJECT_FAULT"),
            log_level=get_value("log_level", "HOPFQ_LOG_LEVEL", "INFO"),
        )
