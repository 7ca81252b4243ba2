"""Main hopfq verifier."""

from __future__ import annotations

from fnmatch import fnmatch
from functools import cached_property
from typing import TYPE_CHECKING, Any

from .errors import ConfigurationError
from .logging import logger, set_log_level
from .models import CheckResult, Config, Report

if TYPE_CHECKING:
    from typing import Self

    from ._suites.base import BaseSuite
    from ._suites.bundle import BundleSuite
    from ._suites.classical import ClassicalSuite
    from ._suites.pairing import PairingSuite
    from ._suites.properties import PropertiesSuite
    from ._suites.relations import RelationsSuite
    from ._suites.spheres import SpheresSuite

# Acceptance criterion -> check id patterns that witness it.
ACCEPTANCE_CHECKS: dict[int, tuple[str, ...]] = {
    1: ("relations.golden.xx", "relations.golden.vv", "relations.golden.xv", "relations.golden.sphere"),
    2: ("relations.ybe.n1", "relations.ybe.n2"),
    3: ("spheres.projection.idempotent.*", "spheres.projection.selfadjoint.*", "spheres.projection.trace", "spheres.projection.quadratic_sphere"),
    4: ("spheres.s4.*",),
    5: ("spheres.naive.p14", "spheres.naive.p23", "spheres.naive.q1"),
    6: ("bundle.coaction.*", "bundle.coinvariance.*", "bundle.chi.*", "bundle.ell.*"),
    7: ("pairing.value", "pairing.tau0", "pairing.trivial"),
    8: ("pairing.trace.t", "pairing.trace.abs"),
    9: ("pairing.sigma.relations", "pairing.sigma.exact"),
    10: ("classical.chern.c2", "classical.chern.c1"),
    11: ("properties.associativity.*", "properties.confluence.*", "properties.star.*", "spheres.q_inverse.*", "properties.hopf_invariance"),
}


class Verifier:
    """
    Runs the verification suites.

    Examples:
        >>> v = Verifier()  # Loads from environment
        >>> v = Verifier(q0=0.25, samples=1 << 16)  # Explicit
        >>> v.pairing.run().exit_code
        0
        >>> v.run_all().failed
        []
    """

    SUITES = ("relations", "spheres", "bundle", "pairing", "classical", "properties")

    def __init__(self, config: Config | None = None, **overrides: Any) -> None:
        """
        Initialize from a Config, or from the environment with keyword overrides.

        Raises:
            ConfigurationError: If a configured value is invalid
        """
        try:
            self.config = config if config is not None else Config.from_env(**overrides)
            set_log_level(self.config.log_level)
        except Exception as e:
            raise ConfigurationError(
                f"Invalid configuration: {e}\n"
                "Check the HOPFQ_* environment variables or the values passed in."
            ) from e

    @classmethod
    def from_env_file(cls, path: str = ".env", **overrides: Any) -> Self:
        from dotenv import load_dotenv

        load_dotenv(path)
        return cls(**overrides)

    @cached_property
    def relations(self) -> RelationsSuite:
        """R-matrix, Yang-Baxter and relation derivation."""
        from ._suites.relations import RelationsSuite

        return RelationsSuite(self)

    @cached_property
    def spheres(self) -> SpheresSuite:
        """The projection p and A(S^4_q)."""
        from ._suites.spheres import SpheresSuite

        return SpheresSuite(self)

    @cached_property
    def bundle(self) -> BundleSuite:
        """SU_q(2), the coaction and the strong connection."""
        from ._suites.bundle import BundleSuite

        return BundleSuite(self)

    @cached_property
    def pairing(self) -> PairingSuite:
        """Representations, traces and the index pairing."""
        from ._suites.pairing import PairingSuite

        return PairingSuite(self)

    @cached_property
    def classical(self) -> ClassicalSuite:
        """The q = 1 bundle and its Chern numbers."""
        from ._suites.classical import ClassicalSuite

        return ClassicalSuite(self)

    @cached_property
    def properties(self) -> PropertiesSuite:
        """Randomized algebraic properties."""
        from ._suites.properties import PropertiesSuite

        return PropertiesSuite(self)

    def suite(self, name: str) -> BaseSuite:
        if name not in self.SUITES:
            raise ConfigurationError(f"Unknown suite {name!r}, expected one of {', '.join(self.SUITES)}")
        return getattr(self, name)

    def run_all(self) -> Report:
        """Every suite in a fixed order, then the acceptance coverage audit."""
        report = Report()
        for name in self.SUITES:
            logger.debug(f"Running {name} checks")
            report = report + self.suite(name).run()
        return report + Report(checks=[coverage_check(report)])

    def __repr__(self) -> str:
        return f"<Verifier(q0={self.config.q0}, M={self.config.m_cutoff}, N={self.config.n_cutoff})>"


def missing_criteria(report: Report) -> dict[int, list[str]]:
    """Patterns of each acceptance criterion that no check id in the report matches."""
    ids = report.ids()
    missing: dict[int, list[str]] = {}
    for criterion, patterns in ACCEPTANCE_CHECKS.items():
        absent = [p for p in patterns if not any(fnmatch(i, p) for i in ids)]
        if absent:
            missing[criterion] = absent
    return missing


def coverage_check(report: Report) -> CheckResult:
    missing = missing_criteria(report)
    return CheckResult(
        check_id="meta.acceptance_coverage",
        statement="every acceptance criterion is witnessed by at least one check",
        status="pass" if not missing else "fail",
        residual="; ".join(f"{k}: {', '.join(v)}" for k, v in missing.items()),
        details={"criteria": len(ACCEPTANCE_CHECKS)},
    )
