"""Base class for all verification suites."""

from __future__ import annotations

import time
from collections.abc import Callable, Iterable
from typing import TYPE_CHECKING, Any

from hopfq.errors import HopfqError
from hopfq.logging import log_check
from hopfq.models import CheckResult, Report
from hopfq.ncalg import Identity

if TYPE_CHECKING:
    from hopfq.verifier import Verifier

# What a check body may return: an Identity, a bare verdict, or
# (verdict, residual) / (verdict, residual, details).
Outcome = Identity | bool | tuple[bool, str] | tuple[bool, str, dict[str, Any]]


def _unpack(outcome: Outcome) -> tuple[bool, str, dict[str, Any]]:
    if isinstance(outcome, Identity):
        return outcome.holds, "" if outcome.holds else str(outcome.residual), {}
    if isinstance(outcome, bool):
        return outcome, "", {}
    if len(outcome) == 2:
        ok, residual = outcome
        return ok, residual, {}
    return outcome


class BaseSuite:
    """A named group of checks sharing the verifier's configuration."""

    name = "base"

    def __init__(self, verifier: Verifier) -> None:
        self.verifier = verifier
        self.config = verifier.config

    def run(self) -> Report:
        """Run every check of the suite in a fixed order."""
        raise NotImplementedError

    def _id(self, check_id: str) -> str:
        return f"{self.name}.{check_id}"

    def _check(self, check_id: str, statement: str, body: Callable[[], Outcome]) -> CheckResult:
        """
        Run one check, timing it and isolating any crash.

        A raised exception becomes ``status="error"`` carrying the message;
        it never escapes the suite.
        """
        full_id = self._id(check_id)
        start = time.perf_counter()
        try:
            ok, residual, details = _unpack(body())
            status = "pass" if ok else "fail"
        except HopfqError as e:
            ok, residual, details, status = False, e.message, {"code": str(e.code), **e.details}, "error"
        except Exception as e:
            ok, residual, details, status = False, str(e), {"exception": type(e).__name__}, "error"
        elapsed = time.perf_counter() - start

        log_check(full_id, status, elapsed, residual)
        return CheckResult(
            check_id=full_id,
            statement=statement,
            status=status,
            residual=residual,
            wall_time=elapsed,
            details=_jsonable(details),
        )

    def _identities(self, prefix: str, statement: str, body: Callable[[], Iterable[Identity]]) -> list[CheckResult]:
        """One CheckResult per Identity; a crash while building them is one error result."""
        start = time.perf_counter()
        try:
            identities = list(body())
        except Exception as e:
            crash = e
            return [self._check(prefix, statement, lambda: _raise(crash))]
        elapsed = (time.perf_counter() - start) / max(len(identities), 1)
        out = []
        for identity in identities:
            check_id = identity.name if identity.name.startswith(f"{prefix}.") else f"{prefix}.{identity.name}"
            result = self._check(check_id, identity.statement, lambda i=identity: i)
            out.append(result.model_copy(update={"wall_time": result.wall_time + elapsed}))
        return out


def _raise(error: Exception) -> Outcome:
    raise error


def _jsonable(details: dict[str, Any]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, value in details.items():
        if isinstance(value, str | int | float | bool) or value is None:
            out[key] = value
        elif isinstance(value, list | tuple):
            out[key] = [v if isinstance(v, str | int | float | bool) else str(v) for v in value]
        else:
            out[key] = str(value)
    return out
