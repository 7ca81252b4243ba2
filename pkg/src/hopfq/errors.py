"""hopfq error handling."""

from __future__ import annotations

from enum import StrEnum
from typing import Any


class ErrorCode(StrEnum):
    """Known failure modes with explanations."""

    # Certification
    VERIFICATION_FAILED = "verification_failed"
    INCONSISTENT_RELATIONS = "inconsistent_relations"
    NO_RENAMING_FOUND = "no_renaming_found"

    # Rewriting
    REWRITE_BUDGET_EXCEEDED = "rewrite_budget_exceeded"
    LEAD_NOT_ISOLATED = "lead_not_isolated"
    NOT_A_UNIT = "not_a_unit"
    UNKNOWN_GENERATOR = "unknown_generator"

    # Input
    PARSE_ERROR = "parse_error"
    INVALID_PARAMETER = "invalid_parameter"


class HopfqError(Exception):
    """Base exception for all hopfq failures."""

    def __init__(
        self,
        code: str,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        """Initialize error with code, message and optional details."""
        self.code = code
        self.message = message
        self.details = details or {}
        self.help = self._get_help_message()

        super().__init__(self._format_message())

    def _get_help_message(self) -> str | None:
        """Get helpful context for known errors."""
        help_messages: dict[str, str] = {
            ErrorCode.REWRITE_BUDGET_EXCEEDED.value: (
                "Normalization did not reach a fixpoint within the rule budget.\n"
                "Raise HOPFQ_REWRITE_BUDGET, or check that every rule replacement "
                "is smaller than its leading word."
            ),
            ErrorCode.INCONSISTENT_RELATIONS.value: (
                "Two derivations disagree on the same leading word. "
                "Check the R-matrix leg order (--leg-order)."
            ),
            ErrorCode.UNKNOWN_GENERATOR.value: (
                "Generators are x1..x4, xb1..xb4 (s7), alpha, gamma, gammab, "
                "alphab (su2), t, a, ab, b, bb (s4)."
            ),
            ErrorCode.PARSE_ERROR.value: (
                "Terms are joined by + and -; a term is coeff * g1 * g2 ...; "
                "coefficients look like 3/2, q^-2 or (1 - q^-2)."
            ),
            ErrorCode.LEAD_NOT_ISOLATED.value: (
                "The central sphere reduction expects r to be central in the "
                "quadratic algebra. Run `hopfq verify-spheres` to check."
            ),
        }
        return help_messages.get(self.code, None)

    def _format_message(self) -> str:
        return f"[{self.code}] {self.message}"


class VerificationError(HopfqError):
    """An identity that should hold normalized to something nonzero."""

    def __init__(
        self, message: str, *, residual: str = "", details: dict[str, Any] | None = None
    ) -> None:
        self.residual = residual
        super().__init__(ErrorCode.VERIFICATION_FAILED, message, details)


class InconsistentRelationsError(HopfqError):
    """A relation family cannot be oriented into a consistent rule set."""

    def __init__(self, message: str, *, index_pair: tuple[int, int] | None = None) -> None:
        self.index_pair = index_pair
        super().__init__(
            ErrorCode.INCONSISTENT_RELATIONS, message, {"index_pair": index_pair}
        )


class RewriteBudgetError(HopfqError):
    """The termination guard fired."""

    def __init__(self, message: str, *, source: str = "") -> None:
        self.source = source
        super().__init__(ErrorCode.REWRITE_BUDGET_EXCEEDED, message, {"input": source})


class UnknownGeneratorError(HopfqError):
    """A word uses a letter outside the rewrite system's alphabet."""

    def __init__(self, name: str, alphabet: str = "") -> None:
        self.name = name
        super().__init__(
            ErrorCode.UNKNOWN_GENERATOR,
            f"Unknown generator {name!r}" + (f" for {alphabet}" if alphabet else ""),
            {"generator": name},
        )


class ParseError(HopfqError):
    """Syntax error in the textual grammar."""

    def __init__(self, message: str, *, text: str = "", position: int = 0) -> None:
        self.text = text
        self.position = position
        super().__init__(
            ErrorCode.PARSE_ERROR,
            f"{message} (at char {position})",
            {"text": text, "position": position},
        )


class ConfigurationError(Exception):
    """Raised when configuration is invalid."""

    pass


class ValidationError(Exception):
    """Raised when input validation fails."""

    pass
