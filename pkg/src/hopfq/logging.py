"""Logging and error display for hopfq.

Log output goes to stderr through rich so that JSON/YAML on stdout stays
machine-readable.
"""

import logging

from rich.console import Console
from rich.logging import RichHandler

# Global console for rich output
console = Console(stderr=True)

RESIDUAL_PREVIEW = 120


def setup_logging(level: str = "WARNING") -> logging.Logger:
    """
    Attach a rich handler to the ``hopfq`` logger.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR)

    Returns:
        The ``hopfq`` logger
    """
    logger = logging.getLogger("hopfq")
    logger.handlers.clear()
    logger.propagate = False

    handler = RichHandler(
        console=console,
        show_time=False,
        show_path=False,
        markup=False,
        rich_tracebacks=True,
        tracebacks_show_locals=False,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    _apply_level(logger, level)
    return logger


def _apply_level(target: logging.Logger, level: str) -> None:
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level {level!r}")
    target.setLevel(numeric)
    for handler in target.handlers:
        handler.setLevel(numeric)


logger = setup_logging()


def set_log_level(level: str) -> None:
    """Change the level of the ``hopfq`` logger and its handlers."""
    _apply_level(logger, level)


def preview(residual: str, limit: int = RESIDUAL_PREVIEW) -> str:
    """Shorten a residual for one-line display; reports keep the full text."""
    flat = " ".join(residual.split())
    if len(flat) <= limit:
        return flat
    return f"{flat[: limit - 1]}… ({len(flat)} chars)"


def log_check(check_id: str, status: str, elapsed: float, residual: str = "") -> None:
    """One log line per finished check: pass at DEBUG, fail at WARNING, error at ERROR."""
    if status == "pass":
        logger.debug(f"{check_id}: pass ({elapsed:.3f}s)")
    elif status == "fail":
        logger.warning(f"{check_id}: FAIL {preview(residual)}")
    else:
        logger.error(f"{check_id}: {preview(residual)}")


class ErrorDisplay:
    """Display errors in a user-friendly way."""

    @staticmethod
    def show(error: Exception, *, show_traceback: bool = False) -> None:
        """
        Display an error with helpful formatting.

        Args:
            error: The exception to display
            show_traceback: Whether to show full traceback
        """
        from .errors import (
            HopfqError,
            InconsistentRelationsError,
            ParseError,
            RewriteBudgetError,
            VerificationError,
        )

        if not isinstance(error, HopfqError):
            console.print(f"\n[red]✗ Unexpected error:[/red] {error!s}")
            console.print_exception(show_locals=False)
            return

        console.print(f"\n[red]✗ Error:[/red] {error.message}", markup=True)

        if isinstance(error, ParseError) and error.text:
            console.print(f"   {error.text}", style="cyan", markup=False)
            console.print("   " + " " * error.position + "^", style="red", markup=False)
        elif isinstance(error, RewriteBudgetError) and error.source:
            console.print(f"   input: {preview(error.source)}", style="cyan", markup=False)
        elif isinstance(error, InconsistentRelationsError) and error.index_pair:
            i, j = error.index_pair
            console.print(f"   conflicting pair: ({i}, {j})", style="cyan", markup=False)
        elif isinstance(error, VerificationError) and error.residual:
            console.print(f"   residual: {preview(error.residual)}", style="yellow", markup=False)

        if error.help:
            console.print(f"\n💡 {error.help}", style="yellow", markup=False)

        if show_traceback or logger.level <= logging.DEBUG:
            console.print("\n[dim]Full traceback:[/dim]")
            console.print_exception(show_locals=False)
