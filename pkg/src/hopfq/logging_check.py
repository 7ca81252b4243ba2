"""Log formatting checks: residual previews, per-check lines, levels.

Run: uv run python -m hopfq.logging_check
"""

import logging

from hopfq.errors import ParseError, RewriteBudgetError
from hopfq.logging import ErrorDisplay, console, log_check, logger, preview, set_log_level


def check_preview() -> None:
    assert preview("q^-1*x1*x2") == "q^-1*x1*x2"
    assert preview("a\n   b") == "a b"
    long = "x1*" * 100
    short = preview(long, limit=40)
    assert len(short.split(" (")[0]) == 40
    assert short.endswith(f"({len(long)} chars)")


def check_levels() -> None:
    set_log_level("debug")
    assert logger.level == logging.DEBUG
    assert all(h.level == logging.DEBUG for h in logger.handlers)
    set_log_level("WARNING")
    assert logger.level == logging.WARNING
    try:
        set_log_level("LOUD")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown level accepted")


def check_log_check_levels() -> None:
    records: list[logging.LogRecord] = []

    class Collect(logging.Handler):
        def emit(self, record: logging.LogRecord) -> None:
            records.append(record)

    collector = Collect(level=logging.DEBUG)
    logger.addHandler(collector)
    set_log_level("DEBUG")
    try:
        log_check("relations.golden.xx", "pass", 0.01)
        log_check("pairing.value", "fail", 0.02, "-0.5")
        log_check("spheres.p_idempotent", "error", 0.03, "budget")
    finally:
        logger.removeHandler(collector)
        set_log_level("WARNING")
    assert [r.levelno for r in records] == [logging.DEBUG, logging.WARNING, logging.ERROR]
    assert "FAIL -0.5" in records[1].getMessage()


def check_error_display() -> None:
    with console.capture() as capture:
        ErrorDisplay.show(ParseError("Expected term", text="x1 +", position=4))
        ErrorDisplay.show(RewriteBudgetError("budget exhausted", source="xb4*x4*x2*x1"))
    out = capture.get()
    assert "x1 +" in out
    assert "^" in out
    assert "input: xb4*x4*x2*x1" in out


if __name__ == "__main__":
    check_preview()
    check_levels()
    check_log_check_levels()
    check_error_display()
    print("ok: logging")
