"""hopfq CLI - Command-line interface for the hopfq verifier."""

from .__main__ import main

__all__ = ["main"]
