"""Shell completion support for the hopfq CLI."""

from __future__ import annotations

import click
from click.shell_completion import get_completion_class

PROG_NAME = "hopfq"
COMPLETE_VAR = "_HOPFQ_COMPLETE"


def get_completion_script(shell: str, command: click.Command) -> str:
    """Completion script for ``shell``, generated by click for ``command``."""
    cls = get_completion_class(shell)
    if cls is None:
        raise ValueError(f"Unsupported shell: {shell}")
    return cls(command, {}, PROG_NAME, COMPLETE_VAR).source()
