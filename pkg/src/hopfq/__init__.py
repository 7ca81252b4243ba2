"""
hopfq - exact verification of the quantum Hopf bundle S^7_q -> S^4_q.

Example:
    >>> from hopfq import Verifier, parse_expr
    >>> from hopfq.rmatrix import s7_system
    >>> str(s7_system().normalize(parse_expr("x2*x1")))
    'q^-1*x1*x2'
    >>> Verifier().pairing.run().exit_code
    0
"""

from __future__ import annotations

from .coeffring import LaurentPoly, lp_arith, lp_eval, lp_invert_q
from .errors import (
    ConfigurationError,
    ErrorCode,
    HopfqError,
    InconsistentRelationsError,
    ParseError,
    RewriteBudgetError,
    UnknownGeneratorError,
    ValidationError,
    VerificationError,
)
from .grammar import parse_expr
from .models import (
    ChernReport,
    CheckResult,
    Config,
    GaugeReport,
    PairingReport,
    Report,
    TraceReport,
)
from .ncalg import NCMatrix, NCPoly, RewriteSystem, nc_mul, nc_normalize, nc_star
from .verifier import ACCEPTANCE_CHECKS, Verifier

__version__ = "0.1.0"
__all__ = [
    "ACCEPTANCE_CHECKS",
    "ChernReport",
    "CheckResult",
    "Config",
    "ConfigurationError",
    "ErrorCode",
    "GaugeReport",
    "HopfqError",
    "InconsistentRelationsError",
    "LaurentPoly",
    "NCMatrix",
    "NCPoly",
    "PairingReport",
    "ParseError",
    "Report",
    "RewriteBudgetError",
    "RewriteSystem",
    "TraceReport",
    "UnknownGeneratorError",
    "ValidationError",
    "Verifier",
    "VerificationError",
    "lp_arith",
    "lp_eval",
    "lp_invert_q",
    "nc_mul",
    "nc_normalize",
    "nc_star",
    "parse_expr",
]
