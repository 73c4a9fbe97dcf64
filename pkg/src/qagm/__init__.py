"""Exact and certified-numeric verification of q-analogues of the AGM and
complete elliptic integral identities."""

from .kernel import LaurentPoly, TruncatedSeries, gens
from .qcore import (CertifiedValue, DomainError, QContext, TruncationError, q_binomial_general,
                    q_binomial_int, q_factorial, q_gamma, q_integer, q_pochhammer, q_product)
from .report import EVIDENCE, EXACT_PASS, FAIL, NUMERIC_PASS, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "TruncatedSeries", "gens",
    "QContext", "CertifiedValue", "DomainError", "TruncationError",
    "q_integer", "q_factorial", "q_binomial_int", "q_binomial_general", "q_gamma",
    "q_pochhammer", "q_product",
    "VerificationReport", "EXACT_PASS", "NUMERIC_PASS", "EVIDENCE", "FAIL",
]
