"""Structured outcome of a single check."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath

from .kernel import LaurentPoly

EXACT_PASS = "exact-pass"
NUMERIC_PASS = "numeric-pass"
EVIDENCE = "evidence"
FAIL = "fail"
STATUSES = (EXACT_PASS, NUMERIC_PASS, EVIDENCE, FAIL)

# digits used when numbers are serialized; fixed so output is reproducible
JSON_DIGITS = 17


@dataclass
class VerificationReport:
    """Result of one check.

    ``witness`` is the nonzero difference polynomial (or numeric residual)
    when a check fails; for exact passes it is the zero polynomial.
    ``details`` carries check-specific extras (compared order, both sides,
    certificates) and is serialized alongside the fixed fields.
    """

    theorem: str
    params: dict
    status: str
    witness: Any = None
    bound: Any = None
    details: dict = field(default_factory=dict)
    millis: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_record(self, case: str, seed: int | None) -> dict:
        rec = {
            "case": case,
            "theorem": self.theorem,
            "params": to_jsonable(self.params),
            "status": self.status,
            "witness": to_jsonable(self.witness),
            "bound": to_jsonable(self.bound),
            "seed": seed,
            "millis": round(self.millis, 3),
        }
        if self.details:
            rec["details"] = to_jsonable(self.details)
        return rec


def exact_report(theorem: str, params: dict, difference: LaurentPoly, **details) -> VerificationReport:
    """exact-pass iff the difference polynomial is zero; otherwise fail with it as witness."""
    status = EXACT_PASS if difference.is_zero() else FAIL
    return VerificationReport(theorem, params, status, witness=difference, details=details)


def numeric_report(theorem: str, params: dict, residual, bound, **details) -> VerificationReport:
    status = NUMERIC_PASS if abs(residual) <= bound else FAIL
    return VerificationReport(theorem, params, status, witness=abs(residual), bound=bound,
                              details=details)


def combine(theorem: str, params: dict, parts: list[VerificationReport], **details) -> VerificationReport:
    """Fold sub-reports: fail if any part fails, exact-pass only if all parts are exact.
    A passing numeric fold carries the largest part residual as its witness."""
    if any(p.status == FAIL for p in parts):
        status = FAIL
    elif all(p.status == EXACT_PASS for p in parts):
        status = EXACT_PASS
    elif any(p.status == EVIDENCE for p in parts):
        status = EVIDENCE
    else:
        status = NUMERIC_PASS
    bounds = [p.bound for p in parts if p.bound is not None]
    witnesses = [p.witness for p in parts if p.status == FAIL]
    residuals = [p.witness for p in parts if _is_real(p.witness)]
    sub = [{"theorem": p.theorem, "params": p.params, "status": p.status,
            "witness": p.witness, "bound": p.bound, **({"details": p.details} if p.details else {})}
           for p in parts]
    return VerificationReport(
        theorem, params, status,
        witness=(witnesses[0] if witnesses
                 else parts[0].witness if parts and status == EXACT_PASS
                 else max(residuals, key=_magnitude) if residuals else None),
        bound=max(bounds) if bounds else None,
        details={**details, "parts": sub},
    )


def _magnitude(x):
    return mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(x)


def _is_real(x) -> bool:
    return isinstance(x, (int, float, Fraction, mpmath.mpf)) and not isinstance(x, bool)


def to_jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return float(mpmath.nstr(x, JSON_DIGITS))
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, LaurentPoly):
        return str(x)
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, JSON_DIGITS)
    if isinstance(x, (mpmath.mpc, complex)):
        return {"re": to_jsonable(mpmath.mpf(x.real)), "im": to_jsonable(mpmath.mpf(x.imag))}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "value") and hasattr(x, "bound"):
        return {"value": to_jsonable(x.value), "bound": to_jsonable(x.bound)}
    return str(x)
