"""The q = 1 function H(c, m), which does not depend on m, and the limit of
the partial sums I(c, 2l, 1) it controls.

    H(c, m) = P_m(c) * sum_i t_i,   P_m(c) = prod_{u<=m} (1 + c/u)(1 - 2c/(2u-1)),
    t_0 = 1,  t_{i+1}/t_i = (i + c + 1/2)(i - c) / ((i + 1)(i + m + 1)).

The terms decay like i^(-m-3/2).  Truncation after N terms is bounded with
C N^(-m-1/2) / (m + 1/2), where C is twice the largest |t_i| i^(m+3/2) seen
on the second half of the computed terms.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mpf

from ..qcore import CertifiedValue
from ..report import EXACT_PASS, FAIL, NUMERIC_PASS, VerificationReport, combine

__all__ = [
    "h_prefactor",
    "h_terms",
    "h_value",
    "half_binomial_partial_sum",
    "partial_sum_identity_check",
    "infinite_prefactor",
    "identity2_sum_q1",
    "h_function_check",
]

EPS = np.finfo(float).eps


def h_prefactor(c: float, m: int) -> float:
    u = np.arange(1, m + 1, dtype=float)
    return float(np.prod((1 + c / u) * (1 - 2 * c / (2 * u - 1))))


def h_terms(c: float, m: int, n_terms: int) -> np.ndarray:
    i = np.arange(n_terms - 1, dtype=float)
    ratios = (i + c + 0.5) * (i - c) / ((i + 1) * (i + m + 1))
    return np.concatenate(([1.0], np.cumprod(ratios)))


def h_value(c: float, m: int, n_terms: int = 2**20) -> CertifiedValue:
    """Truncated H(c, m) with the empirical decay bound."""
    if m < 0 or n_terms < 4:
        raise ValueError("need m >= 0 and at least 4 terms")
    t = h_terms(c, m, n_terms)
    pref = h_prefactor(c, m)
    partial = float(np.sum(t))
    if t[-1] == 0.0 and np.all(t[n_terms // 2:] == 0.0):
        tail = 0.0                      # terminating series (c a nonnegative integer, say)
    else:
        i = np.arange(n_terms // 2, n_terms, dtype=float)
        C = 2 * float(np.max(np.abs(t[n_terms // 2:]) * i ** (m + 1.5)))
        N = n_terms - 1
        tail = C * N ** (-(m + 0.5)) / (m + 0.5)
    rounding = 4 * n_terms * EPS * float(np.sum(np.abs(t)))
    return CertifiedValue(mpf(pref * partial), mpf(abs(pref) * (tail + rounding)))


def half_binomial_partial_sum(m: int, N: int) -> tuple[Fraction, Fraction]:
    """(sum_{i<=N} (-1)^i (m+1/2 choose i),  W(N) = prod_{j<=N} (2j-2m-1)/(2j)) in rationals."""
    x = Fraction(2 * m + 1, 2)
    total, b = Fraction(0), Fraction(1)
    for i in range(N + 1):
        total += (-1) ** i * b
        b = b * (x - i) / (i + 1)
    w = Fraction(1)
    for j in range(1, N + 1):
        w *= Fraction(2 * j - 2 * m - 1, 2 * j)
    return total, w


def partial_sum_identity_check(m_max: int = 10, N_max: int = 10) -> VerificationReport:
    bad = []
    for m in range(m_max + 1):
        for N in range(N_max + 1):
            lhs, rhs = half_binomial_partial_sum(m, N)
            if lhs != rhs:
                bad.append((m, N, lhs, rhs))
    return VerificationReport("h.partial_sum_W", {"m_max": m_max, "N_max": N_max},
                              EXACT_PASS if not bad else FAIL, witness=bad or None)


def infinite_prefactor(c) -> mpf:
    """prod_{u>=1} (1 + c/u)(1 - 2c/(2u-1)) = sqrt(pi) / (Gamma(1+c) Gamma(1/2-c)) by the
    Weierstrass product of 1/Gamma."""
    c = mpmath.mpmathify(c)
    return mpmath.sqrt(mpmath.pi) * mpmath.rgamma(1 + c) * mpmath.rgamma(mpf(1) / 2 - c)


def identity2_sum_q1(c: float, m: int) -> float:
    """I(c, m, 1) = sum_{n<=m} (-1)^n (prod_{j<=n} (2j-1)/(2j))^2 4^n (n+2c choose 2n)."""
    n = np.arange(m, dtype=float)
    ratios = -4 * ((2 * n + 1) / (2 * n + 2)) ** 2 * (n + 1 + 2 * c) * (2 * c - n) / ((2 * n + 1) * (2 * n + 2))
    return float(np.sum(np.concatenate(([1.0], np.cumprod(ratios)))))


def h_function_check(c: float, m_max: int = 4, tol: float = 1e-6, *, n_terms: int = 2**20,
                     l_doublings: int = 12, limit_threshold: float = 0.05) -> VerificationReport:
    """H(c, m) = H(c, m+1) for m < m_max, the W(N) partial-sum identity for m, N <= 10,
    H(0, m) = 1, and the approach of I(c, 2l, 1) to (infinite prefactor) * H(c, 0).

    Adjacent H values agree when they differ by at most max(tol, sum of their
    bounds).  The I(c, 2l, 1) study runs over l = 1, 2, 4, ..., 2^l_doublings;
    its distance must not grow and must end within ``limit_threshold``
    relative to the target.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    params = {"c": c, "m_max": m_max, "tol": tol}
    values = [h_value(c, m, n_terms) for m in range(m_max + 1)]
    parts = []
    for m in range(m_max):
        a, b = values[m], values[m + 1]
        allowed = max(mpf(tol), a.bound + b.bound)
        diff = abs(a.value - b.value)
        parts.append(VerificationReport("h.m_independence", {"c": c, "m": m},
                                        NUMERIC_PASS if diff <= allowed else FAIL,
                                        witness=diff, bound=allowed,
                                        details={"H_m": a, "H_m_plus_1": b}))
    parts.append(partial_sum_identity_check())
    zero = [h_value(0.0, m, 64) for m in range(m_max + 1)]
    parts.append(VerificationReport("h.at_zero", {"m_max": m_max},
                                    NUMERIC_PASS if all(v.value == 1 and v.bound < 1e-12 for v in zero) else FAIL,
                                    witness=[v.value for v in zero], bound=0))
    target = infinite_prefactor(c) * values[0].value
    ls = [2**j for j in range(l_doublings + 1)]
    errs = [abs(identity2_sum_q1(c, 2 * l) - target) for l in ls]
    slack = values[0].bound * abs(infinite_prefactor(c))
    monotone = all(errs[i + 1] <= errs[i] + 2 * slack for i in range(len(errs) - 1))
    scale = abs(target) if target != 0 else mpf(1)
    final = errs[-1] / scale
    ok = monotone and final <= limit_threshold + slack / scale
    parts.append(VerificationReport("h.I_limit", {"c": c, "l_max": ls[-1]},
                                    NUMERIC_PASS if ok else FAIL, witness=final,
                                    bound=mpf(limit_threshold),
                                    details={"l": ls, "errors": errs, "target": target, "monotone": monotone}))
    return combine("h_function", params, parts)
