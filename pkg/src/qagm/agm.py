"""Classical layer: AGM, the complete elliptic integral F(x), and the exact
binomial-sum identities equivalent to the AGM functional equation.

F(x) = (2/pi) int_0^1 dt / (sqrt(1-t^2) sqrt(1-x t^2)) = sum a_n x^n with
a_n = (prod_{j<=n} (2j-1)/(2j))^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import mpmath
from mpmath import mpf

from .qcore import CertifiedValue, DomainError
from .report import (EXACT_PASS, FAIL, NUMERIC_PASS, VerificationReport, combine,
                     numeric_report)

__all__ = [
    "AgmResult",
    "QuadratureError",
    "agm",
    "series_coeff",
    "elliptic_F_series",
    "elliptic_F_quadrature",
    "periodic_trapezoid",
    "check_gauss_agm",
    "check_functional_equation",
    "check_agm_functional_equation",
    "classical_coefficient_identity",
    "classical_identity2",
    "derivative_series",
    "derivative_integral",
    "derivative_finite_difference",
    "derivative_interpolation_check",
]


@dataclass(frozen=True)
class AgmResult:
    value: mpf
    iterations: int
    residual: mpf


class QuadratureError(RuntimeError):
    """Refinement did not converge; ``estimate`` holds the last value reached."""

    def __init__(self, msg, estimate: CertifiedValue):
        super().__init__(msg)
        self.estimate = estimate


def agm(a, b, tol=None, prec: int = 128, max_iter: int = 200) -> AgmResult:
    """Arithmetic-geometric mean M(a, b).

    Stops once |a_n - b_n| <= tol * a_n (relative, so M(ca, cb) = c M(a, b)
    holds to the same tolerance).  M lies between b_n and a_n, so the
    midpoint is within half the residual of the limit.
    """
    with mpmath.workprec(prec + 10):
        a, b = mpf(a), mpf(b)
        if a <= 0 or b <= 0:
            raise DomainError("agm needs positive arguments")
        tol = mpf(2) ** (-prec) if tol is None else mpf(tol)
        for i in range(max_iter + 1):
            res = abs(a - b)
            if res <= tol * max(a, b):
                return AgmResult((a + b) / 2, i, res)
            a, b = (a + b) / 2, mpmath.sqrt(a * b)
    raise RuntimeError("agm did not converge")


@lru_cache(maxsize=None)
def series_coeff(n: int) -> Fraction:
    """a_n = (prod_{j=1}^n (2j-1)/(2j))^2, exactly."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    return series_coeff(n - 1) * Fraction(2 * n - 1, 2 * n) ** 2


def elliptic_F_series(x, tol=None, prec: int = 128, max_terms: int = 10**6) -> CertifiedValue:
    """F(x) = sum a_n x^n for |x| < 1.

    Since a_n decreases, the tail after n = N is at most
    a_N |x|^(N+1) / (1 - |x|).
    """
    with mpmath.workprec(prec + 10):
        x = mpmath.mpmathify(x)
        ax = abs(x)
        if ax >= 1:
            raise DomainError("series needs |x| < 1")
        tol = mpf(2) ** (-prec) if tol is None else mpf(tol)
        total = mpf(1)
        an = mpf(1)
        xn = mpf(1)
        for n in range(1, max_terms):
            an *= (mpf(2 * n - 1) / (2 * n)) ** 2
            xn *= x
            total += an * xn
            tail = an * ax ** (n + 1) / (1 - ax)
            if tail <= tol:
                rounding = (n + 1) * mpf(2) ** (-prec)
                return CertifiedValue(total, tail + rounding * max(1, abs(total)))
    raise RuntimeError("series did not reach the tolerance")


def periodic_trapezoid(f, period, tol, prec: int = 128, min_level: int = 3, max_level: int = 22
                       ) -> CertifiedValue:
    """Integral of a smooth periodic function over one period.

    Trapezoid sums converge geometrically here; the step is halved until two
    successive levels agree to ``tol`` and that difference is reported as
    the error estimate.
    """
    with mpmath.workprec(prec + 10):
        period = mpf(period)
        n = 2 ** min_level
        h = period / n
        s = mpmath.fsum(f(k * h) for k in range(n))
        prev = s * h
        for level in range(min_level + 1, max_level + 1):
            # new nodes are the midpoints of the old grid
            s += mpmath.fsum(f((2 * k + 1) * h / 2) for k in range(n))
            n *= 2
            h = period / n
            cur = s * h
            err = abs(cur - prev)
            if err <= tol:
                return CertifiedValue(cur, err + abs(cur) * mpf(2) ** (-prec + 4))
            prev = cur
        raise QuadratureError("trapezoid refinement did not converge", CertifiedValue(cur, err))


def elliptic_F_quadrature(x, tol=None, prec: int = 128) -> CertifiedValue:
    """F(x) = (2/pi) int_0^{pi/2} dtheta / sqrt(1 - x sin^2 theta), x < 1.

    After t = sin(theta) the integrand is smooth, even and pi-periodic, so the
    integral over [0, pi/2] is half the periodic trapezoid over [0, pi].
    """
    with mpmath.workprec(prec + 10):
        x = mpf(x)
        if x >= 1:
            raise DomainError("quadrature needs x < 1")
        tol = mpf(2) ** (-prec + 4) if tol is None else mpf(tol)
        integral = periodic_trapezoid(lambda th: 1 / mpmath.sqrt(1 - x * mpmath.sin(th) ** 2),
                                      mpmath.pi, tol * mpmath.pi / 2, prec)
        return integral * (1 / mpmath.pi)


def check_gauss_agm(k, tol=mpf("1e-12"), prec: int = 128) -> VerificationReport:
    """1/M(1, k) = F(1 - k^2), checked against both the series and quadrature."""
    with mpmath.workprec(prec):
        k = mpf(k)
        if not (0 < k <= 1):
            raise DomainError("need 0 < k <= 1")
        tol = mpf(tol)
        lhs = 1 / agm(1, k, prec=prec).value
        x = 1 - k * k
        parts = []
        for route, fn in (("series", elliptic_F_series), ("quadrature", elliptic_F_quadrature)):
            rhs = fn(x, prec=prec)
            parts.append(numeric_report("gauss_agm", {"k": k, "route": route}, lhs - rhs.value, tol,
                                        lhs=lhs, rhs=rhs.value, rhs_bound=rhs.bound))
        return combine("gauss_agm", {"k": k}, parts)


def check_functional_equation(k, tol=mpf("1e-12"), prec: int = 128) -> VerificationReport:
    """F(1-k^2) = 2/(1+k) F(((1-k)/(1+k))^2), both sides by series."""
    with mpmath.workprec(prec):
        k = mpf(k)
        if not (0 < k < 1):
            raise DomainError("need 0 < k < 1")
        lhs = elliptic_F_series(1 - k * k, prec=prec)
        rhs = elliptic_F_series(((1 - k) / (1 + k)) ** 2, prec=prec)
        rhs = rhs * (2 / (1 + k))
        return numeric_report("functional_equation", {"k": k}, lhs.value - rhs.value, mpf(tol),
                              lhs=lhs.value, rhs=rhs.value, combined_bound=lhs.bound + rhs.bound)


def check_agm_functional_equation(k, tol=mpf("1e-12"), prec: int = 128) -> VerificationReport:
    """M(1, k) = (1+k)/2 M(1, 2 sqrt(k)/(1+k))."""
    with mpmath.workprec(prec):
        k = mpf(k)
        lhs = agm(1, k, prec=prec).value
        rhs = (1 + k) / 2 * agm(1, 2 * mpmath.sqrt(k) / (1 + k), prec=prec).value
        return numeric_report("agm_functional_equation", {"k": k}, lhs - rhs, mpf(tol))


def _binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def classical_coefficient_identity(k: int) -> VerificationReport:
    """sum_n a_n C(k, 2n) = sum_n' a_n' 4^n' (-1)^(k-n') C(n', k-n'), exactly."""
    if k < 0:
        raise ValueError("k must be >= 0")
    lhs = sum((series_coeff(n) * _binom(k, 2 * n) for n in range(k // 2 + 1)), Fraction(0))
    rhs = sum((series_coeff(m) * 4**m * (-1) ** (k - m) * _binom(m, k - m) for m in range(k + 1)),
              Fraction(0))
    diff = lhs - rhs
    return VerificationReport("classical_coefficient_identity", {"k": k},
                              EXACT_PASS if diff == 0 else FAIL, witness=diff,
                              details={"lhs": lhs, "rhs": rhs})


def classical_identity2(n: int, parity: str) -> VerificationReport:
    """Even: a_n = sum_{n'<=2n} (-1)^n' a_n' 4^n' C(2n+n', 2n').
    Odd:  0 = sum_{n'<=2n+1} (-1)^n' a_n' 4^n' C(2n+1+n', 2n')."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    m = 2 * n if parity == "even" else 2 * n + 1
    total = sum(((-1) ** j * series_coeff(j) * 4**j * _binom(m + j, 2 * j) for j in range(m + 1)),
                Fraction(0))
    target = series_coeff(n) if parity == "even" else Fraction(0)
    diff = total - target
    return VerificationReport("classical_identity2", {"n": n, "parity": parity, "m": m},
                              EXACT_PASS if diff == 0 else FAIL, witness=diff,
                              details={"sum": total, "expected": target})


# -- derivatives of F at 1/2 --------------------------------------------------


def derivative_series(n: int, tol=None, prec: int = 128) -> CertifiedValue:
    """(1/n!) F^(n)(1/2) = sum_{m>=n} a_m C(m, n) 2^(n-m).

    Term ratios are at most (m+1)/(2(m+1-n)), which decreases in m, so the
    tail after m = N is bounded geometrically.
    """
    with mpmath.workprec(prec + 10):
        tol = mpf(2) ** (-prec) if tol is None else mpf(tol)
        total = mpf(0)
        for m in range(n, 10**6):
            a = series_coeff(m)
            term = mpf(a.numerator) / a.denominator * comb(m, n) / mpf(2) ** (m - n)
            total += term
            if m > 2 * n + 2:
                rho = mpf(m + 2) / (2 * (m + 2 - n))
                tail = term * rho / (1 - rho)
                if tail <= tol:
                    return CertifiedValue(total, tail + (m + 1) * abs(total) * mpf(2) ** (-prec))
    raise RuntimeError("derivative series did not converge")


def derivative_integral(n: int, tol=None, prec: int = 128) -> CertifiedValue:
    """(1/n!) F^(n)(1/2) by quadrature.

    Differentiating under the integral sign gives
    C(n-1/2, n) (2/pi) int_0^1 (t^2/(1-t^2/2))^n / (sqrt(1-t^2) sqrt(1-t^2/2)) dt,
    evaluated with t = sin(theta).
    """
    with mpmath.workprec(prec + 10):
        tol = mpf(2) ** (-prec + 4) if tol is None else mpf(tol)
        coef = mpf(1)
        for j in range(1, n + 1):
            coef *= mpf(2 * j - 1) / (2 * j)

        def integrand(th):
            s2 = mpmath.sin(th) ** 2
            w = 1 - s2 / 2
            return (s2 / w) ** n / mpmath.sqrt(w)

        integral = periodic_trapezoid(integrand, mpmath.pi, tol / 4, prec)
        return integral * (coef / mpmath.pi)


def derivative_finite_difference(n: int, prec: int = 128) -> mpf:
    """Central difference of order n for F at 1/2, divided by n!.

    Step h = eps^(1/(n+2)); this is a consensus value, not certified.
    """
    with mpmath.workprec(prec + 10):
        h = (mpf(2) ** (-prec)) ** (mpf(1) / (n + 2))
        x0 = mpf(1) / 2
        acc = mpf(0)
        for k in range(n + 1):
            xk = x0 + (mpf(n) / 2 - k) * h
            acc += (-1) ** k * comb(n, k) * elliptic_F_series(xk, prec=prec).value
        return acc / h**n / mpmath.factorial(n)


def derivative_interpolation_check(n: int, tol=mpf("1e-4"), prec: int = 128) -> VerificationReport:
    if not 0 <= n <= 4:
        raise ValueError("n must be in 0..4")
    with mpmath.workprec(prec):
        s = derivative_series(n, prec=prec)
        i = derivative_integral(n, prec=prec)
        d = derivative_finite_difference(n, prec=prec)
        vals = [s.value, i.value, d]
        spread = max(vals) - min(vals)
        rep = numeric_report("derivative_interpolation", {"n": n}, spread, mpf(tol),
                             series=s.value, series_bound=s.bound, integral=i.value,
                             integral_bound=i.bound, finite_difference=d)
        return rep
