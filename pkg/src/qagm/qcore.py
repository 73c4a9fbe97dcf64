"""q-integers, q-binomials, and certified numeric q-products.

Exact objects are :class:`~qagm.kernel.LaurentPoly` in ``q``.  Numeric
objects are :class:`CertifiedValue` pairs computed under a
:class:`QContext`; every infinite product is truncated with an explicit
tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import mpmath
from mpmath import mpf, mpc

from .kernel import LaurentPoly, gens

__all__ = [
    "QContext",
    "CertifiedValue",
    "DomainError",
    "TruncationError",
    "q_integer",
    "q_factorial",
    "q_binomial_int",
    "q_pochhammer",
    "q_product",
    "finite_q_product",
    "q_gamma",
    "q_binomial_general",
    "q_power",
]


class DomainError(ValueError):
    """Argument outside the domain of a function (pole, q=1 where q<1 needed)."""


class TruncationError(RuntimeError):
    """``max_terms`` reached before the tail bound met the tolerance."""


def _to_mpf(x, prec: int):
    with mpmath.workprec(prec):
        if isinstance(x, Fraction):
            return mpf(x.numerator) / x.denominator
        if isinstance(x, (mpf, mpc)):
            return +x
        if isinstance(x, complex):
            return mpc(x)
        return mpf(x)


@dataclass(frozen=True)
class QContext:
    """Numeric evaluation settings.

    ``q`` may be given as a string, Fraction or number; it is converted to
    an mpmath value at ``precision`` bits.  ``q == 1`` marks the limit case.
    """

    q: object = "0.5"
    precision: int = 128
    tail_tolerance: object = None
    max_terms: int = 200_000
    qv: mpf = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.precision < 53:
            raise ValueError("precision must be at least 53 bits")
        qv = _to_mpf(self.q, self.precision)
        if not (0 < qv <= 1):
            raise ValueError(f"q must lie in (0, 1], got {qv}")
        object.__setattr__(self, "qv", qv)
        tol = self.tail_tolerance
        if tol is None:
            tol = _to_mpf(2, self.precision) ** (-self.precision + 8)
        else:
            tol = _to_mpf(tol, self.precision)
        if not tol > 0:
            raise ValueError("tail_tolerance must be positive")
        object.__setattr__(self, "tail_tolerance", tol)
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")

    @property
    def is_limit(self) -> bool:
        return self.qv == 1

    @property
    def eps(self):
        return mpf(2) ** (-self.precision)

    def with_q(self, q) -> "QContext":
        """Same settings at another q (e.g. ``ctx.with_q(ctx.qv**2)``)."""
        return replace(self, q=q)

    def require_open(self) -> None:
        if self.is_limit:
            raise DomainError("this operation needs q < 1; q = 1 is a limit case")

    def workprec(self):
        return mpmath.workprec(self.precision)


def _round_slack(value) -> mpf:
    # a few ulps at the current working precision
    return abs(value) * mpf(2) ** (-mpmath.mp.prec + 3)


class CertifiedValue:
    """A value with a bound: ``|true - value| <= bound``."""

    __slots__ = ("value", "bound")

    def __init__(self, value, bound=0):
        self.value = value
        self.bound = mpf(bound)
        if not mpmath.isfinite(self.bound) or self.bound < 0:
            raise ValueError(f"bound must be finite and nonnegative, got {bound}")

    @classmethod
    def exact(cls, value) -> "CertifiedValue":
        return cls(value, 0)

    @staticmethod
    def _lift(x) -> "CertifiedValue":
        return x if isinstance(x, CertifiedValue) else CertifiedValue(x, 0)

    def __add__(self, other):
        o = self._lift(other)
        v = self.value + o.value
        return CertifiedValue(v, self.bound + o.bound + _round_slack(v))

    __radd__ = __add__

    def __neg__(self):
        return CertifiedValue(-self.value, self.bound)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        v = self.value * o.value
        b = abs(self.value) * o.bound + abs(o.value) * self.bound + self.bound * o.bound
        return CertifiedValue(v, b + _round_slack(v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        denom = abs(o.value) - o.bound
        if denom <= 0:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / o.value
        # |a/b - A/B| <= (ea + |a/b| eb) / (|b| - eb)
        b = (self.bound + abs(v) * o.bound) / denom
        return CertifiedValue(v, b + _round_slack(v))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise TypeError("only nonnegative integer powers")
        out = CertifiedValue(mpf(1), 0)
        for _ in range(k):
            out = out * self
        return out

    def sqrt(self) -> "CertifiedValue":
        """Principal square root of a positive real value."""
        v = self.value
        if isinstance(v, mpc) or v - self.bound <= 0:
            raise DomainError("sqrt needs a value bounded away from zero on the positive axis")
        r = mpmath.sqrt(v)
        b = self.bound / (mpmath.sqrt(v - self.bound) + r)
        return CertifiedValue(r, b + _round_slack(r))

    def contains(self, x, slack=0) -> bool:
        return abs(self.value - x) <= self.bound + slack

    def agrees_with(self, other: "CertifiedValue", slack=0) -> bool:
        o = self._lift(other)
        return abs(self.value - o.value) <= self.bound + o.bound + slack

    def __repr__(self):
        return f"CertifiedValue({mpmath.nstr(self.value, 20)}, bound={mpmath.nstr(self.bound, 3)})"


# ---------------------------------------------------------------------------
# exact q-combinatorics
# ---------------------------------------------------------------------------

_Q = gens("q")[0]


def q_integer(n: int) -> LaurentPoly:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError("q_integer needs n >= 0")
    return LaurentPoly(("q",), {(j,): 1 for j in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    if n == 0:
        return _Q.one()
    return q_factorial(n - 1) * q_integer(n)


@lru_cache(maxsize=None)
def _binom_nonneg(n: int, m: int) -> LaurentPoly:
    if m < 0 or m > n:
        return _Q.zero()
    if m == 0 or m == n:
        return _Q.one()
    # (n choose m) = q^m (n-1 choose m) + (n-1 choose m-1)
    return _binom_nonneg(n - 1, m).shift(q=m) + _binom_nonneg(n - 1, m - 1)


def q_binomial_int(n: int, m: int) -> LaurentPoly:
    """Gaussian binomial (n choose m)_q as a Laurent polynomial in q.

    Zero when m < 0 or 0 <= n < m.  For negative n the product formula
    prod_{k=1}^m (1 - q^(n-k+1)) / (1 - q^k) is used, which gives
    (-1)^m q^(mn - m(m-1)/2) (m-n-1 choose m)_q.
    """
    if m < 0:
        return _Q.zero()
    if n >= 0:
        return _binom_nonneg(n, m)
    sign = -1 if m % 2 else 1
    return _binom_nonneg(m - n - 1, m).shift(q=m * n - m * (m - 1) // 2).scale(sign)


# ---------------------------------------------------------------------------
# numeric products
# ---------------------------------------------------------------------------


def q_power(z, ctx: QContext, base=None):
    """base**z with base = ctx.q by default, via exp(z ln base) (single-valued)."""
    b = ctx.qv if base is None else base
    if isinstance(z, int):
        return b ** z
    if isinstance(z, Fraction):
        z = mpf(z.numerator) / z.denominator
    return mpmath.exp(z * mpmath.log(b))


def q_product(a, base, ctx: QContext, *, power: int = 1) -> CertifiedValue:
    """prod_{n>=0} (1 - a base^n)^power with a certified truncation bound.

    Truncating after n = N leaves a relative error of at most
    exp(power |a| base^(N+1) / (1 - base)) - 1.
    """
    with ctx.workprec():
        base = +base
        if not (0 < base < 1):
            raise DomainError("product base must lie in (0, 1)")
        if a == 0:
            return CertifiedValue(mpf(1), 0)
        absa = abs(a)
        tol = ctx.tail_tolerance
        one_minus = 1 - base
        # smallest N with power |a| base^(N+1) / (1 - base) <= log1p(tol)
        need = mpmath.log1p(tol) * one_minus / (power * absa)
        N = 0 if need >= 1 else max(int(mpmath.ceil(mpmath.log(need) / mpmath.log(base))) - 1, 0)
        while mpmath.expm1(power * absa * base ** (N + 1) / one_minus) > tol:
            N += 1
        if N >= ctx.max_terms:
            raise TruncationError(f"q_product: tail bound needs {N} > {ctx.max_terms} terms")
        partial = mpf(1)
        term = a
        eps = mpf(2) ** (-ctx.precision + 1)
        # a is known to working precision, so 1 - a base^n carries an absolute error
        # of about |a base^n| (n+3) eps; near a cancellation that dominates
        cond = mpf(0)
        for n in range(N + 1):
            factor = 1 - term
            if factor == 0:
                return CertifiedValue(mpf(0), 0)
            cond += abs(term) * (n + 3) * eps / abs(factor)
            partial *= factor
            term *= base
        rel = mpmath.expm1(power * absa * base ** (N + 1) / one_minus)
        val = partial ** power
        rounding = abs(val) * power * ((N + 2) * 4 * eps + 2 * cond)
        return CertifiedValue(val, abs(val) * rel + rounding)


def q_pochhammer(a, ctx: QContext) -> CertifiedValue:
    """(a; q)_inf = prod_{n>=0} (1 - a q^n)."""
    ctx.require_open()
    return q_product(a, ctx.qv, ctx)


def finite_q_product(exponents: Iterable, ctx: QContext, base=None) -> CertifiedValue:
    """prod (1 - base^e) over a finite list of (possibly complex) exponents."""
    with ctx.workprec():
        val = mpf(1)
        count = 0
        for e in exponents:
            val *= 1 - q_power(e, ctx, base)
            count += 1
        return CertifiedValue(val, abs(val) * (count + 1) * mpf(2) ** (-ctx.precision + 3))


def _check_gamma_pole(alpha, ctx: QContext) -> None:
    """q^(alpha+n) = 1 for some n >= 1 iff alpha + n = 2 pi i k / ln q."""
    lnq = mpmath.log(ctx.qv)
    z = mpmath.mpmathify(alpha)
    k = mpmath.im(z) * lnq / (2 * mpmath.pi)
    re = mpmath.re(z)
    tol = mpf(2) ** (-ctx.precision + 16)
    if abs(k - mpmath.nint(k)) <= tol and abs(re - mpmath.nint(re)) <= tol and mpmath.nint(re) <= -1:
        raise DomainError(f"q-Gamma pole at alpha = {alpha}")


def q_gamma(alpha, ctx: QContext) -> CertifiedValue:
    """(alpha)!_q = (1-q)^(-alpha) prod_{n>=1} (1-q^n)/(1-q^(alpha+n)).

    This is the factorial convention, so integer alpha = n >= 0 gives n!_q.
    """
    ctx.require_open()
    with ctx.workprec():
        _check_gamma_pole(alpha, ctx)
        q = ctx.qv
        if isinstance(alpha, int) and alpha >= 0:
            val = q_factorial(alpha).evaluate({"q": q})
            return CertifiedValue(val, _round_slack(val) * (alpha + 1))
        num = q_product(q, q, ctx)
        den = q_product(q_power(alpha, ctx) * q, q, ctx)
        pref = mpmath.exp(-mpmath.mpmathify(alpha) * mpmath.log(1 - q))
        return (num / den) * CertifiedValue(pref, _round_slack(pref))


def _nonneg_int(x):
    if isinstance(x, int):
        return x if x >= 0 else None
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 and x >= 0 else None
    if isinstance(x, (float, mpf)) and x == int(x) and x >= 0:
        return int(x)
    return None


def q_binomial_general(alpha, beta, ctx: QContext) -> CertifiedValue:
    """(alpha choose beta)_q = (alpha)!_q / ((alpha-beta)!_q (beta)!_q).

    When beta (or alpha - beta) is a nonnegative integer the finite product
    form is used, which avoids spurious Gamma poles (e.g. (3 choose 5)_q = 0).
    """
    ctx.require_open()
    with ctx.workprec():
        k = _nonneg_int(beta)
        if k is None:
            diff = alpha - beta
            k = _nonneg_int(diff)
            top = alpha
        else:
            top = alpha
        if k is not None:
            num = finite_q_product([top - j + 1 for j in range(1, k + 1)], ctx)
            den = finite_q_product(range(1, k + 1), ctx)
            return num / den
        return q_gamma(alpha, ctx) / (q_gamma(alpha - beta, ctx) * q_gamma(beta, ctx))
