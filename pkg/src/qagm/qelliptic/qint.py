"""The q-analogue of the sum obtained from the derivative integral of F at 1/2.

    f(x, q) = sum_n (-1)^n q^n prod_{j<=n} (1-q^(2j-1)x)(1-q^(2j-1)) / ((1-q^(2j))(1-q^(2j)x))

satisfies f(q^(2s), q) = f(0, q) prod_n (1-q^(2s+4n+3))^2 / ((1-q^(2s+4n+2))(1-q^(2s+4n+4))).
At q = 1 the sums converge only conditionally; they are evaluated by pairing
consecutive terms and bracketing the remaining tail.
"""

from __future__ import annotations

import time

import mpmath
from mpmath import mpf

from ..identities.identity2 import verify_micro_identity
from ..kernel import LaurentPoly, TruncatedSeries, series_from_product
from ..qcore import (CertifiedValue, DomainError, QContext, TruncationError, _check_gamma_pole,
                     q_gamma, q_power, q_product)
from ..report import VerificationReport, combine, numeric_report
from .products import rounded, wallis_constant
from .qsum import X, _fac, _series_report, _shift_x, _sorted_factors, _sum

__all__ = [
    "qint_f",
    "qint_rhs",
    "qint_gamma_form",
    "paired_sum_q1",
    "f0_at_one",
    "qint_q1",
    "qint_verify",
    "qint_series_terms",
    "qint_verify_symbolic",
    "integral_to_sum_check",
]


def qint_f(x, ctx: QContext) -> CertifiedValue:
    """f(x, q) for q < 1.

    |t_n / t_(n-1)| <= q (1 + q^(2n-1)|x|) / (1 - q^(2n)|x|), which decreases in n,
    so once it is below 1 the tail is geometric.
    """
    ctx.require_open()
    with ctx.workprec():
        q = ctx.qv
        x = mpmath.mpmathify(x)
        ax = abs(x)
        total = mpf(0)
        term = mpf(1)
        for n in range(ctx.max_terms):
            total += term
            m = n + 1
            if q ** (2 * m) * ax < 1:
                rho = q * (1 + q ** (2 * m - 1) * ax) / (1 - q ** (2 * m) * ax)
                if rho < 1:
                    tail = abs(term) * rho / (1 - rho)
                    if tail <= ctx.tail_tolerance * max(1, abs(total)):
                        slack = abs(total) * (n + 2) * 4 * mpf(2) ** (-ctx.precision + 3)
                        return CertifiedValue(total, tail + slack)
            den = (1 - q ** (2 * m)) * (1 - q ** (2 * m) * x)
            if den == 0:
                raise DomainError("f(x, q) has a zero denominator")
            term *= -q * (1 - q ** (2 * m - 1) * x) * (1 - q ** (2 * m - 1)) / den
        raise TruncationError("qint_f: tail bound not reached")


def _check_s(s, ctx: QContext):
    _check_gamma_pole(s, ctx.with_q(ctx.qv**2))


def qint_rhs(s, ctx: QContext) -> CertifiedValue:
    ctx.require_open()
    with ctx.workprec():
        _check_s(s, ctx)
        q = ctx.qv
        s = mpmath.mpmathify(s)
        q4 = q**4
        num = q_product(q_power(2 * s + 3, ctx), q4, ctx, power=2)
        den = q_product(q_power(2 * s + 2, ctx), q4, ctx) * q_product(q_power(2 * s + 4, ctx), q4, ctx)
        return qint_f(0, ctx) * num / den


def qint_gamma_form(s, ctx: QContext) -> CertifiedValue:
    """f(0,q) C3(q) (s)!_{q^2} / ((1+q^2)^s ((2s-1)/4)!_{q^4}^2), factorial convention."""
    ctx.require_open()
    with ctx.workprec():
        q = ctx.qv
        s = mpmath.mpmathify(s)
        fac = q_gamma(s, ctx.with_q(q**2))
        quarter = q_gamma((2 * s - 1) / 4, ctx.with_q(q**4))
        pref = rounded(mpmath.exp(-s * mpmath.log(1 + q**2)))
        return qint_f(0, ctx) * wallis_constant("C3", ctx) * pref * fac / quarter**2


# -- q = 1: paired sums ------------------------------------------------------------

_LAMBDA = mpmath.sqrt(3) / 2 - mpf(1) / 2


def paired_sum_q1(s=None, tol=mpf("1e-10"), prec: int = 96, start: int = 256,
                  max_pairs: int = 2**22) -> CertifiedValue:
    """sum_n (-1)^n A_n(0) A_n(s), or sum_n (-1)^n A_n(0) when s is None,
    with A_n(s) = prod_{j<=n} (2s+2j-1)/(2s+2j); real s > -1/2.

    Terms 2n and 2n+1 are grouped.  A_k(s) = K_s Gamma(s+k+1/2)/Gamma(s+k+1) and,
    for y > 0,  (y + (sqrt 3 - 1)/2)^(-1/2) < Gamma(y+1/2)/Gamma(y+1) < (y + 1/4)^(-1/2)
    (Kershaw's inequality), so each grouped tail term is bracketed by explicit
    smooth functions whose sums over n > N bracket the tail.  The upper
    bracket is asymptotically exact, so it is reported as the value and the
    full bracket width as the bound.
    """
    with mpmath.workprec(prec):
        tol = mpf(tol)
        if s is not None:
            s = mpf(s)
            if not s > mpf(-1) / 2:
                raise DomainError("the paired q = 1 sum needs real s > -1/2")
            K = mpmath.gamma(s + 1) * mpmath.rgamma(s + mpf(1) / 2) / mpmath.sqrt(mpmath.pi)
        else:
            K = 1 / mpmath.sqrt(mpmath.pi)

        def grouped(n, A0, As):
            if s is None:
                return A0 / (4 * n + 2)
            return A0 * As * (8 * n + 3 + 2 * s) / ((4 * n + 2) * (4 * n + 2 + 2 * s))

        def bracket(n, lam):
            k = 2 * n
            val = K * (k + lam) ** mpf(-0.5)
            if s is None:
                return val / (4 * n + 2)
            return val * (s + k + lam) ** mpf(-0.5) * (8 * n + 3 + 2 * s) / ((4 * n + 2) * (4 * n + 2 + 2 * s))

        total = mpf(0)
        A0 = mpf(1)
        As = mpf(1)
        n = 0
        N = start
        while True:
            while n <= N:
                total += grouped(n, A0, As)
                for j in (2 * n + 1, 2 * n + 2):
                    A0 *= mpf(2 * j - 1) / (2 * j)
                    if s is not None:
                        As *= (2 * s + 2 * j - 1) / (2 * s + 2 * j)
                n += 1
            lo, elo = mpmath.sumem(lambda m: bracket(m, _LAMBDA), [N + 1, mpmath.inf], error=True)
            hi, ehi = mpmath.sumem(lambda m: bracket(m, mpf(1) / 4), [N + 1, mpmath.inf], error=True)
            width = (hi - lo) + abs(elo) + abs(ehi)
            if width <= tol / 2 or N >= max_pairs:
                rounding = abs(total) * (4 * N + 8) * mpf(2) ** (-prec + 2)
                if width > tol / 2:
                    raise TruncationError(f"paired sum: bracket {width} above tolerance after {N} pairs")
                return CertifiedValue(total + hi, width + rounding)
            N *= 2


def f0_at_one(tol=mpf("1e-10")) -> CertifiedValue:
    """f(0, 1) = sum_n (-1)^n prod_{j<=n} (2j-1)/(2j)."""
    return paired_sum_q1(None, tol=tol)


def _q1_product(s, prec=96):
    with mpmath.workprec(prec):
        s = mpf(s)
        a, b, c = (3 + 2 * s) / 4, (2 + 2 * s) / 4, (4 + 2 * s) / 4
        val = mpmath.gamma(b) * mpmath.gamma(c) * mpmath.rgamma(a) ** 2
        return CertifiedValue(val, abs(val) * mpf(2) ** (-prec + 4))


def qint_q1(s, tol=mpf("1e-8")) -> VerificationReport:
    params = {"s": s, "q": 1}
    tol = mpf(tol)
    f0 = f0_at_one(tol / 10)
    parts = [numeric_report("qint_q1.f0_is_inverse_sqrt2", params, f0.value - 1 / mpmath.sqrt(2),
                            max(tol, f0.bound), f0=f0.value)]
    fs = paired_sum_q1(s, tol=tol / 10)
    rhs = f0 * _q1_product(s)
    parts.append(numeric_report("qint_q1.sum_vs_product", params, fs.value - rhs.value,
                                max(tol, fs.bound + rhs.bound), sum=fs.value, product=rhs.value))
    return combine("qint_q1", params, parts)


def qint_verify(s, ctx: QContext) -> VerificationReport:
    """Numeric check at (s, q); q = 1 dispatches to the paired-sum branch."""
    if ctx.is_limit:
        return qint_q1(s)
    params = {"s": s, "q": ctx.qv}
    with ctx.workprec():
        _check_s(s, ctx)
        lhs = qint_f(q_power(2 * mpmath.mpmathify(s), ctx), ctx)
        rhs = qint_rhs(s, ctx)
        parts = [numeric_report("qint.sum_vs_product", params, lhs.value - rhs.value,
                                lhs.bound + rhs.bound, lhs=lhs.value, rhs=rhs.value)]
        try:
            g = qint_gamma_form(s, ctx)
        except (DomainError, ZeroDivisionError) as exc:
            return combine("qint_numeric", params, parts, gamma_form=f"skipped: {exc}")
        parts.append(numeric_report("qint.gamma_form", params, g.value - rhs.value,
                                    g.bound + rhs.bound, gamma_form=g.value))
    return combine("qint_numeric", params, parts)


# -- symbolic ---------------------------------------------------------------------------


def _tail(start: int, order: int) -> TruncatedSeries:
    """prod_{j>=start} (1 - q^(2j))(1 - q^(2j) x) to q-order ``order``."""
    specs = [(2 * j, 0, 1) for j in range(start, order // 2 + 1)]
    specs += [(2 * j, 1, 1) for j in range(start, order // 2 + 1)]
    return series_from_product(_sorted_factors(specs, order), order, X)


def qint_series_terms(order: int) -> list[TruncatedSeries]:
    """f~_n(x,q) = (-1)^n q^n prod_{j<=n} (1-q^(2j-1))(1-q^(2j-1)x) prod_{j>n} (1-q^(2j))(1-q^(2j)x)
    for n <= order (term n starts at q^n)."""
    tails = [None] * (order + 2)
    tails[order + 1] = TruncatedSeries.one(order, X)
    for n in range(order, -1, -1):
        j = n + 1
        t = tails[n + 1]
        if 2 * j <= order:
            t = t.mul_factor(_fac(2 * j)).mul_factor(_fac(2 * j, 1))
        tails[n] = t
    terms = []
    for n in range(order + 1):
        t = tails[n].mul_factor(LaurentPoly.monomial(("q", "x"), -1 if n % 2 else 1, q=n))
        for j in range(1, n + 1):
            if 2 * j - 1 > order - n:
                break
            t = t.mul_factor(_fac(2 * j - 1)).mul_factor(_fac(2 * j - 1, 1))
        terms.append(t)
    return terms


def qint_verify_symbolic(order: int, replay_up_to: int = 6) -> VerificationReport:
    """Prefix checks to q^order: f~(x) = f~(0) prod (1-q^(4m+3)x)^2, f~(x) = (1-q^3x)^2 f~(q^4x),
    the telescoped remainder
    sum_{n<=N} [f~_n(x) - (1-q^3x)^2 f~_n(q^4x)] = q^2(1-q) x R_N prod_{j>N} (1-q^(2j)) prod_{j>=N+3} (1-q^(2j)x),
    R_N = (-1)^(N+1) q^N prod_{m=0}^N (1-q^(2m+1)) prod_{m=1}^N (1-q^(2m+1)x),
    and the polynomial identity behind its induction step.  At N = 0 the left
    side is -q^2 x (1-q)^2 times the tails, which fixes the sign of R_N."""
    if order < 1:
        raise ValueError("order must be >= 1")
    t0 = time.perf_counter()
    terms = qint_series_terms(order)
    lhs = _sum(terms, order)
    at_zero = TruncatedSeries([LaurentPoly.const(c.coefficient(x=0), X) for c in lhs.coeffs], order, X)
    prod = series_from_product(_sorted_factors([(4 * m + 3, 1, 2) for m in range(order // 4 + 1)], order),
                               order, X)
    params = {"order": order}
    parts = [_series_report("qint_symbolic.product", params, lhs, at_zero * prod),
             _series_report("qint_symbolic.functional_equation", params, lhs, _shift_x(lhs))]
    running = TruncatedSeries([], order, X)
    for N in range(min(replay_up_to, order) + 1):
        running = running + terms[N] - _shift_x(terms[N])
        lead = LaurentPoly.monomial(("q", "x"), 1 if N % 2 else -1, q=N + 2, x=1) * _fac(1)
        for m in range(N + 1):
            lead = lead * _fac(2 * m + 1)
        for m in range(1, N + 1):
            lead = lead * _fac(2 * m + 1, 1)
        specs = [(2 * j, 0, 1) for j in range(N + 1, order // 2 + 1)]
        specs += [(2 * j, 1, 1) for j in range(N + 3, order // 2 + 1)]
        expected = series_from_product(_sorted_factors(specs, order), order, X).mul_factor(lead)
        parts.append(_series_report("qint_symbolic.remainder", {"order": order, "N": N}, running, expected))
    for N in range(min(replay_up_to, order) + 1):
        parts.append(verify_micro_identity("qint_step", {"N": N}))
    report = combine("qint_symbolic", params, parts)
    report.millis = (time.perf_counter() - t0) * 1000
    return report


# -- integral to sum -----------------------------------------------------------------------


def integral_to_sum_check(s, tol=mpf("1e-8"), prec: int = 96) -> VerificationReport:
    """int_0^1 (t^2/(2-t^2))^s / (sqrt(1-t^2) sqrt(2-t^2)) dt
    = (-1/2)! (s-1/2)! / (2 s!) * sum_n (-1)^n prod_{j<=n} (2j-1)(2s+2j-1)/((2j)(2s+2j)).

    The integral uses t = sin(theta) and tanh-sinh quadrature; the sum uses
    the paired q = 1 evaluation.
    """
    params = {"s": s}
    with mpmath.workprec(prec):
        sv = mpf(s)
        if not sv > mpf(-1) / 2:
            raise DomainError("the integral converges only for s > -1/2")

        def integrand(th):
            u = mpmath.sin(th) ** 2
            return (u / (2 - u)) ** sv / mpmath.sqrt(2 - u)

        integral, qerr = mpmath.quad(integrand, [0, mpmath.pi / 4, mpmath.pi / 2], error=True)
        pref = mpmath.sqrt(mpmath.pi) * mpmath.gamma(sv + mpf(1) / 2) / (2 * mpmath.gamma(sv + 1))
        series = paired_sum_q1(sv, tol=mpf(tol) / (10 * pref))
        rhs = pref * series.value
        bound = max(mpf(tol), abs(qerr) + pref * series.bound)
        return numeric_report("integral_to_sum", params, integral - rhs, bound,
                              integral=integral, sum=rhs, quadrature_error=abs(qerr))
