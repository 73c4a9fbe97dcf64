"""The q-analogue of the derivative sum of F at 1/2 and its product evaluation.

For q < 1:

    sum_n q^((s-n)(s-n-1)) (n choose s)_{q^2} a_n(q)^2 / prod_{j<=n} (1+q^(2j))
      = q^(s^2-s) prod_n (1-q^(4n+3-2s))^2 (1-q^(2s+2n+2)) / ((1-q^(4n+2)) (1-q^(4n+4)) (1-q^(2n+2)))

with a_n(q) = prod_{j<=n} (1-q^(2j-1))/(1-q^(2j)).  At q = 1 the identity
becomes f(s) = sum_n prod_{j<=n} (2j-1)^2/((2j-2s)(4j)) = prod_n (4n+3-2s)^2/((4n+2-2s)(4n+4-2s)).
"""

from __future__ import annotations

import time
from fractions import Fraction

import mpmath
from mpmath import mpf

from ..kernel import LaurentPoly, TruncatedSeries, series_from_product
from ..qcore import (CertifiedValue, DomainError, QContext, TruncationError, q_binomial_general,
                     q_gamma, q_power, q_product)
from ..report import EXACT_PASS, FAIL, VerificationReport, combine, numeric_report
from .products import one_plus_sinpi, rounded, wallis_constant

__all__ = [
    "qsum_lhs",
    "qsum_rhs",
    "qsum_gamma_form",
    "qsum_verify_numeric",
    "qsum_series_terms",
    "qsum_verify_symbolic",
    "qsum_prefix_agreement",
    "qsum_q1_sum",
    "qsum_q1_product",
    "qsum_q1",
]


def _re(z):
    return mpmath.re(mpmath.mpmathify(z))


def qsum_lhs(s, ctx: QContext) -> CertifiedValue:
    """Left side, summed until the geometric tail bound drops below ctx.tail_tolerance.

    With the binomial written as a product, term n equals
    q^(s^2-s) C(s) q^(n(n+1)-2sn) prod_{j<=n} (1-q^(2j-1))^2/(1-q^(4j)) prod_{j>n} (1-q^(2j-2s)),
    where C(s) = prod_{j>=1} (1-q^(2j+2s))/(1-q^(2j))^2.  For n >= N > Re s,
    |term n| <= |q^(s^2-s) C(s)| / (q^4;q^4) * exp(q^(2N+2-2Re s)/(1-q^2)) * q^(n(n+1)-2 Re(s) n),
    and consecutive bounds shrink by at least q^(2N+2-2 Re s).
    """
    ctx.require_open()
    with ctx.workprec():
        q = ctx.qv
        s = mpmath.mpmathify(s)
        sig = _re(s)
        q2 = q**2
        ctx2 = ctx.with_q(q2)
        C = q_product(q_power(2 + 2 * s, ctx), q2, ctx) / q_product(q2, q2, ctx, power=2)
        inv_poch4 = 1 / (q_product(q**4, q**4, ctx).value - q_product(q**4, q**4, ctx).bound)
        scale = abs(q_power(s * s - s, ctx)) * (abs(C.value) + C.bound) * inv_poch4
        total = CertifiedValue(mpf(0), 0)
        a2 = mpf(1)       # a_n(q)^2
        plus = mpf(1)     # prod (1 + q^(2j))
        for n in range(ctx.max_terms):
            if n:
                a2 *= ((1 - q ** (2 * n - 1)) / (1 - q ** (2 * n))) ** 2
                plus *= 1 + q ** (2 * n)
            if n > sig:
                r = q ** (2 * n + 2 - 2 * sig)
                tail = (scale * mpmath.exp(r / (1 - q2)) * q ** (n * (n + 1) - 2 * sig * n) / (1 - r))
                if tail <= ctx.tail_tolerance * max(1, abs(total.value)):
                    return CertifiedValue(total.value, total.bound + tail)
            binom = q_binomial_general(n, s, ctx2)
            weight = rounded(q_power((s - n) * (s - n - 1), ctx) * a2 / plus)
            weight = CertifiedValue(weight.value, weight.bound * (4 * n + 2))
            total = total + binom * weight
        raise TruncationError("qsum_lhs: tail bound not reached")


def qsum_rhs(s, ctx: QContext) -> CertifiedValue:
    ctx.require_open()
    with ctx.workprec():
        q = ctx.qv
        s = mpmath.mpmathify(s)
        q2, q4 = q**2, q**4
        num = q_product(q_power(3 - 2 * s, ctx), q4, ctx, power=2) * q_product(q_power(2 * s + 2, ctx), q2, ctx)
        den = q_product(q2, q4, ctx) * q_product(q4, q4, ctx) * q_product(q2, q2, ctx)
        return rounded(q_power(s * s - s, ctx)) * num / den


def qsum_gamma_form(s, ctx: QContext) -> CertifiedValue:
    """C2(q) (1+SinPi)(s,q^2) (s-1/2 choose s)_{q^2} Gamma_{q^4}((2s+1)/4) / Gamma_{q^4}((2s+3)/4).

    Gamma here is the true Gamma, Gamma_p(x) = (x-1)!_p; the binomial is the
    Gamma-ratio one.  Raises DomainError at removable singularities such as s = -1/2.
    """
    ctx.require_open()
    with ctx.workprec():
        q = ctx.qv
        s = mpmath.mpmathify(s)
        ctx2, ctx4 = ctx.with_q(q**2), ctx.with_q(q**4)
        binom = q_binomial_general(s - mpf(1) / 2, s, ctx2)
        gratio = q_gamma((2 * s + 1) / 4 - 1, ctx4) / q_gamma((2 * s + 3) / 4 - 1, ctx4)
        return wallis_constant("C2", ctx) * one_plus_sinpi(s, ctx) * binom * gratio


def qsum_verify_numeric(s, ctx: QContext) -> VerificationReport:
    """Both sides at (s, q); q = 1 dispatches to :func:`qsum_q1`."""
    if ctx.is_limit:
        return qsum_q1(s)
    params = {"s": s, "q": ctx.qv}
    lhs = qsum_lhs(s, ctx)
    rhs = qsum_rhs(s, ctx)
    with ctx.workprec():
        parts = [numeric_report("qsum.sum_vs_product", params, lhs.value - rhs.value,
                                lhs.bound + rhs.bound, lhs=lhs.value, rhs=rhs.value)]
        try:
            g = qsum_gamma_form(s, ctx)
        except (DomainError, ZeroDivisionError) as exc:
            return combine("qsum_numeric", params, parts, gamma_form=f"skipped: {exc}")
        parts.append(numeric_report("qsum.gamma_form", params, g.value - rhs.value,
                                    g.bound + rhs.bound, gamma_form=g.value))
    return combine("qsum_numeric", params, parts)


# -- symbolic -------------------------------------------------------------------------

X = ("x",)


def _fac(order_q: int, x: int = 0, coeff=1) -> LaurentPoly:
    """1 - coeff q^order_q x^x over {q, x}."""
    return (LaurentPoly.const(1, ("q", "x"))
            - LaurentPoly.monomial(("q", "x"), coeff, q=order_q, x=x))


def _sorted_factors(specs, order):
    """Factors (q-exponent, x-exponent, multiplicity) sorted by q-valuation, cut at ``order``."""
    out = []
    for qe, xe, mult in specs:
        if qe <= order:
            out += [(qe, xe)] * mult
    out.sort()
    return [_fac(qe, xe) for qe, xe in out]


def _tail_product(start_2j: int, start_4j: int, order: int) -> TruncatedSeries:
    """prod_{j>=start_2j} (1 - q^(2j) x) * prod_{j>=start_4j} (1 - q^(4j)), to q-order ``order``."""
    specs = [(2 * j, 1, 1) for j in range(start_2j, order // 2 + 1)]
    specs += [(4 * j, 0, 1) for j in range(start_4j, order // 4 + 1)]
    return series_from_product(_sorted_factors(specs, order), order, X)


def qsum_series_terms(order: int) -> list[TruncatedSeries]:
    """f~_n(x, q) = q^(n(n+1)) x^n prod_{j<=n} (1-q^(2j-1))^2 prod_{j>n} (1-q^(2j) x)(1-q^(4j)),
    for every n with n(n+1) <= order."""
    terms = []
    n = 0
    while n * (n + 1) <= order:
        lead = LaurentPoly.monomial(("q", "x"), 1, q=n * (n + 1), x=n)
        for j in range(1, n + 1):
            lead = lead * _fac(2 * j - 1) ** 2
        tail = _tail_product(n + 1, n + 1, order)
        terms.append(tail.mul_factor(lead))
        n += 1
    return terms


def _sum(series: list[TruncatedSeries], order: int) -> TruncatedSeries:
    out = TruncatedSeries([], order, X)
    for t in series:
        out = out + t
    return out


def _shift_x(t: TruncatedSeries) -> TruncatedSeries:
    """(1 - q^3 x)^2 t(q^4 x)."""
    return t.scale_var("x", 4).mul_factor(_fac(3, 1) ** 2)


def qsum_verify_symbolic(order: int, replay_up_to: int | None = None) -> VerificationReport:
    """Prefix equality of sum_n f~_n(x,q) and prod_n (1-q^(4n+3)x)^2 (1-q^(4n+4)) to q^order,
    plus f~(x) = (1-q^3x)^2 f~(q^4x) and the telescoped remainder
    sum_{n<=N} [f~_n(x) - (1-q^3x)^2 f~_n(q^4x)]
      = -q^((N+1)(N+2)) x^(N+1) prod_{j<=N+1} (1-q^(2j-1))^2 prod_{j>=N+3} (1-q^(2j)x) prod_{j>=N+1} (1-q^(4j))."""
    if order < 1:
        raise ValueError("order must be >= 1")
    t0 = time.perf_counter()
    terms = qsum_series_terms(order)
    lhs = _sum(terms, order)
    specs = [(4 * n + 3, 1, 2) for n in range(order // 4 + 1)] + [(4 * n + 4, 0, 1) for n in range(order // 4 + 1)]
    rhs = series_from_product(_sorted_factors(specs, order), order, X)
    params = {"order": order}
    parts = [_series_report("qsum_symbolic.product", params, lhs, rhs)]
    parts.append(_series_report("qsum_symbolic.functional_equation", params, lhs, _shift_x(lhs)))
    shifted = [_shift_x(t) for t in terms]
    n_max = len(terms) - 1 if replay_up_to is None else min(replay_up_to, len(terms) - 1)
    running = TruncatedSeries([], order, X)
    for N in range(n_max + 1):
        running = running + terms[N] - shifted[N]
        lead = LaurentPoly.monomial(("q", "x"), -1, q=(N + 1) * (N + 2), x=N + 1)
        for j in range(1, N + 2):
            lead = lead * _fac(2 * j - 1) ** 2
        expected = _tail_product(N + 3, N + 1, order).mul_factor(lead)
        parts.append(_series_report("qsum_symbolic.remainder", {"order": order, "N": N}, running, expected))
    report = combine("qsum_symbolic", params, parts)
    report.millis = (time.perf_counter() - t0) * 1000
    return report


def _series_report(theorem, params, a: TruncatedSeries, b: TruncatedSeries) -> VerificationReport:
    equal, n, first = a.compare(b)
    witness = None if equal else a.coeffs[first] - b.coeffs[first]
    return VerificationReport(theorem, params, EXACT_PASS if equal else FAIL, witness=witness,
                              details={"compared_order": n, "first_mismatch": first})


# -- q = 1 ---------------------------------------------------------------------------------


def qsum_prefix_agreement(s, ctx: QContext, order: int = 60) -> VerificationReport:
    """The exact q-expansion of prod_n (1-q^(4n+3)x)^2 (1-q^(4n+4)) to q^order,
    evaluated at x = q^(-2s) and scaled by q^(s^2-s) C(s) / (q^4;q^4), against
    the numeric left side.

    The dropped coefficients are dominated in absolute value by those of
    M = prod_n (1+q^(4n+3)|x|)^2 (1+q^(4n+4)), so the truncation error is at
    most M minus its own prefix evaluated at |x|.
    """
    ctx.require_open()
    params = {"s": s, "q": ctx.qv, "order": order}
    specs = [(4 * n + 3, 1, 2) for n in range(order // 4 + 1)] + [(4 * n + 4, 0, 1) for n in range(order // 4 + 1)]
    prefix = series_from_product(_sorted_factors(specs, order), order, X)
    signed = sorted((qe, xe) for qe, xe, mult in specs if qe <= order for _ in range(mult))
    majorant = series_from_product([_fac(qe, xe, coeff=-1) for qe, xe in signed], order, X)
    lhs = qsum_lhs(s, ctx)
    with ctx.workprec():
        q = ctx.qv
        s = mpmath.mpmathify(s)
        q2, q4 = q**2, q**4
        x = q_power(-2 * s, ctx)
        ax = abs(x)
        approx = prefix.evaluate({"q": q, "x": x})
        full = q_product(-q**3 * ax, q4, ctx, power=2) * q_product(-q4, q4, ctx)
        tail = full - majorant.evaluate({"q": q, "x": ax})
        scale = (rounded(q_power(s * s - s, ctx)) * q_product(q_power(2 + 2 * s, ctx), q2, ctx)
                 / (q_product(q2, q2, ctx, power=2) * q_product(q4, q4, ctx)))
        value = scale.value * approx
        bound = abs(scale.value) * (abs(tail.value) + tail.bound) + scale.bound * abs(approx) + lhs.bound
        return numeric_report("qsum.prefix_vs_numeric", params, value - lhs.value, bound,
                              prefix_value=value, lhs=lhs.value, truncation=abs(tail.value))


def _check_q1_domain(s):
    z = mpmath.mpmathify(s)
    if mpmath.im(z) == 0 and mpmath.re(z) >= 1 and mpmath.re(z) == int(mpmath.re(z)):
        raise DomainError(f"s = {s} is a positive integer; f_n(s) has a zero denominator")


def qsum_q1_sum(s, tol=mpf("1e-30"), prec: int = 128, max_terms: int = 10**6) -> CertifiedValue:
    """f(s) = sum_n prod_{j<=n} (2j-1)^2/((2j-2s)(4j)).

    The term ratio (2n+1)^2/((2n+2-2s)(4n+4)) is at most (n+1)/(2(n+1-max(Re s,0)))
    in modulus, which decreases in n, so the tail after a term is geometric.
    """
    _check_q1_domain(s)
    with mpmath.workprec(prec + 10):
        s = mpmath.mpmathify(s)
        sig = max(_re(s), 0)
        tol = mpf(tol)
        total = mpmath.mpf(0)
        term = mpmath.mpf(1)
        for n in range(max_terms):
            total += term
            rho = (n + 1) / (2 * (n + 1 - sig)) if n + 1 > 2 * sig else None
            if rho is not None and rho < 1:
                tail = abs(term) * rho / (1 - rho)
                if tail <= tol:
                    return CertifiedValue(total, tail + (n + 1) * abs(total) * mpf(2) ** (-prec))
            j = n + 1
            term *= mpf((2 * j - 1) ** 2) / ((2 * j - 2 * s) * (4 * j))
        raise TruncationError("qsum_q1_sum: tail bound not reached")


def qsum_q1_product(s, prec: int = 128) -> CertifiedValue:
    """prod_n (4n+3-2s)^2/((4n+2-2s)(4n+4-2s)) = Gamma(b) Gamma(c) / Gamma(a)^2,
    a = (3-2s)/4, b = (2-2s)/4, c = (4-2s)/4 (valid because 2a = b + c)."""
    _check_q1_domain(s)
    with mpmath.workprec(prec + 10):
        s = mpmath.mpmathify(s)
        a, b, c = (3 - 2 * s) / 4, (2 - 2 * s) / 4, (4 - 2 * s) / 4
        val = mpmath.gamma(b) * mpmath.gamma(c) * mpmath.rgamma(a) ** 2
        return CertifiedValue(val, abs(val) * mpf(2) ** (-prec + 4))


def q1_partial_identity(s: Fraction, N: int) -> Fraction:
    """Exact residual of
    sum_{n<=N} [f_n(s) - r f_n(s-2)] = -(2N+1)^2/((2N+2-2s)(2N+4-2s)) prod_{j<=N} (2j-1)^2/((2j-2s)(4j)),
    r = (3-2s)^2/((2-2s)(4-2s)), for rational s."""
    s = Fraction(s)

    def f(n, t):
        out = Fraction(1)
        for j in range(1, n + 1):
            out *= Fraction((2 * j - 1) ** 2) / ((2 * j - 2 * t) * 4 * j)
        return out

    r = (3 - 2 * s) ** 2 / ((2 - 2 * s) * (4 - 2 * s))
    lhs = sum((f(n, s) - r * f(n, s - 2) for n in range(N + 1)), Fraction(0))
    rhs = -Fraction((2 * N + 1) ** 2) / ((2 * N + 2 - 2 * s) * (2 * N + 4 - 2 * s)) * f(N, s)
    return lhs - rhs


def qsum_q1(s, tol=mpf("1e-8"), prec: int = 128) -> VerificationReport:
    """f(s) against its product, and the recursion f(s) = (3-2s)^2/((2-2s)(4-2s)) f(s-2)."""
    _check_q1_domain(s)
    params = {"s": s, "q": 1}
    tol = mpf(tol)
    with mpmath.workprec(prec):
        f = qsum_q1_sum(s, prec=prec)
        p = qsum_q1_product(s, prec=prec)
        parts = [numeric_report("qsum_q1.sum_vs_product", params, f.value - p.value,
                                max(tol, f.bound + p.bound), sum=f.value, product=p.value)]
        sm = mpmath.mpmathify(s)
        if (2 - 2 * sm) * (4 - 2 * sm) != 0:
            r = (3 - 2 * sm) ** 2 / ((2 - 2 * sm) * (4 - 2 * sm))
            g = qsum_q1_sum(sm - 2, prec=prec)
            parts.append(numeric_report("qsum_q1.recursion", params, f.value - r * g.value,
                                        max(tol, f.bound + abs(r) * g.bound)))
        if isinstance(s, (int, Fraction)):
            residuals = [q1_partial_identity(Fraction(s), N) for N in range(8)]
            ok = all(x == 0 for x in residuals)
            parts.append(VerificationReport("qsum_q1.partial_identity", params,
                                            EXACT_PASS if ok else FAIL,
                                            witness=next((x for x in residuals if x), Fraction(0))))
    return combine("qsum_q1", params, parts)
