"""Infinite products: the q-analogue of 1 + sin(pi s) and the Wallis-type constants."""

from __future__ import annotations

import mpmath
from mpmath import mpf

from ..qcore import CertifiedValue, QContext, _round_slack, q_power, q_product

__all__ = ["one_plus_sinpi", "wallis_constant", "rounded"]


def rounded(x) -> CertifiedValue:
    return CertifiedValue(x, _round_slack(x))


def one_plus_sinpi(s, ctx: QContext) -> CertifiedValue:
    """q^(s^2-s) prod_n (1-q^(4n+3-2s))^2 (1-q^(4n+1+2s))^2 / ((1-q^(4n+3))^2 (1-q^(4n+1))^2)."""
    ctx.require_open()
    with ctx.workprec():
        q = ctx.qv
        s = mpmath.mpmathify(s)
        q4 = q**4
        num = (q_product(q_power(3 - 2 * s, ctx), q4, ctx, power=2)
               * q_product(q_power(1 + 2 * s, ctx), q4, ctx, power=2))
        den = q_product(q**3, q4, ctx, power=2) * q_product(q, q4, ctx, power=2)
        return rounded(q_power(s * s - s, ctx)) * num / den


def wallis_constant(which: str, ctx: QContext, *, exponent: int = 4) -> CertifiedValue:
    """C1, C2 or C3 at ctx.q.

    C1 = (1-q^4)^2/(1-q)^2 prod_{n>=1} (1-q^(4n))^e / ((1-q^(4n-1))^2 (1-q^(4n+1))^2), e = ``exponent``
    C2 = (1-q^4)^(-1/2) prod_{n>=0} (1-q^(2n+1)) / (1-q^(2n+2))
    C3 = ((1-q^4)/(1-q^2) prod_{n>=1} (1-q^(4n))^2 / ((1-q^(4n-2)) (1-q^(4n+2))))^(1/2)
    """
    ctx.require_open()
    with ctx.workprec():
        q = ctx.qv
        q2, q4 = q**2, q**4
        if which == "C1":
            pref = rounded((1 - q4) ** 2 / (1 - q) ** 2)
            return pref * q_product(q4, q4, ctx, power=exponent) / (
                q_product(q**3, q4, ctx, power=2) * q_product(q**5, q4, ctx, power=2))
        if which == "C2":
            pref = rounded(1 / mpmath.sqrt(1 - q4))
            return pref * q_product(q, q2, ctx) / q_product(q2, q2, ctx)
        if which == "C3":
            pref = rounded((1 - q4) / (1 - q2))
            inner = pref * q_product(q4, q4, ctx, power=2) / (
                q_product(q2, q4, ctx) * q_product(q**6, q4, ctx))
            return inner.sqrt()
        raise ValueError(f"unknown constant {which!r}; expected C1, C2 or C3")
