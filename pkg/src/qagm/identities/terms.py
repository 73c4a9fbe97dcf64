"""Sums of rational terms with factored denominators.

A term is ``coeff * monomial * prod(num factors) / prod(den factors)``.
Factors are stored in a normal form (no monomial part, primitive, leading
coefficient positive) so equal factors are recognized and cancel.  Two
sums are compared by clearing a common denominator, which keeps every
comparison inside the Laurent polynomial ring.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from ..kernel import LaurentPoly, _norm_vars

__all__ = ["Term", "TermSum", "one_minus"]


def one_minus(vars, coeff=1, **exps) -> LaurentPoly:
    """1 - coeff * prod var^exp."""
    return LaurentPoly.monomial(vars, 1) - LaurentPoly.monomial(vars, coeff, **exps)


def _normalize(f: LaurentPoly):
    """Split f = c * m * g with g normalized; returns (c, m_exps, g) or g=None if f is a monomial."""
    if f.is_zero():
        raise ZeroDivisionError("zero factor")
    g, low = f.monomial_normalize()
    if g.is_monomial():
        (_, c), = g.terms.items()
        return Fraction(c), low, None
    cont = Fraction(g.content())
    first = min(g.terms)
    if g.terms[first] < 0:
        cont = -cont
    if cont != 1:
        g = g.scale(1 / cont)
    return cont, low, g


@dataclass
class Term:
    coeff: Fraction
    mono: tuple
    num: Counter = field(default_factory=Counter)
    den: Counter = field(default_factory=Counter)

    def cancel(self) -> None:
        for k in list(self.den):
            common = min(self.den[k], self.num.get(k, 0))
            if common:
                self.den[k] -= common
                self.num[k] -= common
        self.num = Counter({k: v for k, v in self.num.items() if v})
        self.den = Counter({k: v for k, v in self.den.items() if v})


class TermSum:
    """Finite sum of factored rational terms over a fixed alphabet."""

    def __init__(self, vars: Iterable[str]):
        self.vars = _norm_vars(vars)
        self.terms: list[Term] = []

    # -- building ---------------------------------------------------------

    def _mono_vec(self, mono: Mapping[str, int] | None) -> list[int]:
        vec = [0] * len(self.vars)
        for k, e in (mono or {}).items():
            vec[self.vars.index(k)] += e
        return vec

    def add(self, coeff=1, mono: Mapping[str, int] | None = None,
            num: Iterable[LaurentPoly] = (), den: Iterable[LaurentPoly] = ()) -> "TermSum":
        """Append one term.  A zero numerator factor drops the term."""
        coeff = Fraction(coeff)
        if coeff == 0:
            return self
        vec = self._mono_vec(mono)
        t = Term(coeff, (), Counter(), Counter())
        for sign, factors, bag in ((1, num, t.num), (-1, den, t.den)):
            for f in factors:
                if not isinstance(f, LaurentPoly):
                    f = LaurentPoly.const(f, self.vars)
                if f.vars != self.vars:
                    f = f.extend(self.vars)
                    if f.vars != self.vars:
                        raise ValueError(f"factor alphabet {f.vars} exceeds {self.vars}")
                if f.is_zero():
                    if sign > 0:
                        return self
                    raise ZeroDivisionError("zero denominator factor")
                c, low, g = _normalize(f)
                t.coeff = t.coeff * c if sign > 0 else t.coeff / c
                for i, e in enumerate(low):
                    vec[i] += sign * e
                if g is not None:
                    bag[g] += 1
        t.mono = tuple(vec)
        t.cancel()
        self.terms.append(t)
        return self

    def extend(self, other: "TermSum", scale=1) -> "TermSum":
        if other.vars != self.vars:
            raise ValueError("alphabet mismatch")
        for t in other.terms:
            self.terms.append(Term(t.coeff * scale, t.mono, Counter(t.num), Counter(t.den)))
        return self

    def __sub__(self, other: "TermSum") -> "TermSum":
        out = TermSum(self.vars).extend(self)
        return out.extend(other, -1)

    def __add__(self, other: "TermSum") -> "TermSum":
        return TermSum(self.vars).extend(self).extend(other)

    def times(self, coeff=1, mono=None, num=(), den=()) -> "TermSum":
        """Multiply every term by one more factored term."""
        probe = TermSum(self.vars).add(coeff, mono, num, den)
        out = TermSum(self.vars)
        if not probe.terms:
            return out
        p = probe.terms[0]
        for t in self.terms:
            nt = Term(t.coeff * p.coeff, tuple(a + b for a, b in zip(t.mono, p.mono)),
                      t.num + p.num, t.den + p.den)
            nt.cancel()
            out.terms.append(nt)
        return out

    # -- exact comparison ---------------------------------------------------

    def common_denominator(self) -> Counter:
        d: Counter = Counter()
        for t in self.terms:
            for k, v in t.den.items():
                if v > d[k]:
                    d[k] = v
        return d

    def cleared(self) -> tuple[LaurentPoly, Counter]:
        """(numerator, denominator multiset) with sum = numerator / prod(denominator)."""
        d = self.common_denominator()
        total = LaurentPoly(self.vars, {})
        cache: dict = {}
        for t in self.terms:
            factors = []
            for k, v in t.num.items():
                factors += [k] * v
            for k, v in d.items():
                factors += [k] * (v - t.den.get(k, 0))
            factors.sort(key=len)
            prod = LaurentPoly(self.vars, {t.mono: t.coeff})
            for f in factors:
                prod = prod * f
            total = total + prod
        return total, d

    def is_zero(self) -> bool:
        return self.cleared()[0].is_zero()

    # -- transformations ------------------------------------------------------

    def substitute(self, var: str, mono) -> "TermSum":
        """Substitute in every factor (after cancellation).  Terms with a
        vanishing numerator factor disappear; a vanishing denominator raises."""
        out = TermSum(self.vars)
        for t in self.terms:
            m = LaurentPoly(self.vars, {t.mono: t.coeff}).substitute(var, mono)
            num = [k.substitute(var, mono) for k, v in t.num.items() for _ in range(v)]
            den = [k.substitute(var, mono) for k, v in t.den.items() for _ in range(v)]
            if any(f.is_zero() for f in den):
                raise ZeroDivisionError(f"denominator vanishes at {var} -> {mono}")
            if any(f.is_zero() for f in num) or m.is_zero():
                continue
            (e, c), = m.terms.items()
            out.add(c, dict(zip(self.vars, e)), num, den)
        return out

    def term_values(self) -> list[LaurentPoly | None]:
        """Each term as a polynomial when its denominator is trivial, else None."""
        out = []
        for t in self.terms:
            if t.den:
                out.append(None)
                continue
            p = LaurentPoly(self.vars, {t.mono: t.coeff})
            for k, v in t.num.items():
                for _ in range(v):
                    p = p * k
            out.append(p)
        return out

    def evaluate(self, point: Mapping[str, object]):
        total = 0
        for t in self.terms:
            val = LaurentPoly(self.vars, {t.mono: t.coeff}).evaluate(point)
            for k, v in t.num.items():
                val = val * k.evaluate(point) ** v
            for k, v in t.den.items():
                val = val / k.evaluate(point) ** v
            total = total + val
        return total

    def limit_q1(self) -> Fraction:
        """Value at q = 1 of a sum in the single variable q, as a limit.

        Each factor is written as (1-q)^r g(q) with g(1) != 0; a term whose
        numerator order exceeds its denominator order tends to zero.
        """
        if self.vars != ("q",):
            raise ValueError("limit_q1 needs a sum in q alone")
        total = Fraction(0)
        for t in self.terms:
            order = 0
            val = Fraction(t.coeff)
            for bag, sign in ((t.num, 1), (t.den, -1)):
                for k, v in bag.items():
                    r, g1 = _order_at_one(k)
                    order += sign * r * v
                    val = val * g1**v if sign > 0 else val / g1**v
            if order < 0:
                raise ZeroDivisionError("term has a pole at q = 1")
            if order == 0:
                total += val
        return total

    def __len__(self):
        return len(self.terms)


@lru_cache(maxsize=4096)
def _order_at_one(f: LaurentPoly) -> tuple[int, Fraction]:
    one_minus_q = one_minus(("q",), q=1)
    r = 0
    while True:
        v = Fraction(f.evaluate({"q": 1}))
        if v != 0:
            return r, v
        f = f.exact_div(one_minus_q)
        r += 1
