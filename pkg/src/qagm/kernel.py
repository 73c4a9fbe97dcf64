"""Exact arithmetic: sparse multivariate Laurent polynomials over Q and
truncated power series in q.

Coefficients are Python ``int`` or :class:`fractions.Fraction` (reduced,
positive denominator).  Integral fractions are stored as ``int`` so the
common case stays on the fast path.
"""

from __future__ import annotations

import heapq
import itertools
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "ALPHABET",
    "AlphabetError",
    "LaurentPoly",
    "TruncatedSeries",
    "gens",
    "poly_arith",
    "poly_substitute",
    "poly_eval",
    "series_from_product",
]

#: Fixed variable alphabet.  t = q^s, u = q^alpha, w = q^c, v = q^a.
ALPHABET = ("q", "t", "u", "w", "v", "x", "X", "Y", "Z")
_ORDER = {name: i for i, name in enumerate(ALPHABET)}

EXP_LIMIT = 2**63 - 1

Coeff = Union[int, Fraction]


class AlphabetError(ValueError):
    """Raised when variable sets disagree or a name is outside the alphabet."""


def _norm_vars(names: Iterable[str]) -> tuple[str, ...]:
    names = tuple(dict.fromkeys(names))
    for n in names:
        if n not in _ORDER:
            raise AlphabetError(f"unknown variable {n!r}; allowed: {ALPHABET}")
    return tuple(sorted(names, key=_ORDER.__getitem__))


def _coeff(c) -> Coeff:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _check_exps(e: tuple[int, ...]) -> None:
    for x in e:
        if x > EXP_LIMIT or x < -EXP_LIMIT:
            raise OverflowError("exponent exceeds 64-bit range")


class LaurentPoly:
    """Immutable sparse Laurent polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples (one slot per variable in ``vars``, in
    alphabet order) to nonzero coefficients.  The representation is
    canonical, so ``==`` is mathematical equality.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple, object] | None = None,
                 *, _trusted: bool = False):
        if _trusted:
            self.vars = vars  # type: ignore[assignment]
            self.terms = terms  # type: ignore[assignment]
        else:
            self.vars = _norm_vars(vars)
            n = len(self.vars)
            clean: dict[tuple[int, ...], Coeff] = {}
            for e, c in (terms or {}).items():
                e = tuple(int(x) for x in e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                _check_exps(e)
                c = _coeff(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def const(cls, c, vars: Iterable[str]) -> "LaurentPoly":
        vars = _norm_vars(vars)
        c = _coeff(c)
        return cls(vars, {(0,) * len(vars): c} if c else {}, _trusted=True)

    @classmethod
    def monomial(cls, vars: Iterable[str], coeff=1, **exps: int) -> "LaurentPoly":
        vars = _norm_vars(vars)
        for k in exps:
            if k not in vars:
                raise AlphabetError(f"{k!r} not among {vars}")
        e = tuple(int(exps.get(v, 0)) for v in vars)
        _check_exps(e)
        c = _coeff(coeff)
        return cls(vars, {e: c} if c else {}, _trusted=True)

    def _new(self, terms: dict) -> "LaurentPoly":
        return LaurentPoly(self.vars, terms, _trusted=True)

    def zero(self) -> "LaurentPoly":
        return self._new({})

    def one(self) -> "LaurentPoly":
        return self._new({(0,) * len(self.vars): 1})

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise AlphabetError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, float):
            return LaurentPoly.const(other, self.vars)
        return NotImplemented  # type: ignore[return-value]

    def extend(self, vars: Iterable[str]) -> "LaurentPoly":
        """Embed into a larger alphabet (new variables get exponent 0)."""
        new = _norm_vars(tuple(self.vars) + tuple(vars))
        if new == self.vars:
            return self
        idx = [new.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new)
            for i, x in zip(idx, e):
                ne[i] = x
            out[tuple(ne)] = c
        return LaurentPoly(new, out, _trusted=True)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        res = dict(a)
        for e, c in b.items():
            s = res.get(e, 0) + c
            if s:
                res[e] = s
            else:
                del res[e]
        return self._new(res)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, 0) - c
            if s:
                res[e] = s
            else:
                del res[e]
        return self._new(res)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return self._new({})
        if len(a) < len(b):
            a, b = b, a
        self._check_product_range(other)
        res: dict = {}
        get = res.get
        if len(self.vars) == 1:
            for (eb,), cb in b.items():
                for (ea,), ca in a.items():
                    k = (ea + eb,)
                    res[k] = get(k, 0) + ca * cb
        else:
            for eb, cb in b.items():
                for ea, ca in a.items():
                    k = tuple([x + y for x, y in zip(ea, eb)])
                    res[k] = get(k, 0) + ca * cb
        return self._new({e: c for e, c in res.items() if c})

    __rmul__ = __mul__

    def _check_product_range(self, other: "LaurentPoly") -> None:
        for i in range(len(self.vars)):
            hi = max(e[i] for e in self.terms) + max(e[i] for e in other.terms)
            lo = min(e[i] for e in self.terms) + min(e[i] for e in other.terms)
            if hi > EXP_LIMIT or lo < -EXP_LIMIT:
                raise OverflowError("exponent exceeds 64-bit range")

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer powers only")
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only for monomials")
            (e, c), = self.terms.items()
            ne = tuple(x * k for x in e)
            _check_exps(ne)
            return self._new({ne: _coeff(Fraction(c) ** k)})
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "LaurentPoly":
        c = _coeff(c)
        if not c:
            return self._new({})
        return self._new({e: _coeff(v * c) for e, v in self.terms.items()})

    def shift(self, **exps: int) -> "LaurentPoly":
        """Multiply by the monomial with the given exponents."""
        d = tuple(int(exps.get(v, 0)) for v in self.vars)
        for k in exps:
            if k not in self.vars:
                raise AlphabetError(f"{k!r} not among {self.vars}")
        out = {}
        for e, c in self.terms.items():
            ne = tuple(x + y for x, y in zip(e, d))
            out[ne] = c
        for ne in out:
            _check_exps(ne)
        return self._new(out)

    # -- predicates / inspection -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.const(other, self.vars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * len(self.vars), 0)

    def _slot(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise AlphabetError(f"{var!r} not among {self.vars}") from None

    def degree(self, var: str) -> int:
        i = self._slot(var)
        return max(e[i] for e in self.terms) if self.terms else 0

    def min_degree(self, var: str) -> int:
        i = self._slot(var)
        return min(e[i] for e in self.terms) if self.terms else 0

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def coefficient(self, **exps: int) -> Coeff:
        e = tuple(int(exps.get(v, 0)) for v in self.vars)
        return self.terms.get(e, 0)

    def content(self) -> Coeff:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            f = Fraction(c)
            num = gcd(num, f.numerator)
            den = den * f.denominator // gcd(den, f.denominator)
        return _coeff(Fraction(num, den)) if num else 0

    # -- substitution / evaluation ----------------------------------------

    def substitute(self, var: str, mono: "LaurentPoly | int | Fraction") -> "LaurentPoly":
        """Replace ``var`` by a signed unit monomial or a nonzero constant.

        The result keeps the same alphabet (``var`` simply no longer occurs
        unless ``mono`` contains it).
        """
        i = self._slot(var)
        if not isinstance(mono, LaurentPoly):
            c = _coeff(mono)
            if c == 0:
                raise ValueError("substitution by zero is not a monomial substitution")
            d = (0,) * len(self.vars)
        else:
            mono = self._coerce(mono)
            if not mono.is_monomial():
                raise ValueError("substitution target must be a single-term monomial")
            (d, c), = mono.terms.items()
            if c not in (1, -1) and any(d):
                raise ValueError("monomial substitution must have coefficient +-1")
        res: dict = {}
        cpow: dict[int, Coeff] = {}
        for e, v in self.terms.items():
            k = e[i]
            if k not in cpow:
                cpow[k] = _coeff(Fraction(c) ** k) if k < 0 else c ** k
            ne = list(e)
            ne[i] = 0
            ne = tuple(x + k * y for x, y in zip(ne, d))
            _check_exps(ne)
            res[ne] = res.get(ne, 0) + v * cpow[k]
        return self._new({e: _coeff(c) for e, c in res.items() if c})

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at numeric values; every variable present must be bound.

        Works with any numeric type supporting ``*``, ``+`` and integer
        powers (int, Fraction, mpmath mpf/mpc, float, complex).
        """
        used = self.used_vars()
        missing = [v for v in used if v not in point]
        if missing:
            raise KeyError(f"unbound variables: {missing}")
        idx = [(i, point[v]) for i, v in enumerate(self.vars) if v in used]
        powcache: dict = {}
        total = 0
        for e, c in self.terms.items():
            t = c
            for i, val in idx:
                k = e[i]
                if k:
                    key = (i, k)
                    p = powcache.get(key)
                    if p is None:
                        if k < 0:
                            if val == 0:
                                raise ZeroDivisionError(f"negative power of {self.vars[i]} at 0")
                            p = 1 / (Fraction(val) if isinstance(val, int) else val) ** (-k)
                        else:
                            p = val ** k
                        powcache[key] = p
                    t = t * p
            total = total + t
        return total

    def derivative(self, var: str) -> "LaurentPoly":
        i = self._slot(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return self._new(out)

    # -- division ----------------------------------------------------------

    def _lowest_monomial(self) -> tuple[int, ...]:
        n = len(self.vars)
        return tuple(min(e[i] for e in self.terms) for i in range(n))

    def monomial_normalize(self) -> tuple["LaurentPoly", tuple[int, ...]]:
        """Split off the largest monomial factor: self = shift(m) * result."""
        if not self.terms:
            return self, (0,) * len(self.vars)
        low = self._lowest_monomial()
        out = {tuple(x - y for x, y in zip(e, low)): c for e, c in self.terms.items()}
        return self._new(out), low

    def divmod(self, divisor: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Lex-order division by a single polynomial.

        Remainder is zero exactly when ``divisor`` divides ``self`` in the
        Laurent ring.  Both arguments are first stripped of monomial factors
        (units of the Laurent ring); the returned quotient accounts for them.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self, self
        p, lp = self.monomial_normalize()
        d, ld = divisor.monomial_normalize()
        lt_e = max(d.terms)
        lt_c = Fraction(d.terms[lt_e])
        rem: dict = {}
        quo: dict = {}
        work = dict(p.terms)
        heap = [tuple(-x for x in e) for e in work]
        heapq.heapify(heap)
        while heap:
            key = heapq.heappop(heap)
            e = tuple(-x for x in key)
            c = work.get(e)
            if not c:
                continue
            if all(x >= y for x, y in zip(e, lt_e)):
                m = tuple(x - y for x, y in zip(e, lt_e))
                qc = _coeff(Fraction(c) / lt_c)
                quo[m] = quo.get(m, 0) + qc
                for de, dc in d.terms.items():
                    ne = tuple(x + y for x, y in zip(m, de))
                    old = work.get(ne)
                    nv = (old or 0) - qc * dc
                    if nv:
                        if old is None or old == 0:
                            heapq.heappush(heap, tuple(-x for x in ne))
                        work[ne] = _coeff(nv)
                    else:
                        work.pop(ne, None)
            else:
                rem[e] = c
                del work[e]
        shift = tuple(x - y for x, y in zip(lp, ld))
        quo = {tuple(x + y for x, y in zip(e, shift)): c for e, c in quo.items() if c}
        rem = {tuple(x + y for x, y in zip(e, lp)): c for e, c in rem.items() if c}
        return self._new(quo), self._new(rem)

    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    # -- display ------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Coeff]]:
        return sorted(self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}" if k > 0 else f"{v}^({k})")
                for v, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self.vars}, {str(self)!r})"


def gens(*names: str) -> tuple[LaurentPoly, ...]:
    """Generators of the Laurent ring over the given variables.

    >>> q, w = gens("q", "w")
    >>> str((1 - q) * (1 + q))
    '1 - q^2'
    """
    vars = _norm_vars(names)
    out = []
    for n in names:
        out.append(LaurentPoly.monomial(vars, 1, **{n: 1}))
    return tuple(out)


def poly_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if a.vars != b.vars:
        raise AlphabetError(f"variable mismatch: {a.vars} vs {b.vars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_substitute(p: LaurentPoly, var: str, mono) -> LaurentPoly:
    return p.substitute(var, mono)


def poly_eval(p: LaurentPoly, point: Mapping[str, object]):
    return p.evaluate(point)


# ---------------------------------------------------------------------------
# truncated power series in q
# ---------------------------------------------------------------------------


class TruncatedSeries:
    """Power series sum_k c_k q^k known exactly for 0 <= k <= order.

    Coefficients are LaurentPoly over ``coeff_vars`` (q excluded).
    """

    __slots__ = ("order", "coeff_vars", "coeffs")

    def __init__(self, coeffs: Sequence[LaurentPoly], order: int, coeff_vars: Iterable[str]):
        self.coeff_vars = _norm_vars(coeff_vars)
        if "q" in self.coeff_vars:
            raise AlphabetError("q is the series variable")
        if order < 0:
            raise ValueError("order must be >= 0")
        zero = LaurentPoly(self.coeff_vars, {}, _trusted=True)
        cs = list(coeffs[: order + 1])
        for c in cs:
            if c.vars != self.coeff_vars:
                raise AlphabetError(f"coefficient alphabet {c.vars} != {self.coeff_vars}")
        cs += [zero] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, order: int, coeff_vars: Iterable[str]) -> "TruncatedSeries":
        cv = _norm_vars(coeff_vars)
        return cls([LaurentPoly.const(1, cv)], order, cv)

    @classmethod
    def from_poly(cls, p: LaurentPoly, order: int, coeff_vars: Iterable[str] | None = None
                  ) -> "TruncatedSeries":
        """Expand a Laurent polynomial in q (nonnegative q-powers) as a series."""
        if "q" not in p.vars:
            cv = _norm_vars(coeff_vars if coeff_vars is not None else p.vars)
            return cls([p.extend(cv) if p.vars != cv else p], order, cv)
        qi = p.vars.index("q")
        rest = tuple(v for v in p.vars if v != "q")
        cv = _norm_vars(coeff_vars if coeff_vars is not None else rest)
        if not set(rest) <= set(cv):
            raise AlphabetError(f"{rest} not contained in {cv}")
        buckets: dict[int, dict] = {}
        for e, c in p.terms.items():
            k = e[qi]
            if k < 0:
                raise ValueError("negative q-power in a power series")
            if k > order:
                continue
            ne = e[:qi] + e[qi + 1:]
            buckets.setdefault(k, {})[ne] = c
        coeffs = []
        for k in range(order + 1):
            c = LaurentPoly(rest, buckets.get(k, {}), _trusted=True)
            coeffs.append(c.extend(cv) if rest != cv else c)
        return cls(coeffs, order, cv)

    def _check(self, other: "TruncatedSeries") -> None:
        if other.coeff_vars != self.coeff_vars:
            raise AlphabetError(f"{self.coeff_vars} vs {other.coeff_vars}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = min(self.order, other.order)
        return TruncatedSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)],
                               n, self.coeff_vars)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = min(self.order, other.order)
        return TruncatedSeries([self.coeffs[k] - other.coeffs[k] for k in range(n + 1)],
                               n, self.coeff_vars)

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order, self.coeff_vars)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            other = TruncatedSeries.from_poly(other, self.order, self.coeff_vars)
        self._check(other)
        n = min(self.order, other.order)
        a = [(i, c) for i, c in enumerate(self.coeffs[: n + 1]) if c]
        b = [(j, c) for j, c in enumerate(other.coeffs[: n + 1]) if c]
        out = [None] * (n + 1)
        for i, ca in a:
            for j, cb in b:
                k = i + j
                if k > n:
                    break
                t = ca * cb
                out[k] = t if out[k] is None else out[k] + t
        zero = LaurentPoly(self.coeff_vars, {}, _trusted=True)
        return TruncatedSeries([c if c is not None else zero for c in out], n, self.coeff_vars)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[: order + 1], min(order, self.order), self.coeff_vars)

    def mul_factor(self, factor: LaurentPoly) -> "TruncatedSeries":
        """Multiply by a sparse polynomial in q (cheaper than a full series product)."""
        f = TruncatedSeries.from_poly(factor, self.order, self.coeff_vars)
        nz = [(j, c) for j, c in enumerate(f.coeffs) if c]
        zero = LaurentPoly(self.coeff_vars, {}, _trusted=True)
        out = [zero] * (self.order + 1)
        for k in range(self.order + 1):
            acc = None
            for j, cb in nz:
                if j > k:
                    break
                ca = self.coeffs[k - j]
                if ca:
                    t = ca * cb
                    acc = t if acc is None else acc + t
            if acc is not None:
                out[k] = acc
        return TruncatedSeries(out, self.order, self.coeff_vars)

    def scale_var(self, var: str, q_power: int) -> "TruncatedSeries":
        """Substitute var -> q^q_power * var (e.g. x -> q^4 x).

        Requires q_power >= 0 or enough room; terms pushed beyond the order
        are dropped, terms pulled below zero raise.
        """
        i = self.coeff_vars.index(var)
        buckets: list[dict] = [dict() for _ in range(self.order + 1)]
        for k, c in enumerate(self.coeffs):
            for e, v in c.terms.items():
                nk = k + q_power * e[i]
                if nk < 0:
                    raise ValueError("substitution produces negative q-powers")
                if nk <= self.order:
                    buckets[nk][e] = buckets[nk].get(e, 0) + v
        return TruncatedSeries([LaurentPoly(self.coeff_vars, b) for b in buckets], self.order,
                               self.coeff_vars)

    def compare(self, other: "TruncatedSeries") -> tuple[bool, int, int | None]:
        """Compare on the common prefix.

        Returns ``(equal, compared_order, first_mismatch_or_None)``.
        """
        self._check(other)
        n = min(self.order, other.order)
        for k in range(n + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return False, n, k
        return True, n, None

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.compare(other)[0]

    __hash__ = None  # type: ignore[assignment]

    def to_poly(self) -> LaurentPoly:
        vars = _norm_vars(("q",) + self.coeff_vars)
        qi = vars.index("q")
        out = {}
        for k, c in enumerate(self.coeffs):
            for e, v in c.terms.items():
                out[e[:qi] + (k,) + e[qi:]] = v
        return LaurentPoly(vars, out, _trusted=True)

    def evaluate(self, point: Mapping[str, object]):
        qv = point["q"]
        total = 0
        qk = 1
        for c in self.coeffs:
            if c:
                total = total + c.evaluate(point) * qk
            qk = qk * qv
        return total

    def nonzero_terms(self) -> int:
        return sum(len(c) for c in self.coeffs)

    def __repr__(self):
        shown = ", ".join(f"q^{k}: {c}" for k, c in enumerate(self.coeffs) if c)
        return f"TruncatedSeries(order={self.order}, {{{shown}}})"


def _q_valuation(factor: LaurentPoly) -> int:
    """Smallest q-exponent among the non-unit terms of a factor 1 + (...)."""
    qi = factor.vars.index("q")
    unit = (0,) * len(factor.vars)
    if factor.terms.get(unit) != 1:
        raise ValueError(f"factor {factor} does not have constant term 1")
    rest = [e[qi] for e in factor.terms if e != unit]
    if not rest:
        raise ValueError("factor is identically 1 (nothing to expand)")
    return min(rest)


def series_from_product(factors: Iterable[LaurentPoly], order: int,
                        coeff_vars: Iterable[str] = ()) -> TruncatedSeries:
    """Expand prod(factors) to q-order ``order``.

    ``factors`` may be an infinite iterator.  Each factor has the shape
    1 + (terms with q-exponent >= 1) and the q-valuations must be
    nondecreasing; expansion stops at the first factor whose valuation
    exceeds ``order``, since it and every later factor are 1 to that order.
    """
    cv = _norm_vars(coeff_vars)
    result = TruncatedSeries.one(order, cv)
    last = 0
    for f in factors:
        if "q" not in f.vars:
            raise AlphabetError("factors must involve q")
        e = _q_valuation(f)
        if e <= 0:
            raise ValueError(f"factor {f} has q-exponent {e} <= 0; product does not converge")
        if e < last:
            raise ValueError("factor q-valuations must be nondecreasing")
        last = e
        if e > order:
            break
        result = result.mul_factor(f)
    return result
