"""Factor families and partial-sum builders for the Identity 2 analogue.

Everything lives over {q, w} (w = q^c) or {q, w, v} (v = q^a); a factor
1 - q^(2c + e) becomes 1 - w^2 q^e.
"""

from __future__ import annotations

from ..kernel import LaurentPoly
from .terms import TermSum, one_minus

QW = ("q", "w")
QWV = ("q", "w", "v")


def f_factor(i: int, vars=QW) -> list[LaurentPoly]:
    """f_i = (1 - q^(2c+2i-1)) (1 - q^(2c-2i+2))."""
    return [one_minus(vars, w=2, q=2 * i - 1), one_minus(vars, w=2, q=2 - 2 * i)]


def p_factor(i: int, vars=QW) -> list[LaurentPoly]:
    """p_i = (1 - q^(2c+2i)) (1 - q^(2c-2i+1))."""
    return [one_minus(vars, w=2, q=2 * i), one_minus(vars, w=2, q=1 - 2 * i)]


def F_factors(i: int, vars=QW) -> list[LaurentPoly]:
    return [f for j in range(1, i + 1) for f in f_factor(j, vars)]


def P_factors(i: int, vars=QW) -> list[LaurentPoly]:
    return [f for j in range(1, i + 1) for f in p_factor(j, vars)]


def F_at_minus_one(v: int, vars=("q",)) -> list[LaurentPoly]:
    """F_v(-1, q) = prod_{j<=v} (1 - q^(2j-3)) (1 - q^(-2j))."""
    out = []
    for j in range(1, v + 1):
        out += [one_minus(vars, q=2 * j - 3), one_minus(vars, q=-2 * j)]
    return out


def product(factors, vars) -> LaurentPoly:
    out = LaurentPoly.const(1, vars)
    for f in factors:
        out = out * f
    return out


def qpoch_list(exps, vars) -> list[LaurentPoly]:
    """[1 - q^e for e in exps]."""
    return [one_minus(vars, q=e) for e in exps]


def half_odd_ratio(n: int, vars) -> tuple[list, list]:
    """a_n(q) = prod_{j<=n} (1 - q^(2j-1)) / (1 - q^(2j)) as (num, den)."""
    return qpoch_list([2 * j - 1 for j in range(1, n + 1)], vars), \
        qpoch_list([2 * j for j in range(1, n + 1)], vars)


def one_plus_q_powers(n: int, vars) -> list[LaurentPoly]:
    return [LaurentPoly.const(1, vars) + LaurentPoly.monomial(vars, 1, q=j) for j in range(1, n + 1)]


def I_sum(m: int, vars=QW) -> TermSum:
    """I(c, m, q) = sum_{n<=m} (-1)^n q^(n(n+1)/2) w^(-2n) a_n(q)^2 prod (1+q^j)^2
    (n+2c choose 2n)_q, with (n+2c choose 2n)_q = prod_{k<=2n} (1 - w^2 q^(n-k+1)) / (1 - q^k)."""
    ts = TermSum(vars)
    for n in range(m + 1):
        an_num, an_den = half_odd_ratio(n, vars)
        ts.add(-1 if n % 2 else 1, {"q": n * (n + 1) // 2, "w": -2 * n},
               num=an_num * 2 + one_plus_q_powers(n, vars) * 2
               + [one_minus(vars, w=2, q=n - k + 1) for k in range(1, 2 * n + 1)],
               den=an_den * 2 + qpoch_list(range(1, 2 * n + 1), vars))
    return ts


def inner_P_sum(l: int, a_shift: int, vars=QW) -> TermSum:
    """sum_{i<=l} (-1)^i q^(i(i+1)) w^(-2i) F_i / prod_{j<=i} (1-q^(2j))^2
    * prod_{j<i} (1 - q^(A+2j))^2 / prod_{j<2i} (1 - q^(A+j)),  A = a_shift."""
    ts = TermSum(vars)
    for i in range(l + 1):
        ts.add(-1 if i % 2 else 1, {"q": i * (i + 1), "w": -2 * i},
               num=F_factors(i, vars) + qpoch_list([a_shift + 2 * j for j in range(i)], vars) * 2,
               den=qpoch_list([2 * j for j in range(1, i + 1)], vars) * 2
               + qpoch_list([a_shift + j for j in range(2 * i)], vars))
    return ts


def G_stripped(l: int, vars=QWV) -> TermSum:
    """q^(-c^2+c) G(c, a, l, q): the factor q^((c-i)(c-i-1)) becomes w^(-2i) q^(i(i+1))."""
    ts = TermSum(vars)
    for i in range(l + 1):
        ts.add(-1 if i % 2 else 1, {"q": i * (i + 1), "w": -2 * i},
               num=F_factors(i, vars) + [one_minus(vars, v=1, q=2 * j) for j in range(i)] * 2,
               den=qpoch_list([2 * j for j in range(1, i + 1)], vars) * 2
               + [one_minus(vars, v=1, q=j) for j in range(2 * i)])
    return ts


def G_in_P(l: int, vars=QWV) -> TermSum:
    """The P-expansion of q^(-c^2+c) G(c, a, l, q)."""
    ts = TermSum(vars)
    for i in range(l + 1):
        ts.add(-1 if i % 2 else 1, {"q": i * (i + 1), "w": -2 * i},
               num=P_factors(i, vars) + [one_minus(vars, v=1)]
               + qpoch_list([2 * j - 1 for j in range(1, l - i + 1)], vars)
               + [one_minus(vars, v=1, q=2 * j) for j in range(1, l + 1)],
               den=qpoch_list([2 * j for j in range(1, i + 1)], vars) * 2
               + [one_minus(vars, v=1, q=2 * i)]
               + qpoch_list([2 * j for j in range(1, l - i + 1)], vars)
               + [one_minus(vars, v=1, q=2 * j - 1) for j in range(1, l + 1)])
    return ts
