"""Exact checks of the q-analogue of Identity 1 and its two generalizations.

Symbolic exponents are carried by monomial variables: t = q^s, u = q^alpha.
"""

from __future__ import annotations

from fractions import Fraction

from ..kernel import LaurentPoly
from ..qcore import q_binomial_int
from ..report import VerificationReport, combine, exact_report
from .terms import TermSum, one_minus

__all__ = [
    "verify_identity1",
    "verify_thm_b_integer",
    "verify_lemma_b",
    "verify_thm_sb_integer",
    "verify_lemma_sb",
    "lemma_b_sum",
    "lemma_sb_sum",
]

QTU = ("q", "t", "u")


def _lift(p: LaurentPoly, vars) -> LaurentPoly:
    return p.extend(vars)


def _mono(vars, coeff=1, **e) -> LaurentPoly:
    return LaurentPoly.monomial(vars, coeff, **e)


def verify_identity1(n: int, k: int) -> VerificationReport:
    """(-1)^(n-k) q^((k-2n)(k-2n-1)/2) (n choose k-n)_q
    = sum_j (-1)^j q^((j-n)(j-n-1)/2) (2n+j choose 2n)_q (k choose n+j)_q.

    Terms with j < 0 or j > k - n vanish, so the sum runs over 0..k-n.
    """
    if n < 0 or k < 0:
        raise ValueError("n, k must be >= 0")
    sign = -1 if (n - k) % 2 else 1
    lhs = q_binomial_int(n, k - n).shift(q=(k - 2 * n) * (k - 2 * n - 1) // 2).scale(sign)
    rhs = LaurentPoly(("q",), {})
    for j in range(0, max(k - n, -1) + 1):
        term = q_binomial_int(2 * n + j, 2 * n) * q_binomial_int(k, n + j)
        rhs = rhs + term.shift(q=(j - n) * (j - n - 1) // 2).scale(-1 if j % 2 else 1)
    return exact_report("identity1", {"n": n, "k": k}, lhs - rhs,
                        both_zero=lhs.is_zero() and rhs.is_zero())


# -- integer b ------------------------------------------------------------------


def lemma_b_sum(b: int, vars=QTU) -> LaurentPoly:
    """sum_j (-1)^j t^j q^(-jb + j(j+1)/2) (b choose j)_q
    prod_{k<=b-j} (1 - t^2 u q^k) prod_{k=b-j+1}^{b} (1 - t u q^k).

    With vars lacking u the factors use u = 1 (alpha = 0).
    """
    has_u = "u" in vars
    ue = {"u": 1} if has_u else {}
    total = LaurentPoly(vars, {})
    for j in range(b + 1):
        term = _lift(q_binomial_int(b, j), vars)
        term = term.shift(t=j, q=-j * b + j * (j + 1) // 2).scale(-1 if j % 2 else 1)
        for kk in range(1, b - j + 1):
            term = term * one_minus(vars, t=2, q=kk, **ue)
        for kk in range(b - j + 1, b + 1):
            term = term * one_minus(vars, t=1, q=kk, **ue)
        total = total + term
    return total


def _lemma_b_rhs(b: int, vars) -> LaurentPoly:
    out = LaurentPoly.const(1, vars)
    for kk in range(1, b + 1):
        out = out * one_minus(vars, t=1, q=1 - kk)
    return out


def _thm_b_statement(b: int) -> TermSum:
    """Statement form over {q, t} after dividing both sides by q^((s^2+s)/2).

    q^((B-s)(B-s-1)/2) = q^((s^2+s)/2) * q^(B(B-1)/2) t^(-B), and the q-binomials
    with symbolic top are finite products:
      (s choose b)_q      = prod_{k<=b} (1 - t q^(1-k)) / (1 - q^k)
      (2s+B choose B)_q   = prod_{k<=B} (1 - t^2 q^k)   / (1 - q^k)
      (s+b choose j)_q    = prod_{k<=j} (1 - t q^(b-k+1)) / (1 - q^k)
    """
    V = ("q", "t")
    ts = TermSum(V)
    ts.add(1, {"q": b * (b - 1) // 2, "t": -b},
           num=[one_minus(V, t=1, q=1 - k) for k in range(1, b + 1)],
           den=[one_minus(V, q=k) for k in range(1, b + 1)])
    for j in range(b + 1):
        B = b - j
        ts.add(-1 if j % 2 == 0 else 1, {"q": B * (B - 1) // 2, "t": -B},
               num=[one_minus(V, t=2, q=k) for k in range(1, B + 1)]
               + [one_minus(V, t=1, q=b - k + 1) for k in range(1, j + 1)],
               den=[one_minus(V, q=k) for k in range(1, B + 1)]
               + [one_minus(V, q=k) for k in range(1, j + 1)])
    return ts


def verify_thm_b_integer(b: int) -> VerificationReport:
    if b < 0:
        raise ValueError("b must be >= 0")
    V = ("q", "t")
    product_form = exact_report("thm_b_integer.product_form", {"b": b},
                                lemma_b_sum(b, V) - _lemma_b_rhs(b, V))
    num, den = _thm_b_statement(b).cleared()
    statement = exact_report("thm_b_integer.statement", {"b": b}, num,
                             cleared_denominator_factors=sum(den.values()))
    return combine("thm_b_integer", {"b": b}, [product_form, statement])


def verify_lemma_b(b: int) -> VerificationReport:
    """Lemma with alpha free (u = q^alpha), plus a replay of the induction step
    f(b+1, alpha) = (1 - t^2 u q) f(b, alpha+1) - t q^(-b) (1 - t u q^(b+1)) f(b, alpha)."""
    if b < 0:
        raise ValueError("b must be >= 0")
    f_b = lemma_b_sum(b)
    parts = [exact_report("lemma_b.closed_form", {"b": b}, f_b - _lemma_b_rhs(b, QTU))]
    f_next = lemma_b_sum(b + 1)
    shifted = f_b.substitute("u", _mono(QTU, u=1, q=1))
    step = (one_minus(QTU, t=2, u=1, q=1) * shifted
            - _mono(QTU, t=1, q=-b) * one_minus(QTU, t=1, u=1, q=b + 1) * f_b)
    parts.append(exact_report("lemma_b.induction_step", {"b": b}, f_next - step))
    return combine("lemma_b", {"b": b}, parts)


# -- integer s + b = M ----------------------------------------------------------


def lemma_sb_sum(M: int, vars=QTU) -> LaurentPoly:
    """sum_j t^j u^j q^j (M choose j)_q prod_{n<=M-j} (1 - t u q^n)
    prod_{n=M-j+1}^{M} (1 - t q^(-n) u^(-1))."""
    has_u = "u" in vars
    total = LaurentPoly(vars, {})
    for j in range(M + 1):
        term = _lift(q_binomial_int(M, j), vars).shift(t=j, q=j, **({"u": j} if has_u else {}))
        for n in range(1, M - j + 1):
            term = term * one_minus(vars, t=1, q=n, **({"u": 1} if has_u else {}))
        for n in range(M - j + 1, M + 1):
            term = term * one_minus(vars, t=1, q=-n, **({"u": -1} if has_u else {}))
        total = total + term
    return total


def _lemma_sb_rhs(M: int, vars) -> LaurentPoly:
    out = LaurentPoly.const(1, vars)
    for n in range(1, M + 1):
        out = out * one_minus(vars, t=2, q=1 - n)
    return out


def verify_thm_sb_integer(M: int) -> VerificationReport:
    """Product form with alpha = 0, over {q, t}."""
    if M < 0:
        raise ValueError("M must be >= 0")
    V = ("q", "t")
    return exact_report("thm_sb_integer", {"M": M}, lemma_sb_sum(M, V) - _lemma_sb_rhs(M, V))


def verify_lemma_sb(M: int) -> VerificationReport:
    """Lemma with alpha free, plus the induction step
    f(M+1, alpha) = (1 - t u q) f(M, alpha+1) + t u q (1 - t q^(-M-1) u^(-1)) f(M, alpha)."""
    if M < 0:
        raise ValueError("M must be >= 0")
    f_M = lemma_sb_sum(M)
    parts = [exact_report("lemma_sb.closed_form", {"M": M}, f_M - _lemma_sb_rhs(M, QTU))]
    f_next = lemma_sb_sum(M + 1)
    shifted = f_M.substitute("u", _mono(QTU, u=1, q=1))
    step = (one_minus(QTU, t=1, u=1, q=1) * shifted
            + _mono(QTU, t=1, u=1, q=1) * one_minus(QTU, t=1, q=-M - 1, u=-1) * f_M)
    parts.append(exact_report("lemma_sb.induction_step", {"M": M}, f_next - step))
    return combine("lemma_sb", {"M": M}, parts)
