"""Exact checks for the q-analogue of Identity 2 and the factoring results
behind it, plus the small polynomial identities their proofs rely on."""

from __future__ import annotations

from fractions import Fraction

from ..agm import classical_identity2
from ..kernel import LaurentPoly, gens
from ..qcore import q_binomial_int
from ..report import EXACT_PASS, FAIL, VerificationReport, combine, exact_report
from .families import (F_at_minus_one, F_factors, G_in_P, G_stripped, I_sum, P_factors, QW, QWV,
                       f_factor, half_odd_ratio, inner_P_sum, one_plus_q_powers, p_factor,
                       product, qpoch_list)
from .terms import TermSum, one_minus

__all__ = [
    "identity2_sum",
    "verify_identity2_q",
    "verify_first_P_factoring",
    "verify_second_P_factoring",
    "verify_F_to_P",
    "verify_evaluate_G",
    "verify_micro_identity",
    "MICRO_IDENTITIES",
    "verify_partial_sum_q",
]

Q = ("q",)


def _mono(vars, coeff=1, **e) -> LaurentPoly:
    return LaurentPoly.monomial(vars, coeff, **e)


def _cleared_report(theorem, params, ts: TermSum, **details) -> VerificationReport:
    num, den = ts.cleared()
    return exact_report(theorem, params, num, cleared_denominator_factors=sum(den.values()),
                        **details)


def identity2_sum(m: int) -> TermSum:
    """sum_{n<=m} (-1)^n q^(n(n+1)/2 - nm) a_n(q)^2 prod_{j<=n} (1+q^j)^2 (m+n choose 2n)_q."""
    ts = TermSum(Q)
    for n in range(m + 1):
        num, den = half_odd_ratio(n, Q)
        ts.add(-1 if n % 2 else 1, {"q": n * (n + 1) // 2 - n * m},
               num=num * 2 + one_plus_q_powers(n, Q) * 2 + [q_binomial_int(m + n, 2 * n)],
               den=den * 2)
    return ts


def verify_identity2_q(m: int) -> VerificationReport:
    """Even m: the sum equals q^(m/2) a_(m/2)(q)^2.  Odd m: it vanishes.

    Also compares the q -> 1 limit of the sum with the classical identity.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    lhs = identity2_sum(m)
    diff = TermSum(Q).extend(lhs)
    if m % 2 == 0:
        num, den = half_odd_ratio(m // 2, Q)
        diff.add(-1, {"q": m // 2}, num=num * 2, den=den * 2)
    parts = [_cleared_report("identity2_q.exact", {"m": m}, diff)]
    limit = lhs.limit_q1()
    classical = classical_identity2(m // 2, "even" if m % 2 == 0 else "odd")
    expected = classical.details["expected"]
    ok = limit == classical.details["sum"] == expected
    parts.append(VerificationReport("identity2_q.q_to_1", {"m": m}, EXACT_PASS if ok else FAIL,
                                    witness=limit - expected,
                                    details={"limit": limit, "classical": expected}))
    return combine("identity2_q", {"m": m}, parts)


def _first_P_rhs(l: int, parity: str, vars=QW) -> TermSum:
    if parity == "even":
        L, A = l, 2 * l + 1
    else:
        L, A = l + 1, 2 * l + 3
    return inner_P_sum(l, A, vars).times(
        -1 if L % 2 else 1, {"q": L * L, "w": -2 * L},
        num=P_factors(L, vars), den=qpoch_list(range(1, 2 * L + 1), vars))


def verify_first_P_factoring(l: int, parity: str) -> VerificationReport:
    """I(c, 2l, q) and I(c, 2l+1, q) as P_l (resp. P_(l+1)) times a short sum.

    A second part checks that the short sum equals the stripped G with
    v = q^(2l+1) (even) or v = q^(2l+3) (odd) and l summation terms.
    """
    if l < 0:
        raise ValueError("l must be >= 0")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    m = 2 * l if parity == "even" else 2 * l + 1
    A = 2 * l + 1 if parity == "even" else 2 * l + 3
    params = {"l": l, "parity": parity}
    main = _cleared_report("first_P.statement", params, I_sum(m) - _first_P_rhs(l, parity))
    g_form = G_stripped(l).substitute("v", _mono(QWV, q=A))
    restated = _cleared_report("first_P.G_restatement", {**params, "a": A},
                               g_form - inner_P_sum(l, A, QWV))
    return combine("first_P", params, [main, restated])


def verify_second_P_factoring(l: int) -> VerificationReport:
    if l < 0:
        raise ValueError("l must be >= 0")
    return _cleared_report("second_P", {"l": l}, G_stripped(l) - G_in_P(l))


def verify_F_to_P(h: int) -> VerificationReport:
    """F_h = sum_v w^(2v) q^(2v(1-h+v)) P_(h-v) F_v(-1, q) prod_{k<=h-v} (1-q^(2k+2v))^2/(1-q^(2k))^2."""
    if h < 0:
        raise ValueError("h must be >= 0")
    ts = TermSum(QW).add(1, None, num=F_factors(h))
    for v in range(h + 1):
        ts.add(-1, {"w": 2 * v, "q": 2 * v * (1 - h + v)},
               num=P_factors(h - v) + F_at_minus_one(v, QW)
               + qpoch_list([2 * k + 2 * v for k in range(1, h - v + 1)], QW) * 2,
               den=qpoch_list([2 * k for k in range(1, h - v + 1)], QW) * 2)
    return _cleared_report("F_to_P", {"h": h}, ts)


def _G_target(l: int) -> TermSum:
    """Stripped value at c = l: (-1)^l prod (1-q^(2j-1))(q^(2j)-v) / ((1-q^(2j))(1-v q^(2j-1)))."""
    one = LaurentPoly.const(1, QWV)
    return TermSum(QWV).add(
        -1 if l % 2 else 1, None,
        num=qpoch_list([2 * j - 1 for j in range(1, l + 1)], QWV)
        + [_mono(QWV, q=2 * j) - _mono(QWV, v=1) for j in range(1, l + 1)],
        den=qpoch_list([2 * j for j in range(1, l + 1)], QWV)
        + [one_minus(QWV, v=1, q=2 * j - 1) for j in range(1, l + 1)])


def verify_evaluate_G(l: int) -> VerificationReport:
    """G at c = l in closed form, plus the interpolation-node argument:
    after multiplying by prod (1 - v q^(2j-1)), only the i-th term of the
    P-expansion survives at v = q^(-2i)."""
    if l < 0:
        raise ValueError("l must be >= 0")
    wl = _mono(QWV, q=l)
    target = _G_target(l)
    parts = [
        _cleared_report("evaluate_G.from_P_form", {"l": l}, G_in_P(l).substitute("w", wl) - target),
        _cleared_report("evaluate_G.from_definition", {"l": l},
                        G_stripped(l).substitute("w", wl) - target),
    ]
    clear = [one_minus(QWV, v=1, q=2 * j - 1) for j in range(1, l + 1)]
    expansion = G_in_P(l).times(num=clear)
    target_cleared = target.times(num=clear)
    for i in range(l + 1):
        node = _mono(QWV, q=-2 * i)
        survivors = []
        for idx, term in enumerate(expansion.terms):
            single = TermSum(QWV)
            single.terms.append(term)
            if single.substitute("v", node).terms:
                survivors.append(idx)
        at_node = (expansion - target_cleared).substitute("w", wl).substitute("v", node)
        num, _ = at_node.cleared()
        ok = survivors == [i] and num.is_zero()
        parts.append(VerificationReport("evaluate_G.node", {"l": l, "i": i},
                                        EXACT_PASS if ok else FAIL, witness=num,
                                        details={"surviving_terms": survivors}))
    return combine("evaluate_G", {"l": l}, parts)


# -- micro-identities -----------------------------------------------------------


def _micro_two_factor(**_):
    V = ("X", "Y", "Z")
    X, Y, Z = gens(*V)
    Zi = Z**-1
    return (1 - X) * (1 - Y) - (1 - Z) * (1 - X * Y * Zi) - Z * (1 - X * Zi) * (1 - Y * Zi)


def _micro_q_square(a=None, k=None, **_):
    """(1-q^a)^2 = (1-q^(a-k))(1-q^(a+k)) + q^(a-k)(1-q^k)^2; symbolic with X = q^a, Y = q^k."""
    if a is None:
        X, Y = gens("X", "Y")
        Yi = Y**-1
        return (1 - X) ** 2 - (1 - X * Yi) * (1 - X * Y) - X * Yi * (1 - Y) ** 2
    (q,) = gens("q")
    return (1 - q**a) ** 2 - (1 - q ** (a - k)) * (1 - q ** (a + k)) - q ** (a - k) * (1 - q**k) ** 2


def _micro_f_to_p(i=1, l=1, **_):
    """f_i = p_l + q^(2c-2l+1) (1-q^(2l-2i+1)) (1-q^(2i+2l-2)), w symbolic."""
    f = product(f_factor(i), QW)
    p = product(p_factor(l), QW)
    extra = _mono(QW, w=2, q=1 - 2 * l) * one_minus(QW, q=2 * l - 2 * i + 1) * one_minus(QW, q=2 * i + 2 * l - 2)
    return f - p - extra


def _micro_reduction(l=1, i=1, **_):
    """(1-q^(2+a+2l))(1-q^(1-2i+2l)) = (1-q^(1+a+2l))(1-q^(2-2i+2l)) + q^(2-2i+2l)(1-q^-1)(1-q^(a+2i)), v = q^a."""
    V = ("q", "v")
    lhs = one_minus(V, v=1, q=2 + 2 * l) * one_minus(V, q=1 - 2 * i + 2 * l)
    rhs = (one_minus(V, v=1, q=1 + 2 * l) * one_minus(V, q=2 - 2 * i + 2 * l)
           + _mono(V, q=2 - 2 * i + 2 * l) * one_minus(V, q=-1) * one_minus(V, v=1, q=2 * i))
    return lhs - rhs


def _micro_F_to_P_step(h=1, v=1, **_):
    """(1-q^(2+2h-2v))^2 = (1-q^(4+4h-2v))(1-q^(-2v)) + q^(-2v)(1-q^(2+2h))^2."""
    lhs = one_minus(Q, q=2 + 2 * h - 2 * v) ** 2
    rhs = one_minus(Q, q=4 + 4 * h - 2 * v) * one_minus(Q, q=-2 * v) + _mono(Q, q=-2 * v) * one_minus(Q, q=2 + 2 * h) ** 2
    return lhs - rhs


def _micro_binomial_split(L=1, **_):
    """(2L+1+2c choose 4L+2)_q = P_L / prod_{j<=2L} (1-q^j) * F_(L+1) / prod_{j=2L+1}^{4L+2} (1-q^j)."""
    n, top = 4 * L + 2, 2 * L + 1
    ts = TermSum(QW).add(1, None, num=[one_minus(QW, w=2, q=top - k + 1) for k in range(1, n + 1)],
                         den=qpoch_list(range(1, n + 1), QW))
    ts.add(-1, None, num=P_factors(L) + F_factors(L + 1), den=qpoch_list(range(1, n + 1), QW))
    return ts.cleared()[0]


def _micro_odd_weight_product(L=1, **_):
    """a_(2L+1)(q)^2 prod_{j<=2L+1} (1+q^j)^2 = prod_{j<L} (1-q^(2L+3+2j))^2 / prod_{j<=L} (1-q^(2j))^2."""
    num, den = half_odd_ratio(2 * L + 1, Q)
    ts = TermSum(Q).add(1, None, num=num * 2 + one_plus_q_powers(2 * L + 1, Q) * 2, den=den * 2)
    ts.add(-1, None, num=qpoch_list([2 * L + 3 + 2 * j for j in range(L)], Q) * 2,
           den=qpoch_list([2 * j for j in range(1, L + 1)], Q) * 2)
    return ts.cleared()[0]


def _micro_qsum_term_difference(n=0, **_):
    """(1-q^(2n+2)x)(1-q^(2n+4)x) - q^(4n)(1-q^3 x)^2 = 1 - q^(4n) - x(q^(2n+2) + q^(2n+4) - 2q^(4n+3))."""
    q, x = gens("q", "x")
    lhs = (1 - q ** (2 * n + 2) * x) * (1 - q ** (2 * n + 4) * x) - q ** (4 * n) * (1 - q**3 * x) ** 2
    rhs = 1 - q ** (4 * n) - x * (q ** (2 * n + 2) + q ** (2 * n + 4) - 2 * q ** (4 * n + 3))
    return lhs - rhs


def _micro_qsum_step(N=0, **_):
    """Induction step of the q-sum telescoping remainder:
    -(1-q^(2N+6)x)(1-q^(4N+4)) + 1 - q^(4N+4) - x(q^(2N+4)+q^(2N+6)-2q^(4N+7)) = -x q^(2N+4) (1-q^(2N+3))^2."""
    q, x = gens("q", "x")
    lhs = (-(1 - q ** (2 * N + 6) * x) * (1 - q ** (4 * N + 4)) + 1 - q ** (4 * N + 4)
           - x * (q ** (2 * N + 4) + q ** (2 * N + 6) - 2 * q ** (4 * N + 7)))
    return lhs + x * q ** (2 * N + 4) * (1 - q ** (2 * N + 3)) ** 2


def _micro_qsum_step_as_printed(N=0, **_):
    """Same identity with the first factor missing x; kept to document that this reading fails."""
    q, x = gens("q", "x")
    lhs = (-(1 - q ** (2 * N + 6)) * (1 - q ** (4 * N + 4)) + 1 - q ** (4 * N + 4)
           - x * (q ** (2 * N + 4) + q ** (2 * N + 6) - 2 * q ** (4 * N + 7)))
    return lhs + x * q ** (2 * N + 4) * (1 - q ** (2 * N + 3)) ** 2


def _micro_qint_step(N=0, **_):
    """q^2(1-q)x(1-q^(2N+2))(1-q^(2N+6)x) - q[(1-q^3x)(1-q^(2N+3)x)(1-q^(2N+5)x)
    - (1-qx)(1-q^(2N+4)x)(1-q^(2N+6)x)] = -(1-q) q^3 x (1-q^(2N+3))(1-q^(2N+3)x)."""
    q, x = gens("q", "x")
    lhs = (q**2 * (1 - q) * x * (1 - q ** (2 * N + 2)) * (1 - q ** (2 * N + 6) * x)
           - q * ((1 - q**3 * x) * (1 - q ** (2 * N + 3) * x) * (1 - q ** (2 * N + 5) * x)
                  - (1 - q * x) * (1 - q ** (2 * N + 4) * x) * (1 - q ** (2 * N + 6) * x)))
    return lhs + (1 - q) * q**3 * x * (1 - q ** (2 * N + 3)) * (1 - q ** (2 * N + 3) * x)


MICRO_IDENTITIES = {
    "two_factor": _micro_two_factor,
    "q_square": _micro_q_square,
    "f_to_p": _micro_f_to_p,
    "reduction": _micro_reduction,
    "F_to_P_step": _micro_F_to_P_step,
    "binomial_split": _micro_binomial_split,
    "odd_weight_product": _micro_odd_weight_product,
    "qsum_term_difference": _micro_qsum_term_difference,
    "qsum_step": _micro_qsum_step,
    "qsum_step_as_printed": _micro_qsum_step_as_printed,
    "qint_step": _micro_qint_step,
}


def verify_micro_identity(name: str, params: dict | None = None) -> VerificationReport:
    try:
        fn = MICRO_IDENTITIES[name]
    except KeyError:
        raise ValueError(f"unknown micro-identity {name!r}; known: {sorted(MICRO_IDENTITIES)}") from None
    params = dict(params or {})
    return exact_report(f"micro.{name}", params, fn(**params))


# -- partial sums with half-integer top ------------------------------------------


def verify_partial_sum_q(m: int, N: int) -> VerificationReport:
    """sum_{i<=N} (-1)^i q^(i(i+1) - i(2m+1)) (m+1/2 choose i)_{q^2} = prod_{j<=N} (1-q^(2j-2m-1))/(1-q^(2j)),
    with (m+1/2 choose i)_{q^2} = prod_{k<=i} (1-q^(2m+3-2k))/(1-q^(2k)).

    The q -> 1 limits of both sides are compared with W(N) = prod (2j-2m-1)/(2j)
    computed directly in rationals.
    """
    if m < 0 or N < 0:
        raise ValueError("m, N must be >= 0")
    lhs = TermSum(Q)
    for i in range(N + 1):
        lhs.add(-1 if i % 2 else 1, {"q": i * (i + 1) - i * (2 * m + 1)},
                num=qpoch_list([2 * m + 3 - 2 * k for k in range(1, i + 1)], Q),
                den=qpoch_list([2 * k for k in range(1, i + 1)], Q))
    rhs = TermSum(Q).add(1, None, num=qpoch_list([2 * j - 2 * m - 1 for j in range(1, N + 1)], Q),
                         den=qpoch_list([2 * j for j in range(1, N + 1)], Q))
    params = {"m": m, "N": N}
    exact = _cleared_report("partial_sum_q.exact", params, lhs - rhs)
    W = Fraction(1)
    for j in range(1, N + 1):
        W *= Fraction(2 * j - 2 * m - 1, 2 * j)
    direct = Fraction(0)
    binom = Fraction(1)
    half = Fraction(2 * m + 1, 2)
    for i in range(N + 1):
        if i:
            binom = binom * (half - i + 1) / i
        direct += (-1) ** i * binom
    limits = (lhs.limit_q1(), rhs.limit_q1())
    ok = limits[0] == limits[1] == W == direct
    at_one = VerificationReport("partial_sum_q.q_to_1", params, EXACT_PASS if ok else FAIL,
                                witness=direct - W, details={"W": W, "binomial_sum": direct})
    return combine("partial_sum_q", params, [exact, at_one])
