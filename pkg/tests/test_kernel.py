from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from qagm.kernel import AlphabetError, LaurentPoly, TruncatedSeries, gens, series_from_product

VARS = ("q", "x")
sq, sx = sp.symbols("q x")


def to_sympy(p: LaurentPoly):
    return sp.Add(*[c * sp.Mul(*[sp.Symbol(v) ** k for v, k in zip(p.vars, e)])
                    for e, c in p.terms.items()])


exps = st.integers(min_value=-4, max_value=6)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.dictionaries(st.tuples(exps, exps), coeffs, max_size=6).map(lambda d: LaurentPoly(VARS, d))


def test_difference_of_squares():
    q, = gens("q")
    assert str((1 - q) * (1 + q)) == "1 - q^2"


def test_substitute_negated_monomial():
    q, x = gens("q", "x")
    p = 1 + x + q * x**2
    assert p.substitute("x", -q) == 1 - q + q**3


def test_substitute_rational_constant():
    q, x = gens("q", "x")
    assert (x**-2 + q * x).substitute("x", Fraction(1, 2)) == 4 + Fraction(1, 2) * q


def test_substitute_rejects_nonmonomial():
    q, x = gens("q", "x")
    with pytest.raises(ValueError):
        x.substitute("x", q + 1)
    with pytest.raises(ValueError):
        x.substitute("x", 0)


def test_mixed_alphabets_rejected():
    (q,) = gens("q")
    (w,) = gens("w")
    with pytest.raises(AlphabetError):
        q + w


def test_euler_pentagonal_prefix():
    q, = gens("q")
    s = series_from_product((1 - q**j for j in range(1, 100)), 7)
    # sympy: expand prod_{j<=7}(1-q^j) and keep q^0..q^7
    assert s.to_poly() == 1 - q - q**2 + q**5 + q**7


def test_product_with_coefficient_variable():
    q, x = gens("q", "x")
    s = series_from_product((1 - q ** (2 * j) * x for j in range(1, 50)), 4, ("x",))
    assert s.to_poly() == 1 - q**2 * x - q**4 * x
    assert s.compare(TruncatedSeries.from_poly(1 - q**2 * x - q**4 * x, 4, ("x",))) == (True, 4, None)


def test_truncated_evaluation_is_exact():
    q, = gens("q")
    s = TruncatedSeries.from_poly(1 - q - q**2 + q**5, 5, ())
    assert s.evaluate({"q": Fraction(1, 10)}) == Fraction(89001, 100000)


def test_compare_reports_first_mismatch():
    q, = gens("q")
    a = TruncatedSeries.from_poly(1 + q + q**3, 5, ())
    b = TruncatedSeries.from_poly(1 + q + 2 * q**3, 4, ())
    assert a.compare(b) == (False, 4, 3)


def test_product_rejects_nonpositive_valuation():
    q, = gens("q")
    with pytest.raises(ValueError):
        series_from_product([1 - q**0 * Fraction(1, 2) - q], 3)


def test_negative_power_of_zero():
    q, = gens("q")
    with pytest.raises(ZeroDivisionError):
        (q**-1).evaluate({"q": 0})


def test_exact_division_witness():
    q, x = gens("q", "x")
    d = 1 - q * x
    assert ((1 - q**3 * x**3) * q**-2).exact_div(d) == (1 + q * x + q**2 * x**2) * q**-2
    with pytest.raises(ArithmeticError):
        (1 + q).exact_div(d)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == a.zero()


@given(polys, polys)
def test_product_matches_sympy(a, b):
    assert sp.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(polys, st.integers(min_value=-3, max_value=3), st.sampled_from([1, -1]))
def test_substitution_is_a_ring_map(a, k, sign):
    q, x = gens("q", "x")
    m = q**k * sign
    b = a * a + a
    assert b.substitute("x", m) == a.substitute("x", m) ** 2 + a.substitute("x", m)
    assert sp.simplify(to_sympy(a.substitute("x", m)) - to_sympy(a).subs(sx, sign * sq**k)) == 0


@given(polys, st.fractions(min_value=-3, max_value=3).filter(bool), st.fractions(min_value=-3, max_value=3).filter(bool))
def test_evaluate_matches_sympy(a, qv, xv):
    assert a.evaluate({"q": qv, "x": xv}) == to_sympy(a).subs({sq: qv, sx: xv})


@given(st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=5), st.integers(min_value=0, max_value=12))
def test_truncated_product_agrees_with_full_expansion(powers, order):
    q, x = gens("q", "x")
    factors = [1 - q**p * x for p in sorted(powers)]
    full = LaurentPoly.const(1, VARS)
    for f in factors:
        full = full * f
    s = series_from_product(factors, order, ("x",))
    assert s.compare(TruncatedSeries.from_poly(full, order, ("x",)))[0]


@given(polys)
def test_derivative_matches_sympy(a):
    assert sp.simplify(to_sympy(a.derivative("x")) - sp.diff(to_sympy(a), sx)) == 0
