from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from qagm import NUMERIC_PASS
from qagm.qelliptic import h_function_check, h_value, identity2_sum_q1, infinite_prefactor
from qagm.qelliptic.hfunction import h_prefactor, half_binomial_partial_sum, partial_sum_identity_check


def gauss_closed_form(c, m):
    """prefactor * 2F1(c+1/2, -c; m+1; 1) by Gauss's summation theorem."""
    c = mpf(c)
    return (h_prefactor(float(c), m) * mpmath.gamma(m + 1) * mpmath.gamma(m + mpf(1) / 2)
            * mpmath.rgamma(m + mpf(1) / 2 - c) * mpmath.rgamma(m + 1 + c))


@pytest.mark.parametrize("c", ["0.25", "-0.3", "0.7"])
@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_h_against_gauss_summation(c, m):
    v = h_value(float(c), m, 2**18)
    truth = gauss_closed_form(c, m)
    assert abs(v.value - truth) <= v.bound
    if m >= 1:
        assert v.bound < 1e-6


def test_h_independent_of_m():
    # the closed form collapses to sqrt(pi) / (Gamma(1+c) Gamma(1/2-c)) / prod
    c = mpf("0.25")
    values = [gauss_closed_form(c, m) for m in range(5)]
    assert max(values) - min(values) < mpf(10) ** -12


def test_h_at_zero():
    assert all(h_value(0.0, m, 64).value == 1 for m in range(5))


def test_terminating_series_has_no_tail():
    v = h_value(1.0, 2, 64)
    assert abs(v.value - gauss_closed_form("1", 2)) < 1e-14
    assert v.bound < 1e-12


def test_infinite_prefactor_against_partial_products():
    c = mpf("0.3")
    with mpmath.workprec(80):
        partial = mpmath.nprod(lambda u: (1 + c / u) * (1 - 2 * c / (2 * u - 1)), [1, mpmath.inf])
    assert abs(partial - infinite_prefactor(c)) < mpf(10) ** -15


def test_half_binomial_partial_sums():
    assert half_binomial_partial_sum(0, 0) == (1, 1)
    total, w = half_binomial_partial_sum(0, 1)
    assert total == w == Fraction(1, 2)
    assert partial_sum_identity_check(10, 10).status == "exact-pass"


def test_identity2_sum_at_one_terminates_for_integer_c():
    # c = 1: the binomial (n + 2 choose 2n) vanishes once 2n > n + 2
    assert identity2_sum_q1(1.0, 10) == identity2_sum_q1(1.0, 3)


@pytest.mark.parametrize("c", [0.25, -0.3, 1.0])
def test_full_check(c):
    r = h_function_check(c, m_max=3, n_terms=2**18, l_doublings=10, limit_threshold=0.1)
    assert r.status == NUMERIC_PASS
