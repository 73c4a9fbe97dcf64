from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mpf

from qagm import DomainError, EXACT_PASS, NUMERIC_PASS, QContext
from qagm.qelliptic import (qsum_gamma_form, qsum_lhs, qsum_q1, qsum_q1_product, qsum_q1_sum, qsum_rhs,
                            qsum_verify_numeric, qsum_verify_symbolic)
from qagm.qelliptic.qsum import q1_partial_identity, qsum_prefix_agreement

# direct summation with mpmath.qgamma binomials, checked against the mpmath.qp product (40 digits)
QSUM_ORACLE = [
    ("0.5", "0", "0.5", "1.144517392789337606978198994083317831933", "0"),
    ("0.5", "2", "0.8", "31.29696183052509907532709639583645494344", "-34.34098440678711653212416357028020799967"),
    ("-0.7", "0", "0.3", "0.1422582322168773560280954877201109622815", "0"),
    ("2", "0", "0.5", "0.388804212573698518598674969530639257222", "0"),
    ("3", "0", "0.6", "0.2975156917384327806083317395195403230378", "0"),
    ("0", "0", "0.5", "1.093511847863527083558773351804922910937", "0"),
]
# 2F1(1/2, 1/2; 1 - s; 1/2) from mpmath.hyp2f1
Q1_ORACLE = {"0": "1.180340599016096226045337940558488587234", "0.5": "1.41421356237309504880168872420969807857",
             "-0.7": "1.095377553597560176576252473627342737208", "-2.5": "1.041300688630867089144347107045475085613",
             "-0.5": "1.110720734539591561753970247515173424654", "2.5": "1.885618083164126731735584965612930771426"}


def _s(re, im):
    return mpf(re) if im == "0" else mpmath.mpc(re, im)


@pytest.mark.parametrize("re,im,qv,ore,oim", QSUM_ORACLE)
def test_both_sides_against_oracle(re, im, qv, ore, oim):
    ctx = QContext(q=qv)
    s = _s(re, im)
    truth = mpmath.mpc(ore, oim)
    lhs, rhs = qsum_lhs(s, ctx), qsum_rhs(s, ctx)
    assert abs(lhs.value - truth) <= lhs.bound + abs(truth) * mpf(10) ** -36
    assert abs(rhs.value - truth) <= rhs.bound + abs(truth) * mpf(10) ** -36
    assert lhs.bound <= abs(truth) * mpf(10) ** -25


@pytest.mark.parametrize("s,qv", [("0", "0.5"), ("3", "0.6"), (("0.5", "2"), "0.8"), ("-1.25", "0.9")])
def test_numeric_verification(s, qv):
    s = mpmath.mpc(*s) if isinstance(s, tuple) else mpf(s)
    r = qsum_verify_numeric(s, QContext(q=qv))
    assert r.status == NUMERIC_PASS
    assert r.witness <= r.bound <= mpf(10) ** -20


def test_gamma_form_matches_product():
    ctx = QContext(q="0.7")
    s = mpf("0.3")
    g, p = qsum_gamma_form(s, ctx), qsum_rhs(s, ctx)
    assert abs(g.value - p.value) <= g.bound + p.bound


@pytest.mark.parametrize("order", [1, 20])
def test_symbolic_prefix(order):
    r = qsum_verify_symbolic(order)
    assert r.status == EXACT_PASS


@pytest.mark.parametrize("s", ["0", "1", "-0.7", "2.5"])
def test_prefix_agreement(s):
    assert qsum_prefix_agreement(mpf(s), QContext(q="0.5"), order=40).passed


@pytest.mark.parametrize("s", sorted(Q1_ORACLE))
def test_q1_sum_against_hypergeometric(s):
    f = qsum_q1_sum(mpf(s))
    assert abs(f.value - mpf(Q1_ORACLE[s])) <= f.bound + mpf(10) ** -35
    p = qsum_q1_product(mpf(s))
    assert abs(p.value - mpf(Q1_ORACLE[s])) <= p.bound + mpf(10) ** -35


@pytest.mark.parametrize("s", [Fraction(0), Fraction(-1, 2), Fraction(5, 2), Fraction(-7, 3)])
def test_q1_report(s):
    r = qsum_q1(s)
    assert r.status in (NUMERIC_PASS, EXACT_PASS)
    assert [p["theorem"] for p in r.details["parts"]][-1] == "qsum_q1.partial_identity"


def test_q1_positive_integer_rejected():
    with pytest.raises(DomainError):
        qsum_q1(2)


@given(st.fractions(min_value=-5, max_value=5, max_denominator=9), st.integers(min_value=0, max_value=10))
def test_partial_identity_exact(s, N):
    if s.denominator == 1 and s >= 1 or (2 - 2 * s) * (4 - 2 * s) == 0:
        return
    if any(2 * j - 2 * s == 0 or 2 * j - 2 * (s - 2) == 0 for j in range(1, N + 1)):
        return
    assert q1_partial_identity(s, N) == 0
