from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mpf

from qagm import EVIDENCE, FAIL, NUMERIC_PASS, QContext
from qagm.qelliptic import (LimitStudy, c1_bracket_check, c2_discrepancy_report, monotone_lemma_check,
                            monotone_lemma_counterexample, one_plus_sinpi, run_limit_study, wallis_constant)
from qagm.qelliptic.limits import c1_exponent_comparison, sinpi_limit_report

# mpmath.qp products at q = 1/2, 40 digits
WALLIS_ORACLE = {"C1": "3.795532794664485474529779183340191000739", "C2": "0.6291271163484168710984321622518197353723",
                 "C3": "1.225673449322785575558087242298607961761"}


def test_sinpi_at_zero_is_one():
    v = one_plus_sinpi(0, QContext(q="0.37"))
    assert abs(v.value - 1) <= v.bound


def test_sinpi_against_oracle():
    v = one_plus_sinpi(mpf("0.3"), QContext(q="0.5"))
    assert abs(v.value - mpf("1.809020828054359298043790003530763892658")) <= v.bound + mpf(10) ** -36
    # at s = 1/2 the product is exactly 2 for every q
    w = one_plus_sinpi(mpf(1) / 2, QContext(q="0.9"))
    assert abs(w.value - 2) <= w.bound


@given(st.fractions(min_value=-3, max_value=3, max_denominator=12), st.sampled_from(["0.3", "0.6", "0.9"]))
def test_sinpi_period_two(s, qv):
    ctx = QContext(q=qv)
    with ctx.workprec():
        sv = mpf(s.numerator) / s.denominator
        a, b = one_plus_sinpi(sv, ctx), one_plus_sinpi(sv + 2, ctx)
    assert abs(a.value - b.value) <= a.bound + b.bound


@pytest.mark.parametrize("which", sorted(WALLIS_ORACLE))
def test_wallis_constants(which):
    v = wallis_constant(which, QContext(q="0.5"))
    assert abs(v.value - mpf(WALLIS_ORACLE[which])) <= v.bound + mpf(10) ** -36


def test_C1_stable_under_doubled_truncation():
    loose = wallis_constant("C1", QContext(q="0.5", tail_tolerance=mpf(10) ** -20))
    tight = wallis_constant("C1", QContext(q="0.5", tail_tolerance=mpf(10) ** -40))
    assert abs(loose.value - tight.value) <= loose.bound + tight.bound


def test_unknown_constant():
    with pytest.raises(ValueError):
        wallis_constant("C4", QContext())


def test_limit_study_validates_sequence():
    from qagm import CertifiedValue
    one = CertifiedValue(mpf(1), mpf(0))
    with pytest.raises(ValueError):
        LimitStudy("x", [mpf("0.9"), mpf("0.5")], [one, one], mpf(1))


@pytest.mark.parametrize("name,target", [("C1", lambda: 2 * mpmath.pi**2), ("C3_squared", lambda: +mpmath.pi),
                                         ("C2", lambda: 1 / mpmath.sqrt(2 * mpmath.pi))])
def test_limit_studies_approach_their_targets(name, target):
    study = run_limit_study(name, 3)
    assert abs(study.target - target()) < mpf(10) ** -15
    assert study.trend["monotone"]
    assert study.final_error() < mpf("0.01")


def test_exponent_two_does_not_converge():
    assert c1_exponent_comparison(3).status == NUMERIC_PASS


def test_c2_candidates():
    r = c2_discrepancy_report(3)
    assert r.status != FAIL
    supported = [k for k, v in r.details["candidates"].items() if v["supported"]]
    assert len(supported) == 1 and "2" in supported[0]


@pytest.mark.parametrize("s", [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 2)])
def test_sinpi_limit(s):
    assert sinpi_limit_report(s, 3).status == NUMERIC_PASS


def test_c1_bracket():
    assert c1_bracket_check(n_max=30, steps=2).status == NUMERIC_PASS


def test_monotone_lemma_on_valid_samples():
    r = monotone_lemma_check()
    assert r.status == NUMERIC_PASS
    equal = [p for p in r.details["parts"] if p["params"]["s"] == p["params"]["t"]]
    assert equal and all(p["details"]["min_h"] == 0 for p in equal)


def test_monotone_lemma_fails_across_zero():
    r = monotone_lemma_check([(-2, 1)])
    assert r.status == FAIL
    # at q = 1/2: h = 1 + 2 + (-2)(1/2) - 1 * 4 = -2
    assert monotone_lemma_check([(-2, 1)], q_grid=[mpf(1) / 2]).witness == -2
    assert monotone_lemma_counterexample().status == NUMERIC_PASS
