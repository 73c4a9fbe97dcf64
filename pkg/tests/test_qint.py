import mpmath
import pytest
from mpmath import mpf

from qagm import DomainError, EXACT_PASS, NUMERIC_PASS, QContext
from qagm.qelliptic import (f0_at_one, integral_to_sum_check, paired_sum_q1, qint_f, qint_gamma_form,
                            qint_q1, qint_rhs, qint_verify, qint_verify_symbolic)

# direct summation (3000 terms) and mpmath.qp products, 40 digits
F_ORACLE = [("0", "0", "0.5", "0.7711044027572615504387272242950872572298", "0"),
            ("0.7", "0", "0.3", "0.8489295284597714536651646485979917489682", "0"),
            ("0.2", "0.3", "0.6", "0.7621750350199426155913155557571959425468", "0.01763536427029015856667715154297500711114")]
RHS_ORACLE = [("0.5", "0", "0.5", "0.801213548999901344249414564272230754615", "0"),
              ("1", "0", "0.7", "0.7687776572604668179654867593913591108383", "0"),
              ("0.3", "0.5", "0.4", "0.8083418896677137317768199273414177810819", "-0.02429697121963245089828724750089701957507")]
# 2F1(1/2, s+1/2; s+1; -1) from mpmath.hyp2f1
PAIRED_ORACLE = {"0": "0.834626841674073186281429732799046808994", "0.5": "0.7853981633974483096156608458198757210493",
                 "1": "0.7627597635018131880623259809636157932926", "2.25": "0.7388631914898369325016036909651716319451"}
# sqrt(pi) Gamma(s+1/2) / (2 Gamma(s+1)) 2F1(1/2, s+1/2; s+1; -1)
INTEGRAL_ORACLE = {"0": "1.311028777146059905232419794945559706841", "1": "0.5990701173677961037199612461401619391136",
                   "0.5": "0.7853981633974483096156608458198757210493"}


def _z(re, im):
    return mpf(re) if im == "0" else mpmath.mpc(re, im)


@pytest.mark.parametrize("re,im,qv,ore,oim", F_ORACLE)
def test_f_against_direct_sum(re, im, qv, ore, oim):
    v = qint_f(_z(re, im), QContext(q=qv))
    assert abs(v.value - _z(ore, oim)) <= v.bound + mpf(10) ** -36


@pytest.mark.parametrize("re,im,qv,ore,oim", RHS_ORACLE)
def test_product_side_against_oracle(re, im, qv, ore, oim):
    ctx = QContext(q=qv)
    s = _z(re, im)
    v = qint_rhs(s, ctx)
    assert abs(v.value - _z(ore, oim)) <= v.bound + mpf(10) ** -36
    lhs = qint_f(ctx.qv ** (2 * s), ctx)
    assert abs(lhs.value - _z(ore, oim)) <= lhs.bound + mpf(10) ** -30


@pytest.mark.parametrize("s,qv", [("1", "0.7"), ("0", "0.5"), ("-0.4", "0.9"), (("0.3", "0.5"), "0.4")])
def test_numeric_verification(s, qv):
    s = mpmath.mpc(*s) if isinstance(s, tuple) else mpf(s)
    r = qint_verify(s, QContext(q=qv))
    assert r.status == NUMERIC_PASS


def test_gamma_form():
    ctx = QContext(q="0.6")
    g, p = qint_gamma_form(mpf("0.8"), ctx), qint_rhs(mpf("0.8"), ctx)
    assert abs(g.value - p.value) <= g.bound + p.bound


def test_negative_integer_pole():
    with pytest.raises(DomainError):
        qint_rhs(-1, QContext(q="0.5"))


@pytest.mark.parametrize("order", [1, 16])
def test_symbolic_prefix(order):
    assert qint_verify_symbolic(order).status == EXACT_PASS


def test_f0_at_one():
    v = f0_at_one(mpf("1e-10"))
    assert abs(v.value - 1 / mpmath.sqrt(2)) <= v.bound
    assert v.bound <= mpf("1e-10")


@pytest.mark.parametrize("s", sorted(PAIRED_ORACLE))
def test_paired_sum_against_hypergeometric(s):
    v = paired_sum_q1(mpf(s), tol=mpf("1e-10"))
    assert abs(v.value - mpf(PAIRED_ORACLE[s])) <= v.bound


def test_paired_sum_domain():
    with pytest.raises(DomainError):
        paired_sum_q1(mpf("-0.6"))


@pytest.mark.parametrize("s", ["0", "1", "0.5"])
def test_q1_report(s):
    assert qint_q1(mpf(s)).status == NUMERIC_PASS


@pytest.mark.parametrize("s", sorted(INTEGRAL_ORACLE))
def test_integral_to_sum(s):
    r = integral_to_sum_check(mpf(s), tol=mpf("1e-8"))
    assert r.status == NUMERIC_PASS
    assert abs(r.details["integral"] - mpf(INTEGRAL_ORACLE[s])) < mpf(10) ** -20
