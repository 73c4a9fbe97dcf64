from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qagm import EVIDENCE, EXACT_PASS, FAIL, gens
from qagm.identities import (MICRO_IDENTITIES, identity2_sum, reconcile_k3_infeasibility,
                             reconcile_k4_no_solution, trial_identity_checks, trial_sum,
                             verify_evaluate_G, verify_F_to_P, verify_first_P_factoring,
                             verify_identity1, verify_identity2_q, verify_lemma_b, verify_lemma_sb,
                             verify_micro_identity, verify_partial_sum_q, verify_second_P_factoring,
                             verify_thm_b_integer, verify_thm_sb_integer)
from qagm.identities.reconcile import k4_system, solve_exact

q, = gens("q")
rational_q = st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20), max_denominator=20)


def gauss(n, m, x):
    """Gaussian binomial by the product formula, evaluated in rationals."""
    if m < 0 or m > n:
        return Fraction(0)
    out = Fraction(1)
    for k in range(1, m + 1):
        out *= (1 - x ** (n - k + 1)) / (1 - x**k)
    return out


def test_identity1_small_cases():
    assert verify_identity1(0, 0).status == EXACT_PASS
    assert verify_identity1(1, 2).status == EXACT_PASS
    r = verify_identity1(5, 3)          # k - n < 0: both sides vanish
    assert r.status == EXACT_PASS and r.details["both_zero"]


def test_identity1_sweep():
    for n in range(11):
        for k in range(11):
            r = verify_identity1(n, k)
            assert r.status == EXACT_PASS and r.witness.is_zero(), (n, k)


@given(st.integers(min_value=0, max_value=7), st.integers(min_value=0, max_value=12), rational_q)
def test_identity1_at_rational_points(n, k, x):
    lhs = (-1) ** abs(n - k) * x ** ((k - 2 * n) * (k - 2 * n - 1) // 2) * gauss(n, k - n, x)
    rhs = sum((-1) ** j * x ** ((j - n) * (j - n - 1) // 2) * gauss(2 * n + j, 2 * n, x) * gauss(k, n + j, x)
              for j in range(0, max(k - n, -1) + 1))
    assert lhs == rhs


@pytest.mark.parametrize("b", range(9))
def test_integer_b_and_sb(b):
    assert verify_thm_b_integer(b).status == EXACT_PASS
    assert verify_lemma_b(b).status == EXACT_PASS
    assert verify_thm_sb_integer(b).status == EXACT_PASS
    assert verify_lemma_sb(b).status == EXACT_PASS


def test_identity2_q_sweep():
    for m in range(13):
        r = verify_identity2_q(m)
        assert r.status == EXACT_PASS, m


@given(st.integers(min_value=0, max_value=10), rational_q)
def test_identity2_sum_closed_form(m, x):
    a = Fraction(1)
    for j in range(1, m // 2 + 1):
        a *= (1 - x ** (2 * j - 1)) / (1 - x ** (2 * j))
    expected = x ** (m // 2) * a * a if m % 2 == 0 else 0
    assert identity2_sum(m).evaluate({"q": x}) == expected


def test_identity2_m2_value():
    # q ((1-q)/(1-q^2))^2 = q / (1+q)^2
    x = Fraction(1, 3)
    assert identity2_sum(2).evaluate({"q": x}) == x / (1 + x) ** 2


@pytest.mark.parametrize("l", range(4))
def test_P_factorings(l):
    assert verify_first_P_factoring(l, "even").status == EXACT_PASS
    assert verify_first_P_factoring(l, "odd").status == EXACT_PASS
    assert verify_second_P_factoring(l).status == EXACT_PASS


@pytest.mark.parametrize("h", range(5))
def test_F_to_P_and_G(h):
    assert verify_F_to_P(h).status == EXACT_PASS
    assert verify_evaluate_G(h).status == EXACT_PASS


def test_micro_examples():
    assert verify_micro_identity("two_factor").status == EXACT_PASS
    assert verify_micro_identity("q_square", {"a": 3, "k": 1}).status == EXACT_PASS
    assert verify_micro_identity("reduction", {"l": 2, "i": 1}).status == EXACT_PASS


@pytest.mark.parametrize("name", sorted(set(MICRO_IDENTITIES) - {"qsum_step_as_printed", "two_factor"}))
def test_micro_sweeps(name):
    keys = {"q_square": ("a", "k"), "f_to_p": ("i", "l"), "reduction": ("l", "i"), "F_to_P_step": ("h", "v"),
            "binomial_split": ("L",), "odd_weight_product": ("L",), "qsum_term_difference": ("n",),
            "qsum_step": ("N",), "qint_step": ("N",)}[name]
    grid = [dict(zip(keys, (i, j))) for i in range(4) for j in range(4)] if len(keys) == 2 else \
        [{keys[0]: i} for i in range(6)]
    for params in grid:
        r = verify_micro_identity(name, params)
        assert r.status == EXACT_PASS and r.witness.is_zero(), params


def test_printed_step_has_nonzero_witness():
    r = verify_micro_identity("qsum_step_as_printed", {"N": 1})
    assert r.status == FAIL and not r.witness.is_zero()


def test_unknown_micro_identity():
    with pytest.raises(ValueError):
        verify_micro_identity("nope")


def test_partial_sums():
    for m in range(7):
        for N in range(7):
            r = verify_partial_sum_q(m, N)
            assert r.status == EXACT_PASS, (m, N)
    r = verify_partial_sum_q(2, 4)
    # W(4) for m = 2: prod_{j<=4} (2j-5)/(2j)
    assert r.details["parts"][1]["details"]["W"] == Fraction(-3 * -1 * 1 * 3, 2 * 4 * 6 * 8)


def test_k4_system_is_inconsistent():
    r = reconcile_k4_no_solution()
    assert r.status == EXACT_PASS
    assert r.details["rank"] <= 8 and r.details["equations"] == 9
    A, b = k4_system()
    cert = r.witness
    assert all(sum(cert[i] * A[i][j] for i in range(9)) == 0 for j in range(8))
    assert sum(cert[i] * b[i] for i in range(9)) != 0
    assert len(r.details["leave_one_out"]) == 9


def test_solve_exact_consistent_system():
    A = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    rank, sol, cert = solve_exact(A, [Fraction(3), Fraction(1)])
    assert rank == 2 and sol == [2, 1] and cert is None


def test_trial_sum_examples():
    assert trial_sum(3, 2) == -(q**-2) - q**-1
    assert trial_sum(4, 3).evaluate({"q": 1}) == -3 == (-1) ** (3 - 4) * comb(3, 1)
    assert trial_identity_checks().status == EXACT_PASS


def test_k3_evidence():
    r = reconcile_k3_infeasibility(grid=(-6.0, 6.0, 13), restarts=3)
    assert r.status == EVIDENCE
    assert r.details["label"] == "numerical evidence"
    assert r.witness > 1e-3


def test_k3_single_sample_is_flagged():
    r = reconcile_k3_infeasibility(q_samples=(0.5,))
    assert r.status == FAIL and r.details["insufficient_samples"]
