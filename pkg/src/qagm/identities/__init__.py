"""Exact checks of the binomial identities behind the AGM functional equation
and their q-analogues."""

from .identity1 import (lemma_b_sum, lemma_sb_sum, verify_identity1, verify_lemma_b, verify_lemma_sb,
                        verify_thm_b_integer, verify_thm_sb_integer)
from .identity2 import (MICRO_IDENTITIES, identity2_sum, verify_evaluate_G, verify_F_to_P,
                        verify_first_P_factoring, verify_identity2_q, verify_micro_identity,
                        verify_partial_sum_q, verify_second_P_factoring)
from .reconcile import (k3_residual, k4_system, reconcile_k3_infeasibility, reconcile_k4_no_solution,
                        solve_exact, trial_identity_checks, trial_sum)
from .terms import TermSum

__all__ = [
    "TermSum",
    "verify_identity1", "verify_thm_b_integer", "verify_lemma_b", "verify_thm_sb_integer",
    "verify_lemma_sb", "lemma_b_sum", "lemma_sb_sum",
    "identity2_sum", "verify_identity2_q", "verify_first_P_factoring", "verify_second_P_factoring",
    "verify_F_to_P", "verify_evaluate_G", "verify_micro_identity", "MICRO_IDENTITIES",
    "verify_partial_sum_q",
    "k4_system", "solve_exact", "reconcile_k4_no_solution", "trial_sum", "trial_identity_checks",
    "k3_residual", "reconcile_k3_infeasibility",
]
