"""Numeric and truncated-series checks of the q-sum and q-integral theorems,
the infinite products they involve, and their q -> 1 limits."""

from .hfunction import h_function_check, h_value, identity2_sum_q1, infinite_prefactor
from .limits import (LimitStudy, c1_bracket_check, c2_discrepancy_report, limits_suite,
                     monotone_lemma_check, monotone_lemma_counterexample, run_limit_study)
from .products import one_plus_sinpi, wallis_constant
from .qint import (f0_at_one, integral_to_sum_check, paired_sum_q1, qint_f, qint_gamma_form, qint_q1,
                   qint_rhs, qint_verify, qint_verify_symbolic)
from .qsum import (qsum_gamma_form, qsum_lhs, qsum_q1, qsum_q1_product, qsum_q1_sum, qsum_rhs,
                   qsum_verify_numeric, qsum_verify_symbolic)

__all__ = [
    "one_plus_sinpi", "wallis_constant",
    "qsum_lhs", "qsum_rhs", "qsum_gamma_form", "qsum_verify_numeric", "qsum_verify_symbolic",
    "qsum_q1", "qsum_q1_sum", "qsum_q1_product",
    "qint_f", "qint_rhs", "qint_gamma_form", "qint_verify", "qint_verify_symbolic", "qint_q1",
    "paired_sum_q1", "f0_at_one", "integral_to_sum_check",
    "LimitStudy", "run_limit_study", "c2_discrepancy_report", "c1_bracket_check",
    "monotone_lemma_check", "monotone_lemma_counterexample", "limits_suite",
    "h_function_check", "h_value", "identity2_sum_q1", "infinite_prefactor",
]
