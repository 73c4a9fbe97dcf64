"""
Exact identity sweeps
=====================

Runs the Laurent-polynomial identity checks over growing parameter ranges
and prints the size of the largest expansion and how long each family takes.
"""

import time

from qagm.identities import (verify_evaluate_G, verify_F_to_P, verify_first_P_factoring, verify_identity1,
                             verify_identity2_q, verify_lemma_b, verify_partial_sum_q, verify_second_P_factoring)
from qagm.identities.reconcile import trial_sum
from qagm.qcore import q_binomial_int

families = {
    "identity1 n,k <= 10": lambda: [verify_identity1(n, k) for n in range(11) for k in range(11)],
    "lemma_b b <= 8": lambda: [verify_lemma_b(b) for b in range(9)],
    "identity2_q m <= 12": lambda: [verify_identity2_q(m) for m in range(13)],
    "P factorings l <= 5": lambda: [verify_first_P_factoring(l, p) for l in range(6) for p in ("even", "odd")]
                                  + [verify_second_P_factoring(l) for l in range(6)],
    "F_to_P h <= 5": lambda: [verify_F_to_P(h) for h in range(6)],
    "evaluate_G l <= 5": lambda: [verify_evaluate_G(l) for l in range(6)],
    "partial sums m,N <= 6": lambda: [verify_partial_sum_q(m, N) for m in range(7) for N in range(7)],
}

for label, run in families.items():
    t0 = time.perf_counter()
    reps = run()
    statuses = {r.status for r in reps}
    print(f"{label:<24} {len(reps):4d} cases  {sorted(statuses)}  {time.perf_counter() - t0:6.2f} s")

# the q = 1 limit of identity 2 recovers the classical coefficients a_(m/2)
for m in range(0, 9, 2):
    rep = verify_identity2_q(m)
    print(m, rep.details["parts"][1]["details"]["limit"])

# dropping q^(j(j-1)/2) from identity 1 breaks the factorization
for k, n in [(3, 2), (4, 2), (5, 3)]:
    print(f"trial sum k={k} n={n}: {trial_sum(k, n)}   vs  binomial {q_binomial_int(n, k - n)}")
