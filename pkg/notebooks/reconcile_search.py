"""
Searching for q-exponents that would join the two identities
============================================================

The k = 4 system is inconsistent over the rationals.  For k = 3 the best
exponents found by a grid plus Nelder-Mead still leave a residual far above
zero for every weight variant.
"""

import numpy as np

from qagm.identities.reconcile import (K3_VARIANTS, k3_residual, k4_system, reconcile_k3_infeasibility,
                                       reconcile_k4_no_solution)

A, b = k4_system()
print(np.array([[float(x) for x in row] for row in A]))
print("rhs", [str(x) for x in b])
rep = reconcile_k4_no_solution()
print("rank", rep.details["rank"], "certificate", [str(x) for x in rep.witness])
print("certificate gives 0 =", rep.details["certificate_rhs"])
for row in rep.details["leave_one_out"]:
    print("  without", row["dropped"], "solvable:", row["solvable"])

k3 = reconcile_k3_infeasibility(restarts=10)
for part in k3.details["parts"]:
    print(part["params"]["variant"], f"{part['witness']:.4g}", np.round(part["details"]["best_params"], 3))

# residual profile over q at the best exponents of the product variant
best = k3.details["parts"][0]["details"]["best_params"]
qs = np.linspace(0.05, 0.95, 10)
print(np.round(k3_residual(best, qs, K3_VARIANTS[0]), 4))
