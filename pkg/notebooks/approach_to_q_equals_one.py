"""
How the q-products approach their q = 1 limits
===============================================

Samples q = 1 - 10^-k and prints the distance to each limit.  The C1
product converges like (1 - q); dropping its exponent from 4 to 2 makes it
blow up instead.
"""

import mpmath
from mpmath import mpf

from qagm import QContext
from qagm.qelliptic import limits, one_plus_sinpi, wallis_constant

steps = 4

for name in ("C1", "C3_squared", "C2"):
    study = limits.run_limit_study(name, steps, jobs=4)
    print(f"\n{name} -> {mpmath.nstr(study.target, 12)}")
    for q, v, e in zip(study.q_sequence, study.values, study.relative_errors()):
        print(f"  q = {mpmath.nstr(q, 6):>8}   {mpmath.nstr(v.value, 14):>18}   rel err {mpmath.nstr(e, 3)}")
    print("  successive error ratios:", [mpmath.nstr(r, 3) for r in study.trend["rates"]])

# the two candidate limits for C2 differ by a factor sqrt 2, so the study is decisive
rep = limits.c2_discrepancy_report(steps, jobs=4)
for label, info in rep.details["candidates"].items():
    print(f"C2 vs {label:>14}: final rel err {mpmath.nstr(info['final_relative_error'], 3)}")

# exponent 2 in C1 grows without bound
for k in range(1, steps + 1):
    ctx = limits.limit_context(k)
    with ctx.workprec():
        two = wallis_constant("C1", ctx, exponent=2)
    print(f"C1 with exponent 2 at q = 1 - 1e-{k}: {mpmath.nstr(two.value, 8)}")

# 1 + sin(pi s) from its q-product: exact at q < 1 for s = 1/2, close to the limit elsewhere
ctx = QContext(q=mpf("0.999"))
for s in ("0", "0.25", "0.5", "1.5", "0.8"):
    v = one_plus_sinpi(mpf(s), ctx)
    print(f"s = {s:>4}: product {mpmath.nstr(v.value, 10)}   1 + sin(pi s) = {mpmath.nstr(1 + mpmath.sinpi(mpf(s)), 10)}")
