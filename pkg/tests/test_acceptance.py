"""One check per acceptance criterion, at the pinned tolerances.

Each test appends a PASS/FAIL line to ``LINES``; the lines are printed in the
pytest terminal summary, or directly when this file is run as a script.
"""

import subprocess
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from qagm import EVIDENCE, EXACT_PASS, FAIL, NUMERIC_PASS, QContext
from qagm import agm as classical
from qagm import harness
from qagm.identities import reconcile
from qagm.qelliptic import integral_to_sum_check, limits, qint, qsum

pytestmark = pytest.mark.slow

LINES: list[str] = []


def record(number: int, ok: bool, text: str) -> None:
    LINES.append(f"{'PASS' if ok else 'FAIL'}  [{number:2d}] {text}")
    assert ok, text


def _run_case(case):
    return case.key, harness._execute(case.run)


def test_01_exact_symbolic_suite():
    cfg = harness.load_config(None, {"suite": "identities"})
    cases = harness.build_cases(cfg)
    t0 = time.perf_counter()
    with ProcessPoolExecutor(max_workers=1) as pool:   # one worker: the time is a serial laptop time
        results = list(pool.map(_run_case, cases))
    elapsed = time.perf_counter() - t0
    micro = {name for name, _ in harness.micro_identity_cases(cfg.micro_max)}
    bad = [k for k, r in results if r.status != EXACT_PASS]
    zero = all(r.witness is not None and r.witness.is_zero() for _, r in results
               if hasattr(r.witness, "is_zero"))
    ok = not bad and zero and elapsed < 300 and len(micro) == 10
    record(1, ok, f"exact symbolic suite: {len(results) - len(bad)}/{len(results)} exact-pass, "
                  f"{len(micro)} micro-identities, {elapsed:.1f} s (limit 300 s)")


def test_02_gauss_agm_and_functional_equation():
    tol = mpf("1e-12")
    worst = mpf(0)
    ok = True
    for j in range(1, 10):
        k = mpf(j) / 10
        for rep in (classical.check_gauss_agm(k, tol, 128), classical.check_functional_equation(k, tol, 128)):
            ok &= rep.status == NUMERIC_PASS
            worst = max(worst, abs(rep.witness))
    record(2, ok and worst <= tol, f"Gauss AGM + functional equation, k = 0.1..0.9: max residual "
                                   f"{mpmath.nstr(worst, 3)} (tol 1e-12, 128 bits)")


def test_03_classical_identities():
    reps = [classical.classical_coefficient_identity(k) for k in range(13)]
    reps += [classical.classical_identity2(m // 2, "even" if m % 2 == 0 else "odd") for m in range(13)]
    ok = all(r.status == EXACT_PASS and r.witness == 0 for r in reps)
    record(3, ok, f"classical coefficient identity k <= 12 and identity 2 m <= 12: "
                  f"{sum(r.status == EXACT_PASS for r in reps)}/{len(reps)} exact")


def test_04_qsum_theorem():
    t0 = time.perf_counter()
    sym = qsum.qsum_verify_symbolic(60)
    sym_s = time.perf_counter() - t0
    points = [(s, q) for s in ("0", "3", "-1/2", "1/2+2i") for q in ("0.5", "0.8", "0.95")]
    worst = mpf(0)
    numeric_ok = True
    for s, q in points:
        ctx = QContext(q=harness.parse_number(q), precision=128)
        with ctx.workprec():
            rep = qsum.qsum_verify_numeric(harness.to_mp(s), ctx)
        numeric_ok &= rep.status == NUMERIC_PASS and rep.bound <= mpf("1e-20")
        worst = max(worst, rep.bound)
    q1 = [qsum.qsum_q1(Fraction(s), tol=mpf("1e-8")) for s in ("0", "-1/2", "5/2")]
    recursion = all(any(p["theorem"] == "qsum_q1.recursion" and p["status"] == NUMERIC_PASS
                        for p in r.details["parts"]) for r in q1)
    q1_ok = all(r.status != FAIL for r in q1) and recursion
    ok = sym.status == EXACT_PASS and numeric_ok and q1_ok
    record(4, ok, f"q-sum: order-60 prefix {sym.status} ({sym_s:.1f} s); {len(points)} numeric points, "
                  f"largest bound {mpmath.nstr(worst, 3)} (<= 1e-20); q = 1 at s = 0, -1/2, 5/2 with recursion: "
                  f"{'pass' if q1_ok else 'fail'}")


def test_05_qint_theorem():
    sym = qint.qint_verify_symbolic(40)
    points = [(s, q) for s in ("0", "1", "1/2+2i") for q in ("0.5", "0.9")]
    numeric = []
    for s, q in points:
        ctx = QContext(q=harness.parse_number(q), precision=128)
        with ctx.workprec():
            numeric.append(qint.qint_verify(harness.to_mp(s), ctx))
    f0 = qint.f0_at_one(mpf("1e-9"))
    f0_err = abs(f0.value - 1 / mpmath.sqrt(2))
    ok = (sym.status == EXACT_PASS and all(r.status == NUMERIC_PASS for r in numeric)
          and f0_err + f0.bound <= mpf("1e-8"))
    record(5, ok, f"q-integral: order-40 prefix {sym.status}; {len(points)} numeric points pass; "
                  f"|f(0,1) - 1/sqrt 2| = {mpmath.nstr(f0_err, 3)} with bound {mpmath.nstr(f0.bound, 3)} (tol 1e-8)")


def test_06_limits():
    c1 = limits.run_limit_study("C1", 4, jobs=4)
    c3 = limits.run_limit_study("C3_squared", 4, jobs=4)
    c1_rep, c3_rep = c1.report(mpf("0.01")), c3.report(mpf("0.01"))
    sin_reps = [limits.sinpi_limit_report(s, 4, threshold=mpf("0.02"), jobs=4)
                for s in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 2))]
    c2 = limits.c2_discrepancy_report(4, jobs=4)
    supported = [k for k, v in c2.details["candidates"].items() if v["supported"]]
    ok = (c1_rep.status == NUMERIC_PASS and c3_rep.status == NUMERIC_PASS
          and all(r.status == NUMERIC_PASS for r in sin_reps) and c2.status != FAIL and len(supported) == 1)
    sin_worst = max(r.witness for r in sin_reps)
    record(6, ok, f"limits at q = 1 - 1e-4: C1 rel err {mpmath.nstr(c1.final_error(), 3)} "
                  f"(monotone {c1.trend['monotone']}), C3^2 rel err {mpmath.nstr(c3.final_error(), 3)}, "
                  f"1+SinPi worst {mpmath.nstr(sin_worst, 3)} (2%), C2 supports {supported}")


def test_07_reconcile():
    k4 = reconcile.reconcile_k4_no_solution()
    trial = reconcile.trial_identity_checks()
    k3 = reconcile.reconcile_k3_infeasibility(threshold=1e-3)
    ok = k4.status == EXACT_PASS and trial.status == EXACT_PASS and k3.status == EVIDENCE and k3.witness > 1e-3
    record(7, ok, f"reconcile: k=4 certificate {k4.status} (rank {k4.details['rank']}), trial identity "
                  f"{trial.status}, k=3 residual lower bound {k3.witness:.3g} ({k3.status})")


def test_08_integral_to_sum():
    reps = [integral_to_sum_check(mpf(s), tol=mpf("1e-8")) for s in ("0", "0.5", "1", "2")]
    worst = max(abs(r.witness) for r in reps)
    ok = all(r.status == NUMERIC_PASS for r in reps) and worst <= mpf("1e-8")
    record(8, ok, f"integral to sum, s = 0, 1/2, 1, 2: max |quadrature - sum| {mpmath.nstr(worst, 3)} (tol 1e-8)")


def test_09_derivative_interpolation():
    reps = [classical.derivative_interpolation_check(n, tol=mpf("1e-4")) for n in range(3)]
    worst = max(r.witness for r in reps)
    ok = all(r.status == NUMERIC_PASS for r in reps)
    record(9, ok, f"derivative interpolation n = 0, 1, 2: max three-way spread {mpmath.nstr(worst, 3)} (tol 1e-4)")


def test_10_determinism():
    outputs = []
    codes = []
    for jobs in ("4", "2"):
        proc = subprocess.run([sys.executable, "-m", "qagm.cli", "verify", "--suite", "all", "--seed", "42",
                               "--jobs", jobs], capture_output=True, text=True, check=False)
        codes.append(proc.returncode)
        outputs.append(harness.strip_timing(proc.stdout))
    same = outputs[0] == outputs[1] and bool(outputs[0])
    lines = outputs[0].count("\n")
    record(10, same and codes == [0, 0],
           f"verify --suite all --seed 42 twice (jobs 4 and 2): {lines} lines, identical apart from millis: "
           f"{same}, exit codes {codes}")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(LINES))
    sys.exit(0 if all(line.startswith("PASS") for line in LINES) else 1)
