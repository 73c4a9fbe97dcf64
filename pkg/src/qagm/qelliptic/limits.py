"""q -> 1- limit studies for the infinite products, and the monotonicity
facts used to squeeze them.

A study samples q_k = 1 - 10^(-k) for k = 1..steps at max(64, 10k) bits,
checks that the distance to the target does not grow (up to the certified
bounds) and that the last sample is within a declared threshold.  There is
no extrapolation: the last sample is what gets compared.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf

from ..qcore import CertifiedValue, QContext
from ..report import FAIL, NUMERIC_PASS, VerificationReport, combine
from .products import one_plus_sinpi, wallis_constant

__all__ = [
    "LimitStudy",
    "limit_context",
    "run_limit_study",
    "LIMIT_TARGETS",
    "c1_limit_report",
    "c1_exponent_comparison",
    "c3_limit_report",
    "sinpi_limit_report",
    "c2_discrepancy_report",
    "factor_ratio",
    "c1_bracket_check",
    "monotone_lemma_check",
    "monotone_lemma_counterexample",
    "limits_suite",
]

# evaluations near q = 1 need many factors; 10^-12 relative tail is far below the thresholds
LIMIT_TAIL = mpf("1e-12")
LIMIT_MAX_TERMS = 4_000_000


def limit_context(k: int) -> QContext:
    return QContext(q=1 - mpf(10) ** (-k), precision=max(64, 10 * k),
                    tail_tolerance=LIMIT_TAIL, max_terms=LIMIT_MAX_TERMS)


def _as_mp(s):
    if isinstance(s, Fraction):
        return mpf(s.numerator) / s.denominator
    return mpmath.mpmathify(s)


def _evaluate(name: str, k: int, s) -> CertifiedValue:
    ctx = limit_context(k)
    if name == "C1":
        return wallis_constant("C1", ctx)
    if name == "C1_exponent2":
        return wallis_constant("C1", ctx, exponent=2)
    if name == "C2":
        return wallis_constant("C2", ctx)
    if name == "C3_squared":
        v = wallis_constant("C3", ctx)
        return v * v
    if name == "sinpi":
        return one_plus_sinpi(_as_mp(s), ctx)
    raise ValueError(f"unknown limit study {name!r}; known: {sorted(LIMIT_TARGETS)}")


def _evaluate_packed(args):
    return _evaluate(*args)


LIMIT_TARGETS = {
    "C1": lambda s: 2 * mpmath.pi**2,
    "C1_exponent2": lambda s: 2 * mpmath.pi**2,
    "C2": lambda s: 1 / mpmath.sqrt(2 * mpmath.pi),
    "C3_squared": lambda s: +mpmath.pi,
    "sinpi": lambda s: 1 + mpmath.sinpi(_as_mp(s)),
}


@dataclass
class LimitStudy:
    """Certified values at an increasing sequence of q approaching 1."""

    name: str
    q_sequence: list
    values: list
    target: object
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        qs = self.q_sequence
        if not all(0 < q < 1 for q in qs) or any(b <= a for a, b in zip(qs, qs[1:])):
            raise ValueError("q_sequence must be strictly increasing inside (0, 1)")
        if len(qs) != len(self.values):
            raise ValueError("one value per q is required")

    @property
    def errors(self) -> list:
        return [abs(v.value - self.target) for v in self.values]

    def relative_errors(self) -> list:
        scale = abs(self.target)
        return [e / scale for e in self.errors] if scale else list(self.errors)

    @property
    def trend(self) -> dict:
        """Whether the distance to the target is non-increasing, allowing each
        step the two certified bounds as slack."""
        errs, vals = self.errors, self.values
        steps = [errs[i + 1] <= errs[i] + vals[i].bound + vals[i + 1].bound for i in range(len(errs) - 1)]
        rates = [errs[i + 1] / errs[i] if errs[i] else None for i in range(len(errs) - 1)]
        return {"monotone": all(steps), "errors": errs, "rates": rates}

    def final_error(self, relative: bool = True):
        errs = self.relative_errors() if relative else self.errors
        return errs[-1]

    def report(self, threshold, *, relative: bool = True, require_monotone: bool = True) -> VerificationReport:
        """numeric-pass iff the final error (relative unless the target is 0)
        is within ``threshold`` and the trend is monotone when required."""
        relative = relative and self.target != 0
        final = self.final_error(relative)
        trend = self.trend
        ok = final <= mpf(threshold) and (trend["monotone"] or not require_monotone)
        return VerificationReport(
            f"limit.{self.name}", {**self.params, "steps": len(self.q_sequence)},
            NUMERIC_PASS if ok else FAIL, witness=final, bound=mpf(threshold),
            details={"q": self.q_sequence, "values": self.values, "target": self.target,
                     "relative": relative, **trend})


def run_limit_study(name: str, steps: int = 4, *, s=None, jobs: int = 1) -> LimitStudy:
    """Evaluate ``name`` at q = 1 - 10^(-k), k = 1..steps.  Points are
    independent, so ``jobs > 1`` spreads them over processes."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if name not in LIMIT_TARGETS:
        raise ValueError(f"unknown limit study {name!r}; known: {sorted(LIMIT_TARGETS)}")
    tasks = [(name, k, s) for k in range(1, steps + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_evaluate_packed, tasks))
    else:
        values = [_evaluate_packed(t) for t in tasks]
    with mpmath.workprec(max(64, 10 * steps)):
        qs = [1 - mpf(10) ** (-k) for k in range(1, steps + 1)]
        target = LIMIT_TARGETS[name](s)
    params = {"s": s} if s is not None else {}
    return LimitStudy(name, qs, values, target, params)


def c1_limit_report(steps: int = 4, threshold=mpf("0.01"), jobs: int = 1) -> VerificationReport:
    return run_limit_study("C1", steps, jobs=jobs).report(threshold)


def c1_exponent_comparison(steps: int = 4, threshold=mpf("0.01"), jobs: int = 1,
                           four: VerificationReport | None = None) -> VerificationReport:
    """Both exponents on (1-q^(4n)) against 2 pi^2; passes iff exactly exponent 4 converges.
    ``four`` reuses an existing exponent-4 report."""
    if four is None:
        four = run_limit_study("C1", steps, jobs=jobs).report(threshold)
    two = run_limit_study("C1_exponent2", steps, jobs=jobs).report(threshold)
    converges = {4: four.status == NUMERIC_PASS, 2: two.status == NUMERIC_PASS}
    ok = converges[4] and not converges[2]
    return VerificationReport("limit.C1_exponent", {"steps": steps}, NUMERIC_PASS if ok else FAIL,
                              witness=four.witness, bound=mpf(threshold),
                              details={"converges": converges, "final_value_exponent2": two.details["values"][-1]})


def c3_limit_report(steps: int = 4, threshold=mpf("0.01"), jobs: int = 1) -> VerificationReport:
    return run_limit_study("C3_squared", steps, jobs=jobs).report(threshold)


def sinpi_limit_report(s, steps: int = 4, threshold=mpf("0.02"), jobs: int = 1) -> VerificationReport:
    """Relative error to 1 + sin(pi s), absolute when that is 0."""
    return run_limit_study("sinpi", steps, s=s, jobs=jobs).report(threshold)


C2_CANDIDATES = {
    "1/sqrt(2*pi)": lambda: 1 / mpmath.sqrt(2 * mpmath.pi),
    "1/sqrt(pi)": lambda: 1 / mpmath.sqrt(mpmath.pi),
}


def c2_discrepancy_report(steps: int = 4, threshold=mpf("0.01"), jobs: int = 1) -> VerificationReport:
    """Which of the two candidate limits of C2 the samples support.

    A candidate is supported when the final relative error is within
    ``threshold`` and the errors shrink monotonically.  Passes iff exactly
    one candidate is supported.
    """
    study = run_limit_study("C2", steps, jobs=jobs)
    verdicts = {}
    with mpmath.workprec(max(64, 10 * steps)):
        for label, value in C2_CANDIDATES.items():
            cand = LimitStudy("C2", study.q_sequence, study.values, value())
            verdicts[label] = {"final_relative_error": cand.final_error(),
                               "monotone": cand.trend["monotone"],
                               "supported": bool(cand.final_error() <= threshold and cand.trend["monotone"])}
    supported = [k for k, v in verdicts.items() if v["supported"]]
    status = NUMERIC_PASS if len(supported) == 1 else FAIL
    return VerificationReport("limit.C2_discrepancy", {"steps": steps}, status,
                              witness=supported[0] if len(supported) == 1 else supported,
                              bound=mpf(threshold),
                              details={"candidates": verdicts, "values": study.values, "q": study.q_sequence})


# -- monotonicity facts ----------------------------------------------------------------


def factor_ratio(q, n: int):
    """(1-q^n)^2 / ((1-q^(n-1)) (1-q^(n+1))), n >= 2; tends to n^2/(n^2-1) as q -> 1."""
    q = mpmath.mpmathify(q)
    return (1 - q**n) ** 2 / ((1 - q ** (n - 1)) * (1 - q ** (n + 1)))


def c1_bracket_check(n_max: int = 40, q_grid=None, steps: int = 4) -> VerificationReport:
    """Each factor ratio f(q, 4n) increases along the q grid, so at every q
    the product prod_n f(q, 4n) stays below pi/sqrt(8) = prod_n (4n)^2/((4n-1)(4n+1)).
    Also records the Wallis partial products that lie below each sample."""
    q_grid = list(q_grid) if q_grid is not None else [mpf(k) / 20 for k in range(1, 20)]
    parts = []
    decreasing = []
    with mpmath.workprec(192):
        slack = mpf(2) ** -150
        for n in range(1, n_max + 1):
            vals = [factor_ratio(q, 4 * n) for q in q_grid]
            vals.append(mpf(16 * n * n) / ((4 * n - 1) * (4 * n + 1)))
            if any(b < a - slack for a, b in zip(vals, vals[1:])):
                decreasing.append(n)
    parts.append(VerificationReport("c1_bracket.factor_ratio_increasing", {"n_max": n_max},
                                    NUMERIC_PASS if not decreasing else FAIL,
                                    witness=decreasing or None, bound=0))
    upper = mpmath.pi / mpmath.sqrt(8)
    samples = []
    above = []
    for k in range(1, steps + 1):
        ctx = limit_context(k)
        with ctx.workprec():
            c1 = wallis_constant("C1", ctx)
            q = ctx.qv
            pref = (1 - q**4) ** 2 / (1 - q) ** 2
            # the inner product is sqrt(C1 / prefactor); its bound scales by half
            inner = mpmath.sqrt(c1.value / pref)
            inner_bound = c1.bound / (2 * pref * inner)
            if inner - inner_bound > upper:
                above.append(k)
            partial, N = mpf(1), 0
            while N < 10**6:
                nxt = partial * mpf(16 * (N + 1) ** 2) / ((4 * N + 3) * (4 * N + 5))
                if nxt > inner + inner_bound:
                    break
                partial, N = nxt, N + 1
            samples.append({"q": q, "product": inner, "wallis_terms_below": N})
    parts.append(VerificationReport("c1_bracket.upper", {"steps": steps},
                                    NUMERIC_PASS if not above else FAIL,
                                    witness=above or None, bound=upper, details={"samples": samples}))
    return combine("c1_bracket", {"n_max": n_max, "steps": steps}, parts)


def _lemma_h(s, t, q):
    return t - s + s * q**t - t * q**s


def _lemma_f(s, t, q):
    return (1 - q**t) / (1 - q ** (t - s))


DEFAULT_LEMMA_SAMPLES = ((1, 3), (0.5, 2), (2, 2.5), (-3, -1), (-2.5, -0.5), (0, 1), (1, 1))


def monotone_lemma_check(samples=DEFAULT_LEMMA_SAMPLES, q_grid=None, slack=mpf("1e-25")) -> VerificationReport:
    """For each (s, t) with t >= s: f(s,t,q) = (1-q^t)/(1-q^(t-s)) is nondecreasing
    along the q grid, and h = t - s + s q^t - t q^s >= 0 at every grid point.

    h equals s t (g(s) - g(t)) with g(x) = (1-q^x)/x decreasing, so it is
    negative whenever s < 0 < t; such samples fail.  For s = t the ratio is
    undefined and only h = 0 is checked.
    """
    q_grid = list(q_grid) if q_grid is not None else [mpf(k) / 20 for k in range(1, 20)]
    parts = []
    with mpmath.workprec(128):
        for s, t in samples:
            s, t = mpf(s), mpf(t)
            if t < s:
                raise ValueError(f"samples need t >= s, got s={s}, t={t}")
            hs = [_lemma_h(s, t, q) for q in q_grid]
            worst_h = min(hs)
            drops = []
            if t != s:
                fs = [_lemma_f(s, t, q) for q in q_grid]
                drops = [i for i in range(len(fs) - 1) if fs[i + 1] - fs[i] < -slack]
            ok = worst_h >= -slack and not drops
            parts.append(VerificationReport(
                "monotone_lemma", {"s": s, "t": t}, NUMERIC_PASS if ok else FAIL,
                witness=worst_h, bound=slack,
                details={"min_h": worst_h, "decreasing_steps": [(q_grid[i], q_grid[i + 1]) for i in drops]}))
    return combine("monotone_lemma", {"samples": [list(p) for p in samples]}, parts)


def monotone_lemma_counterexample(s=-2, t=1, q_grid=None) -> VerificationReport:
    """Confirms the lemma fails for s < 0 < t: passes iff both the ratio
    decreases and h < 0 somewhere on the grid."""
    inner = monotone_lemma_check([(s, t)], q_grid)
    part = inner.details["parts"][0]
    confirmed = part["status"] == FAIL and part["details"]["min_h"] < 0 and part["details"]["decreasing_steps"]
    return VerificationReport("monotone_lemma.counterexample", {"s": s, "t": t},
                              NUMERIC_PASS if confirmed else FAIL,
                              witness=part["details"]["min_h"], bound=0, details=part["details"])


def limits_suite(steps: int = 4, jobs: int = 1) -> list[VerificationReport]:
    c1 = c1_limit_report(steps, jobs=jobs)
    reports = [c1, c1_exponent_comparison(steps, jobs=jobs, four=c1),
               c3_limit_report(steps, jobs=jobs), c2_discrepancy_report(steps, jobs=jobs)]
    for s in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 2)):
        reports.append(sinpi_limit_report(s, steps, jobs=jobs))
    reports += [c1_bracket_check(steps=steps), monotone_lemma_check(), monotone_lemma_counterexample()]
    return reports
