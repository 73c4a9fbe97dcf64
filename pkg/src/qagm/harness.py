"""Suite configuration, case generation and deterministic report emission."""

from __future__ import annotations

import configparser
import csv
import io
import json
import os
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from functools import partial
from typing import Callable

import mpmath
import numpy as np
from mpmath import mpf

from . import agm
from .identities import identity1, identity2, reconcile
from .qcore import DomainError, QContext, TruncationError
from .qelliptic import hfunction, limits, products, qint, qsum
from .report import FAIL, STATUSES, VerificationReport, numeric_report

SUITES = ("classical", "identities", "qsum", "qint", "limits", "reconcile")
CONFIG_ENV = "QAGM_CONFIG"
RECORD_FIELDS = ("case", "theorem", "params", "status", "witness", "bound", "seed", "millis")


class ConfigError(ValueError):
    """Invalid suite configuration (exit code 2 at the command line)."""


# -- number parsing -----------------------------------------------------------------

_COMPLEX = re.compile(r"^\s*([+-]?[\d./eE]+)?\s*(?:([+-])\s*([\d./eE]*)\s*[ij])?\s*$")


def parse_number(text: str):
    """'3', '-1/2', '0.95' -> Fraction; '1/2+2i' or '2j' -> (Fraction, Fraction) pair."""
    text = str(text).strip()
    try:
        return Fraction(text)
    except ValueError:
        pass
    m = re.fullmatch(r"\s*([+-]?)\s*([\d./eE]*)\s*[ij]\s*", text)
    if m:
        return (Fraction(0), Fraction((m.group(1) or "") + (m.group(2) or "1")))
    m = _COMPLEX.match(text)
    if not m or m.group(2) is None:
        raise ConfigError(f"cannot parse number {text!r}")
    re_part = Fraction(m.group(1) or "0")
    im_part = Fraction(m.group(3) or "1")
    return (re_part, -im_part if m.group(2) == "-" else im_part)


def to_mp(text: str):
    """Numeric value of ``text`` at the current mpmath precision."""
    v = parse_number(text)

    def r(f: Fraction):
        return mpf(f.numerator) / f.denominator

    if isinstance(v, tuple):
        return mpmath.mpc(r(v[0]), r(v[1]))
    return r(v)


def _number_list(text: str) -> tuple[str, ...]:
    items = tuple(t.strip() for t in str(text).split(",") if t.strip())
    for t in items:
        parse_number(t)
    return items


# -- configuration ------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "all"
    seed: int = 0
    precision: int = 128
    tol: str = "1e-8"
    jobs: int = 1
    format: str = "json"
    details: bool = False
    # classical
    agm_k: tuple = ("0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9")
    agm_tol: str = "1e-12"
    coefficient_k_max: int = 12
    identity2_m_max: int = 12
    derivative_n: tuple = ("0", "1", "2")
    # identities
    identity1_max: int = 10
    thm_max: int = 8
    identity2_q_max: int = 12
    factoring_max: int = 5
    partial_max: int = 6
    micro_max: int = 4
    # qsum
    qsum_order: int = 60
    qsum_s: tuple = ("0", "3", "-1/2", "1/2+2i")
    qsum_q: tuple = ("0.5", "0.8", "0.95")
    qsum_q1_s: tuple = ("0", "-1/2", "5/2")
    random_points: int = 3
    # qint
    qint_order: int = 40
    qint_s: tuple = ("0", "1", "1/2+2i")
    qint_q: tuple = ("0.5", "0.9")
    qint_q1_s: tuple = ("0", "1")
    integral_s: tuple = ("0", "1/2", "1", "2")
    # limits
    limit_steps: int = 4
    sinpi_s: tuple = ("0", "1/4", "1/2", "3/2")
    h_c: tuple = ("1/4", "-3/10")
    # reconcile
    trial_max: int = 8
    k3_grid: int = 41
    k3_threshold: str = "1e-3"
    k3_restarts: int = 20

    def validate(self) -> "SuiteConfig":
        if self.suite not in SUITES + ("all",):
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES + ('all',))}")
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        if self.precision < 53:
            raise ConfigError("precision must be at least 53 bits")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple) and not v:
                raise ConfigError(f"{f.name} must not be empty")
            if isinstance(v, int) and not isinstance(v, bool) and f.name not in ("seed",) and v < 0:
                raise ConfigError(f"{f.name} must be >= 0")
        for name in ("qsum_q", "qint_q"):
            for q in getattr(self, name):
                qv = parse_number(q)
                if isinstance(qv, tuple) or not (0 < qv < 1):
                    raise ConfigError(f"{name}: q values must lie in (0, 1), got {q}")
        for name in ("tol", "agm_tol", "k3_threshold"):
            v = parse_number(getattr(self, name))
            if isinstance(v, tuple) or v <= 0:
                raise ConfigError(f"{name} must be a positive real")
        if self.qsum_order < 1 or self.qint_order < 1 or self.limit_steps < 1 or self.k3_grid < 2:
            raise ConfigError("orders, limit_steps must be >= 1 and k3_grid >= 2")
        return self


def _coerce(name: str, raw: str):
    kind = type(getattr(SuiteConfig, name, None))
    try:
        if kind is bool:
            low = raw.strip().lower()
            if low not in ("1", "0", "true", "false", "yes", "no", "on", "off"):
                raise ValueError(raw)
            return low in ("1", "true", "yes", "on")
        if kind is int:
            return int(raw)
        if kind is tuple:
            return _number_list(raw)
        return raw.strip()
    except (ValueError, ConfigError) as exc:
        raise ConfigError(f"bad value for {name}: {raw!r}") from exc


def load_config(path: str | None = None, overrides: dict | None = None) -> SuiteConfig:
    """Defaults, then the INI file (``path`` or $QAGM_CONFIG), then ``overrides``.

    Every section is read; keys are field names, so sections only group them.
    """
    values: dict = {}
    path = path or os.environ.get(CONFIG_ENV) or None
    if path:
        parser = configparser.ConfigParser()
        try:
            with open(path, encoding="utf-8") as fh:
                parser.read_file(fh)
        except (OSError, configparser.Error) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        known = {f.name for f in fields(SuiteConfig)}
        for section in parser.sections():
            for key, raw in parser.items(section):
                if key not in known:
                    raise ConfigError(f"unknown config key {key!r} in [{section}]")
                values[key] = _coerce(key, raw)
    for key, v in (overrides or {}).items():
        if v is not None:
            values[key] = v
    try:
        cfg = replace(SuiteConfig(), **values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg.validate()


# -- cases -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Case:
    key: str
    run: Callable[[], VerificationReport]


def _ctx(q: str, precision: int) -> QContext:
    return QContext(q=parse_number(q), precision=precision)


def _gauss(k, tol, precision):
    return agm.check_gauss_agm(to_mp(k), tol=to_mp(tol), prec=precision)


def _functional(k, tol, precision):
    return agm.check_functional_equation(to_mp(k), tol=to_mp(tol), prec=precision)


def _agm_functional(k, tol, precision):
    return agm.check_agm_functional_equation(to_mp(k), tol=to_mp(tol), prec=precision)


def _derivative(n, precision):
    return agm.derivative_interpolation_check(int(n), prec=precision)


def _qsum_numeric(s, q, precision):
    with mpmath.workprec(precision):
        return qsum.qsum_verify_numeric(to_mp(s), _ctx(q, precision))


def _qsum_q1(s, tol, precision):
    with mpmath.workprec(precision):
        v = parse_number(s)
        return qsum.qsum_q1(v if not isinstance(v, tuple) else to_mp(s), tol=to_mp(tol), prec=precision)


def _qsum_prefix(s, q, order, precision):
    with mpmath.workprec(precision):
        return qsum.qsum_prefix_agreement(to_mp(s), _ctx(q, precision), order)


def _sinpi_periodic(s, q, precision):
    ctx = _ctx(q, precision)
    with ctx.workprec():
        sv = to_mp(s)
        a = products.one_plus_sinpi(sv, ctx)
        b = products.one_plus_sinpi(sv + 2, ctx)
        return numeric_report("sinpi.periodic", {"s": s, "q": q}, a.value - b.value, a.bound + b.bound,
                              value=a.value)


def _qint_numeric(s, q, precision):
    with mpmath.workprec(precision):
        return qint.qint_verify(to_mp(s), _ctx(q, precision))


def _qint_q1(s, tol):
    return qint.qint_q1(to_mp(s), tol=to_mp(tol))


def _integral(s, tol):
    return qint.integral_to_sum_check(to_mp(s), tol=to_mp(tol))


def _sinpi_limit(s, steps):
    return limits.sinpi_limit_report(parse_number(s), steps)


def _h_check(c, tol):
    v = parse_number(c)
    return hfunction.h_function_check(float(v), tol=float(parse_number(tol)))


def _k3(grid, threshold, restarts, seed):
    return reconcile.reconcile_k3_infeasibility(grid=(-10.0, 10.0, grid), threshold=float(parse_number(threshold)),
                                                restarts=restarts, seed=seed)


def _random_points(cfg: SuiteConfig, lo: float, hi: float) -> list[str]:
    """Seeded sample points, rounded to 1/1000 so they serialize exactly."""
    rng = np.random.default_rng(cfg.seed)
    return [str(Fraction(int(round(x * 1000)), 1000)) for x in rng.uniform(lo, hi, cfg.random_points)]


def build_cases(cfg: SuiteConfig) -> list[Case]:
    suites = SUITES if cfg.suite == "all" else (cfg.suite,)
    cases: list[tuple[str, Callable]] = []
    p = cfg.precision
    for suite in suites:
        add = lambda name, fn: cases.append((f"{suite}.{name}", fn))  # noqa: E731
        if suite == "classical":
            for k in cfg.agm_k:
                add(f"gauss_agm[k={k}]", partial(_gauss, k, cfg.agm_tol, p))
                add(f"functional_equation[k={k}]", partial(_functional, k, cfg.agm_tol, p))
                add(f"agm_functional_equation[k={k}]", partial(_agm_functional, k, cfg.agm_tol, p))
            for k in range(cfg.coefficient_k_max + 1):
                add(f"coefficient_identity[k={k}]", partial(agm.classical_coefficient_identity, k))
            for m in range(cfg.identity2_m_max + 1):
                add(f"identity2[m={m}]", partial(agm.classical_identity2, m // 2, "even" if m % 2 == 0 else "odd"))
            for n in cfg.derivative_n:
                add(f"derivative_interpolation[n={n}]", partial(_derivative, n, p))
        elif suite == "identities":
            for n in range(cfg.identity1_max + 1):
                for k in range(cfg.identity1_max + 1):
                    add(f"identity1[n={n},k={k}]", partial(identity1.verify_identity1, n, k))
            for b in range(cfg.thm_max + 1):
                add(f"thm_b[b={b}]", partial(identity1.verify_thm_b_integer, b))
                add(f"lemma_b[b={b}]", partial(identity1.verify_lemma_b, b))
                add(f"thm_sb[M={b}]", partial(identity1.verify_thm_sb_integer, b))
                add(f"lemma_sb[M={b}]", partial(identity1.verify_lemma_sb, b))
            for m in range(cfg.identity2_q_max + 1):
                add(f"identity2_q[m={m}]", partial(identity2.verify_identity2_q, m))
            for l in range(cfg.factoring_max + 1):
                for parity in ("even", "odd"):
                    add(f"first_P_factoring[l={l},{parity}]", partial(identity2.verify_first_P_factoring, l, parity))
                add(f"second_P_factoring[l={l}]", partial(identity2.verify_second_P_factoring, l))
                add(f"F_to_P[h={l}]", partial(identity2.verify_F_to_P, l))
                add(f"evaluate_G[l={l}]", partial(identity2.verify_evaluate_G, l))
            for name, params in micro_identity_cases(cfg.micro_max):
                label = ",".join(f"{k}={v}" for k, v in params.items())
                add(f"micro.{name}[{label}]", partial(identity2.verify_micro_identity, name, params))
            for m in range(cfg.partial_max + 1):
                for N in range(cfg.partial_max + 1):
                    add(f"partial_sum_q[m={m},N={N}]", partial(identity2.verify_partial_sum_q, m, N))
        elif suite == "qsum":
            add(f"symbolic[order={cfg.qsum_order}]", partial(qsum.qsum_verify_symbolic, cfg.qsum_order))
            for s in cfg.qsum_s:
                for q in cfg.qsum_q:
                    add(f"numeric[s={s},q={q}]", partial(_qsum_numeric, s, q, p))
            for s in cfg.qsum_q1_s:
                add(f"q1[s={s}]", partial(_qsum_q1, s, cfg.tol, p))
            for s in _random_points(cfg, -1.5, 1.5):
                add(f"prefix_agreement[s={s},q=1/2]", partial(_qsum_prefix, s, "1/2", cfg.qsum_order, p))
                for q in ("0.3", "0.6", "0.9"):
                    add(f"sinpi_periodic[s={s},q={q}]", partial(_sinpi_periodic, s, q, p))
        elif suite == "qint":
            add(f"symbolic[order={cfg.qint_order}]", partial(qint.qint_verify_symbolic, cfg.qint_order))
            for s in cfg.qint_s:
                for q in cfg.qint_q:
                    add(f"numeric[s={s},q={q}]", partial(_qint_numeric, s, q, p))
            for s in cfg.qint_q1_s:
                add(f"q1[s={s}]", partial(_qint_q1, s, cfg.tol))
            for s in cfg.integral_s:
                add(f"integral_to_sum[s={s}]", partial(_integral, s, cfg.tol))
        elif suite == "limits":
            steps = cfg.limit_steps
            add("C1", partial(limits.c1_limit_report, steps))
            add("C1_exponent", partial(limits.c1_exponent_comparison, steps))
            add("C3_squared", partial(limits.c3_limit_report, steps))
            add("C2_discrepancy", partial(limits.c2_discrepancy_report, steps))
            for s in cfg.sinpi_s:
                add(f"sinpi[s={s}]", partial(_sinpi_limit, s, steps))
            add("C1_bracket", partial(limits.c1_bracket_check, steps=steps))
            add("monotone_lemma", limits.monotone_lemma_check)
            add("monotone_lemma_counterexample", limits.monotone_lemma_counterexample)
            for c in cfg.h_c:
                add(f"h_function[c={c}]", partial(_h_check, c, "1e-6"))
        elif suite == "reconcile":
            add("k4_no_solution", reconcile.reconcile_k4_no_solution)
            add(f"trial_identity[max={cfg.trial_max}]", partial(reconcile.trial_identity_checks, cfg.trial_max))
            add("k3_infeasibility", partial(_k3, cfg.k3_grid, cfg.k3_threshold, cfg.k3_restarts, cfg.seed))
    width = len(str(len(cases)))
    return [Case(f"{i:0{width}d}.{name}", fn) for i, (name, fn) in enumerate(cases)]


def micro_identity_cases(up_to: int) -> list[tuple[str, dict]]:
    """Parameter sweeps for the micro-identities (the as-printed erratum excluded)."""
    r = range(up_to + 1)
    out: list[tuple[str, dict]] = [("two_factor", {})]
    out += [("q_square", {"a": a, "k": k}) for a in r for k in r]
    out += [("f_to_p", {"i": i, "l": l}) for i in r for l in r]
    out += [("reduction", {"l": l, "i": i}) for l in r for i in r]
    out += [("F_to_P_step", {"h": h, "v": v}) for h in r for v in r]
    out += [("binomial_split", {"L": L}) for L in r]
    out += [("odd_weight_product", {"L": L}) for L in r]
    out += [("qsum_term_difference", {"n": n}) for n in r]
    out += [("qsum_step", {"N": n}) for n in r]
    out += [("qint_step", {"N": n}) for n in r]
    return out


# -- running -----------------------------------------------------------------------------

_EXPECTED_ERRORS = (DomainError, TruncationError, ValueError, ArithmeticError, KeyError)


def _execute(fn: Callable[[], VerificationReport]) -> VerificationReport:
    t0 = time.perf_counter()
    try:
        rep = fn()
    except _EXPECTED_ERRORS as exc:
        rep = VerificationReport("error", {}, FAIL, witness=f"{type(exc).__name__}: {exc}")
    own = rep.millis
    rep.millis = own if own else (time.perf_counter() - t0) * 1000
    return rep


def run_suite(cfg: SuiteConfig) -> list[tuple[Case, VerificationReport]]:
    """Run every case; results come back in case-key order whatever ``jobs`` is."""
    cases = build_cases(cfg)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(_execute, [c.run for c in cases]))
    else:
        reports = [_execute(c.run) for c in cases]
    return list(zip(cases, reports))


def summarize(results, cfg: SuiteConfig) -> dict:
    counts = {s: 0 for s in STATUSES}
    for _, rep in results:
        counts[rep.status] += 1
    return {"summary": {"suite": cfg.suite, "seed": cfg.seed, "cases": len(results), "counts": counts,
                        "passed": counts[FAIL] == 0,
                        "millis": round(sum(r.millis for _, r in results), 3)}}


def records(results, cfg: SuiteConfig) -> list[dict]:
    out = []
    for case, rep in results:
        rec = rep.to_record(case.key, cfg.seed)
        if not cfg.details:
            rec.pop("details", None)
        out.append(rec)
    return out


def format_json(results, cfg: SuiteConfig) -> str:
    lines = [json.dumps(r, sort_keys=False, separators=(",", ":")) for r in records(results, cfg)]
    lines.append(json.dumps(summarize(results, cfg), separators=(",", ":")))
    return "\n".join(lines) + "\n"


def format_csv(results, cfg: SuiteConfig) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=RECORD_FIELDS, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for rec in records(results, cfg):
        row = {k: rec[k] if isinstance(rec[k], (str, int, float, type(None))) else json.dumps(rec[k])
               for k in RECORD_FIELDS}
        writer.writerow(row)
    return buf.getvalue()


def strip_timing(text: str) -> str:
    """Drop every ``millis`` field so two outputs can be compared byte for byte."""
    return re.sub(r',"millis":[0-9.eE+-]+', "", text)


def exit_code(results) -> int:
    return 1 if any(rep.status == FAIL for _, rep in results) else 0


__all__ = [
    "SUITES", "CONFIG_ENV", "ConfigError", "SuiteConfig", "Case", "parse_number", "to_mp",
    "load_config", "build_cases", "micro_identity_cases", "run_suite", "summarize", "records",
    "format_json", "format_csv", "strip_timing", "exit_code",
]
