"""Command line: ``qagm verify``, ``qagm eval`` and ``qagm limits``.

Exit codes: 0 when every case passes, 1 when any case fails, 2 for usage,
configuration or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import mpmath
from mpmath import mpf

from . import agm, harness
from .identities.families import G_stripped, I_sum
from .qcore import CertifiedValue, DomainError, QContext, TruncationError
from .qelliptic import limits, products, qint, qsum
from .report import FAIL, to_jsonable


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qagm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite and emit one record per case")
    v.add_argument("--suite", choices=harness.SUITES + ("all",), default=None)
    v.add_argument("--config", help=f"INI file (default: ${harness.CONFIG_ENV})")
    v.add_argument("--seed", type=int)
    v.add_argument("--precision", type=int, help="working precision in bits")
    v.add_argument("--order", type=int, help="truncation order for both symbolic series checks")
    v.add_argument("--tol", help="tolerance for the q = 1 and quadrature checks")
    v.add_argument("--jobs", type=int)
    v.add_argument("--format", choices=("json", "csv"))
    v.add_argument("--details", action="store_true", default=None, help="include check-specific details")
    v.add_argument("--output", "-o", help="write the report here instead of stdout")

    e = sub.add_parser("eval", help="evaluate one function with a certified bound")
    e.add_argument("function", choices=sorted(EVALUATORS))
    e.add_argument("args", nargs="*", help="positional arguments, e.g. '1/2+2i'")
    e.add_argument("--x", help="argument of F or qint_f (same as a positional argument)")
    e.add_argument("--q", default="1/2")
    e.add_argument("--precision", type=int, default=128)
    e.add_argument("--format", choices=("text", "json"), default="text")

    lim = sub.add_parser("limits", help="sample q = 1 - 10^-k, k = 1..steps")
    lim.add_argument("name", choices=sorted(limits.LIMIT_TARGETS) + ["C2_discrepancy", "C1_bracket"])
    lim.add_argument("--steps", type=int, default=4)
    lim.add_argument("--s", default="1/2", help="argument for sinpi")
    lim.add_argument("--jobs", type=int, default=1)
    lim.add_argument("--threshold", default=None, help="relative error threshold (default 1%%, sinpi 2%%)")
    return parser


# -- eval --------------------------------------------------------------------------


def _need(args, count, usage):
    if len(args) != count:
        raise ValueError(f"expected {count} argument(s): {usage}")
    return args


def _eval_agm(args, ctx):
    a, b = _need(args, 2, "agm A B")
    res = agm.agm(harness.to_mp(a), harness.to_mp(b), prec=ctx.precision)
    return CertifiedValue(res.value, res.residual)


def _eval_F(args, ctx):
    (x,) = _need(args, 1, "F X")
    return agm.elliptic_F_series(harness.to_mp(x), prec=ctx.precision)


def _eval_product(which):
    def run(args, ctx):
        _need(args, 0, which)
        return products.wallis_constant(which, ctx)
    return run


def _eval_with_s(fn, usage):
    def run(args, ctx):
        (s,) = _need(args, 1, usage)
        return fn(harness.to_mp(s), ctx)
    return run


def _eval_I(args, ctx):
    c, m = _need(args, 2, "I C M")
    cv, m = harness.to_mp(c), int(m)
    with ctx.workprec():
        if ctx.is_limit:
            total, term = mpf(1), mpf(1)
            for n in range(m):
                term *= -4 * (mpf(2 * n + 1) / (2 * n + 2)) ** 2 * (n + 1 + 2 * cv) * (2 * cv - n) / ((2 * n + 1) * (2 * n + 2))
                total += term
            return CertifiedValue(total, abs(total) * ctx.eps * 16 * (m + 1))
        value = I_sum(m).evaluate({"q": ctx.qv, "w": ctx.qv**cv})
    return CertifiedValue(value, abs(value) * ctx.eps * 64 * (m + 1) ** 2)


def _eval_G(args, ctx):
    c, a, l = _need(args, 3, "G C A L")
    cv, av = harness.to_mp(c), harness.to_mp(a)
    ctx.require_open()
    with ctx.workprec():
        q = ctx.qv
        value = q ** (cv * cv - cv) * G_stripped(int(l)).evaluate({"q": q, "w": q**cv, "v": q**av})
    return CertifiedValue(value, abs(value) * ctx.eps * 64 * (int(l) + 1) ** 2)


EVALUATORS = {
    "agm": _eval_agm,
    "F": _eval_F,
    "C1": _eval_product("C1"),
    "C2": _eval_product("C2"),
    "C3": _eval_product("C3"),
    "one_plus_sinpi": _eval_with_s(products.one_plus_sinpi, "one_plus_sinpi S"),
    "qsum_lhs": _eval_with_s(qsum.qsum_lhs, "qsum_lhs S"),
    "qsum_rhs": _eval_with_s(qsum.qsum_rhs, "qsum_rhs S"),
    "qint_f": _eval_with_s(qint.qint_f, "qint_f X"),
    "qint_rhs": _eval_with_s(qint.qint_rhs, "qint_rhs S"),
    "I": _eval_I,
    "G": _eval_G,
}


def cmd_eval(ns) -> int:
    args = list(ns.args) + ([ns.x] if ns.x is not None else [])
    with mpmath.workprec(ns.precision):
        ctx = QContext(q=harness.parse_number(ns.q), precision=ns.precision)
        value = EVALUATORS[ns.function](args, ctx)
        if ns.format == "json":
            print(json.dumps({"function": ns.function, "args": args, "q": ns.q,
                              "value": to_jsonable(value.value), "bound": to_jsonable(value.bound)}))
        else:
            digits = max(15, int(ns.precision * 0.30103) - 2)
            print(f"{mpmath.nstr(value.value, digits)}  +/- {mpmath.nstr(value.bound, 3)}")
    return 0


# -- limits ------------------------------------------------------------------------


def cmd_limits(ns) -> int:
    if ns.name == "C2_discrepancy":
        rep = limits.c2_discrepancy_report(ns.steps, jobs=ns.jobs)
        for label, v in rep.details["candidates"].items():
            print(f"{label:>14}  final relative error {mpmath.nstr(v['final_relative_error'], 4)}"
                  f"  monotone={v['monotone']}  supported={v['supported']}")
        print(f"supports: {rep.witness}")
        return 0 if rep.status != FAIL else 1
    if ns.name == "C1_bracket":
        rep = limits.c1_bracket_check(steps=ns.steps)
        for sample in rep.details["parts"][1]["details"]["samples"]:
            print(f"q={mpmath.nstr(sample['q'], 8):>10}  inner product {mpmath.nstr(sample['product'], 12)}"
                  f"  Wallis partials below: {sample['wallis_terms_below']}")
        print(f"status: {rep.status}")
        return 0 if rep.status != FAIL else 1
    s = harness.parse_number(ns.s) if ns.name == "sinpi" else None
    if isinstance(s, tuple):
        raise ValueError("sinpi limit study needs a real s")
    study = limits.run_limit_study(ns.name, ns.steps, s=s, jobs=ns.jobs)
    default = "0.02" if ns.name == "sinpi" else "0.01"
    rep = study.report(mpf(ns.threshold or default))
    for q, v, err in zip(study.q_sequence, study.values, study.errors):
        print(f"q={mpmath.nstr(q, 8):>10}  value {mpmath.nstr(v.value, 15):>22}  +/- {mpmath.nstr(v.bound, 2):>8}"
              f"  |value - target| {mpmath.nstr(err, 4)}")
    print(f"target {mpmath.nstr(study.target, 15)}  monotone={study.trend['monotone']}  status: {rep.status}")
    return 0 if rep.status != FAIL else 1


# -- verify ------------------------------------------------------------------------


def cmd_verify(ns) -> int:
    overrides = {"suite": ns.suite, "seed": ns.seed, "precision": ns.precision, "tol": ns.tol,
                 "jobs": ns.jobs, "format": ns.format, "details": ns.details}
    if ns.order is not None:
        overrides["qsum_order"] = ns.order
        overrides["qint_order"] = ns.order
    cfg = harness.load_config(ns.config, overrides)
    results = harness.run_suite(cfg)
    text = harness.format_json(results, cfg) if cfg.format == "json" else harness.format_csv(results, cfg)
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return harness.exit_code(results)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    handlers = {"verify": cmd_verify, "eval": cmd_eval, "limits": cmd_limits}
    try:
        return handlers[ns.command](ns)
    except harness.ConfigError as exc:
        print(f"qagm: config error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, TruncationError, ValueError, ZeroDivisionError) as exc:
        print(f"qagm: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
