"""``motconf`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .arith import prime_power
from .fforacle import BudgetExceeded, SpecError, closed_point_census, conf_census, load_spec, parse_spec
from .motcalc import (
    VanishingDenominator,
    class_from_spec,
    convergence_report,
    gen_conf_with_free_points,
    kapranov_zeta,
    stable_conf_ratio,
    stable_expectation,
    zeta_exponents,
)
from .polyparse import PolynomialSyntaxError
from .prelambda import KINDS, RationalMotive, truncated_linv_expansion
from .symfunc import DEFAULT_ORDER, CharPolynomial, GeneralizedPartition
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- output helpers ----------------------------------------------------------------------


def _series_json(series, names=("t",)) -> dict:
    terms = []
    for mono, c in series.terms():
        terms.append({"monomial": {n: e for n, e in zip(names, mono) if e},
                      "coefficient": c.to_json() if hasattr(c, "to_json") else str(c)})
    return {"order": series.order, "variables": list(names), "terms": terms}


def _mono_str(mono, names=("t",)) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e]
    return "*".join(parts) or "1"


def _num_den(x):
    if isinstance(x, RationalMotive):
        return x.num.render(), x.den.render()
    if isinstance(x, Fraction):
        return str(x.numerator), str(x.denominator)
    render = getattr(x, "render", None)
    return (render() if render else str(x)), "1"


def _emit(args, text: str, payload: dict, rows=None):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["monomial", "numerator", "denominator"])
        for row in rows or []:
            writer.writerow(row)
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _variety(args):
    if args.spec and args.builtin:
        raise UsageError("give either --builtin or --spec, not both")
    try:
        if args.spec:
            return load_spec(args.spec)
        return parse_spec(args.builtin or "point")
    except SpecError as exc:
        raise UsageError(str(exc)) from None


def _symbolic(args, spec):
    try:
        return class_from_spec(spec, args.measure)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _qs(text: str) -> list[int]:
    out = []
    for item in text.split(","):
        item = item.strip()
        try:
            q = int(item)
            prime_power(q)
        except ValueError:
            raise UsageError(f"-q entries must be prime powers, got {item!r}") from None
        out.append(q)
    if not out:
        raise UsageError("-q needs at least one prime power")
    return out


# -- subcommands ---------------------------------------------------------------------------


def cmd_zeta(args) -> int:
    Y = _symbolic(args, _variety(args))
    z = kapranov_zeta(Y, args.order)
    exps = zeta_exponents(Y, args.order)
    text = [f"Z(t) = {z.render(['t'])} + O(t^{args.order + 1})"]
    text += [f"M_{k} = {m.render()}" for k, m in enumerate(exps, 1)]
    payload = {"measure": args.measure, "variety": Y.name, "zeta": _series_json(z),
               "euler_exponents": {str(k): m.to_json() for k, m in enumerate(exps, 1)}}
    rows = [(_mono_str(m), *_num_den(c)) for m, c in z.terms()]
    rows += [(f"M_{k}", *_num_den(m)) for k, m in enumerate(exps, 1)]
    _emit(args, "\n".join(text), payload, rows)
    return EXIT_OK


def cmd_limit(args) -> int:
    if args.charpoly is not None and args.tau is not None:
        raise UsageError("give either --charpoly or --tau, not both")
    Y = _symbolic(args, _variety(args))
    try:
        if args.tau is not None:
            tau = GeneralizedPartition.parse(args.tau)
            value = stable_conf_ratio(Y, tau)
            what = {"tau": str(tau)}
        else:
            p = CharPolynomial.parse(args.charpoly if args.charpoly is not None else "1")
            value = stable_expectation(p, Y)
            what = {"charpoly": p.render()}
    except (PolynomialSyntaxError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    expansion = truncated_linv_expansion(value, args.order)
    text = f"E_inf = {value.render()}\n      = {expansion.render()}"
    payload = {"measure": args.measure, "variety": Y.name, **what, "value": value.to_json(),
               "linv_expansion": expansion.to_json()}
    rows = [("value", *_num_den(value))]
    rows += [(f"L^{-(expansion.valuation + i)}", str(c.numerator), str(c.denominator))
             for i, c in enumerate(expansion.coefficients)]
    _emit(args, text, payload, rows)
    return EXIT_OK


def cmd_report(args) -> int:
    Y = _symbolic(args, _variety(args))
    try:
        p = CharPolynomial.parse(args.charpoly or "X1")
    except PolynomialSyntaxError as exc:
        raise UsageError(str(exc)) from None
    rep = convergence_report(p, Y, args.order)
    lines = [f"E_inf[{p.render()}] = {rep.stable.render()}"]
    vals = dict(rep.valuations)
    for n, v in rep.values:
        lines.append(f"n={n}: E_n = {v.render()}   valuation(E_n - E_inf) = {vals[n]}")
    if rep.skipped:
        lines.append(f"skipped (vanishing [Conf^n]): {rep.skipped}")
    lines.append("converging" if rep.converging else "no convergence detected in this range")
    rows = [(f"n={n}", *_num_den(v)) for n, v in rep.values] + [("inf", *_num_den(rep.stable))]
    _emit(args, "\n".join(lines), {"measure": args.measure, **rep.to_json()}, rows)
    return EXIT_OK


def cmd_census(args) -> int:
    spec = _variety(args)
    tables = [closed_point_census(spec, q, args.order) for q in _qs(args.q or "2")]
    lines = []
    for t in tables:
        lines.append(f"q={t.q}: " + ", ".join(f"M_{k}={v}" for k, v in sorted(t.orbits.items())))
    rows = [(f"q={t.q},k={k}", str(v), "1") for t in tables for k, v in sorted(t.orbits.items())]
    _emit(args, "\n".join(lines), {"tables": [t.to_json() for t in tables]}, rows)
    return EXIT_OK


def cmd_conf(args) -> int:
    spec = _variety(args)
    try:
        tau = GeneralizedPartition.parse(args.tau or "")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    n = args.n if args.n is not None else tau.total
    if n < tau.total:
        raise UsageError(f"-n {n} is smaller than |tau| = {tau.total}")
    Y = _symbolic(args, spec)
    value = gen_conf_with_free_points(Y, tau, n)
    payload = {"measure": args.measure, "variety": Y.name, "tau": str(tau), "n": n, "class": value.to_json()}
    lines = [f"[Conf^({tau}, n={n}) {Y.name}] = {value.render()}"]
    rows = [("class", *_num_den(value))]
    if args.q:
        if args.measure != "count":
            raise UsageError("oracle counts need --measure count")
        counts = {}
        for q in _qs(args.q):
            sym, orc = value.evaluate(q), conf_census(spec, q, tau, n - tau.total)
            counts[str(q)] = {"symbolic": str(sym), "oracle": orc}
            lines.append(f"q={q}: symbolic {sym}, oracle {orc}" + ("" if sym == orc else "  MISMATCH"))
            rows.append((f"q={q}", str(orc), "1"))
        payload["counts"] = counts
        _emit(args, "\n".join(lines), payload, rows)
        return EXIT_OK if all(Fraction(c["symbolic"]) == c["oracle"] for c in counts.values()) else EXIT_FAIL
    _emit(args, "\n".join(lines), payload, rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    builtins = None
    if args.builtin:
        builtins = tuple(b.strip() for b in args.builtin.split(";"))
        for b in builtins:
            try:
                parse_spec(b)
            except SpecError as exc:
                raise UsageError(str(exc)) from None
    report = run_suite(args.suite, seed=args.seed, N=args.order, qs=_qs(args.q or "2,3"),
                       builtins=builtins, kind=args.measure, instances=args.instances)
    lines = []
    for c in report.checks:
        status = "PASS" if c.ok else "FAIL"
        lines.append(f"{status} {c.name} ({c.instances} instances, {c.seconds:.3f}s)")
    bad = report.first_failure
    if bad is not None:
        lines.append(f"first counterexample: {bad.counterexample}")
    lines.append("verdict: " + ("pass" if report.ok else "fail"))
    rows = [(c.name, "pass" if c.ok else "fail", str(c.instances)) for c in report.checks]
    _emit(args, "\n".join(lines), report.to_json(timing=not args.no_timing), rows)
    if bad is not None and args.format != "text":
        sys.stderr.write(f"first counterexample: {bad.counterexample}\n")
    return EXIT_OK if report.ok else EXIT_FAIL


# -- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--measure", choices=sorted(KINDS), default="count",
                        help="motivic measure (default: count)")
    common.add_argument("-N", "--order", type=int, default=DEFAULT_ORDER, help="truncation order (default: 8)")
    common.add_argument("--builtin", help="builtin variety, e.g. affine_space:1 or 'projective_space:1 x affine_space:1'")
    common.add_argument("--spec", help="variety spec JSON file")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    parser = argparse.ArgumentParser(prog="motconf", description="Motivic configuration-space statistics.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta", parents=[common], help="Kapranov zeta function and its Euler exponents")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("limit", parents=[common], help="stable expectation or stable configuration ratio")
    p.add_argument("--charpoly", help="character polynomial in X1, X2, ... (binom(Xi, n) allowed)")
    p.add_argument("--tau", help="generalized partition as a label string, e.g. a2b")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("report", parents=[common], help="finite expectations E_n for n <= N and their convergence")
    p.add_argument("--charpoly", help="character polynomial (default X1)")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("census", parents=[common], help="closed points of degree <= N over F_q")
    p.add_argument("-q", help="comma-separated prime powers (default 2)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("conf", parents=[common], help="generalized configuration class, optionally counted over F_q")
    p.add_argument("--tau", help="labels, e.g. a2b (default: none)")
    p.add_argument("-n", type=int, help="total number of points (default |tau|)")
    p.add_argument("-q", help="comma-separated prime powers for oracle counts")
    p.set_defaults(func=cmd_conf)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-q", help="comma-separated prime powers (default 2,3)")
    p.add_argument("--instances", type=int, default=20, help="random instances per axiom check")
    p.add_argument("--no-timing", action="store_true", help="omit timings (byte-stable JSON)")
    p.set_defaults(func=cmd_verify, order=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.order is None:
            args.order = 6 if args.command == "verify" else DEFAULT_ORDER
        if args.order < 1:
            parser.error("-N must be at least 1")
    except SystemExit as exc:  # argparse reports usage errors (and --help) this way
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"motconf: error: {exc}\n")
        return EXIT_USAGE
    except (BudgetExceeded, VanishingDenominator) as exc:
        sys.stderr.write(f"motconf: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
