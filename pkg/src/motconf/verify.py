"""Seeded verification suites: algebraic axioms, oracle bridges, cycle-type sums.

Each check runs a number of instances and records the first counterexample.
Suites return a :class:`SuiteReport` whose JSON form is deterministic apart
from the timing fields.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import partitions
from .fforacle import closed_point_census, conf_census, parse_spec, verify_chen
from .motcalc import (
    VarietyClass,
    charpoly_genfunc,
    class_from_spec,
    conf_class,
    finite_numerator,
    gen_conf_class,
    gen_conf_with_free_points,
    pow_structure,
    stable_expectation,
)
from .prelambda import MotiveScalar, adams, closed_point_class, pair, sigma_series
from .series import QQ, TruncatedSeries, naive_pow
from .symfunc import (
    CharPolynomial,
    GeneralizedPartition,
    SymFunc,
    SymRing,
    binomial_charpoly,
    complete_h,
    conf_symfunc,
    mobius_power_sum,
    power_sum,
)

__all__ = [
    "CheckResult",
    "SuiteReport",
    "SUITES",
    "DEFAULT_BUILTINS",
    "random_scalar",
    "random_int_series",
    "random_symfunc",
    "random_charpoly",
    "run_suite",
]

SUITES = ("axioms", "oracle", "chen", "appendix", "all")
DEFAULT_BUILTINS = ("point", "affine_space:1", "affine_space:2", "projective_space:1", "torus:1",
                    "projective_space:1 x affine_space:1")


@dataclass
class CheckResult:
    name: str
    ok: bool
    instances: int
    seconds: float
    counterexample: str | None = None

    def to_json(self, timing: bool = True) -> dict:
        out = {"name": self.name, "ok": self.ok, "instances": self.instances,
               "counterexample": self.counterexample}
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((c for c in self.checks if not c.ok), None)

    def to_json(self, timing: bool = True) -> dict:
        return {"suite": self.suite, "seed": self.seed, "ok": self.ok,
                "checks": [c.to_json(timing) for c in self.checks]}


# -- random inputs -------------------------------------------------------------------


def random_scalar(rng: random.Random, kind: str = "count", terms: int = 3, max_exp: int = 2,
                  coef: int = 2, integral: bool = True) -> MotiveScalar:
    n = 1 if kind == "count" else 2
    out = {}
    for _ in range(rng.randint(1, terms)):
        if kind == "count":
            exps = (rng.randint(0, max_exp),)
        else:
            a = rng.randint(0, max_exp)
            exps = (a, a) if rng.random() < 0.7 else (a, rng.randint(0, max_exp))
        c = rng.randint(-coef, coef)
        if not integral and rng.random() < 0.3:
            c = Fraction(c, rng.randint(1, 3))
        out[exps] = out.get(exps, 0) + c
    s = MotiveScalar(kind, out)
    return s if s else MotiveScalar.const(kind, 1) + MotiveScalar.monomial(kind, (1,) * n)


def random_int_series(rng: random.Random, N: int, nvars: int | None = None, terms: int = 4,
                      coef: int = 2) -> TruncatedSeries:
    nvars = nvars or rng.randint(1, 3)
    out = {(0,) * nvars: 1}
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(1, min(N, 3))
        mono = [0] * nvars
        for _ in range(d):
            mono[rng.randrange(nvars)] += 1
        out[tuple(mono)] = rng.randint(-coef, coef)
    return TruncatedSeries(QQ, out, N, nvars=nvars)


def random_symfunc(rng: random.Random, N: int, terms: int = 3) -> SymFunc:
    out = SymFunc.constant(rng.randint(-2, 2), N)
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(1, N)
        part = rng.choice(partitions(d))
        out = out + SymFunc({part: Fraction(rng.randint(-3, 3), rng.randint(1, 3))}, N)
    return out


def random_charpoly(rng: random.Random, max_degree: int = 4, terms: int = 3) -> CharPolynomial:
    """Random polynomial in ``X_1, X_2, ...`` of weighted degree at most ``max_degree``."""
    out = CharPolynomial.constant(rng.randint(-2, 2))
    for _ in range(rng.randint(1, terms)):
        budget = rng.randint(1, max_degree)
        term = CharPolynomial.constant(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
        while budget > 0:
            i = rng.randint(1, budget)
            term = term * CharPolynomial.X(i)
            budget -= i
        out = out + term
    return out


# -- check runner ----------------------------------------------------------------------


def _run(name: str, count: int, body) -> CheckResult:
    start = time.perf_counter()
    for i in range(count):
        bad = body(i)
        if bad:
            return CheckResult(name, False, i + 1, time.perf_counter() - start, bad)
    return CheckResult(name, True, count, time.perf_counter() - start)


def _cmp(label, a, b):
    return None if a == b else f"{label}: {a!r} != {b!r}"


def axioms_suite(seed: int, N: int = 8, instances: int = 20, kind: str = "count") -> list:
    rng = random.Random(seed)
    one = MotiveScalar.const(kind, 1)
    checks = []

    def sigma_additive(_):
        a, b = random_scalar(rng, kind), random_scalar(rng, kind)
        return _cmp(f"sigma({a.render()} + {b.render()})", sigma_series(a + b, N),
                    sigma_series(a, N) * sigma_series(b, N))

    def sigma_unit(_):
        geom = TruncatedSeries(QQ, {(0,): 1, (1,): -1}, N).inverse()
        return _cmp("sigma_t(1)", sigma_series(one, N), geom.change_ring(one.ring))

    def sigma_one(_):
        r = random_scalar(rng, kind)
        return _cmp(f"sigma_1({r.render()})", sigma_series(r, 1).coefficient((1,)), r)

    def newton(_):
        # t d/dt log sigma_t(r) = sum_k adams(k, r) t^k
        r = random_scalar(rng, kind)
        lg = sigma_series(r, N).log()
        lhs = {m: c * m[0] for m, c in lg.terms()}
        rhs = {(k,): adams(k, r) for k in range(1, N + 1) if adams(k, r)}
        return _cmp(f"Newton identity for {r.render()}", lhs, rhs)

    def prelambda_euler(_):
        r = random_scalar(rng, kind)
        prod = TruncatedSeries.one(r.ring, N, nvars=1)
        for k in range(1, N + 1):
            base = TruncatedSeries(QQ, {(0,): 1, (k,): -1}, N).inverse()
            prod = prod * naive_pow(base, pair(mobius_power_sum(k, N), r))
        return _cmp(f"Euler product for sigma_t({r.render()})", sigma_series(r, N), prod)

    def symfunc_identities(i):
        # exp(sum p_k t^k / k) = sum h_k t^k = prod (1 - t^k)^{-p'_k}, paired with a random r
        r = random_scalar(rng, kind)
        ring = SymRing(N)
        gen = TruncatedSeries(ring, {(k,): complete_h(k, N) for k in range(N + 1)}, N)
        logs = TruncatedSeries(ring, {(k,): power_sum(k, N) / k for k in range(1, N + 1)}, N)
        if i == 0:
            bad = _cmp("complete/power-sum", logs.exp(), gen)
            if bad:
                return bad
            prod = TruncatedSeries.one(ring, N, nvars=1)
            for k in range(1, N + 1):
                base = TruncatedSeries(QQ, {(0,): 1, (k,): -1}, N).inverse()
                prod = prod * naive_pow(base, mobius_power_sum(k, N))
            bad = _cmp("complete/Euler product", prod, gen)
            if bad:
                return bad
        lhs = {m: pair(c, r) for m, c in gen.terms()}
        rhs = {m: c for m, c in sigma_series(r, N).terms()}
        return _cmp(f"(h_k, {r.render()}) = sigma_k", {m: c for m, c in lhs.items() if c}, rhs)

    def pair_hom(_):
        f, g, r = random_symfunc(rng, N // 2), random_symfunc(rng, N // 2), random_scalar(rng, kind)
        f, g = f.with_cap(N), g.with_cap(N)
        bad = _cmp("pair(fg)", pair(f * g, r), pair(f, r) * pair(g, r))
        return bad or _cmp("pair(f+g)", pair(f + g, r), pair(f, r) + pair(g, r))

    def pprime_additive(_):
        a, b, k = random_scalar(rng, kind), random_scalar(rng, kind), rng.randint(1, N)
        return _cmp(f"M_{k} additivity", closed_point_class(k, a + b),
                    closed_point_class(k, a) + closed_point_class(k, b))

    def pow_axioms(_):
        order = rng.randint(2, 5)
        f, g = random_int_series(rng, order), None
        g = random_int_series(rng, order, nvars=f.nvars)
        r, r2 = random_scalar(rng, kind), random_scalar(rng, kind)
        ring = r.ring
        zero = MotiveScalar.const(kind, 0)
        checks_ = [
            ("f^Pow0 = 1", pow_structure(f, zero), f.one_like().change_ring(ring)),
            ("f^Pow1 = f", pow_structure(f, one), f.change_ring(ring)),
            ("(fg)^Pow r", pow_structure(f * g, r), pow_structure(f, r) * pow_structure(g, r)),
            ("f^Pow(r+r')", pow_structure(f, r + r2), pow_structure(f, r) * pow_structure(f, r2)),
            ("f^Pow(rr')", pow_structure(f, r * r2, "euler"),
             pow_structure(pow_structure(f, r2, "euler"), r, "euler")),
        ]
        for label, a, b in checks_:
            if a != b:
                return f"{label} fails for f={f.render()}, r={r.render()}, r'={r2.render()}"
        return None

    def pow_modes(_):
        f, r = random_int_series(rng, rng.randint(2, 6)), random_scalar(rng, kind)
        return _cmp(f"euler vs lemma for f={f.render()}, r={r.render()}",
                    pow_structure(f, r, "euler"), pow_structure(f, r, "lemma"))

    for name, body in [("sigma_additive", sigma_additive), ("sigma_unit", sigma_unit),
                       ("sigma_one_identity", sigma_one), ("newton_adams", newton),
                       ("prelambda_euler_product", prelambda_euler),
                       ("symfunc_generating_identities", symfunc_identities),
                       ("pair_ring_homomorphism", pair_hom), ("closed_point_class_additive", pprime_additive),
                       ("power_structure_axioms", pow_axioms), ("power_structure_modes", pow_modes)]:
        checks.append(_run(name, 1 if name == "sigma_unit" else instances, body))
    return checks


def _classes(builtins, kind="count"):
    return [(b, class_from_spec(parse_spec(b), kind)) for b in builtins]


def oracle_suite(qs=(2, 3), N: int = 6, builtins=DEFAULT_BUILTINS, max_tau: int = 3) -> list:
    N = min(N, 8)
    checks = []

    def conf2(_):
        Y = class_from_spec(parse_spec("affine_space:1"))
        sym = conf_class(Y, 2).evaluate(2)
        orc = conf_census("affine_space:1", 2, "", 2)
        return None if sym == orc == 2 else f"Conf^2 A1 over F_2: symbolic {sym}, oracle {orc}"

    checks.append(_run("conf2_A1_q2", 1, conf2))
    for name, Y in _classes(builtins):
        for q in qs:
            def body(_, name=name, Y=Y, q=q):
                table = closed_point_census(name, q, N)
                for d in range(min(max_tau, N) + 1):
                    for part in partitions(d):
                        tau = GeneralizedPartition(part)
                        for n in range(d, N + 1):
                            sym = gen_conf_with_free_points(Y, tau, n).evaluate(q)
                            orc = conf_census(name, q, tau, n - d, table=table)
                            if sym != orc:
                                return f"{name}, q={q}, tau={tau}, n={n}: symbolic {sym}, oracle {orc}"
                return None

            checks.append(_run(f"bridge[{name}, q={q}]", 1, body))
    return checks


def chen_suite(qs=(2, 3), N: int = 5, builtins=("affine_space:1", "projective_space:1"),
               lbars=((1,), (2,), (0, 1), (1, 1))) -> list:
    checks = []
    for name in builtins:
        for q in qs:
            for lbar in lbars:
                def body(_, name=name, q=q, lbar=lbar):
                    rep = verify_chen(name, q, lbar, N)
                    if rep.ok:
                        return None
                    n = rep.first_failure
                    row = rep.rows[n]
                    return f"{name}, q={q}, l={lbar}, n={n}: lhs {row[1]}, rhs {row[2]}, symbolic {row[3]}"

                checks.append(_run(f"chen[{name}, q={q}, l={list(lbar)}]", 1, body))
    return checks


def appendix_suite(N: int = 6, builtins=DEFAULT_BUILTINS, kind: str = "count",
                   lbars=((), (1,), (2,), (0, 1), (1, 1), (3,))) -> list:
    checks = []
    classes = _classes(builtins, kind)

    def genfunc(_):
        for name, Y in classes:
            for lbar in lbars:
                if sum((i + 1) * l for i, l in enumerate(lbar)) > N:
                    continue
                series = charpoly_genfunc(lbar, Y, N)
                p = binomial_charpoly(lbar)
                for n in range(N + 1):
                    a, b = series.coefficient((n,)), finite_numerator(p, n, Y)
                    if a != b:
                        return f"{name}, l={lbar}, n={n}: generating function {a.render()} != {b.render()}"
        return None

    def conf_lemma(_):
        for name, Y in classes:
            for d in range(min(N, 4) + 1):
                for part in partitions(d):
                    a = gen_conf_class(Y, part)
                    b = pair(conf_symfunc(part), Y.cls)
                    if a != b:
                        return f"{name}, tau={GeneralizedPartition(part)}: {a.render()} != {b.render()}"
        return None

    def conf_power(_):
        for name, Y in classes:
            f = TruncatedSeries(QQ, {(0,): 1, (1,): 1}, N)
            ps = pow_structure(f, Y)
            for n in range(N + 1):
                if ps.coefficient((n,)) != conf_class(Y, n):
                    return f"{name}, n={n}: (1+s)^Pow differs from Z(s)/Z(s^2)"
        return None

    def stable_paths(_):
        rng = random.Random(N)
        for name, Y in classes:
            for _ in range(3):
                p = random_charpoly(rng, 4)
                a, b = stable_expectation(p, Y, "binomial"), stable_expectation(p, Y, "conf")
                if a != b:
                    return f"{name}, p={p.render()}: {a.render()} != {b.render()}"
        return None

    for name, body in [("charpoly_genfunc", genfunc), ("conf_class_lemma", conf_lemma),
                       ("conf_power_structure", conf_power), ("stable_dual_path", stable_paths)]:
        checks.append(_run(name, 1, body))
    return checks


def run_suite(suite: str, seed: int = 0, N: int = 6, qs=(2, 3), builtins=None, kind: str = "count",
              instances: int = 20) -> SuiteReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    report = SuiteReport(suite, seed)
    if suite in ("axioms", "all"):
        report.checks += axioms_suite(seed, N, instances, kind)
    if suite in ("oracle", "all"):
        report.checks += oracle_suite(qs, N, builtins or DEFAULT_BUILTINS)
    if suite in ("chen", "all"):
        report.checks += chen_suite(qs, min(N, 6), builtins or ("affine_space:1", "projective_space:1"))
    if suite in ("appendix", "all"):
        report.checks += appendix_suite(N, builtins or DEFAULT_BUILTINS, kind)
    return report
