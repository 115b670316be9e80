"""Zeta functions, power structures, configuration classes and their statistics.

Everything is computed under a motivic measure (see :mod:`motconf.prelambda`).
Finite-``n`` expectations of character polynomials go through generalized
configuration classes; stable limits come from closed forms in which each
``X_k`` behaves like a sum of ``M_k([Y])`` independent Bernoulli variables of
parameter ``1/(1 + L^{k d})``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian
from math import factorial, inf

from .arith import partitions, stirling2
from .prelambda import (
    MotiveRing,
    MotiveScalar,
    RationalMotive,
    closed_point_class,
    lefschetz,
    linv_valuation,
    pair,
    sigma_series,
)
from .series import QQ, TruncatedSeries, euler_factorize, generalized_binomial
from .symfunc import (
    DEFAULT_ORDER,
    CharPolynomial,
    GeneralizedPartition,
    charpoly_to_symfunc,
    conf_symfunc,
    expand_in_conf_basis,
)

__all__ = [
    "VarietyClass",
    "ExpectationReport",
    "VanishingDenominator",
    "builtin_class",
    "parse_builtin",
    "class_from_spec",
    "kapranov_zeta",
    "zeta_exponents",
    "pow_structure",
    "sigma_factorize",
    "conf_series",
    "conf_class",
    "gen_conf_class",
    "gen_conf_with_free_points",
    "finite_numerator",
    "finite_expectation",
    "stable_expectation",
    "stable_conf_ratio",
    "convergence_report",
    "charpoly_genfunc",
]


class VanishingDenominator(ZeroDivisionError):
    """``[Conf^n Y]`` is zero under the chosen measure, so ``E_n`` is undefined."""


# -- variety classes ---------------------------------------------------------------


@dataclass(frozen=True)
class VarietyClass:
    cls: MotiveScalar
    dim: int
    name: str = "Y"
    connected_smooth: bool = True

    @property
    def kind(self) -> str:
        return self.cls.kind

    def __mul__(self, other: "VarietyClass") -> "VarietyClass":
        return VarietyClass(self.cls * other.cls, self.dim + other.dim, f"{self.name} x {other.name}",
                            self.connected_smooth and other.connected_smooth)

    def to_kind(self, kind: str) -> "VarietyClass":
        if kind == self.kind:
            return self
        cls = self.cls.to_hodge() if kind == "hodge" else self.cls.to_count()
        return VarietyClass(cls, self.dim, self.name, self.connected_smooth)


BUILTINS = ("point", "affine_space", "projective_space", "torus")
_ALIASES = {"pt": "point", "A": "affine_space", "P": "projective_space", "G_m": "torus", "Gm": "torus"}


def builtin_class(name: str, dim: int = 0, kind: str = "count") -> VarietyClass:
    L = lefschetz(kind)
    one = MotiveScalar.const(kind, 1)
    name = _ALIASES.get(name, name)
    if name == "point":
        return VarietyClass(one, 0, "pt")
    if dim < 0:
        raise ValueError("dimension must be non-negative")
    if name == "affine_space":
        return VarietyClass(L ** dim, dim, f"A{dim}")
    if name == "projective_space":
        cls = MotiveScalar.const(kind, 0)
        for i in range(dim + 1):
            cls = cls + L ** i
        return VarietyClass(cls, dim, f"P{dim}")
    if name == "torus":
        return VarietyClass((L - 1) ** dim, dim, f"Gm{dim}" if dim != 1 else "Gm")
    raise ValueError(f"unknown builtin {name!r}; expected one of {', '.join(BUILTINS)}")


def parse_builtin(text: str, kind: str = "count") -> VarietyClass:
    """``"affine_space:2"``, ``"point"``, or products joined by ``x``/``*``."""
    factors = [s.strip() for s in text.replace("*", " x ").split(" x ")]
    out = None
    for f in factors:
        name, _, d = f.partition(":")
        try:
            dim = int(d) if d else (0 if name.strip() in ("point", "pt") else 1)
        except ValueError:
            raise ValueError(f"bad dimension in builtin {f!r}") from None
        y = builtin_class(name.strip(), dim, kind)
        out = y if out is None else out * y
    return out


def class_from_spec(spec, kind: str = "count") -> VarietyClass:
    """Symbolic class of a variety spec built from builtins by union, product, complement."""
    from .fforacle.varieties import AffineSystem, Builtin, Complement, DisjointUnion, Product

    if isinstance(spec, Builtin):
        return builtin_class(spec.name, spec.dim, kind)
    if isinstance(spec, Product):
        out = None
        for part in spec.parts:
            y = class_from_spec(part, kind)
            out = y if out is None else out * y
        return out
    if isinstance(spec, DisjointUnion):
        parts = [class_from_spec(p, kind) for p in spec.parts]
        cls = MotiveScalar.const(kind, 0)
        for y in parts:
            cls = cls + y.cls
        return VarietyClass(cls, max(y.dim for y in parts), " + ".join(y.name for y in parts), False)
    if isinstance(spec, Complement):
        base, removed = class_from_spec(spec.base, kind), class_from_spec(spec.removed, kind)
        return VarietyClass(base.cls - removed.cls, base.dim, f"{base.name} - {removed.name}",
                            base.connected_smooth)
    if isinstance(spec, AffineSystem):
        raise ValueError("affine systems have no symbolic class; use the finite-field oracle")
    raise TypeError(f"not a variety spec: {spec!r}")


def _cls(Y) -> MotiveScalar:
    if isinstance(Y, VarietyClass):
        return Y.cls
    if isinstance(Y, MotiveScalar):
        return Y
    if isinstance(Y, (int, Fraction)) and not isinstance(Y, bool):
        return MotiveScalar.const("count", Y)
    raise TypeError(f"expected a VarietyClass or MotiveScalar, got {Y!r}")


# -- zeta functions and power structures ----------------------------------------------


def kapranov_zeta(Y, N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``Z_Y(t) = sum_k [Sym^k Y] t^k`` to order ``N``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return sigma_series(_cls(Y), N)


def zeta_exponents(Y, N: int = DEFAULT_ORDER) -> list[MotiveScalar]:
    """``[M_1, ..., M_N]`` with ``Z_Y(t) = prod_k (1 - t^k)^(-M_k)``."""
    r = _cls(Y)
    return [closed_point_class(k, r) for k in range(1, N + 1)]


def _check_integral(f: TruncatedSeries):
    if f.ring != QQ:
        raise TypeError("power structures take series with rational integer coefficients")
    if f.constant_term != 1:
        raise ValueError("power structures need constant term 1")
    for _, c in f.terms():
        if Fraction(c).denominator != 1:
            raise ValueError(f"non-integer coefficient {c}; power structures need f in 1 + (t)Z[[t]]")


def sigma_factorize(f: TruncatedSeries) -> list:
    """``[(I, b_I)]`` with ``f = prod_I sigma_{t^I}(b_I)`` for ``f`` over a measure ring.

    Peels factors degree by degree, dividing by ``sigma_{t^I}(b_I) = sigma_{t^I}(-b_I)^{-1}``.
    Over ``Z`` this is the usual Euler factorization.
    """
    if f.constant_term != f.ring.one:
        raise ValueError("sigma factorization needs constant term 1")
    template = f
    g = f
    out = []
    for d in range(1, f.order + 1):
        level = sorted(((m, c) for m, c in g.terms() if f.degree_of(m) == d), key=lambda mc: f._sort_key(mc[0]))
        for mono, b in level:
            out.append((mono, b))
            g = g * sigma_series(-b, f.order // d).compose_monomial(template, mono)
    return out


def pow_structure(f: TruncatedSeries, r, mode: str = "lemma") -> TruncatedSeries:
    """``f^{Pow r}`` for ``f`` in ``1 + (t) Z[[t]]``.

    ``mode="euler"`` factors ``f = prod (1 - t^I)^(-a_I)`` and multiplies the
    ``sigma_{t^I}(a_I r)``; ``mode="lemma"`` uses
    ``prod_k f(t^k)^{M_k(r)} = exp(sum_k M_k(r) log f(t^k))``.  A series
    whose coefficients already lie in the measure ring is accepted in euler
    mode, factored as ``prod sigma_{t^I}(b_I)``.
    """
    r = _cls(r)
    ring = MotiveRing(r.kind)
    if f.ring == ring:
        if mode != "euler":
            raise ValueError("series over a measure ring only support mode='euler'")
        out = f.one_like()
        for mono, b in sigma_factorize(f):
            out = out * sigma_series(b * r, f.order // f.degree_of(mono)).compose_monomial(f, mono)
        return out
    _check_integral(f)
    if mode == "euler":
        template = f.change_ring(ring)
        out = template.one_like()
        for mono, a in euler_factorize(f):
            d = f.degree_of(mono)
            sig = sigma_series(r * a, f.order // d, strict=True)
            out = out * sig.compose_monomial(template, mono)
        return out
    if mode == "lemma":
        lg = f.log()
        acc = TruncatedSeries._raw(ring, {}, f.order, f.weights, f.caps)
        for k in range(1, f.order + 1):
            lk = lg.substitute_powers(k)
            if not lk:
                continue
            acc = acc + lk.change_ring(ring).scale(closed_point_class(k, r))
        return acc.exp()
    raise ValueError(f"unknown mode {mode!r}; expected 'euler' or 'lemma'")


# -- configuration classes -------------------------------------------------------------


@lru_cache(maxsize=256)
def _conf_series_cached(r: MotiveScalar, N: int) -> TruncatedSeries:
    z = sigma_series(r, N)
    return z * z.substitute_powers(2).inverse()


def conf_series(Y, N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``Z_Y(s) / Z_Y(s^2) = sum_n [Conf^n Y] s^n``."""
    return _conf_series_cached(_cls(Y), N)


def conf_class(Y, n: int) -> MotiveScalar:
    """``[Conf^n Y]`` (unordered configurations of ``n`` distinct points)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return conf_series(Y, n).coefficient((n,))


def _label_series(m: int, extra_free: bool, order: int, caps: tuple) -> TruncatedSeries:
    """``1 + t_1 + ... + t_m`` or ``1 + s + t_1 s + ... + t_m s`` over QQ."""
    nv = m + (1 if extra_free else 0)
    terms = {(0,) * nv: 1}
    for j in range(m):
        mono = [0] * nv
        mono[j] = 1
        if extra_free:
            mono[m] = 1
        terms[tuple(mono)] = 1
    if extra_free:
        terms[(0,) * m + (1,)] = 1
    return TruncatedSeries(QQ, terms, order, caps=caps, nvars=nv)


@lru_cache(maxsize=512)
def _gen_conf_power(r: MotiveScalar, mults: tuple, mode: str) -> MotiveScalar:
    f = _label_series(len(mults), False, sum(mults), mults)
    return pow_structure(f, r, mode).coefficient(mults)


def gen_conf_class(Y, tau, method: str = "lemma") -> MotiveScalar:
    """``[Conf^tau Y]`` as the coefficient of ``t^tau`` in ``(1 + t_1 + ... + t_m)^{Pow [Y]}``.

    ``method`` is a power-structure mode (``"lemma"``/``"euler"``) or ``"pair"``,
    which evaluates ``(c_tau, [Y])`` instead.
    """
    tau = GeneralizedPartition.coerce(tau)
    r = _cls(Y)
    if not tau.multiplicities:
        return MotiveScalar.const(r.kind, 1)
    if method == "pair":
        return pair(conf_symfunc(tau), r)
    return _gen_conf_power(r, tau.multiplicities, method)


@lru_cache(maxsize=1024)
def _free_point_series(r: MotiveScalar, mults: tuple, n_max: int) -> TruncatedSeries:
    m = len(mults)
    f = _label_series(m, True, sum(mults) + n_max, mults + (n_max,))
    return pow_structure(f, r, "lemma")


def gen_conf_with_free_points(Y, tau, n: int) -> MotiveScalar:
    """``[Conf^{tau * (free)^{n - |tau|}} Y]``: ``n`` distinct points, labelled by ``tau``.

    Coefficient of ``t^tau s^n`` in ``(1 + s + t_1 s + ... + t_m s)^{Pow [Y]}``.
    """
    tau = GeneralizedPartition.coerce(tau)
    if n < tau.total:
        raise ValueError(f"n = {n} is smaller than |tau| = {tau.total}")
    r = _cls(Y)
    if not tau.multiplicities:
        return conf_class(r, n)
    series = _free_point_series(r, tau.multiplicities, n)
    return series.coefficient(tau.multiplicities + (n,))


# -- expectations ------------------------------------------------------------------------


def _as_charpoly(p) -> CharPolynomial:
    if isinstance(p, CharPolynomial):
        return p
    if isinstance(p, str):
        return CharPolynomial.parse(p)
    if isinstance(p, (int, Fraction)):
        return CharPolynomial.constant(p)
    raise TypeError(f"expected a character polynomial, got {p!r}")


def _conf_coordinates(p: CharPolynomial) -> dict:
    return expand_in_conf_basis(charpoly_to_symfunc(p, max(p.weighted_degree(), 1)))


def finite_numerator(p, n: int, Y) -> MotiveScalar:
    """``sum_{c in Conf^n Y} p(sigma_c)`` as a class: ``E_n[p] * [Conf^n Y]``."""
    p = _as_charpoly(p)
    r = _cls(Y)
    total = MotiveScalar.const(r.kind, 0)
    for tau, c in _conf_coordinates(p).items():
        if tau.total <= n:
            total = total + gen_conf_with_free_points(r, tau, n) * c
    return total


def finite_expectation(p, n: int, Y) -> RationalMotive:
    """``E_n[p]``: average of ``p`` over Frobenius cycle types on ``Conf^n Y``."""
    r = _cls(Y)
    den = conf_class(r, n)
    if not den:
        raise VanishingDenominator(f"[Conf^{n} Y] vanishes for [Y] = {r.render()}")
    return RationalMotive(finite_numerator(p, n, r), den)


def _bernoulli_weight(kind: str, k: int, d: int) -> RationalMotive:
    return RationalMotive(1, MotiveScalar.const(kind, 1) + lefschetz(kind) ** (k * d), kind=kind)


def _binomial_moment(kind: str, Mk: MotiveScalar, l: int, k: int, d: int) -> RationalMotive:
    num = generalized_binomial(Mk, l, MotiveScalar.const(kind, 1))
    return RationalMotive(num, 1) * _bernoulli_weight(kind, k, d) ** l


def _stable_binomial(p: CharPolynomial, Y: VarietyClass) -> RationalMotive:
    # X^e = sum_j S(e, j) j! binom(X, j); products over different k stay products.
    kind, d = Y.kind, Y.dim
    total = RationalMotive(0, 1, kind=kind)
    moments: dict = {}
    for exps, c in p.terms():
        per_k = []
        for i, e in enumerate(exps):
            per_k.append([(j, stirling2(e, j) * factorial(j)) for j in range(e + 1) if stirling2(e, j)])
        for choice in _cartesian(*per_k):
            term = RationalMotive(MotiveScalar.const(kind, c), 1)
            for i, (j, w) in enumerate(choice):
                if j:
                    key = (i + 1, j)
                    if key not in moments:
                        moments[key] = _binomial_moment(kind, closed_point_class(i + 1, Y.cls), j, i + 1, d)
                    term = term * moments[key]
                term = term * w
            total = total + term
    return total


def stable_conf_ratio(Y: VarietyClass, tau) -> RationalMotive:
    """``lim_n [Conf^{tau * (free)^{n-|tau|}} Y] / [Conf^n Y]``.

    The coefficient of ``t^tau`` in ``prod_k (1 + (t_1^k + ... + t_m^k)/(1 + L^{kd}))^{M_k}``,
    expanded by the binomial theorem: each label class of size ``l_j`` is split
    into parts ``rho_j`` (the degrees of its closed points).
    """
    tau = GeneralizedPartition.coerce(tau)
    kind, d = Y.kind, Y.dim
    total = RationalMotive(0, 1, kind=kind)
    if not tau.multiplicities:
        return RationalMotive(1, 1, kind=kind)
    for choice in _cartesian(*(partitions(l) for l in tau.multiplicities)):
        n_k: dict[int, int] = {}
        per_label = []
        for rho in choice:
            counts: dict[int, int] = {}
            for k in rho:
                counts[k] = counts.get(k, 0) + 1
                n_k[k] = n_k.get(k, 0) + 1
            per_label.append(counts)
        term = RationalMotive(1, 1, kind=kind)
        for k, n in n_k.items():
            denom = 1
            for counts in per_label:
                denom *= factorial(counts.get(k, 0))
            term = term * _binomial_moment(kind, closed_point_class(k, Y.cls), n, k, d) * Fraction(factorial(n), denom)
        total = total + term
    return total


def stable_expectation(p, Y: VarietyClass, method: str = "binomial") -> RationalMotive:
    """``E_infinity[p] = lim_n E_n[p]``.

    ``method="binomial"`` rewrites ``p`` in products of ``binom(X_k, l_k)`` and
    uses the independent-binomial law; ``method="conf"`` expands ``p`` in the
    ``c_tau`` basis and sums :func:`stable_conf_ratio`.
    """
    p = _as_charpoly(p)
    if not isinstance(Y, VarietyClass):
        raise TypeError("stable limits need the dimension: pass a VarietyClass")
    if method == "binomial":
        return _stable_binomial(p, Y)
    if method == "conf":
        total = RationalMotive(0, 1, kind=Y.kind)
        for tau, c in _conf_coordinates(p).items():
            total = total + stable_conf_ratio(Y, tau) * c
        return total
    raise ValueError(f"unknown method {method!r}; expected 'binomial' or 'conf'")


@dataclass
class ExpectationReport:
    charpoly: CharPolynomial
    variety: str
    values: list = field(default_factory=list)  # (n, RationalMotive)
    stable: RationalMotive | None = None
    valuations: list = field(default_factory=list)  # (n, valuation of E_n - E_inf)
    skipped: list = field(default_factory=list)  # n with vanishing [Conf^n Y]

    def first_exceeding(self, bound):
        """Smallest recorded ``n`` whose gap valuation exceeds ``bound`` (``None`` if none)."""
        for n, v in self.valuations:
            if v > bound:
                return n
        return None

    def monotone_from(self, n0: int) -> bool:
        vals = [v for n, v in self.valuations if n >= n0]
        return all(a <= b for a, b in zip(vals, vals[1:]))

    @property
    def converging(self) -> bool:
        """Gap valuations are non-decreasing over the second half of the range and grow overall.

        Small ``n`` may be irregular, so only the tail is required to be monotone.
        """
        vals = [v for _, v in self.valuations]
        if not vals:
            return False
        if all(v == inf for v in vals):
            return True
        return self.monotone_from(self.valuations[len(vals) // 2][0]) and vals[-1] > vals[0]

    def to_json(self) -> dict:
        return {
            "charpoly": self.charpoly.render(),
            "variety": self.variety,
            "stable": self.stable.to_json() if self.stable is not None else None,
            "values": [{"n": n, "value": v.to_json()} for n, v in self.values],
            "valuations": [{"n": n, "valuation": "inf" if v == inf else str(v)} for n, v in self.valuations],
            "skipped": list(self.skipped),
            "converging": self.converging,
        }


def convergence_report(p, Y: VarietyClass, n_max: int) -> ExpectationReport:
    p = _as_charpoly(p)
    report = ExpectationReport(p, Y.name)
    report.stable = stable_expectation(p, Y)
    for n in range(1, n_max + 1):
        try:
            value = finite_expectation(p, n, Y)
        except VanishingDenominator:
            report.skipped.append(n)
            continue
        report.values.append((n, value))
        report.valuations.append((n, linv_valuation(value - report.stable)))
    return report


# -- appendix generating function -------------------------------------------------------


def charpoly_genfunc(lbar, Y, N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``(Z(t)/Z(t^2)) prod_k binom(M_k, l_k) (t^k / (1 + t^k))^{l_k}`` to order ``N``.

    The coefficient of ``t^n`` is ``sum_{c in Conf^n Y} prod_k binom(X_k, l_k)(sigma_c)``.
    """
    lbar = tuple(lbar)
    if sum((k + 1) * l for k, l in enumerate(lbar)) > N:
        raise ValueError("sum k l_k exceeds the truncation order")
    r = _cls(Y)
    ring = MotiveRing(r.kind)
    out = conf_series(r, N)
    for i, l in enumerate(lbar):
        if not l:
            continue
        k = i + 1
        tk = TruncatedSeries(QQ, {(k,): 1}, N, nvars=1)
        frac = tk * (tk + 1).inverse()
        out = out * (frac ** l).change_ring(ring)
        out = out.scale(generalized_binomial(closed_point_class(k, r), l, MotiveScalar.const(r.kind, 1)))
    return out
