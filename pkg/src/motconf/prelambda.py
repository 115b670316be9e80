"""Measure rings, their pre-lambda structure, and rational motives.

Classes of varieties are only ever seen through a motivic measure:

* ``count``: Laurent polynomials in ``q`` (``L = q``), the point-counting
  measure read as a polynomial in the field size;
* ``hodge``: Laurent polynomials in ``u, v`` (``L = uv``), E-polynomials.

Both carry the monomial pre-lambda structure ``sigma_t(m) = 1/(1 - m t)``
extended additively, whose Adams operations scale exponents.  Only Tate-type
classes are produced by the builtins, where this agrees with the Kapranov
zeta function.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import inf

from .arith import divisors, mobius
from .series import QQ, Ring, TruncatedSeries, generalized_binomial
from .symfunc import SymFunc

__all__ = [
    "KINDS",
    "MotiveScalar",
    "MotiveRing",
    "RationalMotive",
    "RationalMotiveField",
    "LinvExpansion",
    "lefschetz",
    "sigma_monomial",
    "sigma_series",
    "adams",
    "pair",
    "closed_point_class",
    "linv_valuation",
    "truncated_linv_expansion",
]

log = logging.getLogger(__name__)

KINDS = {"count": ("q",), "hodge": ("u", "v")}


def _nvars(kind: str) -> int:
    try:
        return len(KINDS[kind])
    except KeyError:
        raise ValueError(f"unknown measure {kind!r}; expected one of {sorted(KINDS)}") from None


class MotiveScalar:
    """Image of a Grothendieck-ring class under a measure: a Laurent polynomial."""

    __slots__ = ("kind", "_terms")

    def __init__(self, kind: str, terms=None):
        n = _nvars(kind)
        self.kind = kind
        clean: dict = {}
        for exps, c in (terms or {}).items():
            if isinstance(exps, int):
                exps = (exps,)
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"{kind} monomials have {n} exponents, got {exps}")
            clean[exps] = clean.get(exps, 0) + Fraction(c)
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def _raw(cls, kind, terms):
        obj = cls.__new__(cls)
        obj.kind = kind
        obj._terms = terms
        return obj

    @classmethod
    def const(cls, kind: str, c) -> "MotiveScalar":
        c = Fraction(c)
        return cls._raw(kind, {(0,) * _nvars(kind): c} if c else {})

    @classmethod
    def monomial(cls, kind: str, exps, c=1) -> "MotiveScalar":
        return cls(kind, {tuple(exps): c})

    @property
    def ring(self) -> "MotiveRing":
        return MotiveRing(self.kind)

    @property
    def nvars(self) -> int:
        return len(KINDS[self.kind])

    def terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def coefficient(self, exps) -> Fraction:
        if isinstance(exps, int):
            exps = (exps,)
        return self._terms.get(tuple(exps), Fraction(0))

    def is_constant(self) -> bool:
        return all(not any(k) for k in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._terms.values())

    def is_tate(self) -> bool:
        return self.kind == "count" or all(a == b for a, b in self._terms)

    def degree(self) -> int:
        """Largest total degree (``-inf`` for zero)."""
        return max((sum(k) for k in self._terms), default=-inf)

    def min_exponents(self) -> tuple:
        n = self.nvars
        if not self._terms:
            return (0,) * n
        return tuple(min(k[i] for k in self._terms) for i in range(n))

    def leading(self):
        return max(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    # -- arithmetic ---------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MotiveScalar):
            if other.kind != self.kind:
                raise TypeError(f"cannot mix {self.kind} and {other.kind} measures")
            return other
        if isinstance(other, (int, Fraction)):
            return MotiveScalar.const(self.kind, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, v in o._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MotiveScalar._raw(self.kind, out)

    __radd__ = __add__

    def __neg__(self):
        return MotiveScalar._raw(self.kind, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MotiveScalar._raw(self.kind, {})
            return MotiveScalar._raw(self.kind, {k: v * other for k, v in self._terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for ka, va in self._terms.items():
            for kb, vb in o._terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                s = out.get(k, 0) + va * vb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return MotiveScalar._raw(self.kind, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_monomial():
            return self * o.inverse()
        return RationalMotive(self, o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def inverse(self) -> "MotiveScalar":
        if not self.is_monomial():
            raise ZeroDivisionError("only monomials are units in the measure ring")
        (k, v), = self._terms.items()
        return MotiveScalar._raw(self.kind, {tuple(-e for e in k): 1 / v})

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = MotiveScalar.const(self.kind, 1), self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, RationalMotive):
            return other == self
        if isinstance(other, MotiveScalar) and other.kind != self.kind:
            return False
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.kind, frozenset(self._terms.items())))

    def __repr__(self):
        return f"MotiveScalar({self.kind}: {self.render()})"

    # -- measure-specific operations ---------------------------------------------

    def adams(self, k: int) -> "MotiveScalar":
        if k < 1:
            raise ValueError("Adams operations are indexed by k >= 1")
        return MotiveScalar._raw(self.kind, {tuple(e * k for e in ex): v for ex, v in self._terms.items()})

    def shift(self, exps) -> "MotiveScalar":
        return MotiveScalar._raw(self.kind, {tuple(a + b for a, b in zip(k, exps)): v
                                             for k, v in self._terms.items()})

    def evaluate(self, *values) -> Fraction:
        """Value at ``q`` (count) or at ``u, v`` (hodge)."""
        if len(values) != self.nvars:
            raise ValueError(f"{self.kind} classes take {self.nvars} values")
        total = Fraction(0)
        for k, c in self._terms.items():
            term = c
            for x, e in zip(values, k):
                term *= Fraction(x) ** e
            total += term
        return total

    def to_count(self) -> "MotiveScalar":
        """Tate-type hodge class under ``uv -> q``."""
        if self.kind == "count":
            return self
        out = {}
        for (a, b), c in self._terms.items():
            if a != b:
                raise ValueError(f"class {self.render()} is not of Tate type")
            out[(a,)] = c
        return MotiveScalar._raw("count", out)

    def to_hodge(self) -> "MotiveScalar":
        if self.kind == "hodge":
            return self
        return MotiveScalar._raw("hodge", {(a, a): c for (a,), c in self._terms.items()})

    def render(self) -> str:
        if not self._terms:
            return "0"
        names = KINDS[self.kind]
        parts = []
        for k, c in self.terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, k) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {",".join(str(e) for e in k): str(c) for k, c in self.terms()}


def lefschetz(kind: str) -> MotiveScalar:
    """The class ``L`` of the affine line."""
    return MotiveScalar.monomial(kind, (1,) * _nvars(kind))


class MotiveRing(Ring):
    def __init__(self, kind: str):
        _nvars(kind)
        self.kind = kind
        self.name = f"Z[{','.join(KINDS[kind])}]_{kind}"

    def _key(self):
        return (self.kind,)

    def coerce(self, x):
        if isinstance(x, MotiveScalar):
            if x.kind != self.kind:
                raise TypeError(f"cannot coerce a {x.kind} class into {self.name}")
            return x
        if isinstance(x, (int, Fraction)):
            return MotiveScalar.const(self.kind, x)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def inverse(self, x):
        return self.coerce(x).inverse()

    def is_integral(self, x) -> bool:
        return self.coerce(x).is_integral()


# -- polynomial gcd ----------------------------------------------------------------


def _univariate(ms: MotiveScalar, diagonal: bool) -> list:
    """Coefficient list of a polynomial (non-negative exponents) in one variable."""
    deg = max(k[0] for k in ms._terms)
    out = [Fraction(0)] * (deg + 1)
    for k, c in ms._terms.items():
        out[k[0]] = c
    return out


def _from_univariate(coeffs, kind) -> MotiveScalar:
    n = _nvars(kind)
    return MotiveScalar._raw(kind, {(i,) * n: c for i, c in enumerate(coeffs) if c})


def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _udivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / lb
        q[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        _trim(a)
    return _trim(q), a


def _ugcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    lc = a[-1]
    return [c / lc for c in a]


def _sympy_cofactors(a: MotiveScalar, b: MotiveScalar):
    from sympy import QQ as SQQ
    from sympy.polys.rings import ring

    R, *_ = ring(",".join(KINDS[a.kind]), SQQ)

    def to(ms):
        return R.from_dict({k: SQQ(v.numerator, v.denominator) for k, v in ms._terms.items()})

    def back(p):
        return MotiveScalar(a.kind, {k: Fraction(int(v.numerator), int(v.denominator)) for k, v in p.terms()})

    _, ca, cb = to(a).cofactors(to(b))
    return back(ca), back(cb)


def _reduce(num: MotiveScalar, den: MotiveScalar):
    """Cancel the gcd of two polynomials (non-negative exponents)."""
    if den.is_constant():
        return num, den
    diagonal = all(len(set(k)) == 1 for k in list(num._terms) + list(den._terms))
    if diagonal:
        a, b = _univariate(num, True), _univariate(den, True)
        g = _ugcd(a, b)
        if len(g) > 1:
            a, _ = _udivmod(a, g)
            b, _ = _udivmod(b, g)
            return _from_univariate(a, num.kind), _from_univariate(b, num.kind)
        return num, den
    return _sympy_cofactors(num, den)


class RationalMotive:
    """A quotient of measure-ring classes in canonical form.

    The denominator is a polynomial with no monomial factor and leading
    coefficient 1 in graded-lex order; the numerator is a Laurent polynomial
    coprime to it.  Equal values therefore have equal representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, kind: str | None = None):
        if kind is None:
            kind = next((x.kind for x in (num, den) if isinstance(x, MotiveScalar)), None)
            if kind is None:
                raise ValueError("kind is required when building a RationalMotive from rationals")
        num = MotiveScalar.const(kind, num) if not isinstance(num, MotiveScalar) else num
        den = MotiveScalar.const(kind, den) if not isinstance(den, MotiveScalar) else den
        if num.kind != den.kind:
            raise TypeError("numerator and denominator live in different measures")
        if not den:
            raise ZeroDivisionError("division by a zero motive")
        self.num, self.den = self._normalize(num, den)

    @staticmethod
    def _normalize(num, den):
        if not num:
            return num, MotiveScalar.const(den.kind, 1)
        dmin, nmin = den.min_exponents(), num.min_exponents()
        den_p = den.shift(tuple(-e for e in dmin))
        num_p = num.shift(tuple(-e for e in nmin))
        num_p, den_p = _reduce(num_p, den_p)
        lc = den_p.leading()[1]
        num_p, den_p = num_p * (1 / lc), den_p * (1 / lc)
        return num_p.shift(tuple(a - b for a, b in zip(nmin, dmin))), den_p

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @property
    def kind(self) -> str:
        return self.num.kind

    @property
    def ring(self) -> "RationalMotiveField":
        return RationalMotiveField(self.kind)

    def _coerce(self, other):
        if isinstance(other, RationalMotive):
            if other.kind != self.kind:
                raise TypeError(f"cannot mix {self.kind} and {other.kind} measures")
            return other
        if isinstance(other, MotiveScalar):
            if other.kind != self.kind:
                raise TypeError(f"cannot mix {self.kind} and {other.kind} measures")
            return RationalMotive._raw(other, MotiveScalar.const(self.kind, 1))
        if isinstance(other, (int, Fraction)):
            return RationalMotive._raw(MotiveScalar.const(self.kind, other), MotiveScalar.const(self.kind, 1))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RationalMotive(self.num + o.num, self.den)
        return RationalMotive(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalMotive._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalMotive._raw(MotiveScalar.const(self.kind, 0), self.den)
            return RationalMotive._raw(self.num * other, self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.den.is_constant() and self.den.is_constant():
            return RationalMotive._raw(self.num * o.num, self.den)
        return RationalMotive(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalMotive":
        if not self.num:
            raise ZeroDivisionError("division by a zero motive")
        return RationalMotive(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalMotive._raw(self.num ** n, self.den ** n) if self.den.is_constant() else \
            RationalMotive(self.num ** n, self.den ** n)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        if self.den.is_constant():
            return hash(self.num)
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalMotive({self.kind}: {self.render()})"

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_scalar(self) -> MotiveScalar:
        if not self.den.is_constant():
            raise ValueError(f"{self.render()} is not a Laurent polynomial")
        return self.num

    def evaluate(self, *values) -> Fraction:
        d = self.den.evaluate(*values)
        if not d:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.num.evaluate(*values) / d

    def to_count(self) -> "RationalMotive":
        return RationalMotive(self.num.to_count(), self.den.to_count())

    def render(self) -> str:
        if self.den == 1:
            return self.num.render()
        return f"({self.num.render()})/({self.den.render()})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


class RationalMotiveField(Ring):
    def __init__(self, kind: str):
        _nvars(kind)
        self.kind = kind
        self.name = f"Q({','.join(KINDS[kind])})_{kind}"

    def _key(self):
        return (self.kind,)

    def coerce(self, x):
        if isinstance(x, RationalMotive):
            if x.kind != self.kind:
                raise TypeError(f"cannot coerce a {x.kind} motive into {self.name}")
            return x
        if isinstance(x, MotiveScalar):
            if x.kind != self.kind:
                raise TypeError(f"cannot coerce a {x.kind} class into {self.name}")
            return RationalMotive._raw(x, MotiveScalar.const(self.kind, 1))
        if isinstance(x, (int, Fraction)):
            return RationalMotive._raw(MotiveScalar.const(self.kind, x), MotiveScalar.const(self.kind, 1))
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def inverse(self, x):
        return self.coerce(x).inverse()

    def is_integral(self, x) -> bool:
        x = self.coerce(x)
        return x.den == 1 and x.num.is_integral()


# -- pre-lambda structure ----------------------------------------------------------


def _as_scalar(r, kind=None) -> MotiveScalar:
    if isinstance(r, MotiveScalar):
        return r
    if isinstance(r, (int, Fraction)):
        if kind is None:
            raise ValueError("a measure kind is needed for a bare rational")
        return MotiveScalar.const(kind, r)
    raise TypeError(f"expected a MotiveScalar, got {r!r}")


def sigma_monomial(m: MotiveScalar, N: int, multiplicity=1, strict: bool = False) -> TruncatedSeries:
    """``sigma_t(c m) = (1 - m t)^(-c)`` for a monomial ``m`` and rational ``c``."""
    if not m.is_monomial():
        raise ValueError("sigma_monomial needs a single monomial")
    c = Fraction(multiplicity)
    if c.denominator != 1:
        if strict:
            raise ValueError(f"non-integral multiplicity {c} has no effective sigma")
        log.debug("non-effective sigma: rational multiplicity %s, using the binomial series", c)
    ring = MotiveRing(m.kind)
    terms = {}
    power = MotiveScalar.const(m.kind, 1)
    for j in range(N + 1):
        coef = generalized_binomial(c + j - 1, j, Fraction(1))
        if coef:
            terms[(j,)] = power * coef
        power = power * m
    return TruncatedSeries(ring, terms, N, nvars=1)


def sigma_series(r: MotiveScalar, N: int, strict: bool = False) -> TruncatedSeries:
    """``sigma_t(r)`` to order ``N``: the product of ``(1 - m t)^(-c)`` over terms ``c m``."""
    r = _as_scalar(r)
    out = TruncatedSeries.one(MotiveRing(r.kind), N, nvars=1)
    for exps, c in r.terms():
        mono = MotiveScalar._raw(r.kind, {exps: Fraction(1)})
        out = out * sigma_monomial(mono, N, c, strict)
    return out


def adams(k: int, r) -> MotiveScalar:
    return _as_scalar(r).adams(k)


def pair(f: SymFunc, r) -> MotiveScalar:
    """``(f, r)``: substitute ``p_k -> adams(k, r)`` into the power-sum form of ``f``."""
    r = _as_scalar(r)
    cache: dict[int, MotiveScalar] = {}
    total = MotiveScalar.const(r.kind, 0)
    for part, c in f.terms():
        term = MotiveScalar.const(r.kind, c)
        for k in part:
            if k not in cache:
                cache[k] = r.adams(k)
            term = term * cache[k]
        total = total + term
    return total


def closed_point_class(k: int, r) -> MotiveScalar:
    """``M_k(r) = (p'_k, r) = (1/k) sum_{d | k} mu(k/d) adams(d, r)``."""
    if k < 1:
        raise ValueError("M_k needs k >= 1")
    r = _as_scalar(r)
    total = MotiveScalar.const(r.kind, 0)
    for d in divisors(k):
        mu = mobius(k // d)
        if mu:
            total = total + r.adams(d) * mu
    return total * Fraction(1, k)


# -- L^{-1}-adic valuation and expansion --------------------------------------------


def _as_rational(x, kind=None) -> RationalMotive:
    if isinstance(x, RationalMotive):
        return x
    if isinstance(x, MotiveScalar):
        return RationalMotive._raw(x, MotiveScalar.const(x.kind, 1))
    if isinstance(x, (int, Fraction)):
        return RationalMotive(x, 1, kind=kind or "count")
    raise TypeError(f"expected a motive, got {x!r}")


def linv_valuation(x):
    """Order of vanishing in ``L^{-1}``: an int, ``math.inf`` for zero.

    For the hodge measure degrees are measured in units of ``L = uv`` (total
    degree / 2), so Tate-type values agree with the count measure; an odd
    total-degree gap gives a half-integral ``Fraction``.
    """
    x = _as_rational(x)
    if not x.num:
        return inf
    gap = x.den.degree() - x.num.degree()
    if x.kind == "count":
        return gap
    v = Fraction(gap, 2)
    return int(v) if v.denominator == 1 else v


@dataclass(frozen=True)
class LinvExpansion:
    """``x = sum_i coefficients[i] * L^-(valuation + i)`` plus terms of higher valuation."""

    kind: str
    valuation: int
    coefficients: tuple

    def series(self) -> TruncatedSeries:
        """The expansion as a series in ``w = L^{-1}`` (needs valuation >= 0)."""
        if self.valuation < 0:
            raise ValueError("negative valuation: not a power series in L^-1")
        order = self.valuation + len(self.coefficients) - 1
        return TruncatedSeries(QQ, {(self.valuation + i,): c for i, c in enumerate(self.coefficients)},
                               max(order, 0), nvars=1)

    def truncation(self) -> RationalMotive:
        L = lefschetz(self.kind)
        total = MotiveScalar.const(self.kind, 0)
        for i, c in enumerate(self.coefficients):
            total = total + (L ** (-(self.valuation + i))) * c
        return _as_rational(total)

    def render(self) -> str:
        name = "q" if self.kind == "count" else "(u*v)"
        parts = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            e = -(self.valuation + i)
            mono = "" if e == 0 else (name if e == 1 else f"{name}^{e}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        e = -(self.valuation + len(self.coefficients))
        parts.append(f"O({name}^{e})")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"valuation": self.valuation, "coefficients": [str(c) for c in self.coefficients]}


def truncated_linv_expansion(x, N: int) -> LinvExpansion:
    """Expansion of ``x`` in ``w = L^{-1}`` through ``w^N`` (first term at the valuation)."""
    x = _as_rational(x)
    num, den = x.num, x.den
    if x.kind == "hodge":
        if not (num.is_tate() and den.is_tate()):
            raise ValueError("L^-1 expansion of hodge classes needs Tate type")
        num, den = num.to_count(), den.to_count()
    if not num:
        return LinvExpansion(x.kind, 0, (Fraction(0),) * (N + 1))
    hi_n = max(k[0] for k in num._terms)
    hi_d = max(k[0] for k in den._terms)
    # In w = 1/q: num = w^-hi_n * A(w), den = w^-hi_d * B(w) with B(0) != 0.
    a = [Fraction(0)] * (hi_n - min(k[0] for k in num._terms) + 1)
    for (e,), c in num._terms.items():
        a[hi_n - e] = c
    b = [Fraction(0)] * (hi_d - min(k[0] for k in den._terms) + 1)
    for (e,), c in den._terms.items():
        b[hi_d - e] = c
    valuation = hi_d - hi_n
    count = max(N - valuation + 1, 0)
    out = []
    rem = a + [Fraction(0)] * count
    for i in range(count):
        c = rem[i] / b[0]
        out.append(c)
        if c:
            for j, bj in enumerate(b):
                if i + j < len(rem):
                    rem[i + j] -= c * bj
    return LinvExpansion(x.kind, valuation, tuple(out))
