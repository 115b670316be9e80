"""Sparse truncated multivariate power series over an exact coefficient ring.

A series is a finite map from exponent tuples to coefficients, together with
a truncation order ``N`` on the weighted total degree and optional per-variable
exponent caps.  Both truncations cut out monomial ideals, so every ring
operation (and exp/log, which only use the Euler derivation) is exact on the
surviving terms.  Terms past the truncation are silently dropped.

Coefficients come from a :class:`Ring`: the rationals (:data:`QQ`), measure
rings of motives, rational motives and symmetric functions all plug in.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from typing import Iterable, Mapping

__all__ = [
    "Ring",
    "RationalField",
    "QQ",
    "Monomial",
    "TruncatedSeries",
    "monomial_from_map",
    "add",
    "mul",
    "log1p",
    "exp1m",
    "naive_pow",
    "substitute_powers",
    "euler_factorize",
    "euler_product",
    "extract_coefficient",
    "generalized_binomial",
]

Monomial = tuple  # exponent tuple, one entry per variable


class Ring:
    """Coefficient ring descriptor.

    Subclasses provide ``zero``, ``one`` and ``coerce``; rings are compared by
    value so two series built independently over "the same" ring interoperate.
    """

    name = "ring"

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        raise NotImplementedError

    def inverse(self, x):
        raise ZeroDivisionError(f"{x!r} is not a unit in {self.name}")

    def is_integral(self, x) -> bool:
        return False

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def _key(self):
        return ()

    def __repr__(self):
        return self.name


class RationalField(Ring):
    name = "QQ"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def inverse(self, x):
        return 1 / Fraction(x)

    def is_integral(self, x) -> bool:
        return Fraction(x).denominator == 1


QQ = RationalField()


def monomial_from_map(exponents: Mapping[int, int], nvars: int) -> Monomial:
    """Dense exponent tuple from a ``{variable index (1-based): exponent}`` map."""
    out = [0] * nvars
    for var, e in exponents.items():
        if not 1 <= var <= nvars:
            raise IndexError(f"variable index {var} outside 1..{nvars}")
        if e < 0:
            raise ValueError("exponents must be non-negative")
        out[var - 1] = e
    return tuple(out)


def generalized_binomial(a, j: int, one=1):
    """``a (a-1) ... (a-j+1) / j!`` for ``a`` in any Q-algebra."""
    out = one
    for i in range(j):
        out = out * (a - i) * Fraction(1, i + 1)
    return out


def _madd(a, b):
    return tuple(x + y for x, y in zip(a, b))


class TruncatedSeries:
    """An element of ``R[[t_1..t_n]]`` modulo weighted degree > N (and caps)."""

    __slots__ = ("ring", "order", "weights", "caps", "_terms")

    def __init__(self, ring: Ring, terms: Mapping | Iterable = (), order: int = 0,
                 weights: Iterable[int] | None = None, caps: Iterable[int | None] | None = None,
                 nvars: int | None = None):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        if isinstance(terms, Mapping):
            terms = terms.items()
        terms = list(terms)
        if weights is None:
            if nvars is None:
                nvars = len(terms[0][0]) if terms else 1
            weights = (1,) * nvars
        weights = tuple(weights)
        if any(w <= 0 for w in weights):
            raise ValueError("variable weights must be positive")
        if caps is None:
            caps = (None,) * len(weights)
        caps = tuple(caps)
        if len(caps) != len(weights):
            raise ValueError("caps and weights disagree on the number of variables")
        self.ring = ring
        self.order = order
        self.weights = weights
        self.caps = caps
        clean = {}
        for mono, c in terms:
            mono = tuple(mono)
            if len(mono) != len(weights):
                raise ValueError(f"monomial {mono} has wrong arity")
            if not self._fits(mono):
                continue
            c = ring.coerce(c)
            if mono in clean:
                c = clean[mono] + c
            clean[mono] = c
        self._terms = {m: c for m, c in clean.items() if c}

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, ring, terms, order, weights, caps):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.order = order
        obj.weights = weights
        obj.caps = caps
        obj._terms = terms
        return obj

    def _like(self, terms, order=None, caps=None):
        return TruncatedSeries._raw(self.ring, terms, self.order if order is None else order,
                                    self.weights, self.caps if caps is None else caps)

    @classmethod
    def constant(cls, ring: Ring, value, order: int, weights=None, caps=None, nvars=None):
        if weights is None:
            weights = (1,) * (nvars or 1)
        weights = tuple(weights)
        return cls(ring, {(0,) * len(weights): value}, order, weights, caps)

    @classmethod
    def one(cls, ring: Ring, order: int, weights=None, caps=None, nvars=None):
        return cls.constant(ring, 1, order, weights, caps, nvars)

    @classmethod
    def zero_like(cls, other: "TruncatedSeries"):
        return other._like({})

    def one_like(self):
        return self._like({self.zero_monomial: self.ring.one})

    # -- basic accessors ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @property
    def zero_monomial(self) -> Monomial:
        return (0,) * len(self.weights)

    def degree_of(self, mono: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, mono))

    def _fits(self, mono) -> bool:
        if sum(w * e for w, e in zip(self.weights, mono)) > self.order:
            return False
        for e, cap in zip(mono, self.caps):
            if cap is not None and e > cap:
                return False
        return True

    def terms(self):
        """Terms in graded-lexicographic order (deterministic)."""
        return sorted(self._terms.items(), key=lambda mc: self._sort_key(mc[0]))

    def _sort_key(self, mono):
        return (self.degree_of(mono), tuple(-e for e in mono))

    def __iter__(self):
        return iter(self.terms())

    def __len__(self):
        return len(self._terms)

    def coefficient(self, mono) -> object:
        return self._terms.get(tuple(mono), self.ring.zero)

    @property
    def constant_term(self):
        return self.coefficient(self.zero_monomial)

    def is_integral(self) -> bool:
        return all(self.ring.is_integral(c) for c in self._terms.values())

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.weights == other.weights and self._terms == other._terms
        if not other:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"TruncatedSeries({self.render()}, order={self.order})"

    def render(self, names=None) -> str:
        if names is None:
            names = ["t"] if self.nvars == 1 else [f"t{i + 1}" for i in range(self.nvars)]
        parts = []
        for mono, c in self.terms():
            mon = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e)
            cs = _render_coeff(c)
            if not mon:
                parts.append(cs)
            elif cs == "1":
                parts.append(mon)
            elif cs == "-1":
                parts.append("-" + mon)
            elif _compound(cs):
                parts.append(f"({cs})*{mon}")
            else:
                parts.append(f"{cs}*{mon}")
        s = " + ".join(parts) or "0"
        return s.replace("+ -", "- ")

    # -- compatibility ---------------------------------------------------------

    def _check(self, other: "TruncatedSeries"):
        if self.ring != other.ring:
            raise TypeError(f"incompatible coefficient rings {self.ring} and {other.ring}")
        if self.weights != other.weights:
            raise ValueError("series over different variables / weights")

    def _joint(self, other):
        order = min(self.order, other.order)
        caps = tuple(_mincap(a, b) for a, b in zip(self.caps, other.caps))
        return order, caps

    def _lift(self, x):
        if isinstance(x, TruncatedSeries):
            return x
        return self._like({self.zero_monomial: self.ring.coerce(x)})

    def change_ring(self, ring: Ring) -> "TruncatedSeries":
        terms = {}
        for m, c in self._terms.items():
            c = ring.coerce(c)
            if c:
                terms[m] = c
        return TruncatedSeries._raw(ring, terms, self.order, self.weights, self.caps)

    def truncate(self, order: int | None = None, caps=None) -> "TruncatedSeries":
        order = self.order if order is None else min(order, self.order)
        if caps is None:
            caps = self.caps
        else:
            caps = tuple(_mincap(a, b) for a, b in zip(self.caps, caps))
        out = TruncatedSeries._raw(self.ring, {}, order, self.weights, caps)
        out._terms = {m: c for m, c in self._terms.items() if out._fits(m)}
        return out

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        self._check(other)
        order, caps = self._joint(other)
        res = TruncatedSeries._raw(self.ring, {}, order, self.weights, caps)
        terms = {m: c for m, c in self._terms.items() if res._fits(m)}
        for m, c in other._terms.items():
            if not res._fits(m):
                continue
            if m in terms:
                s = terms[m] + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
            else:
                terms[m] = c
        res._terms = terms
        return res

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def scale(self, c) -> "TruncatedSeries":
        terms = {}
        for m, a in self._terms.items():
            v = a * c
            if v:
                terms[m] = v
        return self._like(terms)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(self.ring.coerce(other))
        self._check(other)
        order, caps = self._joint(other)
        res = TruncatedSeries._raw(self.ring, {}, order, self.weights, caps)
        by_deg = _group_by_degree(other._terms, self.degree_of)
        acc = {}
        for ma, ca in self._terms.items():
            da = self.degree_of(ma)
            if da > order:
                continue
            for db in range(0, order - da + 1):
                bucket = by_deg.get(db)
                if not bucket:
                    continue
                for mb, cb in bucket:
                    m = _madd(ma, mb)
                    if not _capped(m, caps):
                        continue
                    v = ca * cb
                    if m in acc:
                        acc[m] = acc[m] + v
                    else:
                        acc[m] = v
        res._terms = {m: c for m, c in acc.items() if c}
        return res

    def __rmul__(self, other):
        return self.scale(self.ring.coerce(other))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("use naive_pow for non-integer or negative exponents")
        result, base = self.one_like(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be a unit of the ring."""
        c0 = self.constant_term
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        c0inv = self.ring.inverse(c0)
        rest = [(m, c) for m, c in self._terms.items() if any(m)]
        out = {self.zero_monomial: c0inv}
        for mono in self._monomials_by_degree(rest):
            acc = None
            for mk, ck in rest:
                rem = tuple(a - b for a, b in zip(mono, mk))
                if min(rem) < 0:
                    continue
                g = out.get(rem)
                if g is None:
                    continue
                v = ck * g
                acc = v if acc is None else acc + v
            if acc is not None and acc:
                val = -(acc * c0inv)
                if val:
                    out[mono] = val
        return self._like(out)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self.scale(self.ring.inverse(self.ring.coerce(other)))

    def _monomials_by_degree(self, generators):
        """All monomials reachable as sums of generators, within truncation, by degree."""
        seen = set()
        frontier = {self.zero_monomial}
        while frontier:
            new = set()
            for a in frontier:
                for g, _ in generators:
                    m = _madd(a, g)
                    if m not in seen and self._fits(m):
                        seen.add(m)
                        new.add(m)
            frontier = new
        return sorted(seen, key=self._sort_key)

    # -- exp / log --------------------------------------------------------------

    def log(self) -> "TruncatedSeries":
        """``log f`` for a series with constant term 1, via the Euler derivation."""
        if self.constant_term != self.ring.one:
            raise ValueError("log1p requires constant term 1")
        deg = self.degree_of
        f_by_deg = _group_by_degree({m: c for m, c in self._terms.items() if any(m)}, deg)
        logs = {}
        logs_by_deg = {}
        for d in range(1, self.order + 1):
            acc = {}
            for m, c in f_by_deg.get(d, ()):
                acc[m] = c * d
            for dj in range(1, d):
                for mj, lj in logs_by_deg.get(dj, ()):
                    for mk, fk in f_by_deg.get(d - dj, ()):
                        m = _madd(mj, mk)
                        if not self._fits(m):
                            continue
                        v = lj * fk * dj
                        acc[m] = acc[m] - v if m in acc else -v
            level = []
            for m, v in acc.items():
                if v:
                    v = v * Fraction(1, d)
                    logs[m] = v
                    level.append((m, v))
            if level:
                logs_by_deg[d] = level
        return self._like(logs)

    def exp(self) -> "TruncatedSeries":
        """``exp g`` for a series with zero constant term."""
        if self.constant_term:
            raise ValueError("exp1m requires zero constant term")
        deg = self.degree_of
        h_by_deg = _group_by_degree(self._terms, deg)
        one = self.ring.one
        out = {self.zero_monomial: one}
        out_by_deg = {0: [(self.zero_monomial, one)]}
        for d in range(1, self.order + 1):
            acc = {}
            for dj in range(1, d + 1):
                hs = h_by_deg.get(dj)
                gs = out_by_deg.get(d - dj)
                if not hs or not gs:
                    continue
                for mj, hj in hs:
                    hj = hj * dj
                    for mk, gk in gs:
                        m = _madd(mj, mk)
                        if not self._fits(m):
                            continue
                        v = hj * gk
                        acc[m] = acc[m] + v if m in acc else v
            level = []
            for m, v in acc.items():
                if v:
                    v = v * Fraction(1, d)
                    out[m] = v
                    level.append((m, v))
            if level:
                out_by_deg[d] = level
        return self._like(out)

    # -- substitutions ------------------------------------------------------------

    def substitute_powers(self, k: int) -> "TruncatedSeries":
        if k < 1:
            raise ValueError("power substitution needs k >= 1")
        terms = {}
        for m, c in self._terms.items():
            mk = tuple(e * k for e in m)
            if self._fits(mk):
                terms[mk] = c
        return self._like(terms)

    def compose_monomial(self, target: "TruncatedSeries", mono: Monomial) -> "TruncatedSeries":
        """Substitute the single variable of ``self`` by ``t^mono`` in ``target``'s variables."""
        if self.nvars != 1:
            raise ValueError("compose_monomial needs a univariate series")
        res = TruncatedSeries._raw(self.ring, {}, target.order, target.weights, target.caps)
        terms = {}
        for (j,), c in self._terms.items():
            m = tuple(e * j for e in mono)
            if res._fits(m):
                terms[m] = c
        res._terms = terms
        return res


def _render_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    render = getattr(c, "render", None)
    return render() if render else str(c)


def _compound(text: str) -> bool:
    return "+" in text or " - " in text or text[1:].find("-") > 0


def _mincap(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _capped(m, caps) -> bool:
    for e, cap in zip(m, caps):
        if cap is not None and e > cap:
            return False
    return True


def _group_by_degree(terms, deg):
    out = {}
    for m, c in terms.items():
        out.setdefault(deg(m), []).append((m, c))
    return out


# -- functional interface ------------------------------------------------------


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def log1p(f: TruncatedSeries) -> TruncatedSeries:
    """``log f`` for ``f`` with constant term 1 (``f = 1 + g``)."""
    return f.log()


def exp1m(g: TruncatedSeries) -> TruncatedSeries:
    """``exp g`` for ``g`` with zero constant term; inverse of :func:`log1p`."""
    return g.exp()


def naive_pow(f: TruncatedSeries, r) -> TruncatedSeries:
    """``exp(r log f)``.  ``f`` over QQ is lifted to the ring of ``r`` when needed."""
    if f.constant_term != f.ring.one:
        raise ValueError("naive_pow requires constant term 1")
    lg = f.log()
    ring = getattr(r, "ring", None)
    if ring is not None and not isinstance(r, TruncatedSeries) and ring != f.ring:
        if f.ring != QQ:
            raise TypeError(f"cannot raise a series over {f.ring} to a power in {ring}")
        lg = lg.change_ring(ring)
    else:
        r = lg.ring.coerce(r)
    return lg.scale(r).exp()


def substitute_powers(f: TruncatedSeries, k: int) -> TruncatedSeries:
    return f.substitute_powers(k)


def _one_minus_mono_pow(template: TruncatedSeries, mono: Monomial, a) -> TruncatedSeries:
    """``(1 - t^mono)^a`` by the generalized binomial series."""
    d = template.degree_of(mono)
    ring = template.ring
    terms = {}
    j = 0
    while j * d <= template.order:
        m = tuple(e * j for e in mono)
        if not template._fits(m):
            break
        c = generalized_binomial(a, j, ring.one)
        if j % 2:
            c = -c
        terms[m] = c
        j += 1
    return TruncatedSeries(ring, terms, template.order, template.weights, template.caps)


def euler_factorize(f: TruncatedSeries) -> list[tuple[Monomial, object]]:
    """Exponents ``a_I`` with ``f = prod_I (1 - t^I)^(-a_I)`` up to the truncation.

    Works degree by degree: once all factors of lower degree are divided out,
    the degree-``d`` coefficients are exactly the next exponents.
    """
    if f.constant_term != f.ring.one:
        raise ValueError("euler_factorize requires constant term 1")
    g = f
    out = []
    for d in range(1, f.order + 1):
        level = sorted(((m, c) for m, c in g._terms.items() if f.degree_of(m) == d),
                       key=lambda mc: f._sort_key(mc[0]))
        for m, a in level:
            out.append((m, a))
            g = g * _one_minus_mono_pow(f, m, a)
    return out


def euler_product(factors: Iterable[tuple[Monomial, object]], template: TruncatedSeries) -> TruncatedSeries:
    """Re-expand ``prod (1 - t^I)^(-a_I)`` in the variables of ``template``."""
    out = template.one_like()
    for m, a in factors:
        out = out * _one_minus_mono_pow(template, tuple(m), -a)
    return out


def extract_coefficient(f: TruncatedSeries, mono) -> object:
    """Coefficient of ``t^mono`` (the operator ``d^I/I! at t=0``)."""
    if isinstance(mono, Mapping):
        mono = monomial_from_map(mono, f.nvars)
    mono = tuple(mono)
    if len(mono) != f.nvars:
        raise ValueError("monomial arity mismatch")
    if f.degree_of(mono) > f.order:
        raise ValueError(f"monomial {mono} lies beyond truncation order {f.order}")
    return f.coefficient(mono)


def box_monomials(caps: Iterable[int]):
    """All exponent tuples below the given caps (inclusive)."""
    return _cartesian(*(range(c + 1) for c in caps))
