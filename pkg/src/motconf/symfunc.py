"""Symmetric functions stored in the power-sum basis, plus character polynomials.

Elements of ``Lambda_Q = Q[p_1, p_2, ...]`` are dicts from partitions
(descending tuples, ``(2, 1)`` meaning ``p_2 p_1``) to rationals, truncated
at a degree cap ``N`` with ``deg p_k = k``.  The h, e, p' and c bases are
views computed from this hub.

Partition conventions: a generalized partition ``tau = a_1^l_1 ... a_m^l_m``
is stored by its multiplicity partition ``(l_1, ..., l_m)`` sorted
descending, and ``h_tau = h_l_1 h_l_2 ...`` (likewise ``p_tau``) is indexed by
those multiplicities, not by the parts of an ordinary partition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian
from math import factorial

from . import polyparse
from .arith import divisors, mobius, partitions
from .series import QQ, Ring, TruncatedSeries, generalized_binomial, naive_pow

__all__ = [
    "DEFAULT_ORDER",
    "GeneralizedPartition",
    "SymFunc",
    "SymRing",
    "CharPolynomial",
    "power_sum",
    "complete_h",
    "elementary_e",
    "mobius_power_sum",
    "h_tau",
    "p_tau",
    "conf_symfunc",
    "conf_basis",
    "expand_in_conf_basis",
    "to_basis",
    "from_basis",
    "charpoly_to_symfunc",
    "binomial_charpoly",
]

DEFAULT_ORDER = 8


def _merge(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b, reverse=True))


def _gmul(a: dict, b: dict, cap: int) -> dict:
    """Product of polynomials in graded generators keyed by partitions."""
    out = {}
    for ka, va in a.items():
        sa = sum(ka)
        for kb, vb in b.items():
            if sa + sum(kb) > cap:
                continue
            k = _merge(ka, kb)
            s = out.get(k, 0) + va * vb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _gadd(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


@dataclass(frozen=True, order=True)
class GeneralizedPartition:
    """Multiplicities ``(l_1, ..., l_m)`` of distinct labels, canonically sorted."""

    multiplicities: tuple = ()

    def __post_init__(self):
        mult = tuple(int(x) for x in self.multiplicities)
        if any(x < 0 for x in mult):
            raise ValueError("label multiplicities must be non-negative")
        object.__setattr__(self, "multiplicities", tuple(sorted((x for x in mult if x), reverse=True)))

    @classmethod
    def coerce(cls, tau) -> "GeneralizedPartition":
        if isinstance(tau, cls):
            return tau
        if isinstance(tau, str):
            return cls.parse(tau)
        return cls(tuple(tau))

    @classmethod
    def parse(cls, text: str) -> "GeneralizedPartition":
        """Label strings: ``"a2b"`` or ``"a^2b"`` is ``a^2 b``; ``""``/``"1"`` is empty.

        Repeated letters accumulate (``"aab"`` is ``a2b``).
        """
        s = text.strip().replace("^", "").replace("*", "").replace(" ", "")
        if s in ("", "1"):
            return cls(())
        if not re.fullmatch(r"(?:[a-zA-Z]\d*)+", s):
            raise ValueError(f"cannot parse generalized partition {text!r}")
        counts: dict[str, int] = {}
        for label, num in re.findall(r"([a-zA-Z])(\d*)", s):
            counts[label] = counts.get(label, 0) + (int(num) if num else 1)
        return cls(tuple(counts.values()))

    @property
    def total(self) -> int:
        return sum(self.multiplicities)

    @property
    def nlabels(self) -> int:
        return len(self.multiplicities)

    def __str__(self):
        if not self.multiplicities:
            return "1"
        out = []
        for i, l in enumerate(self.multiplicities):
            label = chr(ord("a") + i) if i < 26 else f"a{i}"
            out.append(label if l == 1 else f"{label}{l}")
        return "".join(out)


class SymFunc:
    """A symmetric function of degree at most ``cap`` in the power-sum basis."""

    __slots__ = ("cap", "_terms")

    def __init__(self, terms=None, cap: int = DEFAULT_ORDER):
        self.cap = cap
        clean = {}
        for part, c in (terms or {}).items():
            part = tuple(sorted(part, reverse=True))
            if sum(part) > cap or not c:
                continue
            clean[part] = clean.get(part, 0) + Fraction(c)
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def _raw(cls, terms, cap):
        obj = cls.__new__(cls)
        obj.cap = cap
        obj._terms = terms
        return obj

    @classmethod
    def constant(cls, c, cap: int = DEFAULT_ORDER) -> "SymFunc":
        return cls({(): c}, cap)

    @property
    def ring(self) -> "SymRing":
        return SymRing(self.cap)

    def terms(self):
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def coefficient(self, part) -> Fraction:
        return self._terms.get(tuple(sorted(part, reverse=True)), Fraction(0))

    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=-1)

    def homogeneous(self, d: int) -> "SymFunc":
        return SymFunc._raw({k: v for k, v in self._terms.items() if sum(k) == d}, self.cap)

    def with_cap(self, cap: int) -> "SymFunc":
        return SymFunc._raw({k: v for k, v in self._terms.items() if sum(k) <= cap}, cap)

    def _coerce(self, other):
        if isinstance(other, SymFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return SymFunc.constant(other, self.cap)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        cap = min(self.cap, o.cap)
        return SymFunc._raw({k: v for k, v in _gadd(self._terms, o._terms).items() if sum(k) <= cap}, cap)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc._raw({k: -v for k, v in self._terms.items()}, self.cap)

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
                return SymFunc._raw({}, self.cap)
            return SymFunc._raw({k: v * other for k, v in self._terms.items()}, self.cap)
        if not isinstance(other, SymFunc):
            return NotImplemented
        cap = min(self.cap, other.cap)
        return SymFunc._raw(_gmul(self._terms, other._terms, cap), cap)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        out = SymFunc.constant(1, self.cap)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if not self._terms:
            return hash(0)
        if set(self._terms) == {()}:
            return hash(self._terms[()])
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"SymFunc({self.render()})"

    def render(self, basis: str = "p") -> str:
        if basis == "c":
            coords = expand_in_conf_basis(self)
            items = [(f"c[{tau}]", c) for tau, c in coords.items()]
        else:
            coords = {tuple(k): v for k, v in self._terms.items()} if basis == "p" else to_basis(self, basis)
            items = [(_gen_monomial(basis, part), c)
                     for part, c in sorted(coords.items(), key=lambda kv: (sum(kv[0]), kv[0]))]
        return _render_linear(items)

    def to_json(self, basis: str = "p") -> dict:
        if basis == "c":
            coords = expand_in_conf_basis(self)
            return {"basis": "c", "terms": [{"tau": str(t), "coeff": str(c)} for t, c in coords.items()]}
        coords = self._terms if basis == "p" else to_basis(self, basis)
        return {"basis": basis,
                "terms": [{"partition": list(k), "coeff": str(v)}
                          for k, v in sorted(coords.items(), key=lambda kv: (sum(kv[0]), kv[0]))]}


def _gen_monomial(letter: str, part: tuple) -> str:
    if not part:
        return ""
    counts: dict[int, int] = {}
    for k in part:
        counts[k] = counts.get(k, 0) + 1
    return "*".join(f"{letter}{k}" if e == 1 else f"{letter}{k}^{e}" for k, e in counts.items())


def _render_linear(items) -> str:
    parts = []
    for mono, c in items:
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"({c})*{mono}" if c.denominator != 1 else f"{c}*{mono}")
    return (" + ".join(parts) or "0").replace("+ -", "- ")


class SymRing(Ring):
    """Coefficient ring ``Lambda_Q`` truncated at degree ``cap``."""

    def __init__(self, cap: int = DEFAULT_ORDER):
        self.cap = cap
        self.name = f"Lambda_Q[<={cap}]"

    def _key(self):
        return (self.cap,)

    def coerce(self, x):
        if isinstance(x, SymFunc):
            return x if x.cap == self.cap else x.with_cap(self.cap)
        if isinstance(x, (int, Fraction)):
            return SymFunc.constant(x, self.cap)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def inverse(self, x):
        x = self.coerce(x)
        if set(x._terms) == {()}:
            return SymFunc.constant(1 / x._terms[()], self.cap)
        raise ZeroDivisionError("only nonzero constants are units in Lambda_Q")

    def is_integral(self, x) -> bool:
        return all(v.denominator == 1 for v in to_basis(self.coerce(x), "h").values())


# -- standard generators ---------------------------------------------------------


def _check_degree(k: int, N: int):
    if k < 0:
        raise ValueError("degree must be non-negative")
    if k > N:
        raise ValueError(f"degree {k} exceeds truncation {N}")


def power_sum(k: int, N: int = DEFAULT_ORDER) -> SymFunc:
    _check_degree(k, N)
    return SymFunc.constant(1, N) if k == 0 else SymFunc._raw({(k,): Fraction(1)}, N)


@lru_cache(maxsize=None)
def _h_table(N: int) -> tuple:
    # Newton: k h_k = sum_{i=1}^k p_i h_{k-i}
    hs = [{(): Fraction(1)}]
    for k in range(1, N + 1):
        acc = {}
        for i in range(1, k + 1):
            acc = _gadd(acc, _gmul({(i,): Fraction(1)}, hs[k - i], N))
        hs.append({p: v / k for p, v in acc.items()})
    return tuple(hs)


@lru_cache(maxsize=None)
def _e_table(N: int) -> tuple:
    # Newton: k e_k = sum_{i=1}^k (-1)^(i-1) p_i e_{k-i}
    es = [{(): Fraction(1)}]
    for k in range(1, N + 1):
        acc = {}
        for i in range(1, k + 1):
            acc = _gadd(acc, _gmul({(i,): Fraction(1)}, es[k - i], N), (-1) ** (i - 1))
        es.append({p: v / k for p, v in acc.items()})
    return tuple(es)


def complete_h(k: int, N: int = DEFAULT_ORDER) -> SymFunc:
    _check_degree(k, N)
    return SymFunc._raw(dict(_h_table(k)[k]), N)


def elementary_e(k: int, N: int = DEFAULT_ORDER) -> SymFunc:
    _check_degree(k, N)
    return SymFunc._raw(dict(_e_table(k)[k]), N)


def mobius_power_sum(k: int, N: int = DEFAULT_ORDER) -> SymFunc:
    """``p'_k = (1/k) sum_{d | k} mu(k/d) p_d``."""
    if k < 1:
        raise ValueError("p'_k needs k >= 1")
    _check_degree(k, N)
    terms = {}
    for d in divisors(k):
        mu = mobius(k // d)
        if mu:
            terms[(d,)] = Fraction(mu, k)
    return SymFunc._raw(terms, N)


def h_tau(tau, N: int = DEFAULT_ORDER) -> SymFunc:
    tau = GeneralizedPartition.coerce(tau)
    out = SymFunc.constant(1, N)
    for l in tau.multiplicities:
        out = out * complete_h(l, N)
    return out


def p_tau(tau, N: int = DEFAULT_ORDER) -> SymFunc:
    tau = GeneralizedPartition.coerce(tau)
    out = SymFunc.constant(1, N)
    for l in tau.multiplicities:
        out = out * power_sum(l, N)
    return out


# -- basis changes ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _p_in(basis: str, N: int) -> tuple:
    """``p_k`` expressed in the h or e generators, for ``k <= N``."""
    out = [{(): Fraction(1)}]
    for k in range(1, N + 1):
        if basis == "h":
            # p_k = k h_k - sum_{i<k} p_i h_{k-i}
            acc = {(k,): Fraction(k)}
            for i in range(1, k):
                acc = _gadd(acc, _gmul(out[i], {(k - i,): Fraction(1)}, N), -1)
        elif basis == "e":
            # (-1)^(k-1) p_k = k e_k - sum_{i<k} (-1)^(i-1) p_i e_{k-i}
            acc = {(k,): Fraction(k)}
            for i in range(1, k):
                acc = _gadd(acc, _gmul(out[i], {(k - i,): Fraction(1)}, N), -((-1) ** (i - 1)))
            sign = (-1) ** (k - 1)
            acc = {p: v * sign for p, v in acc.items()}
        else:
            raise ValueError(f"unknown basis {basis!r}")
        out.append(acc)
    return tuple(out)


def to_basis(f: SymFunc, basis: str) -> dict:
    """Coordinates of ``f`` in the ``p``, ``h`` or ``e`` monomial basis."""
    if basis == "p":
        return dict(f._terms)
    N = max(f.degree(), 0)
    table = _p_in(basis, N)
    out = {}
    for part, c in f._terms.items():
        term = {(): c}
        for k in part:
            term = _gmul(term, table[k], N)
        out = _gadd(out, term)
    return out


def from_basis(coords: dict, basis: str, N: int = DEFAULT_ORDER) -> SymFunc:
    """Inverse of :func:`to_basis`."""
    if basis == "p":
        return SymFunc(coords, N)
    gen = {"h": complete_h, "e": elementary_e}[basis]
    out = SymFunc({}, N)
    for part, c in coords.items():
        term = SymFunc.constant(c, N)
        for k in part:
            term = term * gen(k, N)
        out = out + term
    return out


# -- configuration classes c_tau -------------------------------------------------


@lru_cache(maxsize=None)
def _binom_pprime(k: int, n: int, cap: int) -> SymFunc:
    return generalized_binomial(mobius_power_sum(k, cap), n, SymFunc.constant(1, cap))


@lru_cache(maxsize=None)
def _conf_binomial(mults: tuple) -> SymFunc:
    # Coefficient of t^tau in prod_k (1 + t_1^k + ... + t_m^k)^{p'_k}, expanded by the
    # binomial theorem: each label class l_j splits into parts (closed-point degrees).
    cap = sum(mults)
    total = SymFunc({}, cap)
    for choice in _cartesian(*(partitions(l) for l in mults)):
        per_label = []
        n_k: dict[int, int] = {}
        for rho in choice:
            counts: dict[int, int] = {}
            for k in rho:
                counts[k] = counts.get(k, 0) + 1
                n_k[k] = n_k.get(k, 0) + 1
            per_label.append(counts)
        term = SymFunc.constant(1, cap)
        weight = Fraction(1)
        for k, n in n_k.items():
            term = term * _binom_pprime(k, n, cap)
            denom = 1
            for counts in per_label:
                denom *= factorial(counts.get(k, 0))
            weight *= Fraction(factorial(n), denom)
        total = total + term * weight
    return total


@lru_cache(maxsize=None)
def _conf_series(mults: tuple) -> SymFunc:
    cap = sum(mults)
    ring = SymRing(cap)
    m = len(mults)
    one = TruncatedSeries.one(QQ, cap, caps=mults, nvars=m)
    acc = TruncatedSeries.one(ring, cap, caps=mults, nvars=m)
    for k in range(1, cap + 1):
        base = one + TruncatedSeries(QQ, {tuple(k if i == j else 0 for i in range(m)): 1 for j in range(m)},
                                     cap, caps=mults)
        acc = acc * naive_pow(base, mobius_power_sum(k, cap))
    return acc.coefficient(mults)


def conf_symfunc(tau, N: int | None = None, method: str = "binomial") -> SymFunc:
    """``c_tau``: the symmetric function with ``(c_tau, [Y]) = [Conf^tau Y]``.

    ``method="series"`` extracts the coefficient from the full product of naive
    powers with the series engine; the default expands the same product with
    the binomial theorem, which is much cheaper for many labels.
    """
    tau = GeneralizedPartition.coerce(tau)
    cap = max(DEFAULT_ORDER, tau.total) if N is None else N
    if tau.total > cap:
        raise ValueError(f"|tau| = {tau.total} exceeds truncation {cap}")
    if not tau.multiplicities:
        return SymFunc.constant(1, cap)
    if method == "binomial":
        f = _conf_binomial(tau.multiplicities)
    elif method == "series":
        f = _conf_series(tau.multiplicities)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SymFunc._raw(dict(f._terms), cap)


def conf_basis(N: int = DEFAULT_ORDER) -> list[GeneralizedPartition]:
    """Multiplicity partitions of size ``<= N`` in graded, then lexicographic order."""
    out = []
    for d in range(N + 1):
        out.extend(GeneralizedPartition(p) for p in sorted(partitions(d)))
    return out


def expand_in_conf_basis(f: SymFunc) -> dict:
    """Coordinates of ``f`` in the basis ``c_tau``.

    ``c_tau`` is ``h_tau`` plus terms of lower degree, so the change of basis
    is block-triangular by degree: peel off the top homogeneous component in
    the h-basis, subtract, and recurse downwards.
    """
    residual = f
    coords = {}
    for d in range(f.degree(), -1, -1):
        top = to_basis(residual.homogeneous(d), "h")
        for part, c in sorted(top.items()):
            tau = GeneralizedPartition(part)
            coords[tau] = c
            residual = residual - conf_symfunc(tau, f.cap) * c
        if any(sum(k) >= d for k in residual._terms):
            raise ArithmeticError("conf-basis solve left a residual; basis generation is broken")
    if residual:
        raise ArithmeticError("conf-basis solve left a residual; basis generation is broken")
    return {tau: coords[tau] for tau in sorted(coords, key=lambda t: (t.total, t.multiplicities))
            if coords[tau]}


# -- character polynomials ---------------------------------------------------------


def _strip(exps) -> tuple:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


class CharPolynomial:
    """A polynomial in ``X_1, X_2, ...`` (``X_i`` counts i-cycles) over Q."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for exps, c in (terms or {}).items():
            exps = _strip(exps)
            clean[exps] = clean.get(exps, 0) + Fraction(c)
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def X(cls, i: int) -> "CharPolynomial":
        if i < 1:
            raise ValueError("X_i needs i >= 1")
        return cls({(0,) * (i - 1) + (1,): 1})

    @classmethod
    def constant(cls, c) -> "CharPolynomial":
        return cls({(): c})

    @classmethod
    def parse(cls, text: str) -> "CharPolynomial":
        poly = polyparse.parse_polynomial(text)
        terms = {}
        for mono, c in poly.items():
            exps: dict[int, int] = {}
            for name, e in mono:
                m = re.fullmatch(r"X_?(\d+)", name)
                if not m or int(m.group(1)) < 1:
                    raise polyparse.PolynomialSyntaxError(f"unknown variable {name!r}; expected X1, X2, ...")
                exps[int(m.group(1))] = e
            top = max(exps, default=0)
            terms[tuple(exps.get(i, 0) for i in range(1, top + 1))] = c
        return cls(terms)

    def terms(self):
        return sorted(self._terms.items())

    def weighted_degree(self) -> int:
        """Degree with ``deg X_i = i`` (the degree of the matching symmetric function)."""
        return max((sum((i + 1) * e for i, e in enumerate(k)) for k in self._terms), default=0)

    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=0)

    def evaluate(self, cycle_counts) -> Fraction:
        """Value on a permutation with ``cycle_counts[i-1]`` cycles of length i."""
        total = Fraction(0)
        for exps, c in self._terms.items():
            v = c
            for i, e in enumerate(exps):
                v *= (cycle_counts[i] if i < len(cycle_counts) else 0) ** e
            total += v
        return total

    def _coerce(self, other):
        if isinstance(other, CharPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return CharPolynomial.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, v in o._terms.items():
            out[k] = out.get(k, 0) + v
        return CharPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return CharPolynomial({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for ka, va in self._terms.items():
            for kb, vb in o._terms.items():
                n = max(len(ka), len(kb))
                k = tuple((ka[i] if i < len(ka) else 0) + (kb[i] if i < len(kb) else 0) for i in range(n))
                out[k] = out.get(k, 0) + va * vb
        return CharPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = CharPolynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"CharPolynomial({self.render()})"

    def render(self) -> str:
        items = []
        for exps, c in sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = "*".join(f"X{i + 1}" if e == 1 else f"X{i + 1}^{e}" for i, e in enumerate(exps) if e)
            items.append((mono, c))
        return _render_linear(items)


def charpoly_to_symfunc(p: CharPolynomial, N: int = DEFAULT_ORDER) -> SymFunc:
    """Substitute ``X_i -> p'_i`` and expand in the power-sum basis."""
    if p.weighted_degree() > N:
        raise ValueError(f"character polynomial of degree {p.weighted_degree()} exceeds truncation {N}")
    out = SymFunc({}, N)
    for exps, c in p._terms.items():
        term = SymFunc.constant(c, N)
        for i, e in enumerate(exps):
            for _ in range(e):
                term = term * mobius_power_sum(i + 1, N)
        out = out + term
    return out


def binomial_charpoly(lbar) -> CharPolynomial:
    """``prod_i binom(X_i, l_i)``."""
    out = CharPolynomial.constant(1)
    for i, l in enumerate(lbar):
        if l < 0:
            raise ValueError("binomial orders must be non-negative")
        x = CharPolynomial.X(i + 1)
        for j in range(l):
            out = out * (x - j) * Fraction(1, j + 1)
    return out
