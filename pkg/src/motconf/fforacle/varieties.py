"""Variety specifications and their points over finite fields.

A spec is a builtin (point, affine space, projective space, torus), an
affine system of polynomial equations and inequations with integer
coefficients, or a disjoint union, product or complement of specs.  JSON
forms::

    {"builtin": "affine_space", "dim": 1}
    {"affine_system": {"ambient": 2, "equations": ["y^2-x^3-x"], "inequations": []}}
    {"disjoint_union": [spec, ...]}
    {"product": [spec, ...]}
    {"complement": {"base": spec, "removed": spec}}

For each, :func:`degree_histogram` returns ``hist[d]``, the number of points
of ``V(F_{q^k})`` whose coordinates generate ``F_{q^d}`` over ``F_q``.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _cartesian

from ..arith import lcm
from ..polyparse import PolynomialSyntaxError, parse_polynomial, variables
from . import kernel
from .field import FiniteField, field_of_order

__all__ = [
    "VarietySpec",
    "Builtin",
    "AffineSystem",
    "DisjointUnion",
    "Product",
    "Complement",
    "SpecError",
    "BudgetExceeded",
    "parse_spec",
    "load_spec",
    "builtin_spec",
    "enumeration_budget",
    "enumerate_points",
    "degree_histogram",
    "frobenius_point",
]

DEFAULT_BUDGET = 10 ** 7


class SpecError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def enumeration_budget() -> int:
    raw = os.environ.get("MOTCONF_BUDGET")
    if not raw:
        return DEFAULT_BUDGET
    try:
        value = int(float(raw))
    except ValueError:
        raise SpecError(f"MOTCONF_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise SpecError("MOTCONF_BUDGET must be positive")
    return value


def _check_budget(candidates: int, what: str):
    budget = enumeration_budget()
    if candidates > budget:
        raise BudgetExceeded(f"{what}: {candidates} candidates exceed the enumeration budget {budget}"
                             " (raise MOTCONF_BUDGET to allow it)")


class VarietySpec:
    dim: int

    @property
    def is_builtin_like(self) -> bool:
        """Only builtins, their products and unions: smoothness is known."""
        return False

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Builtin(VarietySpec):
    name: str
    dim: int = 0

    def __post_init__(self):
        if self.name not in ("point", "affine_space", "projective_space", "torus"):
            raise SpecError(f"unknown builtin {self.name!r}")
        if self.dim < 0:
            raise SpecError("dimension must be non-negative")
        if self.name == "point" and self.dim:
            raise SpecError("the point has dimension 0")

    @property
    def is_builtin_like(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {"builtin": self.name, "dim": self.dim}


@dataclass(frozen=True)
class AffineSystem(VarietySpec):
    ambient: int
    equations: tuple = ()
    inequations: tuple = ()
    variables: tuple = ()

    def __post_init__(self):
        if self.ambient < 0:
            raise SpecError("ambient dimension must be non-negative")
        for text in self.equations + self.inequations:
            try:
                poly = parse_polynomial(text)
            except PolynomialSyntaxError as exc:
                raise SpecError(str(exc)) from None
            if any(c.denominator != 1 for c in poly.values()):
                raise SpecError(f"equation {text!r} must have integer coefficients")
        names = self.names
        if len(names) != self.ambient:
            raise SpecError(f"expected {self.ambient} variables, found {list(names)}")

    @property
    def names(self) -> tuple:
        if self.variables:
            return tuple(self.variables)
        seen = set()
        for text in self.equations + self.inequations:
            seen |= variables(parse_polynomial(text))
        if all(re.fullmatch(r"x\d+", n) for n in seen):
            top = max((int(n[1:]) for n in seen), default=0)
            if top <= self.ambient:
                return tuple(f"x{i}" for i in range(1, self.ambient + 1))
        names = sorted(seen)
        # pad with unused coordinates
        i = 1
        while len(names) < self.ambient:
            cand = f"_z{i}"
            if cand not in seen:
                names.append(cand)
            i += 1
        return tuple(names)

    @property
    def dim(self) -> int:
        # expected dimension; only informational
        return max(self.ambient - len(self.equations), 0)

    def to_json(self) -> dict:
        out = {"ambient": self.ambient, "equations": list(self.equations),
               "inequations": list(self.inequations)}
        if self.variables:
            out["variables"] = list(self.variables)
        return {"affine_system": out}


@dataclass(frozen=True)
class DisjointUnion(VarietySpec):
    parts: tuple

    @property
    def dim(self) -> int:
        return max((p.dim for p in self.parts), default=0)

    @property
    def is_builtin_like(self) -> bool:
        return all(p.is_builtin_like for p in self.parts)

    def to_json(self) -> dict:
        return {"disjoint_union": [p.to_json() for p in self.parts]}


@dataclass(frozen=True)
class Product(VarietySpec):
    parts: tuple

    @property
    def dim(self) -> int:
        return sum(p.dim for p in self.parts)

    @property
    def is_builtin_like(self) -> bool:
        return all(p.is_builtin_like for p in self.parts)

    def to_json(self) -> dict:
        return {"product": [p.to_json() for p in self.parts]}


@dataclass(frozen=True)
class Complement(VarietySpec):
    base: VarietySpec
    removed: VarietySpec

    @property
    def dim(self) -> int:
        return self.base.dim

    def to_json(self) -> dict:
        return {"complement": {"base": self.base.to_json(), "removed": self.removed.to_json()}}


def builtin_spec(text: str) -> VarietySpec:
    """``"affine_space:2"``, ``"point"``, or products joined by ``x``."""
    factors = [s.strip() for s in text.replace("*", " x ").split(" x ")]
    specs = []
    for f in factors:
        name, _, d = f.partition(":")
        name = name.strip()
        try:
            dim = int(d) if d else (0 if name == "point" else 1)
        except ValueError:
            raise SpecError(f"bad dimension in builtin {f!r}") from None
        specs.append(Builtin(name, dim))
    return specs[0] if len(specs) == 1 else Product(tuple(specs))


def parse_spec(obj) -> VarietySpec:
    if isinstance(obj, VarietySpec):
        return obj
    if isinstance(obj, str):
        return builtin_spec(obj)
    if not isinstance(obj, dict) or len(obj) == 0:
        raise SpecError(f"cannot read variety spec {obj!r}")
    if "builtin" in obj:
        try:
            return Builtin(obj["builtin"], int(obj.get("dim", 0)))
        except (TypeError, ValueError) as exc:
            raise SpecError(str(exc)) from None
    if "affine_system" in obj:
        body = obj["affine_system"]
        if not isinstance(body, dict) or "ambient" not in body:
            raise SpecError("affine_system needs an 'ambient' dimension")
        return AffineSystem(int(body["ambient"]), tuple(body.get("equations", ())),
                            tuple(body.get("inequations", ())), tuple(body.get("variables", ())))
    if "disjoint_union" in obj:
        return DisjointUnion(tuple(parse_spec(p) for p in obj["disjoint_union"]))
    if "product" in obj:
        return Product(tuple(parse_spec(p) for p in obj["product"]))
    if "complement" in obj:
        body = obj["complement"]
        if not isinstance(body, dict) or not {"base", "removed"} <= set(body):
            raise SpecError("complement needs 'base' and 'removed'")
        return Complement(parse_spec(body["base"]), parse_spec(body["removed"]))
    raise SpecError(f"unknown spec keys {sorted(obj)}")


def load_spec(path: str) -> VarietySpec:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read spec file {path}: {exc}") from None
    return parse_spec(data)


# -- compilation of affine systems -----------------------------------------------------


def _compile(system: AffineSystem, F: FiniteField, texts):
    names = system.names
    index = {n: i for i, n in enumerate(names)}
    coef, exps, start = [], [], [0]
    for text in texts:
        for mono, c in sorted(parse_polynomial(text).items()):
            c = int(c) % F.p
            if not c:
                continue
            coef.append(F.to_code(F.from_int(c)))
            row = [0] * system.ambient
            for name, e in mono:
                row[index[name]] += e
            exps.extend(row)
        start.append(len(coef))
    return coef, exps, start


def _scan(system: AffineSystem, F: FiniteField, base_q: int, collect: bool):
    _check_budget(F.q ** system.ambient, f"affine system over F_{F.q}")
    eq = _compile(system, F, system.equations)
    ineq = _compile(system, F, system.inequations)
    degs = F.degree_codes(base_q)
    k = len(degs) and _degree(F.q, base_q)
    return kernel.scan_system(F.q, system.ambient, F.zech, degs, *eq, *ineq, k, collect)


def _degree(Q: int, q: int) -> int:
    k, m = 0, 1
    while m < Q:
        m *= q
        k += 1
    if m != Q:
        raise ValueError(f"F_{Q} does not contain F_{q}")
    return k


# -- point enumeration -------------------------------------------------------------------


def _enum(spec: VarietySpec, F: FiniteField, base_q: int):
    if isinstance(spec, Builtin):
        d, elems = spec.dim, range(F.q)
        if spec.name == "point":
            return [()]
        if spec.name == "affine_space":
            return list(_cartesian(elems, repeat=d))
        if spec.name == "torus":
            return list(_cartesian(range(1, F.q), repeat=d))
        # projective space: first nonzero coordinate normalized to 1
        out = []
        for lead in range(d + 1):
            for tail in _cartesian(elems, repeat=d - lead):
                out.append((0,) * lead + (1,) + tail)
        return out
    if isinstance(spec, AffineSystem):
        _, pts = _scan(spec, F, base_q, True)
        return [tuple(F.from_code(c) for c in p) for p in pts]
    if isinstance(spec, DisjointUnion):
        return [("u", i, pt) for i, part in enumerate(spec.parts) for pt in _enum(part, F, base_q)]
    if isinstance(spec, Product):
        return list(_cartesian(*(_enum(p, F, base_q) for p in spec.parts)))
    if isinstance(spec, Complement):
        removed = set(_enum(spec.removed, F, base_q))
        return [pt for pt in _enum(spec.base, F, base_q) if pt not in removed]
    raise TypeError(f"not a variety spec: {spec!r}")


def _candidates(spec: VarietySpec, Q: int) -> int:
    if isinstance(spec, Builtin):
        return Q ** spec.dim if spec.name != "projective_space" else sum(Q ** i for i in range(spec.dim + 1))
    if isinstance(spec, AffineSystem):
        return Q ** spec.ambient
    if isinstance(spec, DisjointUnion):
        return sum(_candidates(p, Q) for p in spec.parts)
    if isinstance(spec, Product):
        out = 1
        for p in spec.parts:
            out *= _candidates(p, Q)
        return out
    if isinstance(spec, Complement):
        return _candidates(spec.base, Q) + _candidates(spec.removed, Q)
    raise TypeError(f"not a variety spec: {spec!r}")


def enumerate_points(spec, F: FiniteField) -> list:
    """All points of ``spec`` over ``F``, in a deterministic order.

    Points are tuples of field elements; products nest them, unions tag them
    as ``("u", index, point)``, projective points are normalized so the first
    nonzero coordinate is 1.
    """
    spec = parse_spec(spec)
    _check_budget(_candidates(spec, F.q), f"enumerating {spec.to_json()} over F_{F.q}")
    return _enum(spec, F, F.q)


def frobenius_point(pt, F: FiniteField, base_q: int):
    """Apply ``x -> x^base_q`` to every coordinate."""
    if isinstance(pt, tuple):
        if pt and pt[0] == "u":
            return ("u", pt[1], frobenius_point(pt[2], F, base_q))
        return tuple(frobenius_point(c, F, base_q) for c in pt)
    return F.pow(pt, base_q)


def _as_system(spec: VarietySpec):
    if isinstance(spec, AffineSystem):
        return spec
    if isinstance(spec, Builtin) and spec.name in ("affine_space", "torus"):
        names = tuple(f"x{i}" for i in range(1, spec.dim + 1))
        ineq = names if spec.name == "torus" else ()
        return AffineSystem(spec.dim, (), ineq, names)
    return None


def _intersection(a: VarietySpec, b: VarietySpec):
    """``a`` and ``b`` as one affine system, when both are affine in the same coordinates."""
    if not (isinstance(a, AffineSystem) or isinstance(b, AffineSystem)):
        return None
    sa, sb = _as_system(a), _as_system(b)
    if sa is None or sb is None or sa.ambient != sb.ambient or sa.names != sb.names:
        return None
    return AffineSystem(sa.ambient, sa.equations + sb.equations, sa.inequations + sb.inequations, sa.names)


# -- degree histograms ---------------------------------------------------------------------


def _lcm_convolve(a: list, b: list) -> list:
    k = len(a) - 1
    out = [0] * (k + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[lcm(i, j)] += x * y
    return out


def _point_hist(k: int) -> list:
    out = [0] * (k + 1)
    out[1] = 1
    return out


@lru_cache(maxsize=None)
def _element_hist(q: int, k: int, nonzero: bool) -> tuple:
    F = field_of_order(q ** k)
    return tuple(kernel.degree_histogram(F.q, q, k, not nonzero))


def _power_hist(q: int, k: int, d: int, nonzero: bool) -> list:
    out = _point_hist(k)
    elem = list(_element_hist(q, k, nonzero))
    for _ in range(d):
        out = _lcm_convolve(out, elem)
    return out


def degree_histogram(spec, q: int, k: int) -> list:
    """``hist[d]`` for ``d | k``: points of ``spec(F_{q^k})`` of exact degree ``d`` over ``F_q``."""
    spec = parse_spec(spec)
    return list(_hist(spec, q, k))


@lru_cache(maxsize=None)
def _hist(spec: VarietySpec, q: int, k: int) -> tuple:
    if isinstance(spec, Builtin):
        if spec.name == "point":
            return tuple(_point_hist(k))
        if spec.name == "affine_space":
            return tuple(_power_hist(q, k, spec.dim, False))
        if spec.name == "torus":
            return tuple(_power_hist(q, k, spec.dim, True))
        out = [0] * (k + 1)
        for i in range(spec.dim + 1):
            out = [a + b for a, b in zip(out, _power_hist(q, k, i, False))]
        return tuple(out)
    if isinstance(spec, AffineSystem):
        hist, _ = _scan(spec, field_of_order(q ** k), q, False)
        return tuple(hist)
    if isinstance(spec, DisjointUnion):
        out = [0] * (k + 1)
        for part in spec.parts:
            out = [a + b for a, b in zip(out, _hist(part, q, k))]
        return tuple(out)
    if isinstance(spec, Product):
        out = _point_hist(k)
        for part in spec.parts:
            out = _lcm_convolve(out, list(_hist(part, q, k)))
        return tuple(out)
    if isinstance(spec, Complement):
        base = _hist(spec.base, q, k)
        meet = _intersection(spec.base, spec.removed)
        removed = _hist(meet if meet is not None else spec.removed, q, k)
        out = [a - b for a, b in zip(base, removed)]
        if any(x < 0 for x in out):
            raise SpecError("complement: the removed part is not contained in the base")
        return tuple(out)
    raise TypeError(f"not a variety spec: {spec!r}")
