"""Closed-point census, configuration counts and cycle-type sums over ``F_q``.

A configuration of ``n`` points defined over ``F_q`` is a set of distinct
closed points whose degrees sum to ``n``; the cycle type of Frobenius on its
geometric points is the multiset of those degrees.  A labelling by a
generalized partition ``tau`` splits the configuration into Frobenius-stable
label classes of sizes ``l_j`` plus a free remainder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from itertools import product as _cartesian
from math import comb, factorial

from ..arith import divisors, mobius, partitions
from ..series import QQ, TruncatedSeries
from ..symfunc import GeneralizedPartition
from .field import field_of_order
from .varieties import degree_histogram, enumerate_points, frobenius_point, parse_spec

__all__ = [
    "ClosedPointTable",
    "CensusError",
    "closed_point_census",
    "closed_points",
    "enumerate_configurations",
    "conf_census",
    "chen_lhs",
    "chen_rhs",
    "ChenReport",
    "verify_chen",
]


class CensusError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ClosedPointTable:
    """Closed points of each degree ``k <= K`` of a variety over ``F_q``.

    ``point_counts[k] = #V(F_{q^k})``; ``mobius`` and ``orbits`` are the two
    independent counts of degree-``k`` closed points, which must agree.
    """

    variety: object
    q: int
    K: int
    point_counts: dict
    mobius: dict
    orbits: dict

    @property
    def counts(self) -> dict:
        return dict(self.orbits)

    def __getitem__(self, k: int) -> int:
        if not 1 <= k <= self.K:
            raise CensusError(f"census only covers degrees 1..{self.K}, asked for {k}")
        return self.orbits[k]

    def to_json(self) -> dict:
        return {"variety": self.variety.to_json(), "q": self.q, "K": self.K,
                "points": {str(k): v for k, v in sorted(self.point_counts.items())},
                "closed_points": {str(k): v for k, v in sorted(self.orbits.items())}}


def closed_point_census(V, q: int, K: int) -> ClosedPointTable:
    """Both counts of degree-``k`` closed points, ``k <= K``, checked against each other."""
    V = parse_spec(V)
    field_of_order(q)  # validates q
    if K < 0:
        raise ValueError("K must be non-negative")
    hists = {k: degree_histogram(V, q, k) for k in range(1, K + 1)}
    points = {k: sum(h) for k, h in hists.items()}
    by_mobius, by_orbit = {}, {}
    for k in range(1, K + 1):
        total = sum(mobius(k // d) * points[d] for d in divisors(k))
        if total % k:
            raise CensusError(f"Moebius count {total}/{k} is not integral at degree {k}")
        exact = hists[k][k]
        if exact % k:
            raise CensusError(f"{exact} points of exact degree {k} do not split into orbits")
        by_mobius[k], by_orbit[k] = total // k, exact // k
        if by_mobius[k] != by_orbit[k] or by_orbit[k] < 0:
            raise CensusError(f"degree {k}: Moebius count {by_mobius[k]} != orbit count {by_orbit[k]}")
    return ClosedPointTable(V, q, K, points, by_mobius, by_orbit)


def _table(V, q, n, table):
    if table is None:
        return closed_point_census(V, q, n)
    if table.K < n:
        raise CensusError(f"census depth {table.K} is insufficient for degree {n}")
    return table


def _degree_counts(rho) -> dict:
    out: dict[int, int] = {}
    for k in rho:
        out[k] = out.get(k, 0) + 1
    return out


def _falling(m: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= m - i
    return out


def _count_labelled(M: dict, groups: list) -> int:
    """Ways to pick disjoint groups of closed points: ``groups[g][k]`` of degree ``k`` each."""
    need: dict[int, int] = {}
    denom = 1
    for g in groups:
        for k, a in g.items():
            need[k] = need.get(k, 0) + a
            denom *= factorial(a)
    total = 1
    for k, n in need.items():
        total *= _falling(M.get(k, 0), n)
        if not total:
            return 0
    return total // denom


def conf_census(V, q: int, tau, n_free: int, table: ClosedPointTable | None = None,
                method: str = "census") -> int:
    """Number of ``F_q``-configurations labelled by ``tau`` plus ``n_free`` free points.

    Each label class of size ``l_j`` is a Frobenius-stable set of geometric
    points (a union of closed points with degrees summing to ``l_j``).
    ``method="census"`` counts the choices of distinct closed points from the
    census; ``method="enumerate"`` lists configurations explicitly.
    """
    tau = GeneralizedPartition.coerce(tau)
    if n_free < 0:
        raise ValueError("n_free must be non-negative")
    n = tau.total + n_free
    if method == "enumerate":
        return sum(_labelings(config, tau.multiplicities, n_free) for config in enumerate_configurations(V, q, n))
    if method != "census":
        raise ValueError(f"unknown method {method!r}")
    if n == 0:
        return 1
    t = _table(V, q, n, table)
    M = {k: t[k] for k in range(1, n + 1)}
    total = 0
    sizes = tau.multiplicities + (n_free,)
    for choice in _cartesian(*(partitions(l) for l in sizes)):
        total += _count_labelled(M, [_degree_counts(rho) for rho in choice])
    return total


def _labelings(config, mults: tuple, n_free: int) -> int:
    """Assignments of the closed points of ``config`` to label classes of the given sizes."""
    degs = [len(orbit) for orbit in config]
    sizes = list(mults) + [n_free]

    def go(i, left):
        if i == len(degs):
            return 1 if not any(left) else 0
        out = 0
        for j, room in enumerate(left):
            if degs[i] <= room:
                left[j] -= degs[i]
                out += go(i + 1, left)
                left[j] += degs[i]
        return out

    return go(0, sizes)


def closed_points(V, q: int, k: int) -> list:
    """Closed points of exact degree ``k``, each as a sorted tuple of its geometric points."""
    V = parse_spec(V)
    F = field_of_order(q ** k)
    seen, out = set(), []
    for pt in enumerate_points(V, F):
        if pt in seen:
            continue
        orbit = [pt]
        nxt = frobenius_point(pt, F, q)
        while nxt != pt:
            orbit.append(nxt)
            nxt = frobenius_point(nxt, F, q)
        seen.update(orbit)
        if len(orbit) == k:
            out.append(tuple(sorted(orbit)))
    return out


def enumerate_configurations(V, q: int, n: int):
    """Yield every ``F_q``-configuration of ``n`` points as a tuple of closed points."""
    by_degree = {k: closed_points(V, q, k) for k in range(1, n + 1)}

    def go(k, left):
        if left == 0:
            yield ()
            return
        if k > left:
            return
        pool = by_degree[k]
        for f in range(left // k + 1):
            for chosen in combinations(pool, f):
                for rest in go(k + 1, left - f * k):
                    yield chosen + rest

    yield from go(1, n)


def _cycle_type(config) -> dict:
    return _degree_counts(len(orbit) for orbit in config)


def _binom_weight(cycles: dict, lbar) -> int:
    out = 1
    for i, l in enumerate(lbar):
        if l:
            out *= comb(cycles.get(i + 1, 0), l)
    return out


def chen_lhs(V, q: int, lbar, n: int, method: str = "enumerate",
             table: ClosedPointTable | None = None) -> int:
    """``sum over F_q-configurations c of prod_i binom(#i-cycles of sigma_c, l_i)``."""
    lbar = tuple(lbar)
    if method == "enumerate":
        return sum(_binom_weight(_cycle_type(c), lbar) for c in enumerate_configurations(V, q, n))
    if method != "census":
        raise ValueError(f"unknown method {method!r}")
    if n == 0:
        return _binom_weight({}, lbar)
    t = _table(V, q, n, table)
    total = 0
    for rho in partitions(n):
        f = _degree_counts(rho)
        count = 1
        for k, a in f.items():
            count *= comb(t[k], a)
        total += count * _binom_weight(f, lbar)
    return total


def chen_rhs(table: ClosedPointTable, lbar, N: int) -> list:
    """Coefficients of ``(Z(t)/Z(t^2)) prod_k binom(M_k, l_k) (t^k/(1+t^k))^{l_k}`` up to ``t^N``."""
    if table.K < N:
        raise CensusError(f"census depth {table.K} is insufficient for order {N}")
    t1 = TruncatedSeries(QQ, {(1,): 1}, N)
    z = TruncatedSeries.one(QQ, N, nvars=1)
    for k in range(1, N + 1):
        # (1 - t^k)^{-M_k} as a polynomial series
        base = TruncatedSeries(QQ, {(0,): 1, (k,): -1}, N)
        z = z * base.inverse() ** table[k]
    out = z * z.substitute_powers(2).inverse()
    for i, l in enumerate(tuple(lbar)):
        if not l:
            continue
        k = i + 1
        tk = t1 ** k
        Mk = table[k] if k <= N else 0
        out = out * (tk * (tk + 1).inverse()) ** l
        out = out.scale(Fraction(comb(Mk, l)))
    return [out.coefficient((n,)) for n in range(N + 1)]


@dataclass
class ChenReport:
    variety: object
    q: int
    lbar: tuple
    N: int
    rows: list = field(default_factory=list)  # (n, lhs, rhs, symbolic or None)
    asserted: bool = True

    @property
    def ok(self) -> bool:
        return self.first_failure is None

    @property
    def first_failure(self):
        for n, lhs, rhs, sym in self.rows:
            if lhs != rhs or (sym is not None and sym != lhs):
                return n
        return None

    def to_json(self) -> dict:
        return {
            "variety": self.variety.to_json(), "q": self.q, "lbar": list(self.lbar), "N": self.N,
            "ok": self.ok, "asserted": self.asserted, "first_failure": self.first_failure,
            "rows": [{"n": n, "lhs": lhs, "rhs": str(rhs), "symbolic": None if s is None else str(s)}
                     for n, lhs, rhs, s in self.rows],
        }


def verify_chen(V, q: int, lbar, N: int, symbolic: bool = True) -> ChenReport:
    """Compare the enumerated cycle-type sums with the census series and the motivic formula.

    Identities are asserted only for builtin-style varieties; for other
    specs (possibly singular) the report is informational (``asserted=False``).
    """
    V = parse_spec(V)
    lbar = tuple(lbar)
    table = closed_point_census(V, q, N)
    rhs = chen_rhs(table, lbar, N)
    sym = [None] * (N + 1)
    if symbolic and sum((i + 1) * l for i, l in enumerate(lbar)) <= N:
        from ..motcalc import charpoly_genfunc, class_from_spec

        try:
            Y = class_from_spec(V, "count")
        except ValueError:
            Y = None
        if Y is not None:
            series = charpoly_genfunc(lbar, Y, N)
            sym = [series.coefficient((n,)).evaluate(q) for n in range(N + 1)]
    report = ChenReport(V, q, lbar, N, asserted=V.is_builtin_like)
    for n in range(N + 1):
        report.rows.append((n, chen_lhs(V, q, lbar, n), rhs[n], sym[n]))
    return report
