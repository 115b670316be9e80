"""Pure-Python versions of the finite-field hot loops (same API as ``_kernel``).

Elements of ``F_Q`` appear in two encodings.  Integers ``0..Q-1`` are
polynomials in the generator ``x`` with base-``p`` digits as coefficients.
Log codes are ``0`` for zero and ``c + 1`` for ``x^c``; sums use Zech
logarithms ``zech[n] = log(1 + x^n)`` (``-1`` when ``1 + x^n = 0``).
"""

from __future__ import annotations

from math import gcd


def build_tables(p: int, e: int, modulus):
    """``(exp, log, zech)`` for ``F_{p^e} = F_p[x]/(modulus)``; ``x`` must be primitive.

    ``modulus`` lists the coefficients ``c_0..c_{e-1}`` of the monic modulus.
    """
    Q = p ** e
    mod = [int(c) % p for c in modulus]
    exp = [0] * (Q - 1)
    log = [-1] * Q
    digits = [1] + [0] * (e - 1)
    for i in range(Q - 1):
        v = 0
        for j in range(e - 1, -1, -1):
            v = v * p + digits[j]
        if log[v] != -1:
            raise ValueError("modulus is not primitive: x has order < Q - 1")
        exp[i] = v
        log[v] = i
        # multiply by x: shift, then reduce x^e = -sum c_j x^j
        top = digits[e - 1]
        for j in range(e - 1, 0, -1):
            digits[j] = (digits[j - 1] - top * mod[j]) % p
        digits[0] = (-top * mod[0]) % p
    zech = [-1] * (Q - 1)
    for n in range(Q - 1):
        v = exp[n]
        w = v - v % p + (v % p + 1) % p
        zech[n] = log[w] if w else -1
    return exp, log, zech


def element_degrees(Q: int, q: int, k: int):
    """Degree over ``F_q`` of each log code of ``F_Q`` (``Q = q^k``)."""
    m = Q - 1
    divs = [d for d in range(1, k + 1) if k % d == 0]
    levels = [(d, m // (q ** d - 1)) for d in divs]
    out = [1] * Q
    for c in range(m):
        for d, step in levels:
            if c % step == 0:
                out[c + 1] = d
                break
    return out


def degree_histogram(Q: int, q: int, k: int, include_zero: bool = True):
    """``hist[d]`` = number of elements of ``F_Q`` of exact degree ``d`` over ``F_q``."""
    hist = [0] * (k + 1)
    degs = element_degrees(Q, q, k)
    for code in range(0 if include_zero else 1, Q):
        hist[degs[code]] += 1
    return hist


def _lcm(a, b):
    return a // gcd(a, b) * b


def scan_system(Q: int, nvars: int, zech, degs, eq_coef, eq_exps, eq_start,
                ineq_coef, ineq_exps, ineq_start, k: int, collect: bool):
    """Scan ``F_Q^nvars`` for common zeros of the equations avoiding the inequations.

    Polynomials are flattened: term ``t`` has log-code coefficient ``coef[t]``
    and exponents ``exps[t*nvars:(t+1)*nvars]``; polynomial ``i`` owns terms
    ``start[i]..start[i+1]-1``.  Returns ``(hist, points)`` where ``hist[d]``
    counts solutions of exact degree ``d`` and ``points`` holds the log-code
    tuples of the solutions when ``collect`` is set.
    """
    m = Q - 1
    hist = [0] * (k + 1)
    points = []
    x = [0] * nvars

    def value(coef, exps, lo, hi):
        acc = 0
        for t in range(lo, hi):
            c = coef[t]
            if c == 0:
                continue
            lg = c - 1
            zero = False
            base = t * nvars
            for i in range(nvars):
                ei = exps[base + i]
                if ei:
                    if x[i] == 0:
                        zero = True
                        break
                    lg += ei * (x[i] - 1)
            if zero:
                continue
            lg %= m
            if acc == 0:
                acc = lg + 1
            else:
                a = acc - 1
                z = zech[(lg - a) % m]
                acc = 0 if z < 0 else (a + z) % m + 1
        return acc

    neq, nineq = len(eq_start) - 1, len(ineq_start) - 1
    total = Q ** nvars
    for idx in range(total):
        r = idx
        for i in range(nvars - 1, -1, -1):
            x[i] = r % Q
            r //= Q
        ok = True
        for j in range(neq):
            if value(eq_coef, eq_exps, eq_start[j], eq_start[j + 1]) != 0:
                ok = False
                break
        if ok:
            for j in range(nineq):
                if value(ineq_coef, ineq_exps, ineq_start[j], ineq_start[j + 1]) == 0:
                    ok = False
                    break
        if not ok:
            continue
        d = 1
        for i in range(nvars):
            d = _lcm(d, degs[x[i]])
        hist[d] += 1
        if collect:
            points.append(tuple(x))
    return hist, points
