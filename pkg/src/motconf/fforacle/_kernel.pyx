# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled finite-field hot loops; see ``_kernel_py`` for the contract."""

from array import array


def build_tables(long long p, long long e, modulus):
    cdef long long Q = p ** e
    cdef long long i, j, v, w, top
    cdef long long[:] mod = array("q", [int(c) % p for c in modulus])
    cdef long long[:] digits = array("q", [1] + [0] * (e - 1))
    cdef long long[:] exp = array("q", [0]) * (Q - 1)
    cdef long long[:] log = array("q", [-1]) * Q
    cdef long long[:] zech = array("q", [-1]) * (Q - 1)
    for i in range(Q - 1):
        v = 0
        for j in range(e - 1, -1, -1):
            v = v * p + digits[j]
        if log[v] != -1:
            raise ValueError("modulus is not primitive: x has order < Q - 1")
        exp[i] = v
        log[v] = i
        top = digits[e - 1]
        for j in range(e - 1, 0, -1):
            digits[j] = ((digits[j - 1] - top * mod[j]) % p + p) % p
        digits[0] = ((-top * mod[0]) % p + p) % p
    for i in range(Q - 1):
        v = exp[i]
        w = v - v % p + (v % p + 1) % p
        zech[i] = log[w] if w else -1
    return list(exp), list(log), list(zech)


def element_degrees(long long Q, long long q, long long k):
    cdef long long m = Q - 1
    cdef long long c, t, nd
    divs = [d for d in range(1, k + 1) if k % d == 0]
    nd = len(divs)
    cdef long long[:] dv = array("q", divs)
    cdef long long[:] steps = array("q", [m // (q ** d - 1) for d in divs])
    cdef long long[:] out = array("q", [1]) * Q
    for c in range(m):
        for t in range(nd):
            if c % steps[t] == 0:
                out[c + 1] = dv[t]
                break
    return list(out)


def degree_histogram(long long Q, long long q, long long k, bint include_zero=True):
    cdef long long code
    degs = element_degrees(Q, q, k)
    cdef long long[:] dg = array("q", degs)
    cdef long long[:] hist = array("q", [0]) * (k + 1)
    for code in range(0 if include_zero else 1, Q):
        hist[dg[code]] += 1
    return list(hist)


cdef inline long long _gcd(long long a, long long b):
    while b:
        a, b = b, a % b
    return a


cdef long long _value(long long[:] coef, long long[:] exps, long long lo, long long hi,
                      long long[:] x, long long nvars, long long m, long long[:] zech):
    cdef long long acc = 0, t, i, lg, ei, a, z, base
    cdef bint zero
    for t in range(lo, hi):
        if coef[t] == 0:
            continue
        lg = coef[t] - 1
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
            z = zech[((lg - a) % m + m) % m]
            acc = 0 if z < 0 else (a + z) % m + 1
    return acc


def scan_system(long long Q, long long nvars, zech, degs, eq_coef, eq_exps, eq_start,
                ineq_coef, ineq_exps, ineq_start, long long k, bint collect):
    cdef long long m = Q - 1
    cdef long long[:] zc = array("q", zech)
    cdef long long[:] dg = array("q", degs)
    cdef long long[:] ec = array("q", list(eq_coef) or [0])
    cdef long long[:] ee = array("q", list(eq_exps) or [0])
    cdef long long[:] es = array("q", eq_start)
    cdef long long[:] ic = array("q", list(ineq_coef) or [0])
    cdef long long[:] ie = array("q", list(ineq_exps) or [0])
    cdef long long[:] ist = array("q", ineq_start)
    cdef long long neq = len(eq_start) - 1, nineq = len(ineq_start) - 1
    cdef long long[:] x = array("q", [0]) * max(nvars, 1)
    cdef long long[:] hist = array("q", [0]) * (k + 1)
    cdef long long i, j, d, g, total = 1
    cdef bint ok
    points = []
    for i in range(nvars):
        total *= Q
    cdef long long idx
    for idx in range(total):
        ok = True
        for j in range(neq):
            if _value(ec, ee, es[j], es[j + 1], x, nvars, m, zc) != 0:
                ok = False
                break
        if ok:
            for j in range(nineq):
                if _value(ic, ie, ist[j], ist[j + 1], x, nvars, m, zc) == 0:
                    ok = False
                    break
        if ok:
            d = 1
            for i in range(nvars):
                g = _gcd(d, dg[x[i]])
                d = d // g * dg[x[i]]
            hist[d] += 1
            if collect:
                points.append(tuple([x[i] for i in range(nvars)]))
        # odometer, last coordinate fastest
        i = nvars - 1
        while i >= 0:
            x[i] += 1
            if x[i] < Q:
                break
            x[i] = 0
            i -= 1
    return list(hist), points
