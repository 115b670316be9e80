"""Finite fields ``F_{p^e}`` with table-driven arithmetic.

The modulus is the first monic primitive polynomial of degree ``e`` in a
fixed enumeration order, so fields are identical across runs.  Its
irreducibility is certified by Rabin's test and primitivity by checking the
order of ``x``.
"""

from __future__ import annotations

from functools import lru_cache

from ..arith import is_prime, prime_factors, prime_power
from . import kernel

__all__ = ["FiniteField", "field_of_order", "is_irreducible", "is_primitive", "find_primitive_modulus"]

# Polynomials over F_p are coefficient lists, lowest degree first, no trailing zeros.


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    inv = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(_trim(out), m, p)


def _ppowmod(a, n, m, p):
    out, base = [1], _pmod(a, m, p)
    while n:
        if n & 1:
            out = _pmulmod(out, base, m, p)
        n >>= 1
        if n:
            base = _pmulmod(base, base, m, p)
    return out


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f, p: int) -> bool:
    """Rabin's test for a monic ``f`` (coefficients lowest first) over ``F_p``."""
    f = _trim([c % p for c in f])
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p ** e, f, p) != _pmod(x, f, p):
        return False
    for r in prime_factors(e):
        h = _ppowmod(x, p ** (e // r), f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, _trim(diff), p)) != 1:
            return False
    return True


def is_primitive(f, p: int) -> bool:
    """``x`` generates the multiplicative group of ``F_p[x]/(f)``."""
    if not is_irreducible(f, p):
        return False
    e = len(_trim([c % p for c in f])) - 1
    order = p ** e - 1
    for r in prime_factors(order):
        if _ppowmod([0, 1], order // r, f, p) == [1]:
            return False
    return True


@lru_cache(maxsize=None)
def find_primitive_modulus(p: int, e: int) -> tuple:
    """Smallest monic primitive polynomial of degree ``e``, ordered by ``sum c_i p^i``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be positive")
    for v in range(p ** e):
        lower = [(v // p ** i) % p for i in range(e)]
        f = lower + [1]
        if lower[0] and is_primitive(f, p):
            return tuple(f)
    raise ArithmeticError(f"no primitive polynomial of degree {e} over F_{p}")


class FiniteField:
    """``F_q`` with ``q = p^e``; elements are ints ``0..q-1`` (base-``p`` digits)."""

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.p, self.e = p, e
        self.q = p ** e
        self.modulus = find_primitive_modulus(p, e)
        if not is_irreducible(self.modulus, p):
            raise ArithmeticError("modulus failed the irreducibility check")
        self._exp, self._log, self._zech = kernel.build_tables(p, e, self.modulus[:-1])
        self._deg_cache: dict[int, list] = {}

    def __repr__(self):
        return f"FiniteField({self.p}^{self.e})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def __len__(self):
        return self.q

    def elements(self):
        return range(self.q)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    @property
    def generator(self) -> int:
        return self._exp[1 % (self.q - 1)] if self.q > 2 else 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        out, place, p = 0, 1, self.p
        while a or b:
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def neg(self, a: int) -> int:
        out, place, p = 0, 1, self.p
        while a:
            out += ((-(a % p)) % p) * place
            a //= p
            place *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frobenius(self, a: int, base_q: int | None = None) -> int:
        """``a^base_q`` (``base_q`` defaults to ``p``)."""
        return self.pow(a, base_q or self.p)

    # log-code view used by the kernels
    def to_code(self, a: int) -> int:
        return 0 if a == 0 else self._log[a] + 1

    def from_code(self, c: int) -> int:
        return 0 if c == 0 else self._exp[c - 1]

    @property
    def zech(self):
        return self._zech

    def degree_codes(self, base_q: int) -> list:
        """Degree over ``F_base_q`` of each log code."""
        k = _relative_degree(self.q, base_q)
        if k not in self._deg_cache:
            self._deg_cache[k] = kernel.element_degrees(self.q, base_q, k)
        return self._deg_cache[k]

    def degree_over(self, a: int, base_q: int) -> int:
        return self.degree_codes(base_q)[self.to_code(a)]


def _relative_degree(Q: int, q: int) -> int:
    k, m = 0, 1
    while m < Q:
        m *= q
        k += 1
    if m != Q:
        raise ValueError(f"F_{Q} is not an extension of F_{q}")
    return k


@lru_cache(maxsize=None)
def field_of_order(Q: int) -> FiniteField:
    p, e = prime_power(Q)
    return FiniteField(p, e)
