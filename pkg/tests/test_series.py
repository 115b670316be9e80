from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motconf.prelambda import MotiveRing, lefschetz
from motconf.series import (
    QQ,
    TruncatedSeries,
    add,
    euler_factorize,
    euler_product,
    exp1m,
    extract_coefficient,
    log1p,
    mul,
    naive_pow,
    substitute_powers,
)

from strategies import series, series_pairs, small_fractions


def S(terms, N=3, nvars=None, ring=QQ):
    return TruncatedSeries(ring, terms, N, nvars=nvars)


def geometric(N, nvars=1):
    return S({(0,): 1, (1,): -1}, N).inverse()


Q = MotiveRing("count")
q = lefschetz("count")


class TestExamples:
    def test_add(self):
        assert add(S({(0,): 1, (1,): 1}), S({(0,): 1, (1,): -1})) == S({(0,): 2})
        one_qt = S({(0,): 1, (1,): q}, ring=Q)
        assert add(one_qt, TruncatedSeries.zero_like(one_qt)) == one_qt
        assert add(S({(0,): 1, (1,): 1, (2,): 1}, 2), S({(2,): 1}, 2)) == S({(0,): 1, (1,): 1, (2,): 2}, 2)

    def test_mul(self):
        assert mul(S({(0,): 1, (1,): -1}), S({(0,): 1, (1,): 1, (2,): 1, (3,): 1})) == S({(0,): 1})
        a = S({(0, 0): 1, (1, 0): 1}, nvars=2)
        b = S({(0, 0): 1, (0, 1): 1}, nvars=2)
        assert mul(a, b) == S({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})
        f = S({(0,): 1, (1,): q}, ring=Q)
        assert f * f == S({(0,): 1, (1,): 2 * q, (2,): q * q}, ring=Q)

    def test_log1p(self):
        assert log1p(geometric(3)) == S({(1,): 1, (2,): Fraction(1, 2), (3,): Fraction(1, 3)})
        assert log1p(S({(0,): 1})) == S({}, nvars=1)
        t = S({(0, 0): 1, (1, 0): 1}, nvars=2)
        s = S({(0, 0): 1, (0, 1): 1}, nvars=2)
        assert log1p(t * s) == log1p(t) + log1p(s)

    def test_naive_pow(self):
        g = geometric(6)
        for n in range(1, 5):
            p = naive_pow(g, n)
            assert all(p.coefficient((k,)) == comb(n + k - 1, k) for k in range(7))
        f = S({(0,): 1, (1,): 3, (4,): 2})
        assert naive_pow(f, 0) == f.one_like()
        assert naive_pow(S({(0,): 1, (1,): 1}, 2), Fraction(1, 2)) == S({(0,): 1, (1,): Fraction(1, 2),
                                                                           (2,): Fraction(-1, 8)}, 2)

    def test_substitute_powers(self):
        f = S({(0, 0): 1, (1, 0): 1, (0, 1): 1}, 4)
        assert substitute_powers(f, 2) == S({(0, 0): 1, (2, 0): 1, (0, 2): 1}, 4)
        assert substitute_powers(f, 1) == f
        g = S({(0,): 1, (1,): q}, ring=Q)
        assert substitute_powers(g, 3) == S({(0,): 1, (3,): q}, ring=Q)

    def test_euler_factorize(self):
        assert euler_factorize(geometric(5)) == [((1,), 1)]
        f = S({(0,): 1, (1,): 1}, 2)
        assert euler_factorize(f) == [((1,), 1), ((2,), -1)]
        g = S({(0, 0): 1, (1, 0): 1, (0, 1): 1}, 3)
        assert euler_product(euler_factorize(g), g) == g

    def test_extract_coefficient(self):
        assert extract_coefficient(geometric(3), (2,)) == 1
        f = S({(0, 0): 1, (1, 0): 1}, nvars=2) * S({(0, 0): 1, (0, 1): 1}, nvars=2)
        assert extract_coefficient(f, (1, 1)) == 1
        g = naive_pow(S({(0, 0): 1, (1, 0): 1, (0, 1): 1}, 3), 3)
        assert extract_coefficient(g, (2, 1)) == 3
        assert extract_coefficient(g, {1: 2, 2: 1}) == 3

    def test_extract_beyond_order(self):
        with pytest.raises(ValueError):
            extract_coefficient(geometric(3), (4,))


class TestTruncation:
    def test_overflow_silently_truncates(self):
        f = S({(0,): 1, (2,): 1}, 3)
        assert (f * f).coefficient((4,)) == 0
        assert S({(5,): 7}, 3) == S({}, 3, nvars=1)

    def test_weights(self):
        f = TruncatedSeries(QQ, {(0, 0): 1, (1, 0): 1, (0, 1): 1}, 4, weights=(1, 2))
        sq = f * f * f
        assert sq.coefficient((0, 2)) == 3
        assert sq.coefficient((1, 2)) == 0  # weight 5 > 4

    def test_caps(self):
        f = TruncatedSeries(QQ, {(0, 0): 1, (1, 0): 1, (0, 1): 1}, 6, caps=(1, None))
        assert (f * f).coefficient((2, 0)) == 0
        assert (f * f).coefficient((1, 1)) == 2

    def test_mismatched_order_rejected(self):
        with pytest.raises(ValueError):
            S({(0,): 1}, 3) + S({(0,): 1, (0, 1): 1}, 3, nvars=2)

    def test_log_of_non_unit_rejected(self):
        with pytest.raises(ValueError):
            log1p(S({(0,): 2, (1,): 1}))

    def test_exp_of_non_nilpotent_rejected(self):
        with pytest.raises(ValueError):
            exp1m(S({(0,): 1, (1,): 1}))

    def test_render_is_graded_lex(self):
        f = S({(0, 1): Fraction(1, 2), (1, 0): -1, (0, 0): 1, (2, 0): 3}, 2)
        assert f.render() == "1 - t1 + 1/2*t2 + 3*t1^2"


class TestProperties:
    @given(series_pairs(), series_pairs())
    def test_ring_axioms(self, ab, cd):
        a, b = ab
        c = cd[0] if cd[0].nvars == a.nvars else a
        assert a * b == b * a
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(series(unit=True))
    def test_log_exp_inverse(self, f):
        assert exp1m(log1p(f)) == f

    @given(series(nonunit=True))
    def test_exp_log_inverse(self, g):
        assert log1p(exp1m(g)) == g

    @given(series_pairs(unit=True), small_fractions, small_fractions)
    def test_naive_pow_laws(self, fg, r, s):
        f, g = fg
        assert naive_pow(f, r + s) == naive_pow(f, r) * naive_pow(f, s)
        assert naive_pow(f * g, r) == naive_pow(f, r) * naive_pow(g, r)

    @given(series(unit=True), st.integers(0, 4))
    def test_naive_pow_integer_is_repeated_product(self, f, n):
        assert naive_pow(f, n) == f ** n

    @given(series(unit=True))
    def test_euler_roundtrip(self, f):
        assert euler_product(euler_factorize(f), f) == f

    @given(series_pairs(), st.integers(1, 3))
    def test_substitute_powers_homomorphism(self, ab, k):
        a, b = ab
        assert substitute_powers(a * b, k) == substitute_powers(a, k) * substitute_powers(b, k)
        assert substitute_powers(a + b, k) == substitute_powers(a, k) + substitute_powers(b, k)

    @given(series(unit=True))
    def test_inverse(self, f):
        assert f * f.inverse() == f.one_like()
