from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motconf.arith import divisors, mobius
from motconf.fforacle import (
    AffineSystem,
    BudgetExceeded,
    CensusError,
    Complement,
    FiniteField,
    SpecError,
    chen_lhs,
    closed_point_census,
    closed_points,
    conf_census,
    degree_histogram,
    enumerate_points,
    field_of_order,
    find_primitive_modulus,
    is_irreducible,
    parse_spec,
    verify_chen,
)
from motconf.fforacle import _kernel_py, kernel
from motconf.fforacle.varieties import _compile

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]
BUILTINS = ["point", "affine_space:1", "affine_space:2", "projective_space:1", "projective_space:2",
            "torus:1", "torus:2", "projective_space:1 x affine_space:1"]
CURVE = {"affine_system": {"ambient": 2, "equations": ["y^2 - x^3 - x"], "inequations": []}}


# -- independent polynomial arithmetic over F_p, used as ground truth ---------------------


def pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def monic_polys(p, n):
    for tail in product(range(p), repeat=n):
        yield list(tail) + [1]


def brute_irreducible(f, p):
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for g in monic_polys(p, d):
            for h in monic_polys(p, n - d):
                if pmul(g, h, p) == f:
                    return False
    return True


def squarefree_count(p, n):
    """Monic squarefree polynomials of degree ``n`` over F_p, by trial factorization."""
    squares = set()
    for d in range(1, n // 2 + 1):
        for g in monic_polys(p, d):
            g2 = pmul(g, g, p)
            for h in monic_polys(p, n - 2 * d):
                squares.add(tuple(pmul(g2, h, p)))
    return p ** n - len(squares)


def gauss_count(p, n):
    return sum(mobius(n // d) * p ** d for d in divisors(n)) // n


class TestField:
    @pytest.mark.parametrize("Q", ORDERS)
    def test_axioms(self, Q):
        F = field_of_order(Q)
        els = list(F.elements())
        for a in els:
            assert F.add(a, F.neg(a)) == 0
            assert F.pow(a, Q) == a
            if a:
                assert F.mul(a, F.inv(a)) == 1
        sample = els[:6]
        for a, b, c in product(sample, repeat=3):
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
            assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))

    @pytest.mark.parametrize("Q", ORDERS)
    @given(data=st.data())
    def test_random_axioms(self, Q, data):
        F = field_of_order(Q)
        a, b, c = (data.draw(st.integers(0, Q - 1)) for _ in range(3))
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.sub(F.add(a, b), b) == a
        if b:
            assert F.mul(F.div(a, b), b) == a

    @pytest.mark.parametrize("p,e", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
    def test_modulus_irreducible_by_trial_division(self, p, e):
        f = list(find_primitive_modulus(p, e))
        assert f[-1] == 1 and brute_irreducible(f, p)

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_rabin_matches_gauss_count(self, p, n):
        found = sum(1 for f in monic_polys(p, n) if is_irreducible(f, p))
        assert found == gauss_count(p, n)

    def test_multiplicative_group_cyclic(self):
        F = field_of_order(16)
        g = F.generator
        assert len({F.pow(g, i) for i in range(15)}) == 15

    def test_bad_order(self):
        with pytest.raises(ValueError):
            field_of_order(6)
        with pytest.raises(ValueError):
            FiniteField(4, 1)

    def test_degrees(self):
        F = field_of_order(16)
        degs = [F.degree_over(a, 2) for a in F.elements()]
        assert degs.count(1) == 2 and degs.count(2) == 2 and degs.count(4) == 12


class TestPoints:
    def test_examples(self):
        assert len(enumerate_points("affine_space:1", field_of_order(4))) == 4
        assert len(enumerate_points("projective_space:1", field_of_order(2))) == 3

    def test_curve_golden(self):
        F = field_of_order(3)
        direct = sum(1 for x, y in product(range(3), repeat=2) if (y * y - x ** 3 - x) % 3 == 0)
        assert direct == 3
        assert len(enumerate_points(CURVE, F)) == direct
        assert sum(degree_histogram(CURVE, 3, 1)) == direct

    @pytest.mark.parametrize("name", BUILTINS)
    @pytest.mark.parametrize("q,k", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)])
    def test_structural_histogram_matches_enumeration(self, name, q, k):
        F = field_of_order(q ** k)
        pts = enumerate_points(name, F)
        hist = degree_histogram(name, q, k)
        assert sum(hist) == len(pts)
        seen = [0] * (k + 1)
        from motconf.fforacle import frobenius_point

        for pt in pts:
            d, nxt = 1, frobenius_point(pt, F, q)
            while nxt != pt:
                d += 1
                nxt = frobenius_point(nxt, F, q)
            seen[d] += 1
        assert list(hist) == seen

    def test_affine_system_matches_builtin(self):
        a2 = {"affine_system": {"ambient": 2, "equations": [], "inequations": []}}
        for q in (2, 3):
            for k in (1, 2):
                assert degree_histogram(a2, q, k) == degree_histogram("affine_space:2", q, k)
        gm = {"affine_system": {"ambient": 1, "equations": [], "inequations": ["x1"]}}
        assert closed_point_census(gm, 3, 4).counts == closed_point_census("torus:1", 3, 4).counts

    def test_closed_points_orbits(self):
        pts = closed_points("affine_space:1", 2, 3)
        assert len(pts) == 2 and all(len(o) == 3 for o in pts)


class TestCensus:
    def test_examples(self):
        assert closed_point_census("affine_space:1", 2, 3).counts == {1: 2, 2: 1, 3: 2}
        assert closed_point_census("projective_space:1", 2, 2).counts == {1: 3, 2: 1}
        for q in (2, 3, 5):
            assert closed_point_census("point", q, 1).counts == {1: 1}

    @pytest.mark.parametrize("name", BUILTINS)
    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_mobius_equals_orbits(self, name, q):
        t = closed_point_census(name, q, 4)
        assert t.mobius == t.orbits
        assert all(isinstance(v, int) and v >= 0 for v in t.orbits.values())

    def test_scissor(self):
        torus = {"complement": {"base": {"builtin": "affine_space", "dim": 1},
                                "removed": {"affine_system": {"ambient": 1, "equations": ["x1"]}}}}
        line = closed_point_census("affine_space:1", 3, 4)
        origin = closed_point_census({"affine_system": {"ambient": 1, "equations": ["x1"]}}, 3, 4)
        diff = closed_point_census(torus, 3, 4)
        assert diff.counts == closed_point_census("torus:1", 3, 4).counts
        assert all(diff.counts[k] == line.counts[k] - origin.counts[k] for k in range(1, 5))

    def test_depth_error(self):
        t = closed_point_census("affine_space:1", 2, 2)
        with pytest.raises(CensusError):
            t[3]
        with pytest.raises(CensusError):
            conf_census("affine_space:1", 2, "", 3, table=t)


class TestConfigurations:
    def test_examples(self):
        assert conf_census("affine_space:1", 2, "", 2) == 2
        assert conf_census("projective_space:1", 2, "", 2) == 4
        for q in (2, 3):
            assert conf_census("projective_space:1", q, "a", 0) == q + 1

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_squarefree_polynomials(self, p, n):
        assert conf_census("affine_space:1", p, "", n) == squarefree_count(p, n)

    @pytest.mark.parametrize("V", ["affine_space:1", "projective_space:1", "torus:1", CURVE,
                                   {"affine_system": {"ambient": 2, "equations": ["x2 - x1^2"]}}])
    @pytest.mark.parametrize("tau", ["", "a", "ab", "a2", "a2b"])
    def test_enumerate_equals_census(self, V, tau):
        for q in (2, 3):
            for n_free in range(0, 3):
                assert conf_census(V, q, tau, n_free, method="enumerate") == conf_census(V, q, tau, n_free)

    def test_labels_are_frobenius_stable_sets(self):
        # a label class of size 2 may be one degree-2 closed point
        assert conf_census("affine_space:1", 2, "a2", 0) == 2


class TestChen:
    def test_lhs_examples(self):
        assert chen_lhs("affine_space:1", 2, (1,), 1) == 2
        assert chen_lhs("affine_space:1", 2, (0, 1), 2) == 1
        for V in ("affine_space:1", "projective_space:1", CURVE):
            for n in range(4):
                assert chen_lhs(V, 3, (), n) == conf_census(V, 3, "", n)

    def test_lhs_methods_agree(self):
        for V in ("affine_space:1", "projective_space:1", "torus:1"):
            for lbar in ((1,), (2,), (0, 1), (1, 1)):
                for n in range(5):
                    assert chen_lhs(V, 2, lbar, n) == chen_lhs(V, 2, lbar, n, method="census")

    def test_verify_examples(self):
        assert verify_chen("affine_space:1", 2, (1,), 5).ok
        rep = verify_chen("point", 5, (2,), 3)
        assert rep.ok and all(row[1] == 0 for row in rep.rows)
        assert verify_chen("projective_space:1", 3, (0, 1), 4).ok

    def test_singular_input_not_asserted(self):
        cusp = {"affine_system": {"ambient": 2, "equations": ["y^2 - x^3"]}}
        rep = verify_chen(cusp, 2, (1,), 3)
        assert rep.asserted is False
        assert all(row[3] is None for row in rep.rows)
        assert rep.to_json()["asserted"] is False


class TestKernels:
    @pytest.mark.skipif(kernel.BACKEND != "cython", reason="compiled kernel not built")
    @pytest.mark.parametrize("Q", [2, 3, 4, 8, 9, 25, 27])
    def test_compiled_matches_fallback(self, Q):
        from motconf.fforacle import _kernel

        F = field_of_order(Q)
        mod = F.modulus[:-1]
        assert tuple(map(tuple, _kernel.build_tables(F.p, F.e, mod))) == tuple(map(tuple, _kernel_py.build_tables(F.p, F.e, mod)))
        for base in {F.p, Q}:
            k = F.e if base == F.p else 1
            assert list(_kernel.element_degrees(Q, base, k)) == list(_kernel_py.element_degrees(Q, base, k))
            for zero in (True, False):
                assert list(_kernel.degree_histogram(Q, base, k, zero)) == list(_kernel_py.degree_histogram(Q, base, k, zero))
        systems = [
            AffineSystem(2, ("y^2 - x^3 - x",)),
            AffineSystem(2, ("x*y - 1",)),
            AffineSystem(3, ("x1 + x2 + x3", "x1*x2 - x3^2"), ("x1",)),
            AffineSystem(2, (), ("x1 - x2", "x1")),
        ]
        degs = F.degree_codes(F.p)
        for system in systems:
            eq = _compile(system, F, system.equations)
            ineq = _compile(system, F, system.inequations)
            args = (Q, system.ambient, F.zech, degs, *eq, *ineq, F.e)
            h1, p1 = _kernel.scan_system(*args, True)
            h2, p2 = _kernel_py.scan_system(*args, True)
            assert list(h1) == list(h2) and sorted(map(tuple, p1)) == sorted(map(tuple, p2))

    def test_backend_flag(self):
        assert kernel.BACKEND in ("cython", "python")


class TestSpecs:
    def test_budget(self, monkeypatch):
        monkeypatch.setenv("MOTCONF_BUDGET", "100")
        big = AffineSystem(3, ("x1 + x2 + x3",))
        with pytest.raises(BudgetExceeded):
            enumerate_points(big, field_of_order(9))

    @pytest.mark.parametrize("bad", [
        {"builtin": "sphere", "dim": 2},
        {"affine_system": {"equations": ["x"]}},
        {"affine_system": {"ambient": 1, "equations": ["x +"]}},
        {"affine_system": {"ambient": 1, "equations": ["x/2"]}},
        {"complement": {"base": "point"}},
        {"nonsense": 1},
        "point:3",
    ])
    def test_bad_specs(self, bad):
        with pytest.raises(SpecError):
            parse_spec(bad)

    def test_roundtrip_json(self):
        for spec in (CURVE, {"product": [{"builtin": "torus", "dim": 1}, {"builtin": "point", "dim": 0}]}):
            assert parse_spec(parse_spec(spec).to_json()) == parse_spec(spec)

    def test_disjoint_union(self):
        u = {"disjoint_union": [{"builtin": "affine_space", "dim": 1}, {"builtin": "point", "dim": 0}]}
        assert closed_point_census(u, 3, 3).counts == closed_point_census("projective_space:1", 3, 3).counts
        assert conf_census(u, 2, "ab", 1, method="enumerate") == conf_census("projective_space:1", 2, "ab", 1)


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, MOTCONF_PURE_PYTHON="1")
    code = ("from motconf.fforacle import BACKEND, closed_point_census as c;"
            "print(BACKEND, c({'affine_system': {'ambient': 2, 'equations': ['y^2-x^3-x']}}, 3, 3).counts)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    expected = closed_point_census(CURVE, 3, 3).counts
    assert out.split(" ", 1) == ["python", f"{expected}\n"]
