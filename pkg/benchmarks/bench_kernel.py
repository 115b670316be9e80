"""Compare the compiled finite-field kernel with the pure-Python fallback.

    python3 benchmarks/bench_kernel.py [--repeat 3]

Both backends are imported directly, so the result does not depend on
MOTCONF_PURE_PYTHON.  Every workload is checked for identical output first.
"""

from __future__ import annotations

import argparse
import timeit

from motconf.fforacle import AffineSystem, _kernel_py, field_of_order
from motconf.fforacle.varieties import _compile

try:
    from motconf.fforacle import _kernel as _kernel_c
except ImportError:  # pragma: no cover
    _kernel_c = None


def _scan_args(system: AffineSystem, Q: int):
    F = field_of_order(Q)
    eq = _compile(system, F, system.equations)
    ineq = _compile(system, F, system.inequations)
    degs = F.degree_codes(F.p)
    return (Q, system.ambient, F.zech, degs, *eq, *ineq, F.e, False)


def workloads():
    F = field_of_order(3 ** 6)
    mod = F.modulus[:-1]
    yield "build_tables F_729", lambda k: k.build_tables(3, 6, mod)
    yield "element_degrees F_4096/F_2", lambda k: k.element_degrees(4096, 2, 12)
    yield "degree_histogram F_4096/F_2", lambda k: k.degree_histogram(4096, 2, 12, True)
    curve = _scan_args(AffineSystem(2, ("y^2 - x^3 - x",)), 3 ** 5)
    yield "scan y^2=x^3+x over F_243", lambda k: k.scan_system(*curve)
    surface = _scan_args(AffineSystem(3, ("x1*x2 - x3^2 - 1",), ("x1",)), 2 ** 5)
    yield "scan 3-var surface over F_32", lambda k: k.scan_system(*surface)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernel_c is None:
        print("compiled kernel not built; only the fallback is available")
        return 1
    print(f"{'workload':34} {'python (s)':>11} {'cython (s)':>11} {'speedup':>8}")
    for name, fn in workloads():
        a, b = fn(_kernel_py), fn(_kernel_c)
        if _normalize(a) != _normalize(b):
            raise AssertionError(f"backends disagree on {name}")
        tp = min(timeit.repeat(lambda: fn(_kernel_py), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fn(_kernel_c), number=1, repeat=args.repeat))
        print(f"{name:34} {tp:11.4f} {tc:11.4f} {tp / tc:7.1f}x")
    return 0


def _normalize(x):
    if isinstance(x, (tuple, list)):
        return tuple(_normalize(v) for v in x)
    try:
        return tuple(x)
    except TypeError:
        return x


if __name__ == "__main__":
    raise SystemExit(main())
