"""Minimal infix grammar for polynomials with rational coefficients.

Accepted: integers, identifiers, ``+ - * ^`` (``**`` too), parentheses,
division by a nonzero constant, and ``binom(expr, n)`` with a non-negative
integer ``n``.  Parsing goes through :mod:`ast` and only the node types
above are allowed.
"""

from __future__ import annotations

import ast
from fractions import Fraction

# A polynomial is a dict: sorted tuple of (name, exponent) pairs -> Fraction.
Poly = dict


class PolynomialSyntaxError(ValueError):
    pass


def _const(c) -> Poly:
    c = Fraction(c)
    return {(): c} if c else {}


def _var(name: str) -> Poly:
    return {((name, 1),): Fraction(1)}


def _padd(a: Poly, b: Poly, sign=1) -> Poly:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + sign * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _mono_mul(a, b):
    acc = dict(a)
    for name, e in b:
        acc[name] = acc.get(name, 0) + e
    return tuple(sorted(acc.items()))


def _pmul(a: Poly, b: Poly) -> Poly:
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = _mono_mul(ka, kb)
            s = out.get(k, 0) + va * vb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _ppow(a: Poly, n: int) -> Poly:
    out = _const(1)
    for _ in range(n):
        out = _pmul(out, a)
    return out


def _as_constant(p: Poly):
    if not p:
        return Fraction(0)
    if set(p) == {()}:
        return p[()]
    return None


def _nonneg_int(p: Poly, what: str) -> int:
    c = _as_constant(p)
    if c is None or c.denominator != 1 or c < 0:
        raise PolynomialSyntaxError(f"{what} must be a non-negative integer constant")
    return int(c)


def _binom(p: Poly, n: int) -> Poly:
    out = _const(1)
    for i in range(n):
        out = _pmul(out, _padd(p, _const(i), -1))
    return {k: v / _factorial(n) for k, v in out.items()}


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _eval(node) -> Poly:
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise PolynomialSyntaxError(f"only integer literals are allowed, got {node.value!r}")
        return _const(node.value)
    if isinstance(node, ast.Name):
        return _var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand)
        return {k: -c for k, c in v.items()} if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left, right = _eval(node.left), _eval(node.right)
        if isinstance(node.op, ast.Add):
            return _padd(left, right)
        if isinstance(node.op, ast.Sub):
            return _padd(left, right, -1)
        if isinstance(node.op, ast.Mult):
            return _pmul(left, right)
        if isinstance(node.op, ast.Pow):
            return _ppow(left, _nonneg_int(right, "exponent"))
        if isinstance(node.op, ast.Div):
            c = _as_constant(right)
            if c is None or c == 0:
                raise PolynomialSyntaxError("division only by a nonzero constant")
            return {k: v / c for k, v in left.items()}
        raise PolynomialSyntaxError(f"unsupported operator {type(node.op).__name__}")
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "binom":
        if len(node.args) != 2 or node.keywords:
            raise PolynomialSyntaxError("binom takes exactly two arguments")
        return _binom(_eval(node.args[0]), _nonneg_int(_eval(node.args[1]), "binom order"))
    raise PolynomialSyntaxError(f"unsupported syntax: {ast.dump(node)[:60]}")


def parse_polynomial(text: str) -> Poly:
    """Parse ``text`` into ``{((name, exp), ...): Fraction}``."""
    src = text.replace("^", "**").replace("−", "-")
    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError as exc:
        raise PolynomialSyntaxError(f"cannot parse {text!r}: {exc.msg}") from None
    return _eval(tree)


def variables(poly: Poly) -> set[str]:
    return {name for mono in poly for name, _ in mono}
