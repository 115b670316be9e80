"""Finite-field ground truth: point counts, closed points and configuration counts."""

from .census import (
    ChenReport,
    ClosedPointTable,
    CensusError,
    chen_lhs,
    chen_rhs,
    closed_point_census,
    closed_points,
    conf_census,
    enumerate_configurations,
    verify_chen,
)
from .field import FiniteField, field_of_order, find_primitive_modulus, is_irreducible, is_primitive
from .kernel import BACKEND
from .varieties import (
    AffineSystem,
    BudgetExceeded,
    Builtin,
    Complement,
    DisjointUnion,
    Product,
    SpecError,
    VarietySpec,
    builtin_spec,
    degree_histogram,
    enumerate_points,
    frobenius_point,
    load_spec,
    parse_spec,
)

__all__ = [
    "BACKEND",
    "FiniteField",
    "field_of_order",
    "find_primitive_modulus",
    "is_irreducible",
    "is_primitive",
    "VarietySpec",
    "Builtin",
    "AffineSystem",
    "DisjointUnion",
    "Product",
    "Complement",
    "SpecError",
    "BudgetExceeded",
    "builtin_spec",
    "parse_spec",
    "load_spec",
    "enumerate_points",
    "frobenius_point",
    "degree_histogram",
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
