"""Exact computations on the index of finite-dimensional associative algebras."""

from .algebra import (
    AlgebraError,
    AssociativityError,
    Functional,
    StructureConstants,
    build_named,
    catalog,
    commutator_matrix_at,
    mult_matrix_at,
    tensor_algebra,
    validate_associativity,
)
from .algebra_file import parse_algebra_file, serialize_algebra
from .index import index_randomized, index_symbolic
from .scalars.fields import DEFAULT_PRIME, QQ, PrimeField

__version__ = "0.1.0"

__all__ = [
    "AlgebraError", "AssociativityError", "Functional", "StructureConstants", "build_named",
    "catalog", "commutator_matrix_at", "mult_matrix_at", "tensor_algebra",
    "validate_associativity", "parse_algebra_file", "serialize_algebra", "index_randomized",
    "index_symbolic", "DEFAULT_PRIME", "QQ", "PrimeField",
]
