"""Exact rational arithmetic, linear algebra and polynomial matrices."""

from .matrix import (
    QMatrix,
    Subspace,
    column_space,
    full_space,
    kernel_basis,
    orthogonal_complement,
    solve_exact,
    subspace_from_columns,
    subspace_intersection,
    subspace_sum,
)
from .poly import Polynomial, interval_mul, interval_pow, monomial_count, multi_indices
from .polymatrix import PolyMatrix
from .symbol import SymbolOperator

__all__ = [
    "QMatrix",
    "Subspace",
    "column_space",
    "full_space",
    "kernel_basis",
    "orthogonal_complement",
    "solve_exact",
    "subspace_from_columns",
    "subspace_intersection",
    "subspace_sum",
    "Polynomial",
    "interval_mul",
    "interval_pow",
    "monomial_count",
    "multi_indices",
    "PolyMatrix",
    "SymbolOperator",
]
