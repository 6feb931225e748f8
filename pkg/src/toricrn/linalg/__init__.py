# Exact linear algebra over Q and Z
from .exact import (
    IntegerMatrix,
    RationalMatrix,
    as_integer_matrix,
    det_bareiss,
    dot,
    kernel_basis,
    rank,
    row_space_basis,
    rref,
    solve,
    to_fraction,
)
from .lattice import column_echelon, integer_complement, integer_kernel, is_saturated, primitive_vector
from .simplex import lp_feasible, nonnegative_solution

__all__ = [
    "IntegerMatrix",
    "RationalMatrix",
    "as_integer_matrix",
    "column_echelon",
    "det_bareiss",
    "dot",
    "integer_complement",
    "integer_kernel",
    "is_saturated",
    "kernel_basis",
    "lp_feasible",
    "nonnegative_solution",
    "primitive_vector",
    "rank",
    "row_space_basis",
    "rref",
    "solve",
    "to_fraction",
]
