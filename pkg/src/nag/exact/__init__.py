from .linalg import (
    SubspaceBasis,
    char_poly,
    column_space,
    det,
    is_psd,
    kernel_basis,
    norm_leq_one,
    p_integral,
    projection_onto,
    subspace_intersect,
)
from .matrix import Matrix, format_matrix, frac_matrix, parse_matrix
from .scalars import Q, QI, GaussRational, format_scalar, parse_scalar, to_fraction

__all__ = [
    "Q",
    "QI",
    "GaussRational",
    "Matrix",
    "SubspaceBasis",
    "char_poly",
    "column_space",
    "det",
    "format_matrix",
    "format_scalar",
    "frac_matrix",
    "is_psd",
    "kernel_basis",
    "norm_leq_one",
    "p_integral",
    "parse_matrix",
    "parse_scalar",
    "projection_onto",
    "subspace_intersect",
    "to_fraction",
]
