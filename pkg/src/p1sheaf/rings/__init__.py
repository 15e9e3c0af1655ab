"""Exact scalars, polynomials over k[x], k[x^-1], k[x,x^-1], and matrix normal forms."""
from .field import QQ, Field, ModP
from .matrix import PolyMatrix, matrix_from_json
from .poly import (K_LAURENT, K_X, K_XINV, RING_TAGS, NotAUnit, Poly, Ring, ZeroInput,
                   format_poly, laurent_unit_decompose, parse_poly, poly_from_json, ring_of)
from .smith import (NotInvertible, SmithForm, inverse, kernel_basis, smith_normal_form,
                    solve_linear, x_lattice_basis, xinv_lattice_basis)

__all__ = [
    "QQ", "Field", "ModP", "PolyMatrix", "matrix_from_json", "K_LAURENT", "K_X", "K_XINV",
    "RING_TAGS", "NotAUnit", "Poly", "Ring", "ZeroInput", "format_poly", "laurent_unit_decompose",
    "parse_poly", "poly_from_json", "ring_of", "NotInvertible", "SmithForm", "inverse",
    "kernel_basis", "smith_normal_form", "solve_linear", "x_lattice_basis", "xinv_lattice_basis",
]
