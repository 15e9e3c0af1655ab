"""Sheaves on P^1 as representations M -> P <- N, with morphisms and constructions."""
from .classify import Classification, HasTorsion, classify, split_form, splitting_type
from .hom import HomSpace, hom_dimension, line_cover
from .modules import FpModule
from .ops import (cokernel, image, is_epi, is_iso, is_mono, is_short_exact, kernel, pushout,
                  tensor, twist)
from .sheaf import (InvalidSheaf, QcohSheaf, SheafMorphism, ValidationReport, direct_sum,
                    from_transition_matrix, is_valid, make_line_bundle, make_torsion_sheaf,
                    sum_of_line_bundles, validate)

__all__ = [
    "Classification", "HasTorsion", "classify", "split_form", "splitting_type", "HomSpace",
    "hom_dimension", "line_cover", "FpModule", "cokernel", "image", "is_epi", "is_iso", "is_mono",
    "is_short_exact", "kernel", "pushout", "tensor", "twist", "InvalidSheaf", "QcohSheaf",
    "SheafMorphism", "ValidationReport", "direct_sum", "from_transition_matrix", "is_valid",
    "make_line_bundle", "make_torsion_sheaf", "sum_of_line_bundles", "validate",
]
