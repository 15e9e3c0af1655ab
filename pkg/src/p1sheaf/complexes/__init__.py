"""Bounded complexes of sheaves, Hom and tensor complexes, and the cycle-extension construction."""
from .core import (BoundedComplex, ChainMap, NotAComplex, boundaries, cone, cycles, disc,
                   direct_sum_complexes, homology, is_exact, is_locally_projective_complex,
                   is_short_exact_complexes, is_u_perp_complex, sphere, sphere_disc_sequence)
from .homtensor import HomComplex, hom_complex, tensor_complex
from .mist import KernelMismatch, MistResult, input_section, mist_extension, output_section

__all__ = [
    "BoundedComplex", "ChainMap", "NotAComplex", "boundaries", "cone", "cycles", "disc",
    "direct_sum_complexes", "homology", "is_exact", "is_locally_projective_complex",
    "is_short_exact_complexes", "is_u_perp_complex", "sphere", "sphere_disc_sequence",
    "HomComplex", "hom_complex", "tensor_complex", "KernelMismatch", "MistResult",
    "input_section", "mist_extension", "output_section",
]
