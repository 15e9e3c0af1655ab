"""Exact computations with quasi-coherent sheaves on the projective line.

A sheaf is a representation M -sigma-> P <-tau- N of finitely presented
modules over k[x], k[x,x^-1] and k[x^-1] whose localizations are
isomorphisms.  Scalars are exact: Fraction for Q, residues for F_p.
"""
from .rings import QQ, Field
from .sheaves import (QcohSheaf, SheafMorphism, classify, direct_sum, from_transition_matrix,
                      make_line_bundle, make_torsion_sheaf, validate)

__version__ = "0.1.0"

__all__ = ["QQ", "Field", "QcohSheaf", "SheafMorphism", "classify", "direct_sum",
           "from_transition_matrix", "make_line_bundle", "make_torsion_sheaf", "validate"]
