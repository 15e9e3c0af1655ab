"""Hom and Ext^1 against line bundles, Baer extensions and splitting."""
from .baer import ExtClass, UPerpResult, build_extension, in_u_perp, is_split
from .lines import (Ext1Line, HomLine, InfiniteDimensional, VectorSpaceWithBasis, ext1_line,
                    hom_line)

__all__ = ["ExtClass", "UPerpResult", "build_extension", "in_u_perp", "is_split", "Ext1Line",
           "HomLine", "InfiniteDimensional", "VectorSpaceWithBasis", "ext1_line", "hom_line"]
