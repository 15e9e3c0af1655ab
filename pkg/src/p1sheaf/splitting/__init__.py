"""Birkhoff factorization, line-bundle filtrations and zig-zag closure."""
from .birkhoff import SplittingData, birkhoff_factorize
from .filtration import Filtration, check_filtration, line_filtration
from .zigzag import ZigzagResult, ZigzagState, zigzag_closure

__all__ = ["SplittingData", "birkhoff_factorize", "Filtration", "check_filtration",
           "line_filtration", "ZigzagResult", "ZigzagState", "zigzag_closure"]
