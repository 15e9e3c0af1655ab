"""Restriction to the affine charts and the pushforward from the x-chart.

chart_extend(E) = (E -> S^-1 E <-id- S^-1 E).  When E is torsion, S^-1 E is
finite-dimensional and finitely generated over k[x^-1] as well, so the
result is an honest coherent sheaf.  Otherwise the N-component is not
finitely generated and is kept as a symbolic localization that can be
truncated to any finite degree window.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..rings import K_LAURENT, K_X, K_XINV, PolyMatrix, ring_of
from .modules import FpModule
from .sheaf import QcohSheaf

CHARTS = ("X", "XINV", "OVERLAP")


def chart_restrict(F: QcohSheaf, chart: str) -> FpModule:
    chart = chart.upper()
    if chart == "X":
        return F.M
    if chart == "XINV":
        return F.N
    if chart == "OVERLAP":
        return F.P
    raise ValueError("unknown chart %r (expected one of %s)" % (chart, ", ".join(CHARTS)))


@dataclass
class LocalizedModule:
    """S^-1 E viewed as a module over ``over`` (not finitely generated)."""
    module: FpModule      # the Laurent module S^-1 E
    over: str
    finitely_generated: bool = False

    def window(self, lo: int, hi: int):
        """k-basis labels (nf index, exponent) of the part of degree in [lo, hi]."""
        nf = self.module.normal
        ring = ring_of(K_LAURENT)
        out = [(i, e) for i, d in enumerate(nf.torsion) for e in ring.residue_window(d)]
        out += [(i, e) for i in nf.free_coords for e in range(lo, hi + 1)]
        return out


@dataclass
class ChartExtension:
    """Symbolic (E -> S^-1 E <- S^-1 E) for E with a free summand."""
    M: FpModule
    P: FpModule
    N: LocalizedModule
    sigma: PolyMatrix

    def is_coherent(self):
        return False


def chart_extend(E: FpModule):
    if E.ring != K_X:
        raise ValueError("chart_extend takes a k[x]-module")
    f = E.field
    P = E.localize()
    if P.free_rank:
        return ChartExtension(E, P, LocalizedModule(P, K_XINV), PolyMatrix.identity(K_LAURENT, f, E.gens))
    P2, toP, _ = P.simplified()
    # Laurent/(d) with d(0) != 0 equals k[x^-1]/(x^-deg(d) d), generated by 1
    rels = [d.shift(-d.degree).as_ring(K_XINV) for d in P2.normal.torsion]
    N = FpModule.diagonal(K_XINV, f, rels, 0)
    return QcohSheaf(E, N, P2, toP, PolyMatrix.identity(K_LAURENT, f, len(rels)))


def module_hom_dimension(A: FpModule, B: FpModule):
    """dim_k Hom_R(A, B) over a PID (None when infinite)."""
    if A.ring != B.ring:
        raise ValueError("modules over different rings")
    ring = ring_of(A.ring)
    if A.free_rank and B.free_rank:
        return None
    width = lambda d: len(ring.residue_window(d))
    total = 0
    for a in A.torsion_invariants:
        for b in B.torsion_invariants:
            g = ring.gcd(a, b)
            total += width(g) if not ring.is_unit(g) else 0
    total += A.free_rank * sum(width(b) for b in B.torsion_invariants)
    return total
