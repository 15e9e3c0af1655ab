"""Two-term line-bundle resolutions 0 -> E1 -> E0 -> F -> 0.

E0 comes from a line cover of F.  The kernel of a surjection from a
locally free sheaf on a smooth curve is locally free, so Birkhoff splitting
rewrites it as a sum of line bundles E1.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..complexes.core import BoundedComplex
from ..sheaves.classify import split_form
from ..sheaves.hom import line_cover
from ..sheaves.ops import is_epi, is_mono, is_short_exact, kernel
from ..sheaves.sheaf import QcohSheaf, SheafMorphism, sum_of_line_bundles


class ResolutionError(RuntimeError):
    pass


@dataclass
class LineBundleResolution:
    F: QcohSheaf
    e0: list                 # twists of E0
    e1: list                 # twists of E1
    E0: QcohSheaf
    E1: QcohSheaf
    iota: SheafMorphism      # E1 -> E0
    pi: SheafMorphism        # E0 -> F
    offset: int = 0

    def entry(self, i, j):
        """k[x] entry u of iota from O(e1[j]) to O(e0[i])."""
        return self.iota.phiM[i, j]

    def certificates(self):
        return {"pi_epi": is_epi(self.pi), "iota_mono": is_mono(self.iota),
                "exact_at_E0": is_short_exact(self.iota, self.pi)}

    def as_complex(self) -> BoundedComplex:
        """E1 -> E0 in degrees -1 and 0."""
        objs = {0: self.E0}
        diffs = {}
        if self.e1:
            objs[-1] = self.E1
            diffs[-1] = self.iota
        return BoundedComplex(objs, diffs, self.F.field)

    def to_json(self):
        rows = []
        for i in range(len(self.e0)):
            rows.append([self.entry(i, j).to_json() for j in range(len(self.e1))])
        return {"E0": list(self.e0), "E1": list(self.e1), "iota": rows, "offset": self.offset}


def resolve(F: QcohSheaf, offset: int = 0, check: bool = True) -> LineBundleResolution:
    f = F.field
    cover = line_cover(F, offset)
    pi = cover.morphism()
    E0 = pi.source
    K, k = kernel(pi)
    if K.is_zero():
        e1 = []
        E1 = sum_of_line_bundles([], f)
        iota = SheafMorphism.zero(E1, E0)
    else:
        sd, to_K, _ = split_form(K)
        e1 = list(sd.type)
        iota = k @ to_K
        E1 = iota.source
    res = LineBundleResolution(F, list(cover.twists), e1, E0, E1, iota, pi, offset)
    if check:
        bad = [name for name, ok in res.certificates().items() if not ok]
        if bad:
            raise ResolutionError("resolution certificate failed: %s" % ", ".join(bad))
    return res
