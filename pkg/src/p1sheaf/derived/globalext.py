"""Ext^i(F, G) from a resolution 0 -> E1 -> E0 -> F -> 0.

Applying Hom(-, G) gives

    0 -> Hom(F,G) -> Hom(E0,G) -> Hom(E1,G) -> Ext1(F,G) -> Ext1(E0,G) -> Ext1(E1,G) -> Ext2(F,G) -> 0

and every term on E0, E1 splits over line bundles, where Hom and Ext1 are
hom_line and ext1_line.  A map O(b) -> O(a) given by (u, v) acts on sections
by (s_M, s_N) -> (u s_M, v s_N) and on Ext1 classes by multiplication by v.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..complexes.core import sphere
from ..complexes.homtensor import hom_complex
from ..ext.baer import in_u_perp
from ..ext.lines import ext1_line, hom_line
from ..rings import K_LAURENT
from ..rings.linalg import SparseSystem
from ..sheaves.hom import HomSpace
from ..sheaves.sheaf import QcohSheaf
from .resolve import LineBundleResolution, resolve


class NotInUPerp(ValueError):
    pass


class ExtInconsistent(ArithmeticError):
    pass


@dataclass
class GlobalExt:
    dims: dict                        # i -> dimension for i = 0, 1, 2
    terms: dict = dc_field(default_factory=dict)   # hom/ext1 dimensions of E0, E1 against G
    resolution: LineBundleResolution | None = None
    hom_kernel: list = dc_field(default_factory=list)  # kernel vectors in Hom(E0, G) coordinates

    def six_term(self):
        t = self.terms
        return self.dims[0] - t["hom_E0"] + t["hom_E1"] + t["ext1_E0"] - t["ext1_E1"]

    def to_json(self):
        return {"dims": {str(k): v for k, v in sorted(self.dims.items())},
                "terms": dict(sorted(self.terms.items())),
                "resolution": self.resolution.to_json() if self.resolution else None}


def _tag(j, sig):
    return {(j,) + k: c for k, c in sig.items()}


def compute_global_ext(F: QcohSheaf, G: QcohSheaf, offset: int = 0,
                       res: LineBundleResolution | None = None) -> GlobalExt:
    res = res or resolve(F, offset)
    f = F.field
    e0, e1 = res.e0, res.e1
    homs0 = [hom_line(a, G) for a in e0]
    homs1 = [hom_line(b, G) for b in e1]
    exts0 = [ext1_line(a, G) for a in e0]
    exts1 = [ext1_line(b, G) for b in e1]
    iM, iN = res.iota.phiM, res.iota.phiN

    # Hom(E0, G) -> Hom(E1, G), psi -> psi o iota
    hom_cols = []
    for i, H in enumerate(homs0):
        for u, v in H.pairs:
            col = {}
            for j, Hb in enumerate(homs1):
                uu, vv = iM[i, j], iN[i, j]
                if not uu.terms:
                    continue
                col.update(_tag(j, Hb.signature([uu * p for p in u], [vv * p for p in v])))
            hom_cols.append(col)
    hsys = SparseSystem(f, hom_cols)
    hom_rank = hsys.rank()
    kernel = hsys.nullspace()

    # Ext1(E0, G) -> Ext1(E1, G), pullback along iota
    ext_cols = []
    for i, E in enumerate(exts0):
        for key in E.basis_keys:
            vec = E.basis_element(key)
            col = {}
            for j, Eb in enumerate(exts1):
                vv = iN[i, j]
                if not vv.terms or not Eb.dimension:
                    continue
                w = vv.as_ring(K_LAURENT)
                col.update(_tag(j, {k: c for k, c in Eb.reduce([w * p for p in vec]).items()}))
            ext_cols.append(col)
    ext_rank = SparseSystem(f, ext_cols).rank() if ext_cols else 0

    h0 = sum(H.dimension for H in homs0)
    h1 = sum(H.dimension for H in homs1)
    x0 = sum(E.dimension for E in exts0)
    x1 = sum(E.dimension for E in exts1)
    dims = {0: h0 - hom_rank, 1: (h1 - hom_rank) + (x0 - ext_rank), 2: x1 - ext_rank}
    out = GlobalExt(dims, {"hom_E0": h0, "hom_E1": h1, "ext1_E0": x0, "ext1_E1": x1}, res, kernel)
    if dims[2] != 0:
        raise ExtInconsistent("Ext^2 came out as %d" % dims[2])
    if out.six_term() != dims[1]:
        raise ExtInconsistent("six-term sum %d disagrees with Ext^1 = %d" % (out.six_term(), dims[1]))
    return out


def global_ext(F: QcohSheaf, G: QcohSheaf, i: int, offset: int = 0) -> int:
    if i < 0:
        raise ValueError("degree must be nonnegative")
    ge = compute_global_ext(F, G, offset)
    return ge.dims.get(i, 0)


def hom_double_complex_ext(F: QcohSheaf, G: QcohSheaf, offset: int = 0) -> dict:
    """Cohomology of Hom(E_bullet, G) for G in the right orthogonal of line bundles."""
    if not in_u_perp(G).member:
        raise NotInUPerp("target has a torsion-free part; no coherent coresolution by torsion sheaves")
    res = resolve(F, offset)
    HC = hom_complex(res.as_complex(), sphere(G, 0))
    return {i: HC.cohomology_dim(i) for i in range(0, 3)}


def hom_check(F: QcohSheaf, G: QcohSheaf) -> int:
    """Hom(F, G) computed directly, for cross-checking degree 0."""
    return HomSpace(F, G).dimension
