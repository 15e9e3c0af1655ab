"""Hom(F, G) for coherent sheaves as a finite-dimensional k-space.

F is covered by a sum of line bundles E0 = (+) O(a_i) -> F built greedily
from sections.  Hom(E0, G) is the sum of the spaces Hom(O(a_i), G), and a
morphism psi descends to F exactly when it kills the kernel of the cover on
M and on N.  The descended morphism is psi composed with generator lifts.
A morphism is determined by its M and N parts (P is generated by sigma(M)
after inverting x), so those coordinates serve as its signature.
"""
from __future__ import annotations

from ..rings import K_LAURENT, K_X, K_XINV, Poly, PolyMatrix
from ..rings.linalg import SparseSystem
from .modules import FpModule
from .sheaf import QcohSheaf, SheafMorphism


class CoverError(RuntimeError):
    pass


class LineCover:
    """Surjection (+) O(a_i) -> F given by sections (u_i, v_i) of F(-a_i)."""

    def __init__(self, F: QcohSheaf, twists, us, vs):
        self.F = F
        self.twists = list(twists)
        f = F.field
        k = len(self.twists)
        self.piM = PolyMatrix(K_X, f, F.M.gens, k, [[us[j][i] for j in range(k)] for i in range(F.M.gens)])
        self.piN = PolyMatrix(K_XINV, f, F.N.gens, k, [[vs[j][i] for j in range(k)] for i in range(F.N.gens)])
        self.piP = F.sigma @ self.piM.as_ring(K_LAURENT)

    def morphism(self):
        from .sheaf import sum_of_line_bundles
        E0 = sum_of_line_bundles(self.twists, self.F.field)
        return SheafMorphism(E0, self.F, self.piM, self.piP, self.piN)


def _pair_signature(F, u, v):
    sig = {("M",) + k: c for k, c in F.M.coords(u).items()}
    sig.update({("N",) + k: c for k, c in F.N.coords(v).items()})
    return sig


def _is_generated(F, us, vs):
    f = F.field
    if F.M.gens:
        U = PolyMatrix(K_X, f, F.M.gens, len(us), [[u[i] for u in us] for i in range(F.M.gens)])
        if not F.M.generated_by(U):
            return False
    if F.N.gens:
        V = PolyMatrix(K_XINV, f, F.N.gens, len(vs), [[v[i] for v in vs] for i in range(F.N.gens)])
        if not F.N.generated_by(V):
            return False
    return True


def line_cover(F: QcohSheaf, offset: int = 0, max_steps: int = 200) -> LineCover:
    """Greedy cover: twists descend from the top of the splitting type (minus ``offset``)."""
    from ..ext.lines import hom_line
    from .classify import classify

    if F.M.is_zero() and F.N.is_zero():
        return LineCover(F, [], [], [])
    typ = classify(F).type
    a = (max(typ) if typ else 0) - offset
    twists, us, vs = [], [], []
    f = F.field
    for _ in range(max_steps):
        H = hom_line(a, F)
        if H.dimension:
            span = []
            for ai, u, v in zip(twists, us, vs):
                for t in range(0, ai - a + 1):
                    span.append(_pair_signature(F, [p.shift(t) for p in u],
                                                [p.as_ring(K_LAURENT).shift(a - ai + t).as_ring(K_XINV)
                                                 for p in v]))
            sys_ = SparseSystem(f, span)
            cur = sys_.rank()
            for u, v in H.pairs:
                sys_.add_column(_pair_signature(F, u, v))
                r = sys_.rank()
                if r > cur:
                    cur = r
                    twists.append(a)
                    us.append(u)
                    vs.append(v)
                    if _is_generated(F, us, vs):
                        return LineCover(F, twists, us, vs)
                else:
                    sys_.columns.pop()
        a -= 1
    raise CoverError("no line-bundle cover found within %d twists" % max_steps)


class HomSpace:
    """Basis of Hom(F, G) as explicit morphisms, plus coordinates of morphisms."""

    def __init__(self, F: QcohSheaf, G: QcohSheaf, cover: LineCover | None = None):
        from ..ext.lines import hom_line
        self.F, self.G = F, G
        f = F.field
        self.field = f
        cover = cover or line_cover(F)
        self.cover = cover
        k = len(cover.twists)
        self.basis = []
        if k == 0 or G.is_zero():
            self._sigs = []
            return
        lines = [hom_line(a, G) for a in cover.twists]
        unknowns = [(i, u, v) for i, H in enumerate(lines) for (u, v) in H.pairs]
        freeM = FpModule.free(K_X, f, k)
        freeN = FpModule.free(K_XINV, f, k)
        kerM = F.M.kernel_generators(cover.piM, freeM)
        kerN = F.N.kernel_generators(cover.piN, freeN)
        cols = []
        for i, u, v in unknowns:
            col = {}
            for j in range(kerM.cols):
                kappa = kerM[i, j]
                if kappa.terms:
                    for key, c in G.M.coords([kappa * p for p in u]).items():
                        col[("M", j) + key] = c
            for j in range(kerN.cols):
                kappa = kerN[i, j]
                if kappa.terms:
                    for key, c in G.N.coords([kappa * p for p in v]).items():
                        col[("N", j) + key] = c
            cols.append(col)
        null = SparseSystem(f, cols).nullspace()
        WM = F.M.contains(cover.piM, PolyMatrix.identity(K_X, f, F.M.gens))
        WP = F.P.contains(cover.piP, PolyMatrix.identity(K_LAURENT, f, F.P.gens))
        WN = F.N.contains(cover.piN, PolyMatrix.identity(K_XINV, f, F.N.gens))
        if WM is None or WP is None or WN is None:
            raise CoverError("cover is not surjective")
        for vec in null:
            psiM = [[Poly.zero(K_X, f)] * k for _ in range(G.M.gens)]
            psiN = [[Poly.zero(K_XINV, f)] * k for _ in range(G.N.gens)]
            for c, (i, u, v) in zip(vec, unknowns):
                if not c:
                    continue
                for r in range(G.M.gens):
                    psiM[r][i] = psiM[r][i] + u[r].scale(c)
                for r in range(G.N.gens):
                    psiN[r][i] = psiN[r][i] + v[r].scale(c)
            pM = PolyMatrix(K_X, f, G.M.gens, k, psiM)
            pN = PolyMatrix(K_XINV, f, G.N.gens, k, psiN)
            phiM = G.M.reduce_matrix(pM @ WM)
            phiN = G.N.reduce_matrix(pN @ WN)
            phiP = G.P.reduce_matrix(G.sigma @ pM.as_ring(K_LAURENT) @ WP)
            self.basis.append(SheafMorphism(F, G, phiM, phiP, phiN))
        self._sigs = [self.signature(b) for b in self.basis]

    @property
    def dimension(self):
        return len(self.basis)

    def signature(self, phi: SheafMorphism) -> dict:
        return morphism_signature(phi)

    def coords(self, phi: SheafMorphism):
        """Coefficients of phi in the basis (None if phi is not in the span)."""
        if not self.basis:
            return [] if not self.signature(phi) else None
        return SparseSystem(self.field, self._sigs).solve(self.signature(phi))

    def combination(self, coeffs) -> SheafMorphism:
        out = SheafMorphism.zero(self.F, self.G)
        for c, b in zip(coeffs, self.basis):
            if c:
                out = out + b.scale(c)
        return out


def hom_dimension(F: QcohSheaf, G: QcohSheaf) -> int:
    return HomSpace(F, G).dimension


def morphism_signature(phi: SheafMorphism) -> dict:
    """Module coordinates of the generator images of phi (determines phi)."""
    G = phi.target
    out = {}
    for j in range(phi.phiM.cols):
        for key, c in G.M.coords(phi.phiM.col(j)).items():
            out[("M", j) + key] = c
    for j in range(phi.phiN.cols):
        for key, c in G.N.coords(phi.phiN.col(j)).items():
            out[("N", j) + key] = c
    return out
