"""Hom(O(n), F) and Ext^1(O(n), F) as explicit finite-dimensional k-spaces.

Hom(O(n), F) is the space of pairs (u, v) in M x N with x^n sigma(u) = tau(v).
Ext^1(O(n), F) is P / (x^n sigma(M) + tau(N)).

Both are computed on the free part of P after noting that torsion of P lies
in x^n sigma(M) and in tau(N) (x and x^-1 act invertibly on it).  Degree
windows come from the Laurent lattices spanned by the free blocks.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..rings import (K_LAURENT, K_X, K_XINV, NotInvertible, Poly, PolyMatrix, inverse, ring_of,
                     x_lattice_basis, xinv_lattice_basis)
from ..rings.linalg import SparseSystem, rref
from ..sheaves.sheaf import QcohSheaf


class InfiniteDimensional(ValueError):
    """The requested quotient is not finite-dimensional (input skipped validation)."""


@dataclass
class VectorSpaceWithBasis:
    """A finite-dimensional k-space with labelled basis vectors."""
    dimension: int
    labels: list = dc_field(default_factory=list)
    elements: list = dc_field(default_factory=list)

    def to_json(self):
        return {"dim": self.dimension, "basis": list(self.labels)}


# -- element enumeration ---------------------------------------------------------

def module_monomials(mod, free_lo, free_hi):
    """k-basis elements of a module restricted to a window on free coordinates.

    Yields (label, nf index, exponent); exponents of torsion coordinates run
    over the canonical residue window.
    """
    nf = mod.normal
    ring = ring_of(mod.ring)
    out = []
    for i, d in enumerate(nf.torsion):
        for e in ring.residue_window(d):
            out.append((i, e))
    for i in nf.free_coords:
        for e in range(free_lo, free_hi + 1):
            out.append((i, e))
    return out


def nf_unit_vector(mod, i, e):
    """Generator-coordinate vector of x^e times the i-th normal-form basis vector."""
    col = mod.normal.from_nf.col(i)
    return [p.shift(e) for p in col]


# -- Hom(O(n), F) -----------------------------------------------------------------

@dataclass
class HomLine:
    n: int
    F: QcohSheaf
    pairs: list           # list of (u, v): generator-coordinate vectors in M and N

    @property
    def dimension(self):
        return len(self.pairs)

    def signature(self, u, v):
        """Coordinates of (u, v) that determine the section."""
        sig = {("M",) + k: c for k, c in self.F.M.coords(u).items()}
        sig.update({("N",) + k: c for k, c in self.F.N.coords(v).items()})
        return sig

    def space(self):
        labels = ["(%s | %s)" % (", ".join(map(str, u)), ", ".join(map(str, v))) for u, v in self.pairs]
        return VectorSpaceWithBasis(self.dimension, labels, list(self.pairs))


def _free_blocks(F: QcohSheaf):
    """(S, tau_bar) restricted to free coordinates, as Laurent matrices."""
    nm, nn, np_ = F.M.normal, F.N.normal, F.P.normal
    Pfr = np_.to_nf.submatrix(rows=np_.free_coords)
    S = Pfr @ F.sigma @ nm.from_nf.submatrix(cols=nm.free_coords).as_ring(K_LAURENT)
    tb = Pfr @ F.tau @ nn.from_nf.submatrix(cols=nn.free_coords).as_ring(K_LAURENT)
    return S, tb


def _hom_bounds(n, F):
    """Exponent windows for the free parts of u (upper bound) and v (lower bound)."""
    S, tb = _free_blocks(F)
    if S.rows == 0:
        return -1, 1
    if S.rows != S.cols or tb.rows != tb.cols:
        raise InfiniteDimensional("free ranks of M, P, N disagree; validate the sheaf first")
    try:
        A = inverse(S) @ tb
        Ainv = inverse(tb) @ S
    except NotInvertible as exc:
        raise InfiniteDimensional("sigma or tau is not a localization isomorphism") from exc
    u_hi = -n + A.max_exponent()
    v_lo = n + Ainv.min_exponent()
    return u_hi, v_lo


def hom_line(n: int, F: QcohSheaf) -> HomLine:
    f = F.field
    u_hi, v_lo = _hom_bounds(n, F)
    xn = Poly.monomial(K_LAURENT, f, n)
    cols, unknowns = [], []
    for i, e in module_monomials(F.M, 0, u_hi):
        vec = nf_unit_vector(F.M, i, e)
        img = F.sigma @ PolyMatrix.column(K_LAURENT, f, [p.as_ring(K_LAURENT) for p in vec])
        cols.append(F.P.coords([p * xn for p in img.col(0)]))
        unknowns.append(("M", vec))
    for i, e in module_monomials(F.N, v_lo, 0):
        vec = nf_unit_vector(F.N, i, e)
        img = F.tau @ PolyMatrix.column(K_LAURENT, f, [p.as_ring(K_LAURENT) for p in vec])
        cols.append(F.P.coords([-p for p in img.col(0)]))
        unknowns.append(("N", vec))
    sys_ = SparseSystem(f, cols)
    pairs = []
    zM = [Poly.zero(K_X, f)] * F.M.gens
    zN = [Poly.zero(K_XINV, f)] * F.N.gens
    for sol in sys_.nullspace():
        u, v = list(zM), list(zN)
        for c, (kind, vec) in zip(sol, unknowns):
            if not c:
                continue
            if kind == "M":
                u = [a + b.scale(c) for a, b in zip(u, vec)]
            else:
                v = [a + b.scale(c) for a, b in zip(v, vec)]
        pairs.append((u, v))
    return HomLine(n, F, pairs)


# -- Ext^1(O(n), F) -----------------------------------------------------------

class Ext1Line:
    """The quotient P / (x^n sigma(M) + tau(N)) with a reduced monomial basis."""

    def __init__(self, n: int, F: QcohSheaf):
        self.n, self.F = n, F
        f = F.field
        self.field = f
        np_ = F.P.normal
        self.free_coords = np_.free_coords
        r = len(self.free_coords)
        Pfr = np_.to_nf.submatrix(rows=self.free_coords)
        self.Pfr = Pfr
        if r == 0:
            self.lo = self.hi = 0
            self.window = []
            self._finish([])
            return
        xn = Poly.monomial(K_LAURENT, f, n)
        gp = (Pfr @ F.sigma).scale(xn)
        gm = Pfr @ F.tau
        A, _ = x_lattice_basis(gp)
        B, _ = xinv_lattice_basis(gm)
        if A.cols != r or B.cols != r:
            raise InfiniteDimensional("P/(x^n sigma(M) + tau(N)) is infinite-dimensional")
        try:
            c_plus = -inverse(A).min_exponent()
            c_minus = -inverse(B).max_exponent()
        except NotInvertible as exc:
            raise InfiniteDimensional("lattices do not have full rank") from exc
        self.lo, self.hi = c_minus + 1, c_plus - 1   # window: lo <= e <= hi
        self.window = [(i, e) for i in range(r) for e in range(self.lo, self.hi + 1)]
        spans = []
        if self.window:
            for k in range(r):
                col = A.col(k)
                low = min(p.low for p in col if p.terms)
                for j in range(0, max(0, self.hi - low) + 1):
                    spans.append(self._truncate([p.shift(j) for p in col]))
                col = B.col(k)
                top = max(p.degree for p in col if p.terms)
                for j in range(0, max(0, top - self.lo) + 1):
                    spans.append(self._truncate([p.shift(-j) for p in col]))
        self._finish(spans)

    def _truncate(self, vec):
        out = {}
        for i, p in enumerate(vec):
            for e, c in p.terms.items():
                if self.lo <= e <= self.hi:
                    out[(i, e)] = c
        return out

    def _finish(self, spans):
        f = self.field
        # column order: window keys sorted so that high exponents come first;
        # pivots then eliminate high monomials and labels favour low ones
        self.order = sorted(self.window, key=lambda k: (-k[1], k[0]))
        idx = {k: j for j, k in enumerate(self.order)}
        rows = []
        for s in spans:
            row = [f.zero] * len(self.order)
            for k, c in s.items():
                row[idx[k]] = c
            rows.append(row)
        self.reduced, self.pivots = rref(rows, len(self.order), f)
        piv = set(self.pivots)
        self.basis_keys = [k for j, k in enumerate(self.order) if j not in piv]
        self.basis_keys.sort(key=lambda k: (k[0], k[1]))

    @property
    def dimension(self):
        return len(self.basis_keys)

    def basis_element(self, key):
        """Generator-coordinate vector in P of the basis monomial ``key``."""
        i, e = key
        return nf_unit_vector(self.F.P, self.free_coords[i], e)

    def labels(self):
        out = []
        r = len(self.free_coords)
        for i, e in self.basis_keys:
            vec = self.basis_element((i, e))
            if r == 1 and self.F.P.gens == 1:
                out.append(str(vec[0]))
            else:
                out.append("(" + ", ".join(str(p) for p in vec) + ")")
        return out

    def space(self):
        return VectorSpaceWithBasis(self.dimension, self.labels(),
                                    [self.basis_element(k) for k in self.basis_keys])

    def reduce(self, vec) -> dict:
        """Coordinates (basis key -> scalar) of the class of vec (generator coordinates of P)."""
        if not self.basis_keys:
            return {}
        f = self.field
        col = PolyMatrix.column(K_LAURENT, f, [p.as_ring(K_LAURENT) for p in vec])
        free = (self.Pfr @ col).col(0)
        v = self._truncate(free)
        idx = {k: j for j, k in enumerate(self.order)}
        dense = [f.zero] * len(self.order)
        for k, c in v.items():
            dense[idx[k]] = c
        for row, pc in zip(self.reduced, self.pivots):
            c = dense[pc]
            if c:
                dense = [a - c * b if b else a for a, b in zip(dense, row)]
        return {k: dense[idx[k]] for k in self.basis_keys if dense[idx[k]]}

    def is_zero_class(self, vec) -> bool:
        return not self.reduce(vec)

    def format_class(self, coords: dict):
        if not coords:
            return "0"
        parts = []
        for k in self.basis_keys:
            if k in coords:
                parts.append("%s*[%s]" % (self.field.format(coords[k]),
                                          ", ".join(str(p) for p in self.basis_element(k))))
        return " + ".join(parts)


def ext1_line(n: int, F: QcohSheaf) -> Ext1Line:
    return Ext1Line(n, F)
