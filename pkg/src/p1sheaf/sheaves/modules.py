"""Finitely presented modules over k[x], k[x^-1] and k[x,x^-1].

A module is R^gens / (column span of ``relations``).  Its normal form comes
from the Smith form of the relation matrix: torsion coordinates
R/(d_1) + ... + R/(d_t) followed by ``free`` copies of R.  The normal form
gives canonical k-coordinates for elements, which is how every membership
and zero test in the package is decided.
"""
from __future__ import annotations

from functools import cached_property

from ..rings import (K_LAURENT, K_X, K_XINV, Field, Poly, PolyMatrix, kernel_basis,
                     ring_of, smith_normal_form, solve_linear)


class NormalForm:
    """Iso between a module and sum R/(d_i) + R^free.

    ``to_nf`` (g x gens) maps generator coordinates to normal-form
    coordinates; ``from_nf`` (gens x g) goes back.  Both are module maps.
    """

    def __init__(self, ring, torsion, free, to_nf, from_nf):
        self.ring = ring
        self.torsion = torsion
        self.free = free
        self.to_nf = to_nf
        self.from_nf = from_nf

    @property
    def size(self):
        return len(self.torsion) + self.free

    @property
    def free_coords(self):
        t = len(self.torsion)
        return list(range(t, t + self.free))

    @property
    def torsion_coords(self):
        return list(range(len(self.torsion)))


class FpModule:
    def __init__(self, ring: str, field: Field, gens: int, relations: PolyMatrix | None = None):
        self.ring = ring
        self.field = field
        self.gens = gens
        if relations is None:
            relations = PolyMatrix.zeros(ring, field, gens, 0)
        if relations.rows != gens:
            raise ValueError("relation matrix must have %d rows, has %d" % (gens, relations.rows))
        self.relations = relations.as_ring(ring)

    # -- constructors ---------------------------------------------------
    @classmethod
    def free(cls, ring, field, rank):
        return cls(ring, field, rank)

    @classmethod
    def zero(cls, ring, field):
        return cls(ring, field, 0)

    @classmethod
    def cyclic(cls, ring, field, d: Poly):
        return cls(ring, field, 1, PolyMatrix.from_rows(ring, field, [[d.as_ring(ring)]]))

    @classmethod
    def diagonal(cls, ring, field, torsion, free):
        n = len(torsion) + free
        rel = PolyMatrix.diag(ring, field, [d.as_ring(ring) for d in torsion], n, len(torsion))
        return cls(ring, field, n, rel)

    # -- normal form ------------------------------------------------------
    @cached_property
    def normal(self) -> NormalForm:
        ring = ring_of(self.ring)
        field = self.field
        s = self.gens
        if self.relations.cols == 0 or self.relations.is_zero():
            ident = PolyMatrix.identity(self.ring, field, s)
            return NormalForm(self.ring, [], s, ident, ident)
        snf = smith_normal_form(self.relations)
        torsion, keep = [], []
        for i in range(snf.rank):
            d = snf.D[i, i]
            if not ring.is_unit(d):
                torsion.append(d)
                keep.append(i)
        keep += list(range(snf.rank, s))
        to_nf = snf.U.submatrix(rows=keep)
        from_nf = snf.Uinv.submatrix(cols=keep)
        return NormalForm(self.ring, torsion, s - snf.rank, to_nf, from_nf)

    @property
    def torsion_invariants(self):
        return list(self.normal.torsion)

    @property
    def free_rank(self):
        return self.normal.free

    def is_zero(self):
        return self.normal.size == 0

    def is_free(self):
        return not self.normal.torsion

    def is_torsion(self):
        return self.normal.free == 0

    def invariants_key(self):
        """Presentation-independent isomorphism invariant."""
        return (self.ring, self.free_rank, tuple(sorted(str(d) for d in self.normal.torsion)))

    def k_dimension(self):
        """Dimension over k (None when a free summand is present)."""
        if self.free_rank:
            return None
        ring = ring_of(self.ring)
        return sum(len(ring.residue_window(d)) for d in self.normal.torsion)

    # -- elements -----------------------------------------------------------
    def nf_vector(self, vec):
        """Normal-form coordinates (reduced) of an element given on generators."""
        nf = self.normal
        ring = ring_of(self.ring)
        vec = [p.as_ring(self.ring) if p.ring != self.ring else p for p in vec]
        out = []
        for i in range(nf.size):
            row = nf.to_nf.data[i]
            s = Poly.zero(self.ring, self.field)
            for a, b in zip(row, vec):
                if a.terms and b.terms:
                    s = s + a * b
            if i < len(nf.torsion):
                s = ring.canonical_residue(s, nf.torsion[i])
            out.append(s)
        return out

    def coords(self, vec) -> dict:
        """Canonical sparse k-coordinates: (nf index, exponent) -> scalar."""
        out = {}
        for i, p in enumerate(self.nf_vector(vec)):
            for e, c in p.terms.items():
                out[(i, e)] = c
        return out

    def is_zero_element(self, vec) -> bool:
        return not self.coords(vec)

    def element_from_nf(self, nfvec):
        nf = self.normal
        out = []
        for i in range(self.gens):
            s = Poly.zero(self.ring, self.field)
            for j, p in enumerate(nfvec):
                if p.terms and nf.from_nf.data[i][j].terms:
                    s = s + nf.from_nf.data[i][j] * p
            out.append(s)
        return out

    def reduce_matrix(self, A: PolyMatrix) -> PolyMatrix:
        """Reduce entries modulo relations when the presentation is diagonal."""
        if not self.is_diagonal():
            return A
        ring = ring_of(self.ring)
        data = []
        for i in range(A.rows):
            d = self.relations[i, i] if i < self.relations.cols else None
            if d is not None and d.terms and not ring.is_unit(d):
                data.append([ring.canonical_residue(p.as_ring(self.ring), d).as_ring(A.ring)
                             if p.terms else p for p in A.data[i]])
            elif d is not None and d.terms:
                data.append([Poly.zero(A.ring, A.field)] * A.cols)
            else:
                data.append(list(A.data[i]))
        return PolyMatrix(A.ring, A.field, A.rows, A.cols, data)

    def is_diagonal(self):
        rel = self.relations
        for i in range(rel.rows):
            for j in range(rel.cols):
                if i != j and rel[i, j].terms:
                    return False
        return True

    def contains(self, gens_matrix: PolyMatrix, vec: PolyMatrix):
        """Coefficients c with gens_matrix*c = vec modulo relations, or None."""
        A = PolyMatrix.hstack(self.ring, self.field, self.gens,
                              [gens_matrix.as_ring(self.ring), self.relations])
        sol = solve_linear(A, vec.as_ring(self.ring))
        if sol is None:
            return None
        return sol.submatrix(rows=range(gens_matrix.cols))

    def contains_over(self, sub: str, G: PolyMatrix, b: PolyMatrix):
        """Is b in the ``sub``-span of the columns of G (self a Laurent module)?

        ``sub`` is K_X or K_XINV.  Torsion coordinates R/(d) with d(0) != 0 are
        already finitely generated over either subring; free coordinates are
        shifted by a unit so every entry lies in the subring.  Returns the
        coefficient matrix over ``sub`` (as Laurent) or None.
        """
        if self.ring != K_LAURENT:
            raise ValueError("contains_over needs a Laurent module")
        ring = ring_of(K_LAURENT)
        f = self.field
        nf = self.normal
        Gn = nf.to_nf @ G.as_ring(K_LAURENT)
        bn = nf.to_nf @ b.as_ring(K_LAURENT)
        t = len(nf.torsion)
        ncols = Gn.cols + t
        rows, rhs = [], []
        zero = Poly.zero(K_LAURENT, f)
        for i, d in enumerate(nf.torsion):
            n = d.degree
            unit = Poly.one(K_LAURENT, f) if sub == K_X else Poly.monomial(K_LAURENT, f, -(n - 1))
            rel = d if sub == K_X else d.shift(-n)
            row = [ring.canonical_residue(p, d) * unit for p in Gn.data[i]]
            row += [rel if j == i else zero for j in range(t)]
            rows.append(row)
            rhs.append([ring.canonical_residue(p, d) * unit for p in bn.data[i]])
        free_rows = list(range(t, nf.size))
        if free_rows:
            sub_g = Gn.submatrix(rows=free_rows)
            sub_b = bn.submatrix(rows=free_rows)
            exps = [e for e in (sub_g.min_exponent(), sub_b.min_exponent(),
                                sub_g.max_exponent(), sub_b.max_exponent()) if e is not None]
            if sub == K_X:
                k = -min([0] + exps)
            else:
                k = -max([0] + exps)
            for i in free_rows:
                rows.append([p.shift(k) for p in Gn.data[i]] + [zero] * t)
                rhs.append([p.shift(k) for p in bn.data[i]])
        A = PolyMatrix(K_LAURENT, f, len(rows), ncols, rows).as_ring(sub)
        B = PolyMatrix(K_LAURENT, f, len(rhs), b.cols, rhs).as_ring(sub)
        sol = solve_linear(A, B)
        if sol is None:
            return None
        return sol.submatrix(rows=range(Gn.cols)).as_ring(K_LAURENT)

    # -- maps -----------------------------------------------------------
    def respects(self, phi: PolyMatrix, source: "FpModule") -> bool:
        """Does the matrix phi (self.gens x source.gens) define a map source -> self?"""
        img = phi @ source.relations.as_ring(phi.ring)
        return all(self.is_zero_element(img.col(j)) for j in range(img.cols))

    def kernel_generators(self, phi: PolyMatrix, source: "FpModule") -> PolyMatrix:
        """Columns generating ker(phi: source -> self) as a submodule of R^source.gens."""
        A = PolyMatrix.hstack(self.ring, self.field, self.gens,
                              [phi.as_ring(self.ring), self.relations])
        K = kernel_basis(A)
        return K.submatrix(rows=range(source.gens))

    def submodule_presentation(self, G: PolyMatrix) -> "FpModule":
        """Presentation of the submodule generated by the columns of G."""
        A = PolyMatrix.hstack(self.ring, self.field, self.gens, [G.as_ring(self.ring), self.relations])
        K = kernel_basis(A)
        return FpModule(self.ring, self.field, G.cols, K.submatrix(rows=range(G.cols)))

    def quotient(self, G: PolyMatrix) -> "FpModule":
        """self / (span of the columns of G)."""
        rel = PolyMatrix.hstack(self.ring, self.field, self.gens, [self.relations, G.as_ring(self.ring)])
        return FpModule(self.ring, self.field, self.gens, rel)

    def generated_by(self, G: PolyMatrix) -> bool:
        """Do the columns of G generate the whole module?"""
        return self.quotient(G).is_zero()

    def direct_sum(self, other: "FpModule") -> "FpModule":
        rel = PolyMatrix.block_diag(self.ring, self.field, [self.relations, other.relations])
        return FpModule(self.ring, self.field, self.gens + other.gens, rel)

    def tensor(self, other: "FpModule") -> "FpModule":
        ring, f = self.ring, self.field
        a = self.relations.kron(PolyMatrix.identity(ring, f, other.gens))
        b = PolyMatrix.identity(ring, f, self.gens).kron(other.relations)
        n = self.gens * other.gens
        return FpModule(ring, f, n, PolyMatrix.hstack(ring, f, n, [a, b]))

    def localize(self) -> "FpModule":
        """Extension of scalars to k[x,x^-1] (same presentation)."""
        return FpModule(K_LAURENT, self.field, self.gens, self.relations.as_ring(K_LAURENT))

    def simplified(self):
        """(diagonal module, to matrix, from matrix) -- iso to the normal form."""
        nf = self.normal
        return (FpModule.diagonal(self.ring, self.field, nf.torsion, nf.free), nf.to_nf, nf.from_nf)

    def same_presentation(self, other: "FpModule") -> bool:
        return (self.ring == other.ring and self.gens == other.gens
                and self.relations == other.relations)

    def to_json(self):
        return {"ring": self.ring, "gens": self.gens, "relations": self.relations.to_json()}

    def __repr__(self):
        nf = self.normal
        parts = ["R/(%s)" % d for d in nf.torsion]
        if nf.free:
            parts.append("R^%d" % nf.free)
        return "FpModule(%s: %s)" % (self.ring, " + ".join(parts) or "0")


RING_NAMES = {K_X: "k[x]", K_XINV: "k[x^-1]", K_LAURENT: "k[x,x^-1]"}
