"""Smith normal form over the Euclidean coordinate rings, and what it buys.

``smith_normal_form(A)`` returns U, D, V (plus U^-1, V^-1) with U*A*V = D,
D diagonal, d_1 | d_2 | ..., nonzero diagonal entries in canonical
(monic) form.  Pivot: smallest Euclidean norm, ties to lowest (row, col).
"""
from __future__ import annotations

from typing import NamedTuple

from .matrix import PolyMatrix
from .poly import K_LAURENT, K_X, Poly, ring_of


class SmithForm(NamedTuple):
    U: PolyMatrix
    D: PolyMatrix
    V: PolyMatrix
    Uinv: PolyMatrix
    Vinv: PolyMatrix
    rank: int

    @property
    def diagonal(self):
        return [self.D[i, i] for i in range(self.rank)]


class NotInvertible(ValueError):
    pass


def _identity_rows(ring, field, n):
    z, o = Poly.zero(ring, field), Poly.one(ring, field)
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def smith_normal_form(A: PolyMatrix) -> SmithForm:
    ring = ring_of(A.ring)
    field = A.field
    m, n = A.rows, A.cols
    a = [list(r) for r in A.data]
    U = _identity_rows(A.ring, field, m)
    Ui = _identity_rows(A.ring, field, m)
    V = _identity_rows(A.ring, field, n)
    Vi = _identity_rows(A.ring, field, n)

    def row_add(i, j, q):  # row_i += q * row_j
        if not q.terms:
            return
        ri, rj = a[i], a[j]
        for c in range(n):
            if rj[c].terms:
                ri[c] = ri[c] + q * rj[c]
        ui, uj = U[i], U[j]
        for c in range(m):
            if uj[c].terms:
                ui[c] = ui[c] + q * uj[c]
        for r in Ui:  # col_j -= q * col_i
            if r[i].terms:
                r[j] = r[j] - q * r[i]

    def col_add(i, j, q):  # col_j += q * col_i
        if not q.terms:
            return
        for r in a:
            if r[i].terms:
                r[j] = r[j] + q * r[i]
        for r in V:
            if r[i].terms:
                r[j] = r[j] + q * r[i]
        vi, vj = Vi[i], Vi[j]  # row_i -= q * row_j
        for c in range(n):
            if vj[c].terms:
                vi[c] = vi[c] - q * vj[c]

    def row_swap(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        if i == j:
            return
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_scale(i, u, uinv):
        a[i] = [p * u for p in a[i]]
        U[i] = [p * u for p in U[i]]
        for r in Ui:
            r[i] = r[i] * uinv

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                p = a[i][j]
                if p.terms:
                    key = (ring.norm(p), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, pi, pj = best
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            clean = True
            piv = a[t][t]
            for i in range(t + 1, m):
                if a[i][t].terms:
                    q, r = ring.divmod(a[i][t], piv)
                    row_add(i, t, -q)
                    if r.terms:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j].terms:
                    q, r = ring.divmod(a[t][j], piv)
                    col_add(t, j, -q)
                    if r.terms:
                        clean = False
            if not clean:
                best = None
                for i in range(t, m):
                    p = a[i][t]
                    if p.terms:
                        key = (ring.norm(p), i, t)
                        if best is None or key < best:
                            best = key
                for j in range(t, n):
                    p = a[t][j]
                    if p.terms:
                        key = (ring.norm(p), t, j)
                        if best is None or key < best:
                            best = key
                _, pi, pj = best
                row_swap(t, pi)
                col_swap(t, pj)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j].terms and not ring.divides(piv, a[i][j]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, Poly.one(A.ring, field))
        u = ring.normalizer(a[t][t])
        if not (len(u.terms) == 1 and 0 in u.terms and u.terms[0] == 1):
            row_scale(t, u, ring.unit_inverse(u))
        t += 1
    rank = 0
    while rank < min(m, n) and a[rank][rank].terms:
        rank += 1
    mk = lambda rows, r, c: PolyMatrix(A.ring, field, r, c, rows)
    return SmithForm(mk(U, m, m), mk(a, m, n), mk(V, n, n), mk(Ui, m, m), mk(Vi, n, n), rank)


def solve_linear(A: PolyMatrix, b: PolyMatrix, snf: SmithForm | None = None):
    """Some solution xi of A*xi = b over A's ring, or None if none exists."""
    if b.rows != A.rows:
        raise ValueError("dimension mismatch: A is %dx%d, b has %d rows" % (A.rows, A.cols, b.rows))
    if b.ring != A.ring:
        b = b.as_ring(A.ring)
    ring = ring_of(A.ring)
    snf = snf or smith_normal_form(A)
    c = snf.U @ b
    eta = []
    z = Poly.zero(A.ring, A.field)
    for i in range(A.cols):
        row = []
        for k in range(b.cols):
            if i < snf.rank:
                q, r = ring.divmod(c[i, k], snf.D[i, i])
                if r.terms:
                    return None
                row.append(q)
            else:
                row.append(z)
        eta.append(row)
    for i in range(snf.rank, A.rows):
        for k in range(b.cols):
            if c[i, k].terms:
                return None
    return snf.V @ PolyMatrix(A.ring, A.field, A.cols, b.cols, eta)


def kernel_basis(A: PolyMatrix, snf: SmithForm | None = None) -> PolyMatrix:
    """Columns form a basis of {xi : A*xi = 0} (free over a PID)."""
    snf = snf or smith_normal_form(A)
    return snf.V.submatrix(cols=range(snf.rank, A.cols))


def inverse(A: PolyMatrix) -> PolyMatrix:
    """Inverse over A's own ring; NotInvertible unless det(A) is a unit."""
    if A.rows != A.cols:
        raise NotInvertible("non-square matrix")
    ring = ring_of(A.ring)
    snf = smith_normal_form(A)
    if snf.rank != A.rows:
        raise NotInvertible("singular matrix")
    dinv = []
    for i in range(A.rows):
        d = snf.D[i, i]
        if not ring.is_unit(d):
            raise NotInvertible("invariant factor %s is not a unit" % d)
        dinv.append(ring.unit_inverse(d))
    return snf.V @ PolyMatrix.diag(A.ring, A.field, dinv) @ snf.U


def x_lattice_basis(A: PolyMatrix):
    """k[x]-span of the columns of a Laurent matrix.

    Returns (B, C) where the columns of B are a k[x]-basis of the span and
    B = A * C with C over k[x] (as a Laurent matrix).
    """
    return _lattice_basis(A, K_X)


def xinv_lattice_basis(A: PolyMatrix):
    """k[x^-1]-span of the columns of a Laurent matrix (see x_lattice_basis)."""
    from .poly import K_XINV
    return _lattice_basis(A, K_XINV)


def _lattice_basis(A: PolyMatrix, sub: str):
    if A.ring != K_LAURENT:
        A = A.as_ring(K_LAURENT)
    lo, hi = A.min_exponent(), A.max_exponent()
    if lo is None:
        z = PolyMatrix.zeros(K_LAURENT, A.field, A.rows, 0)
        return z, PolyMatrix.zeros(K_LAURENT, A.field, A.cols, 0)
    h = -lo if sub == K_X else -hi
    Ap = A.shift(h).as_ring(sub)
    snf = smith_normal_form(Ap)
    C = snf.V.submatrix(cols=range(snf.rank)).as_ring(K_LAURENT)
    return A @ C, C
