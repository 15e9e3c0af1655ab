"""Birkhoff factorization A*T*B = diag(x^n_i) of invertible Laurent matrices.

Method: shift T by x^h into k[x], bring it to row-reduced form R = U*x^h*T
with unimodular U over k[x] (leading row coefficient matrix nonsingular),
then L = diag(x^-d_i) * R is invertible over k[x^-1] and
U * T * L^-1 = diag(x^(d_i - h)).
"""
from __future__ import annotations

from dataclasses import dataclass

from ..rings import (K_LAURENT, K_X, K_XINV, NotInvertible, Poly, PolyMatrix, inverse,
                     laurent_unit_decompose)
from ..rings.linalg import nullspace


@dataclass
class SplittingData:
    type: list
    A: PolyMatrix  # over k[x]
    B: PolyMatrix  # over k[x^-1]

    def diagonal(self):
        f = self.A.field
        return PolyMatrix.diag(K_LAURENT, f, [Poly.monomial(K_LAURENT, f, n) for n in self.type])

    def check(self, T: PolyMatrix) -> bool:
        prod = self.A.as_ring(K_LAURENT) @ T.as_ring(K_LAURENT) @ self.B.as_ring(K_LAURENT)
        return prod == self.diagonal()

    def to_json(self):
        return {"type": list(self.type), "A": self.A.to_json(), "B": self.B.to_json()}


def _unit_det_exponent(T: PolyMatrix) -> int:
    det = T.determinant()
    try:
        return laurent_unit_decompose(det)[1]
    except ValueError as exc:
        raise NotInvertible("det(T) = %s is not a unit of k[x,x^-1]" % det) from exc


def birkhoff_factorize(T: PolyMatrix) -> SplittingData:
    if T.rows != T.cols:
        raise NotInvertible("transition matrix must be square")
    T = T.as_ring(K_LAURENT)
    f = T.field
    r = T.rows
    if r == 0:
        e = PolyMatrix.zeros(K_X, f, 0, 0)
        return SplittingData([], e, PolyMatrix.zeros(K_XINV, f, 0, 0))
    det_exp = _unit_det_exponent(T)
    h = -T.min_exponent()
    R = [[p.shift(h) for p in row] for row in T.data]
    U = [[Poly.one(K_LAURENT, f) if i == j else Poly.zero(K_LAURENT, f) for j in range(r)]
         for i in range(r)]

    while True:
        degs = [max(p.degree for p in row if p.terms) for row in R]
        lead = [[p.coeff(degs[i]) for p in R[i]] for i in range(r)]
        # left null vector c of lead: c^T lead = 0  <=>  lead^T c = 0
        lt = [[lead[i][j] for i in range(r)] for j in range(r)]
        ns = nullspace(lt, r, f)
        if not ns:
            break
        c = ns[0]
        support = [i for i in range(r) if c[i]]
        i0 = max(support, key=lambda i: (degs[i], -i))
        inv = f.one / c[i0]
        new_R, new_U = list(R[i0]), list(U[i0])
        for j in support:
            if j == i0:
                continue
            q = Poly.monomial(K_LAURENT, f, degs[i0] - degs[j], c[j] * inv)
            new_R = [a + q * b for a, b in zip(new_R, R[j])]
            new_U = [a + q * b for a, b in zip(new_U, U[j])]
        R[i0], U[i0] = new_R, new_U

    degs = [max(p.degree for p in row if p.terms) for row in R]
    L = PolyMatrix(K_LAURENT, f, r, r, [[p.shift(-degs[i]) for p in R[i]] for i in range(r)])
    B = inverse(L.as_ring(K_XINV))
    A = PolyMatrix(K_LAURENT, f, r, r, U).as_ring(K_X)
    typ = [d - h for d in degs]
    order = sorted(range(r), key=lambda i: (-typ[i], i))
    A = A.submatrix(rows=order)
    B = B.submatrix(cols=order)
    typ = [typ[i] for i in order]
    if sum(typ) != det_exp:
        raise ArithmeticError("degree conservation failed: %s vs %d" % (typ, det_exp))
    return SplittingData(typ, A, B)
