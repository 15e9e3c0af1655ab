"""Hom complexes (k-vector spaces) and tensor complexes of sheaf complexes.

Hom: degree n is prod_k Hom(X^k, Y^(k+n)) with
    (delta^n f)^k = delta_Y^(k+n) f^k - (-1)^n f^(k+1) delta_X^k.
Tensor: (X (x) Y)^m = (+)_t X^t (x) Y^(m-t) with
    delta = delta_X^t (x) id + (-1)^t id (x) delta_Y^(m-t).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..rings.linalg import mat_vec, rank
from ..sheaves.hom import HomSpace
from ..sheaves.ops import block_morphism, tensor_morphism, tensor_raw
from ..sheaves.sheaf import SheafMorphism, direct_sum
from .core import BoundedComplex, NotAComplex


@dataclass
class HomComplex:
    field: object
    components: dict = dc_field(default_factory=dict)    # n -> list of (k, HomSpace)
    differentials: dict = dc_field(default_factory=dict)  # n -> dense rows (dim n+1 x dim n)

    def dim(self, n):
        return sum(H.dimension for _, H in self.components.get(n, []))

    @property
    def window(self):
        ks = [n for n in self.components if self.dim(n)]
        return (min(ks), max(ks)) if ks else (0, -1)

    def _rank(self, n):
        rows = self.differentials.get(n)
        if not rows or not self.dim(n):
            return 0
        return rank(rows, self.dim(n), self.field)

    def cohomology_dim(self, n):
        return self.dim(n) - self._rank(n) - self._rank(n - 1)

    def to_json(self):
        lo, hi = self.window
        return {"window": [lo, hi], "dims": {str(n): self.dim(n) for n in range(lo, hi + 1)},
                "cohomology": {str(n): self.cohomology_dim(n) for n in range(lo - 1, hi + 2)}}


def hom_complex(X: BoundedComplex, Y: BoundedComplex) -> HomComplex:
    f = X.field
    cache = {}

    def hs(k, m):
        key = (k, m)
        if key not in cache:
            cache[key] = HomSpace(X.obj(k), Y.obj(m))
        return cache[key]

    xlo, xhi = X.window
    ylo, yhi = Y.window
    HC = HomComplex(f)
    if xlo > xhi or ylo > yhi:
        return HC
    lo, hi = ylo - xhi, yhi - xlo
    for n in range(lo - 1, hi + 2):
        HC.components[n] = [(k, hs(k, k + n)) for k in range(xlo, xhi + 1)
                            if ylo <= k + n <= yhi]
    for n in range(lo - 1, hi + 1):
        src, tgt = HC.components[n], HC.components.get(n + 1, [])
        offs, o = {}, 0
        for k, H in tgt:
            offs[k] = o
            o += H.dimension
        dim_t = o
        cols = []
        sign = -1 if n % 2 == 0 else 1   # -(-1)^n
        for k, H in src:
            for phi in H.basis:
                col = [f.zero] * dim_t
                if k in offs:
                    _add(col, offs[k], dict(tgt)[k], Y.d(k + n) @ phi, 1)
                if (k - 1) in offs:
                    _add(col, offs[k - 1], dict(tgt)[k - 1], phi @ X.d(k - 1), sign)
                cols.append(col)
        HC.differentials[n] = [[c[i] for c in cols] for i in range(dim_t)]
    for n in range(lo - 1, hi):
        a, b = HC.differentials.get(n), HC.differentials.get(n + 1)
        if a and b and HC.dim(n) and HC.dim(n + 1):
            for j in range(HC.dim(n)):
                v = mat_vec(b, [row[j] for row in a])
                if any(v):
                    raise NotAComplex("Hom complex differential does not square to zero")
    return HC


def _add(col, off, H, psi: SheafMorphism, sign):
    c = H.coords(psi)
    if c is None:
        raise ArithmeticError("composite morphism outside its Hom space")
    for i, v in enumerate(c):
        if v:
            col[off + i] = col[off + i] + (v if sign > 0 else -v)


def tensor_complex(X: BoundedComplex, Y: BoundedComplex) -> BoundedComplex:
    xlo, xhi = X.window
    ylo, yhi = Y.window
    if xlo > xhi or ylo > yhi:
        return BoundedComplex({}, {}, X.field)
    parts, objs, index = {}, {}, {}
    for m in range(xlo + ylo, xhi + yhi + 1):
        ts = [t for t in range(xlo, xhi + 1) if ylo <= m - t <= yhi]
        parts[m] = [tensor_raw(X.obj(t), Y.obj(m - t)) for t in ts]
        index[m] = {t: i for i, t in enumerate(ts)}
        objs[m] = direct_sum(*parts[m])
    C = BoundedComplex(objs, {}, X.field, check=False)
    for m in range(xlo + ylo, xhi + yhi):
        blocks = {}
        for t, j in index[m].items():
            s = m - t
            if t + 1 in index[m + 1]:
                blocks[(index[m + 1][t + 1], j)] = tensor_morphism(
                    X.d(t), SheafMorphism.identity(Y.obj(s)), parts[m][j], parts[m + 1][index[m + 1][t + 1]])
            if t in index[m + 1]:
                g = tensor_morphism(SheafMorphism.identity(X.obj(t)), Y.d(s), parts[m][j],
                                    parts[m + 1][index[m + 1][t]])
                blocks[(index[m + 1][t], j)] = g if t % 2 == 0 else -g
        C.differentials[m] = block_morphism(parts[m], parts[m + 1], blocks, objs[m], objs[m + 1])
    C.check()
    return C
