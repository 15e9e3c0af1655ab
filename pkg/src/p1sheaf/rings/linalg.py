"""Exact linear algebra over the base field (dense rows of scalars).

Vectors produced by module coordinate maps are sparse dicts; ``SparseSystem``
turns a list of such dicts into a dense matrix with a stable key order.
"""
from __future__ import annotations

from .field import Field


def rref(rows, ncols, field: Field):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, len(a)):
            if a[i][c]:
                p = i
                break
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = field.one / a[r][c]
        if inv != 1:
            a[r] = [v * inv for v in a[r]]
        pr = a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                ai = a[i]
                a[i] = [x - f * y if y else x for x, y in zip(ai, pr)]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows, ncols, field):
    return len(rref(rows, ncols, field)[1])


def nullspace(rows, ncols, field):
    """Basis (list of vectors) of {v : rows * v = 0}."""
    red, piv = rref(rows, ncols, field)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for r, pc in zip(red, piv):
            if r[f]:
                v[pc] = -r[f]
        basis.append(v)
    return basis


def solve(rows, ncols, rhs, field):
    """Some v with rows * v = rhs, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1, field)
    if ncols in piv:
        return None
    v = [field.zero] * ncols
    for r, pc in zip(red, piv):
        v[pc] = r[ncols]
    return v


def mat_vec(rows, v):
    out = []
    for r in rows:
        s = 0
        for a, b in zip(r, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


class SparseSystem:
    """Columns given as sparse dicts key -> scalar, densified on demand."""

    def __init__(self, field: Field, columns=None):
        self.field = field
        self.columns = []
        if columns:
            for c in columns:
                self.add_column(c)

    def add_column(self, col: dict):
        self.columns.append({k: v for k, v in col.items() if v})

    def keys(self, extra=()):
        ks = set()
        for c in self.columns:
            ks.update(c)
        for e in extra:
            ks.update(e)
        return sorted(ks, key=_sort_key)

    def dense(self, extra=()):
        keys = self.keys(extra)
        index = {k: i for i, k in enumerate(keys)}
        z = self.field.zero
        rows = [[z] * len(self.columns) for _ in keys]
        for j, c in enumerate(self.columns):
            for k, v in c.items():
                rows[index[k]][j] = v
        return rows, keys, index

    def nullspace(self):
        rows, _, _ = self.dense()
        return nullspace(rows, len(self.columns), self.field)

    def rank(self):
        rows, _, _ = self.dense()
        return rank(rows, len(self.columns), self.field)

    def solve(self, target: dict):
        rows, keys, index = self.dense([target])
        rhs = [self.field.zero] * len(keys)
        for k, v in target.items():
            rhs[index[k]] = v
        return solve(rows, len(self.columns), rhs, self.field)


def _sort_key(k):
    # keys are tuples of ints/strings; make mixed tuples comparable
    if isinstance(k, tuple):
        return tuple((0, x) if isinstance(x, int) else (1, str(x)) for x in k)
    return ((0, k),) if isinstance(k, int) else ((1, str(k)),)


def combine(dicts_with_coeffs, field):
    """Linear combination of sparse dict vectors."""
    out = {}
    for c, d in dicts_with_coeffs:
        if not c:
            continue
        for k, v in d.items():
            s = out.get(k)
            s = c * v if s is None else s + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out
