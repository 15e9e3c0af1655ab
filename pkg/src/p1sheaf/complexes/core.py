"""Bounded cochain complexes of sheaves (differentials raise degree by one)."""
from __future__ import annotations

from ..rings import QQ
from ..sheaves.classify import classify
from ..sheaves.ops import (block_morphism, cokernel, factor_through, image, is_short_exact,
                           kernel)
from ..sheaves.sheaf import InvalidSheaf, QcohSheaf, SheafMorphism, direct_sum


class NotAComplex(InvalidSheaf):
    pass


class BoundedComplex:
    def __init__(self, objects: dict, differentials: dict | None = None, field=None, check: bool = True):
        self.objects = {int(k): v for k, v in objects.items()}
        self.field = field or (next(iter(self.objects.values())).field if self.objects else QQ)
        self._zero = QcohSheaf.zero(self.field)
        self.differentials = {}
        for k, d in (differentials or {}).items():
            k = int(k)
            if d.source is not self.obj(k) or d.target is not self.obj(k + 1):
                raise NotAComplex("differential in degree %d has the wrong source or target" % k)
            self.differentials[k] = d
        if check:
            self.check()

    @property
    def window(self):
        if not self.objects:
            return (0, -1)
        return (min(self.objects), max(self.objects))

    def degrees(self, pad: int = 0):
        lo, hi = self.window
        return range(lo - pad, hi + pad + 1)

    def obj(self, n: int) -> QcohSheaf:
        return self.objects.get(n, self._zero)

    def d(self, n: int) -> SheafMorphism:
        if n in self.differentials:
            return self.differentials[n]
        return SheafMorphism.zero(self.obj(n), self.obj(n + 1))

    def check(self):
        for n in self.degrees():
            if n in self.differentials and n + 1 in self.differentials:
                if not (self.d(n + 1) @ self.d(n)).is_zero():
                    raise NotAComplex("delta^%d o delta^%d != 0" % (n + 1, n))

    def __repr__(self):
        return "BoundedComplex(%s)" % {k: repr(v) for k, v in sorted(self.objects.items())}


class ChainMap:
    def __init__(self, source: BoundedComplex, target: BoundedComplex, components: dict):
        self.source, self.target = source, target
        self.components = {int(k): v for k, v in components.items()}

    def at(self, n):
        if n in self.components:
            return self.components[n]
        return SheafMorphism.zero(self.source.obj(n), self.target.obj(n))

    def degrees(self):
        lo = min(self.source.window[0], self.target.window[0])
        hi = max(self.source.window[1], self.target.window[1])
        return range(lo - 1, hi + 1)

    def is_valid(self):
        for n in self.degrees():
            lhs = self.target.d(n) @ self.at(n)
            rhs = self.at(n + 1) @ self.source.d(n)
            if not lhs.equals(rhs):
                return False
        return all(f.is_valid() for f in self.components.values())

    @classmethod
    def identity(cls, X: BoundedComplex):
        return cls(X, X, {n: SheafMorphism.identity(F) for n, F in X.objects.items()})


# -- constructors ---------------------------------------------------------------

def sphere(F: QcohSheaf, n: int) -> BoundedComplex:
    """F concentrated in degree -n."""
    return BoundedComplex({-n: F}, {}, F.field)


def disc(F: QcohSheaf, n: int) -> BoundedComplex:
    """F --id--> F in degrees -n-1 and -n."""
    X = BoundedComplex({-n - 1: F, -n: F}, {}, F.field, check=False)
    X.differentials[-n - 1] = SheafMorphism.identity(F)
    return X


def sphere_disc_sequence(F: QcohSheaf, n: int):
    """0 -> sphere(F, n) -> disc(F, n) -> sphere(F, n+1) -> 0 as chain maps."""
    S, D, S1 = sphere(F, n), disc(F, n), sphere(F, n + 1)
    i = ChainMap(S, D, {-n: SheafMorphism.identity(F)})
    p = ChainMap(D, S1, {-n - 1: SheafMorphism.identity(F)})
    return S, D, S1, i, p


def is_short_exact_complexes(i: ChainMap, p: ChainMap) -> bool:
    if not (i.is_valid() and p.is_valid()):
        return False
    for n in i.degrees():
        if not is_short_exact(i.at(n), p.at(n)):
            return False
    return True


def cone(f: ChainMap) -> BoundedComplex:
    """Cone^n = X^(n+1) + Y^n with delta = [[-delta_X, 0], [f, delta_Y]]."""
    X, Y = f.source, f.target
    lo = min(X.window[0] - 1, Y.window[0])
    hi = max(X.window[1] - 1, Y.window[1])
    objs, parts = {}, {}
    for n in range(lo, hi + 1):
        ps = [X.obj(n + 1), Y.obj(n)]
        parts[n] = ps
        objs[n] = direct_sum(*ps)
    C = BoundedComplex(objs, {}, X.field, check=False)
    for n in range(lo, hi):
        blocks = {(0, 0): -X.d(n + 1), (1, 0): f.at(n + 1), (1, 1): Y.d(n)}
        C.differentials[n] = block_morphism(parts[n], parts[n + 1], blocks, objs[n], objs[n + 1])
    C.check()
    return C


def direct_sum_complexes(*Xs: BoundedComplex) -> BoundedComplex:
    lo = min(X.window[0] for X in Xs)
    hi = max(X.window[1] for X in Xs)
    objs, parts = {}, {}
    for n in range(lo, hi + 1):
        parts[n] = [X.obj(n) for X in Xs]
        objs[n] = direct_sum(*parts[n])
    C = BoundedComplex(objs, {}, Xs[0].field, check=False)
    for n in range(lo, hi):
        blocks = {(k, k): X.d(n) for k, X in enumerate(Xs)}
        C.differentials[n] = block_morphism(parts[n], parts[n + 1], blocks, objs[n], objs[n + 1])
    C.check()
    return C


# -- homology -------------------------------------------------------------------

def cycles(C: BoundedComplex, n: int):
    """(Z_n, inclusion Z_n -> C^n)."""
    return kernel(C.d(n))


def boundaries(C: BoundedComplex, n: int):
    """(B_n, inclusion B_n -> C^n): the image of delta^(n-1)."""
    B, _, into = image(C.d(n - 1))
    return B, into


def homology(C: BoundedComplex, n: int) -> QcohSheaf:
    Z, z = cycles(C, n)
    b = factor_through(z, C.d(n - 1))
    H, _ = cokernel(b)
    return H


def is_exact(C: BoundedComplex) -> bool:
    return all(homology(C, n).is_zero() for n in C.degrees())


def is_locally_projective_complex(C: BoundedComplex) -> bool:
    """Exact with every cycle sheaf locally free."""
    if not is_exact(C):
        return False
    return all(classify(cycles(C, n)[0]).is_locally_free for n in C.degrees())


def is_u_perp_complex(C: BoundedComplex) -> bool:
    """Exact with every cycle sheaf in the right orthogonal of the line bundles."""
    from ..ext.baer import in_u_perp
    if not is_exact(C):
        return False
    return all(in_u_perp(cycles(C, n)[0]).member for n in C.degrees())
