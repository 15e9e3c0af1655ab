"""Extending a complex by an extension of one of its cycle sheaves.

Given N, a degree n and 0 -> Z_n N -i-> T -p-> C -> 0, let Q be the
pushout of Z_n N -> N^n along i.  Replacing N^n by Q gives a complex H with
0 -> N -> H -> C[-n] -> 0 degreewise exact (C sits in degree n).  If this
sequence splits as complexes then the sheaf extension splits too.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from ..rings import K_LAURENT, K_X, K_XINV, PolyMatrix
from ..rings.linalg import SparseSystem
from ..sheaves.hom import HomSpace, morphism_signature
from ..sheaves.ops import is_iso, pushout
from ..sheaves.sheaf import InvalidSheaf, SheafMorphism
from .core import BoundedComplex, ChainMap, cycles, sphere


class KernelMismatch(InvalidSheaf):
    pass


@dataclass
class MistResult:
    N: BoundedComplex
    H: BoundedComplex
    S: BoundedComplex          # C concentrated in degree n
    inc: ChainMap
    proj: ChainMap
    degree: int


def _identify(Z, K, seed=0, tries=30):
    """An isomorphism Z -> K, found in Hom(Z, K)."""
    H = HomSpace(Z, K)
    for b in H.basis:
        if is_iso(b):
            return b
    rng = random.Random(seed)
    f = Z.field
    for _ in range(tries if H.basis else 0):
        coeffs = [f(rng.randint(-3, 3)) for _ in H.basis]
        phi = H.combination(coeffs)
        if is_iso(phi):
            return phi
    raise KernelMismatch("kernel of the extension is not isomorphic to the cycle sheaf")


def mist_extension(N: BoundedComplex, n: int, i: SheafMorphism, p: SheafMorphism) -> MistResult:
    Z, z = cycles(N, n)
    if i.source is not Z:
        i = i @ _identify(Z, i.source)
    f = N.field
    Q, hq, gq = pushout(z, i)
    T = i.target
    objs = dict(N.objects)
    objs[n] = Q
    H = BoundedComplex(objs, {}, f, check=False)
    for k, d in N.differentials.items():
        if k not in (n - 1, n):
            H.differentials[k] = d
    if (n - 1) in N.differentials:
        H.differentials[n - 1] = hq @ N.d(n - 1)
    Nn1 = N.obj(n + 1)
    dn = N.d(n)
    pad = lambda ring, m, rows, extra: PolyMatrix.hstack(ring, f, rows, [m, PolyMatrix.zeros(ring, f, rows, extra)])
    H.differentials[n] = SheafMorphism(Q, Nn1, pad(K_X, dn.phiM, Nn1.M.gens, T.M.gens),
                                       pad(K_LAURENT, dn.phiP, Nn1.P.gens, T.P.gens),
                                       pad(K_XINV, dn.phiN, Nn1.N.gens, T.N.gens))
    H.check()
    C = p.target
    S = sphere(C, -n)
    Nn = N.obj(n)
    left = lambda ring, m, rows, extra: PolyMatrix.hstack(ring, f, rows, [PolyMatrix.zeros(ring, f, rows, extra), m])
    q = SheafMorphism(Q, C, left(K_X, p.phiM, C.M.gens, Nn.M.gens),
                      left(K_LAURENT, p.phiP, C.P.gens, Nn.P.gens),
                      left(K_XINV, p.phiN, C.N.gens, Nn.N.gens))
    comps = {k: SheafMorphism.identity(F) for k, F in N.objects.items() if k != n}
    comps[n] = hq
    inc = ChainMap(N, H, comps)
    proj = ChainMap(H, S, {n: q})
    return MistResult(N, H, S, inc, proj, n)


def _tagged(tag, sig):
    return {(tag,) + k: c for k, c in sig.items()}


def output_section(res: MistResult):
    """A chain map C[-n] -> H splitting the projection, or None."""
    n = res.degree
    C = res.S.obj(n)
    Q = res.H.obj(n)
    q = res.proj.at(n)
    d = res.H.d(n)
    Hs = HomSpace(C, Q)
    cols = []
    for b in Hs.basis:
        col = _tagged("q", morphism_signature(q @ b))
        col.update(_tagged("d", morphism_signature(d @ b)))
        cols.append(col)
    target = _tagged("q", morphism_signature(SheafMorphism.identity(C)))
    if not cols:
        return SheafMorphism.zero(C, Q) if not target else None
    sol = SparseSystem(C.field, cols).solve(target)
    if sol is None:
        return None
    s = Hs.combination(sol)
    if not (q @ s).equals(SheafMorphism.identity(C)) or not (d @ s).is_zero():
        raise ArithmeticError("section check failed")
    return s


def input_section(p: SheafMorphism):
    """s: C -> T with p o s = id, or None."""
    C, T = p.target, p.source
    Hs = HomSpace(C, T)
    cols = [morphism_signature(p @ b) for b in Hs.basis]
    target = morphism_signature(SheafMorphism.identity(C))
    if not cols:
        return SheafMorphism.zero(C, T) if not target else None
    sol = SparseSystem(C.field, cols).solve(target)
    if sol is None:
        return None
    s = Hs.combination(sol)
    if not (p @ s).equals(SheafMorphism.identity(C)):
        raise ArithmeticError("section check failed")
    return s
