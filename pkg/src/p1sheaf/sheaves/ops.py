"""Componentwise constructions on sheaves and morphisms."""
from __future__ import annotations

from ..rings import K_LAURENT, K_X, K_XINV, Poly, PolyMatrix
from .sheaf import (InvalidSheaf, QcohSheaf, SheafMorphism, direct_sum, make_line_bundle,
                    summand_maps)


def _mods(F):
    return (F.M, F.P, F.N)


def kernel(f: SheafMorphism):
    """(K, inclusion K -> source)."""
    s, t = f.source, f.target
    Gm = t.M.kernel_generators(f.phiM, s.M)
    Gn = t.N.kernel_generators(f.phiN, s.N)
    Gp = t.P.kernel_generators(f.phiP, s.P)
    KM = s.M.submodule_presentation(Gm)
    KN = s.N.submodule_presentation(Gn)
    KP = s.P.submodule_presentation(Gp)
    sig = s.P.contains(Gp, s.sigma @ Gm.as_ring(K_LAURENT))
    ta = s.P.contains(Gp, s.tau @ Gn.as_ring(K_LAURENT))
    if sig is None or ta is None:
        raise InvalidSheaf("kernel: sigma/tau do not preserve the kernel (input not a morphism)")
    K = QcohSheaf(KM, KN, KP, sig, ta)
    return K, SheafMorphism(K, s, Gm, Gp, Gn)


def cokernel(f: SheafMorphism):
    """(C, projection target -> C)."""
    t = f.target
    C = QcohSheaf(t.M.quotient(f.phiM), t.N.quotient(f.phiN), t.P.quotient(f.phiP), t.sigma, t.tau)
    fld = t.field
    proj = SheafMorphism(t, C, PolyMatrix.identity(K_X, fld, t.M.gens),
                         PolyMatrix.identity(K_LAURENT, fld, t.P.gens),
                         PolyMatrix.identity(K_XINV, fld, t.N.gens))
    return C, proj


def image(f: SheafMorphism):
    """(I, source -> I, I -> target); I is generated by the images of source generators."""
    s, t = f.source, f.target
    IM = t.M.submodule_presentation(f.phiM)
    IN = t.N.submodule_presentation(f.phiN)
    IP = t.P.submodule_presentation(f.phiP)
    # phiP sigma_s = sigma_t phiM, so sigma_s already describes sigma on image generators
    I = QcohSheaf(IM, IN, IP, s.sigma, s.tau)
    fld = s.field
    onto = SheafMorphism(s, I, PolyMatrix.identity(K_X, fld, s.M.gens),
                         PolyMatrix.identity(K_LAURENT, fld, s.P.gens),
                         PolyMatrix.identity(K_XINV, fld, s.N.gens))
    into = SheafMorphism(I, t, f.phiM, f.phiP, f.phiN)
    return I, onto, into


def is_mono(f: SheafMorphism):
    K, _ = kernel(f)
    return K.M.is_zero() and K.N.is_zero() and K.P.is_zero()


def is_epi(f: SheafMorphism):
    C, _ = cokernel(f)
    return C.M.is_zero() and C.N.is_zero() and C.P.is_zero()


def is_iso(f: SheafMorphism):
    return is_mono(f) and is_epi(f)


def factor_through(mono: SheafMorphism, f: SheafMorphism) -> SheafMorphism:
    """h with mono o h = f; raises if the image of f is not inside the image of mono."""
    B = mono.target
    hM = B.M.contains(mono.phiM, f.phiM)
    hP = B.P.contains(mono.phiP, f.phiP)
    hN = B.N.contains(mono.phiN, f.phiN)
    if hM is None or hP is None or hN is None:
        raise InvalidSheaf("morphism does not factor through the given monomorphism")
    return SheafMorphism(f.source, mono.source, hM, hP, hN)


def lift_through_epi(epi: SheafMorphism, f: SheafMorphism):
    """Componentwise generator lifts g with epi o g = f (not a morphism in general)."""
    C = epi.target
    return (C.M.contains(epi.phiM, f.phiM), C.P.contains(epi.phiP, f.phiP),
            C.N.contains(epi.phiN, f.phiN))


def pushout(f: SheafMorphism, g: SheafMorphism):
    """Pushout of V <-f- U -g-> Y: returns (W, V -> W, Y -> W)."""
    if f.source is not g.source and not _same_sheaf(f.source, g.source):
        raise InvalidSheaf("pushout: f and g must share their source")
    V, Y = f.target, g.target
    VY = direct_sum(V, Y)
    fld = V.field
    stack = lambda a, b, ring: PolyMatrix.vstack(ring, fld, a.cols, [a, -b])
    fg = SheafMorphism(f.source, VY, stack(f.phiM, g.phiM, K_X), stack(f.phiP, g.phiP, K_LAURENT),
                       stack(f.phiN, g.phiN, K_XINV))
    W, q = cokernel(fg)
    (iv, iy), _ = summand_maps([V, Y], VY)
    return W, q @ iv, q @ iy


def _same_sheaf(A, B):
    return (A.M.same_presentation(B.M) and A.N.same_presentation(B.N)
            and A.P.same_presentation(B.P) and A.sigma == B.sigma and A.tau == B.tau)


def simplify(F: QcohSheaf):
    """(F', F -> F', F' -> F) with each component of F' in diagonal normal form."""
    out = {}
    for c, mod in zip("MPN", _mods(F)):
        out[c] = mod.simplified()
    (M2, toM, fromM), (P2, toP, fromP), (N2, toN, fromN) = out["M"], out["P"], out["N"]
    sig = P2.reduce_matrix(toP @ F.sigma @ fromM.as_ring(K_LAURENT))
    ta = P2.reduce_matrix(toP @ F.tau @ fromN.as_ring(K_LAURENT))
    F2 = QcohSheaf(M2, N2, P2, sig, ta)
    return F2, SheafMorphism(F, F2, toM, toP, toN), SheafMorphism(F2, F, fromM, fromP, fromN)


def tensor_raw(F: QcohSheaf, G: QcohSheaf) -> QcohSheaf:
    """Componentwise tensor product on the Kronecker presentation."""
    return QcohSheaf(F.M.tensor(G.M), F.N.tensor(G.N), F.P.tensor(G.P),
                     F.sigma.kron(G.sigma), F.tau.kron(G.tau))


def tensor_morphism(f: SheafMorphism, g: SheafMorphism, source=None, target=None) -> SheafMorphism:
    source = source or tensor_raw(f.source, g.source)
    target = target or tensor_raw(f.target, g.target)
    return SheafMorphism(source, target, f.phiM.kron(g.phiM), f.phiP.kron(g.phiP),
                         f.phiN.kron(g.phiN))


def tensor(F: QcohSheaf, G: QcohSheaf) -> QcohSheaf:
    return simplify(tensor_raw(F, G))[0]


def twist(F: QcohSheaf, n: int) -> QcohSheaf:
    """F (x) O(n); on the quiver this multiplies tau by x^n."""
    fld = F.field
    return QcohSheaf(F.M, F.N, F.P, F.sigma, F.tau.scale(Poly.monomial(K_LAURENT, fld, n)))


def twist_morphism(f: SheafMorphism, n: int) -> SheafMorphism:
    return SheafMorphism(twist(f.source, n), twist(f.target, n), f.phiM, f.phiP, f.phiN)


def line_bundle_morphism(b: int, a: int, u: Poly) -> SheafMorphism:
    """O(b) -> O(a) given by u in k[x] with deg u <= a - b (v = x^(b-a) u)."""
    fld = u.field
    u = u.as_ring(K_X)
    if u.terms and u.degree > a - b:
        raise InvalidSheaf("deg u = %d exceeds a - b = %d" % (u.degree, a - b))
    v = u.as_ring(K_LAURENT).shift(b - a).as_ring(K_XINV)
    one = lambda r, p: PolyMatrix.from_rows(r, fld, [[p]])
    return SheafMorphism(make_line_bundle(b, fld), make_line_bundle(a, fld), one(K_X, u),
                         one(K_LAURENT, u.as_ring(K_LAURENT)), one(K_XINV, v))


def block_morphism(sources, targets, blocks, source=None, target=None) -> SheafMorphism:
    """Morphism (+) sources -> (+) targets from a dict (i, j) -> (sources[j] -> targets[i])."""
    source = source or direct_sum(*sources)
    target = target or direct_sum(*targets)
    fld = source.field
    mats = {}
    for comp, ring in (("M", K_X), ("P", K_LAURENT), ("N", K_XINV)):
        rows = []
        for i, T in enumerate(targets):
            tr = T.component(comp).gens
            row_blocks = []
            for j, S in enumerate(sources):
                sc = S.component(comp).gens
                f = blocks.get((i, j))
                if f is None:
                    row_blocks.append(PolyMatrix.zeros(ring, fld, tr, sc))
                else:
                    row_blocks.append({"M": f.phiM, "P": f.phiP, "N": f.phiN}[comp])
            rows.append(PolyMatrix.hstack(ring, fld, tr, row_blocks))
        ncols = source.component(comp).gens
        mats[comp] = PolyMatrix.vstack(ring, fld, ncols, rows)
    return SheafMorphism(source, target, mats["M"], mats["P"], mats["N"])


def is_short_exact(f: SheafMorphism, g: SheafMorphism) -> bool:
    """0 -> A -f-> B -g-> C -> 0 exact (componentwise)."""
    if not is_mono(f) or not is_epi(g) or not (g @ f).is_zero():
        return False
    _, k = kernel(g)
    try:
        factor_through(f, k)
    except InvalidSheaf:
        return False
    return True
