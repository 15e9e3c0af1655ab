"""Quasi-coherent sheaves on P^1 as representations M -> P <- N.

M is a k[x]-module, N a k[x^-1]-module and P a k[x,x^-1]-module.  The maps
are stored as Laurent matrices on generators: ``sigma`` is P.gens x M.gens and
``tau`` is P.gens x N.gens.  Quasi-coherence asks that both maps become
isomorphisms after inverting x (for sigma) or x^-1 (for tau).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..rings import (K_LAURENT, K_X, K_XINV, QQ, Field, NotInvertible, Poly, PolyMatrix,
                     laurent_unit_decompose)
from .modules import FpModule


class InvalidSheaf(ValueError):
    """Raised when a sheaf or morphism violates a structural invariant."""


class QcohSheaf:
    __slots__ = ("M", "N", "P", "sigma", "tau", "field", "__dict__")

    def __init__(self, M: FpModule, N: FpModule, P: FpModule, sigma: PolyMatrix, tau: PolyMatrix):
        if (M.ring, N.ring, P.ring) != (K_X, K_XINV, K_LAURENT):
            raise InvalidSheaf("components must live over k[x], k[x^-1], k[x,x^-1]")
        if sigma.shape != (P.gens, M.gens):
            raise InvalidSheaf("sigma must be %dx%d, got %dx%d" % (P.gens, M.gens, *sigma.shape))
        if tau.shape != (P.gens, N.gens):
            raise InvalidSheaf("tau must be %dx%d, got %dx%d" % (P.gens, N.gens, *tau.shape))
        self.M, self.N, self.P = M, N, P
        self.sigma = sigma.as_ring(K_LAURENT)
        self.tau = tau.as_ring(K_LAURENT)
        self.field = P.field

    @classmethod
    def zero(cls, field: Field = QQ):
        z = lambda r: FpModule.zero(r, field)
        e = PolyMatrix.zeros(K_LAURENT, field, 0, 0)
        return cls(z(K_X), z(K_XINV), z(K_LAURENT), e, e)

    def is_zero(self):
        return self.M.is_zero() and self.N.is_zero() and self.P.is_zero()

    @property
    def rank(self):
        """Generic rank: free rank of the Laurent component."""
        return self.P.free_rank

    def component(self, which):
        return {"M": self.M, "N": self.N, "P": self.P}[which]

    def __repr__(self):
        return "QcohSheaf(M=%r, N=%r, P=%r)" % (self.M, self.N, self.P)


class SheafMorphism:
    """Compatible triple (phiM, phiP, phiN) of matrices on generators."""

    def __init__(self, source: QcohSheaf, target: QcohSheaf, phiM: PolyMatrix, phiP: PolyMatrix,
                 phiN: PolyMatrix, check: bool = False):
        self.source, self.target = source, target
        if phiM.shape != (target.M.gens, source.M.gens):
            raise InvalidSheaf("phiM has shape %s, expected %s"
                               % (phiM.shape, (target.M.gens, source.M.gens)))
        if phiN.shape != (target.N.gens, source.N.gens):
            raise InvalidSheaf("phiN has shape %s, expected %s"
                               % (phiN.shape, (target.N.gens, source.N.gens)))
        if phiP.shape != (target.P.gens, source.P.gens):
            raise InvalidSheaf("phiP has shape %s, expected %s"
                               % (phiP.shape, (target.P.gens, source.P.gens)))
        self.phiM = phiM.as_ring(K_X)
        self.phiN = phiN.as_ring(K_XINV)
        self.phiP = phiP.as_ring(K_LAURENT)
        if check:
            problems = self.problems()
            if problems:
                raise InvalidSheaf("; ".join(problems))

    @classmethod
    def identity(cls, F: QcohSheaf):
        f = F.field
        return cls(F, F, PolyMatrix.identity(K_X, f, F.M.gens), PolyMatrix.identity(K_LAURENT, f, F.P.gens),
                   PolyMatrix.identity(K_XINV, f, F.N.gens))

    @classmethod
    def zero(cls, source: QcohSheaf, target: QcohSheaf):
        f = source.field
        return cls(source, target, PolyMatrix.zeros(K_X, f, target.M.gens, source.M.gens),
                   PolyMatrix.zeros(K_LAURENT, f, target.P.gens, source.P.gens),
                   PolyMatrix.zeros(K_XINV, f, target.N.gens, source.N.gens))

    def problems(self):
        """List of violated invariants (empty when the triple is a morphism)."""
        out = []
        s, t = self.source, self.target
        if not t.M.respects(self.phiM, s.M):
            out.append("phiM does not respect the relations of M")
        if not t.N.respects(self.phiN, s.N):
            out.append("phiN does not respect the relations of N")
        if not t.P.respects(self.phiP, s.P):
            out.append("phiP does not respect the relations of P")
        d1 = self.phiP @ s.sigma - t.sigma @ self.phiM.as_ring(K_LAURENT)
        if not all(t.P.is_zero_element(d1.col(j)) for j in range(d1.cols)):
            out.append("sigma square does not commute")
        d2 = self.phiP @ s.tau - t.tau @ self.phiN.as_ring(K_LAURENT)
        if not all(t.P.is_zero_element(d2.col(j)) for j in range(d2.cols)):
            out.append("tau square does not commute")
        return out

    def is_valid(self):
        return not self.problems()

    def __matmul__(self, other: "SheafMorphism") -> "SheafMorphism":
        """Composition self o other."""
        return SheafMorphism(other.source, self.target, self.phiM @ other.phiM,
                             self.phiP @ other.phiP, self.phiN @ other.phiN)

    def __add__(self, other):
        return SheafMorphism(self.source, self.target, self.phiM + other.phiM,
                             self.phiP + other.phiP, self.phiN + other.phiN)

    def __sub__(self, other):
        return SheafMorphism(self.source, self.target, self.phiM - other.phiM,
                             self.phiP - other.phiP, self.phiN - other.phiN)

    def __neg__(self):
        return SheafMorphism(self.source, self.target, -self.phiM, -self.phiP, -self.phiN)

    def scale(self, c):
        return SheafMorphism(self.source, self.target, self.phiM.scale(c), self.phiP.scale(c),
                             self.phiN.scale(c))

    def is_zero(self):
        t = self.target
        for mod, mat in ((t.M, self.phiM), (t.N, self.phiN), (t.P, self.phiP)):
            if not all(mod.is_zero_element(mat.col(j)) for j in range(mat.cols)):
                return False
        return True

    def equals(self, other: "SheafMorphism"):
        return (self - other).is_zero()

    def __repr__(self):
        return "SheafMorphism(%r -> %r)" % (self.source, self.target)


# -- constructors -------------------------------------------------------------

def make_line_bundle(n: int, field: Field = QQ) -> QcohSheaf:
    """O(n): sigma(1) = 1 and tau(1) = x^n."""
    return QcohSheaf(FpModule.free(K_X, field, 1), FpModule.free(K_XINV, field, 1),
                     FpModule.free(K_LAURENT, field, 1),
                     PolyMatrix.identity(K_LAURENT, field, 1),
                     PolyMatrix.from_rows(K_LAURENT, field, [[Poly.monomial(K_LAURENT, field, n)]]))


def _parse_point(point, field):
    if isinstance(point, str):
        p = point.strip().lower()
        if p in ("inf", "infinity", "oo"):
            return None
        return field(p)
    return field(point)


def make_torsion_sheaf(point, mult: int, field: Field = QQ) -> QcohSheaf:
    """Skyscraper of length ``mult`` at a point of P^1 ("inf" for infinity)."""
    if mult < 1:
        raise ValueError("torsion multiplicity must be >= 1, got %r" % (mult,))
    a = _parse_point(point, field)
    one_x = lambda r: PolyMatrix.identity(K_LAURENT, field, 1)
    empty = lambda rows, cols: PolyMatrix.zeros(K_LAURENT, field, rows, cols)
    if a is None:
        N = FpModule.cyclic(K_XINV, field, Poly.monomial(K_XINV, field, -mult))
        return QcohSheaf(FpModule.zero(K_X, field), N, FpModule.zero(K_LAURENT, field),
                         empty(0, 0), empty(0, 1))
    if not a:
        M = FpModule.cyclic(K_X, field, Poly.monomial(K_X, field, mult))
        return QcohSheaf(M, FpModule.zero(K_XINV, field), FpModule.zero(K_LAURENT, field),
                         empty(0, 1), empty(0, 0))
    lin = Poly(K_X, field, {1: field.one, 0: -a}) ** mult
    # (x - a)^m = x^m (1 - a x^-1)^m, so N uses the k[x^-1] generator of the same ideal
    lin_inv = Poly(K_XINV, field, {0: field.one, -1: -a}) ** mult
    M = FpModule.cyclic(K_X, field, lin)
    N = FpModule.cyclic(K_XINV, field, lin_inv)
    P = FpModule.cyclic(K_LAURENT, field, lin.as_ring(K_LAURENT))
    return QcohSheaf(M, N, P, one_x(0), one_x(0))


def from_transition_matrix(T: PolyMatrix) -> QcohSheaf:
    """Locally free sheaf (k[x]^r -id-> Laurent^r <-T- k[x^-1]^r)."""
    if T.rows != T.cols:
        raise NotInvertible("transition matrix must be square")
    T = T.as_ring(K_LAURENT)
    field = T.field
    r = T.rows
    if r:
        det = T.determinant()
        try:
            laurent_unit_decompose(det)
        except ValueError as exc:
            raise NotInvertible("det(T) = %s is not a unit of k[x,x^-1]" % det) from exc
    return QcohSheaf(FpModule.free(K_X, field, r), FpModule.free(K_XINV, field, r),
                     FpModule.free(K_LAURENT, field, r), PolyMatrix.identity(K_LAURENT, field, r), T)


def direct_sum(*sheaves: QcohSheaf) -> QcohSheaf:
    if not sheaves:
        raise ValueError("direct_sum needs at least one summand (use QcohSheaf.zero)")
    f = sheaves[0].field
    M = _sum_modules([F.M for F in sheaves], K_X, f)
    N = _sum_modules([F.N for F in sheaves], K_XINV, f)
    P = _sum_modules([F.P for F in sheaves], K_LAURENT, f)
    sigma = PolyMatrix.block_diag(K_LAURENT, f, [F.sigma for F in sheaves])
    tau = PolyMatrix.block_diag(K_LAURENT, f, [F.tau for F in sheaves])
    return QcohSheaf(M, N, P, sigma, tau)


def _sum_modules(mods, ring, field):
    rel = PolyMatrix.block_diag(ring, field, [m.relations for m in mods])
    return FpModule(ring, field, sum(m.gens for m in mods), rel)


def sum_of_line_bundles(twists, field: Field = QQ) -> QcohSheaf:
    if not twists:
        return QcohSheaf.zero(field)
    return from_transition_matrix(PolyMatrix.diag(
        K_LAURENT, field, [Poly.monomial(K_LAURENT, field, n) for n in twists]))


def direct_sum_morphism(*maps: SheafMorphism, source=None, target=None) -> SheafMorphism:
    f = maps[0].source.field
    source = source or direct_sum(*[m.source for m in maps])
    target = target or direct_sum(*[m.target for m in maps])
    return SheafMorphism(source, target,
                         PolyMatrix.block_diag(K_X, f, [m.phiM for m in maps]),
                         PolyMatrix.block_diag(K_LAURENT, f, [m.phiP for m in maps]),
                         PolyMatrix.block_diag(K_XINV, f, [m.phiN for m in maps]))


def summand_maps(sheaves, total=None):
    """Inclusions and projections for the direct sum of ``sheaves``."""
    f = sheaves[0].field
    total = total or direct_sum(*sheaves)
    incs, projs = [], []
    offs = {"M": 0, "P": 0, "N": 0}
    rings = {"M": K_X, "P": K_LAURENT, "N": K_XINV}
    for F in sheaves:
        inc, proj = {}, {}
        for c in "MPN":
            n_tot = total.component(c).gens
            n_here = F.component(c).gens
            o = offs[c]
            e = PolyMatrix.zeros(rings[c], f, n_tot, n_here)
            data = [list(r) for r in e.data]
            one = Poly.one(rings[c], f)
            for i in range(n_here):
                data[o + i][i] = one
            inc[c] = PolyMatrix(rings[c], f, n_tot, n_here, data)
            proj[c] = inc[c].transpose()
            offs[c] += n_here
        incs.append(SheafMorphism(F, total, inc["M"], inc["P"], inc["N"]))
        projs.append(SheafMorphism(total, F, proj["M"], proj["P"], proj["N"]))
    return incs, projs


# -- validation --------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    failures: list = dc_field(default_factory=list)
    exponents: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {"valid": self.ok, "failures": list(self.failures), "exponents": self.exponents}

    def raise_if_invalid(self):
        if not self.ok:
            raise InvalidSheaf("; ".join(self.failures))


def _localization_failures(F: QcohSheaf, which: str):
    """Check that S^-1 sigma (or T^-1 tau) is an isomorphism over Laurent."""
    src = F.M if which == "sigma" else F.N
    phi = F.sigma if which == "sigma" else F.tau
    label = "S^-1 sigma" if which == "sigma" else "T^-1 tau"
    out = []
    if not F.P.generated_by(phi):
        out.append("%s not an isomorphism (not surjective)" % label)
    loc = src.localize()
    K = F.P.kernel_generators(phi, loc)
    if not all(loc.is_zero_element(K.col(j)) for j in range(K.cols)):
        out.append("%s not an isomorphism (not injective)" % label)
    return out


def _valuation(d: Poly, at_infinity: bool) -> int:
    return (-d.degree if at_infinity else d.low) if d.terms else 0


def _coker_exponents(F: QcohSheaf, which: str, bound: int):
    """Per normal-form generator e_i of P, the least c >= 0 with x^c e_i in sigma(M).

    (x^-c for tau.)  Returns None for a generator if no c <= bound works.
    """
    sub = K_X if which == "sigma" else K_XINV
    G = F.sigma if which == "sigma" else F.tau
    sign = 1 if which == "sigma" else -1
    nf = F.P.normal
    out = []
    for i in range(nf.size):
        col = nf.from_nf.submatrix(cols=[i])
        found = None
        for c in range(bound + 1):
            if F.P.contains_over(sub, G, col.shift(sign * c)) is not None:
                found = c
                break
        out.append(found)
    return out


def validate(F: QcohSheaf) -> ValidationReport:
    """Linearity, relation compatibility and the two localization conditions."""
    failures = []
    sig_rel = F.sigma @ F.M.relations.as_ring(K_LAURENT)
    if not all(F.P.is_zero_element(sig_rel.col(j)) for j in range(sig_rel.cols)):
        failures.append("sigma does not respect the relations of M")
    tau_rel = F.tau @ F.N.relations.as_ring(K_LAURENT)
    if not all(F.P.is_zero_element(tau_rel.col(j)) for j in range(tau_rel.cols)):
        failures.append("tau does not respect the relations of N")
    if failures:
        return ValidationReport(False, failures)
    failures += _localization_failures(F, "sigma")
    failures += _localization_failures(F, "tau")
    if failures:
        return ValidationReport(False, failures)
    # certificates: ker sigma is the x-primary torsion of M, ker tau the x^-1-primary torsion of N
    exps = {
        "ker_sigma": max([_valuation(d, False) for d in F.M.torsion_invariants] + [0]),
        "ker_tau": max([_valuation(d, True) for d in F.N.torsion_invariants] + [0]),
    }
    spans = [p.span for m in (F.sigma, F.tau) for r in m.data for p in r if p.terms]
    degs = [abs(p.low) + abs(p.degree) for m in (F.sigma, F.tau) for r in m.data for p in r if p.terms]
    bound = max(spans + degs + [0]) + F.P.gens + F.M.gens + F.N.gens + 1
    cs = _coker_exponents(F, "sigma", bound)
    ct = _coker_exponents(F, "tau", bound)
    if None in cs or None in ct:
        # localizations are isomorphisms, so this only means the search bound was too small
        return ValidationReport(False, ["annihilating exponent exceeds certificate bound %d" % bound], exps)
    exps["coker_sigma"] = cs
    exps["coker_tau"] = ct
    return ValidationReport(True, [], exps)


def is_valid(F: QcohSheaf) -> bool:
    return validate(F).ok
