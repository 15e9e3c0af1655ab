"""Structure of a coherent sheaf: torsion at each point plus the splitting type.

Torsion at 0 is read from the x-primary torsion of M, torsion at infinity
from the x^-1-primary torsion of N, and torsion at the remaining points from
the torsion invariants of P (where x is a unit).  The torsion-free quotient
is described by the Laurent transition matrix T = S^-1 * tau_bar, where S and
tau_bar are the free blocks of sigma and tau in normal-form coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, isqrt

from ..rings import K_LAURENT, K_X, Poly, PolyMatrix, inverse, ring_of
from .sheaf import QcohSheaf, SheafMorphism, from_transition_matrix


class HasTorsion(ValueError):
    pass


@dataclass
class FreePart:
    T: PolyMatrix          # Laurent transition matrix of the torsion-free quotient
    S: PolyMatrix          # free block of sigma
    sheaf: QcohSheaf       # (k[x]^r -id-> Laurent^r <-T- k[x^-1]^r)
    projection: SheafMorphism  # F -> sheaf


@dataclass
class Classification:
    torsion: dict = dc_field(default_factory=dict)   # point label -> multiplicities
    other: list = dc_field(default_factory=list)     # torsion factors with no rational root
    type: list = dc_field(default_factory=list)

    @property
    def rank(self):
        return len(self.type)

    @property
    def is_torsion(self):
        return not self.type

    @property
    def is_locally_free(self):
        return not self.torsion and not self.other

    @property
    def is_zero(self):
        return self.is_torsion and self.is_locally_free

    def key(self):
        return (tuple(sorted((k, tuple(v)) for k, v in self.torsion.items())),
                tuple(sorted(self.other)), tuple(self.type))

    def __eq__(self, other):
        return isinstance(other, Classification) and self.key() == other.key()

    def to_json(self):
        return {"torsion": {k: list(v) for k, v in sorted(self.torsion.items())},
                "torsion_other": sorted(self.other), "type": list(self.type), "rank": self.rank}


# -- roots ------------------------------------------------------------------

def _divisors(n: int):
    n = abs(n)
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return out


def rational_roots(d: Poly):
    """Distinct roots in k of a k[x] polynomial (exact)."""
    d = d.as_ring(K_X) if d.ring != K_X else d
    if not d.terms:
        raise ValueError("zero polynomial has every point as a root")
    field = d.field
    low = d.low
    roots = [field.zero] if low > 0 else []
    core = {e - low: c for e, c in d.terms.items()}
    if max(core) == 0:
        return roots
    ev = lambda a: sum((c * a ** e for e, c in core.items()), field.zero)
    if field.p is not None:
        return roots + [a for a in field.elements() if a and not ev(a)]
    den = 1
    for c in core.values():
        c = Fraction(c)
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {e: int(Fraction(c) * den) for e, c in core.items()}
    a0, an = ints[0], ints[max(ints)]
    cands = set()
    for p in _divisors(a0):
        for q in _divisors(an):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    return roots + sorted(a for a in cands if not ev(a))


def _root_multiplicity(d: Poly, a):
    lin = Poly(K_X, d.field, {1: d.field.one, 0: -a})
    ring = ring_of(K_X)
    k = 0
    while d.terms and d.degree > 0:
        q, r = ring.divmod(d, lin)
        if r.terms:
            break
        d, k = q, k + 1
    return k, d


# -- classification ------------------------------------------------------------

def torsion_data(F: QcohSheaf):
    field = F.field
    pts, other = {}, []
    for d in F.M.torsion_invariants:
        if d.low:
            pts.setdefault("0", []).append(d.low)
    for d in F.N.torsion_invariants:
        v = -d.degree
        if v:
            pts.setdefault("inf", []).append(v)
    for d in F.P.torsion_invariants:
        dx = ring_of(K_LAURENT).normalize(d).as_ring(K_X)
        rest = dx
        for a in rational_roots(dx):
            k, rest = _root_multiplicity(rest, a)
            if k:
                pts.setdefault(field.format(a), []).append(k)
        if rest.terms and rest.degree > 0:
            other.append(str(rest))
    for v in pts.values():
        v.sort(reverse=True)
    return pts, other


def free_part(F: QcohSheaf) -> FreePart:
    nm, nn, np_ = F.M.normal, F.N.normal, F.P.normal
    r = np_.free
    if nm.free != r or nn.free != r:
        raise ValueError("free ranks of M, P, N disagree (%d, %d, %d): sheaf not quasi-coherent"
                         % (nm.free, r, nn.free))
    Pfr = np_.to_nf.submatrix(rows=np_.free_coords)
    Mfr = nm.to_nf.submatrix(rows=nm.free_coords)
    Nfr = nn.to_nf.submatrix(rows=nn.free_coords)
    Mfrom = nm.from_nf.submatrix(cols=nm.free_coords).as_ring(K_LAURENT)
    Nfrom = nn.from_nf.submatrix(cols=nn.free_coords).as_ring(K_LAURENT)
    S = Pfr @ F.sigma @ Mfrom
    taub = Pfr @ F.tau @ Nfrom
    Sinv = inverse(S) if r else S
    T = Sinv @ taub
    FT = from_transition_matrix(T)
    proj = SheafMorphism(F, FT, Mfr, Sinv @ Pfr, Nfr)
    return FreePart(T, S, FT, proj)


def classify(F: QcohSheaf) -> Classification:
    from ..splitting.birkhoff import birkhoff_factorize
    pts, other = torsion_data(F)
    fp = free_part(F)
    typ = birkhoff_factorize(fp.T).type if fp.T.rows else []
    return Classification(pts, sorted(other), typ)


def splitting_type(F: QcohSheaf):
    c = classify(F)
    if not c.is_locally_free:
        raise HasTorsion("sheaf has torsion %s; splitting type needs a locally free sheaf"
                         % c.to_json()["torsion"])
    return list(c.type)


def split_form(F: QcohSheaf):
    """For locally free F: (SplittingData, iso (+)O(n_i) -> F, iso F -> (+)O(n_i))."""
    from ..splitting.birkhoff import birkhoff_factorize
    from .sheaf import sum_of_line_bundles
    c = classify(F)
    if not c.is_locally_free:
        raise HasTorsion("split_form needs a locally free sheaf")
    fp = free_part(F)
    sd = birkhoff_factorize(fp.T)
    f = F.field
    D = sum_of_line_bundles(sd.type, f)
    Ainv = inverse(sd.A)
    Binv = inverse(sd.B)
    # (A^-1, A^-1, B): D -> F_T and (A, A, B^-1): F_T -> D
    to_FT = SheafMorphism(D, fp.sheaf, Ainv, Ainv.as_ring(K_LAURENT), sd.B)
    from_FT = SheafMorphism(fp.sheaf, D, sd.A, sd.A.as_ring(K_LAURENT), Binv)
    nm, nn, np_ = F.M.normal, F.N.normal, F.P.normal
    sec = SheafMorphism(fp.sheaf, F, nm.from_nf.submatrix(cols=nm.free_coords),
                        np_.from_nf.submatrix(cols=np_.free_coords) @ fp.S,
                        nn.from_nf.submatrix(cols=nn.free_coords))
    return sd, sec @ to_FT, from_FT @ fp.projection
