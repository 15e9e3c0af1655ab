"""Extensions 0 -> F -> X -> O(n) -> 0 encoded by a pair (y, z) in P x P.

The middle object is

    M + k[x] --sigma_X--> P + k[x,x^-1] <--tau_X-- N + k[x^-1]

with sigma_X = [[sigma, x^-n y], [0, 1]] and tau_X = [[tau, z], [0, x^n]].
A section (u, 1), (v, 1) exists iff x^n sigma(u) - tau(v) = z - y, so the
class only depends on z - y modulo x^n sigma(M) + tau(N).
"""
from __future__ import annotations

from dataclasses import dataclass

from ..rings import K_LAURENT, K_X, K_XINV, Poly, PolyMatrix
from ..rings.linalg import SparseSystem
from ..sheaves.classify import classify
from ..sheaves.modules import FpModule
from ..sheaves.sheaf import QcohSheaf, SheafMorphism, make_line_bundle
from .lines import Ext1Line, ext1_line, module_monomials, nf_unit_vector


def _laurent_vec(vec, field):
    return [p.as_ring(K_LAURENT) if isinstance(p, Poly) else Poly.const(K_LAURENT, field, p) for p in vec]


class ExtClass:
    def __init__(self, n: int, F: QcohSheaf, y, z, quotient: Ext1Line | None = None):
        f = F.field
        self.n, self.F = n, F
        self.y = _laurent_vec(y, f)
        self.z = _laurent_vec(z, f)
        if len(self.y) != F.P.gens or len(self.z) != F.P.gens:
            raise ValueError("y and z need %d coordinates (generators of P)" % F.P.gens)
        self.quotient = quotient or ext1_line(n, F)
        self.difference = [b - a for a, b in zip(self.y, self.z)]
        self.canonical = self.quotient.reduce(self.difference)

    def is_zero(self):
        return not self.canonical

    def __eq__(self, other):
        return (isinstance(other, ExtClass) and self.n == other.n and self.F is other.F
                and self.canonical == other.canonical)

    def __hash__(self):
        return hash((self.n, id(self.F), tuple(sorted(self.canonical.items()))))

    def to_json(self):
        return {"n": self.n, "y": [p.to_json() for p in self.y], "z": [p.to_json() for p in self.z],
                "canonical": self.quotient.format_class(self.canonical)}


def build_extension(cls: ExtClass):
    """(X, F -> X, X -> O(n)) realizing the class."""
    F, n = cls.F, cls.n
    f = F.field
    zero = Poly.zero(K_LAURENT, f)
    one = Poly.one(K_LAURENT, f)

    def ext_mod(mod, ring):
        rel = PolyMatrix.block_diag(ring, f, [mod.relations, PolyMatrix.zeros(ring, f, 1, 0)])
        return FpModule(ring, f, mod.gens + 1, rel)

    M, N, P = ext_mod(F.M, K_X), ext_mod(F.N, K_XINV), ext_mod(F.P, K_LAURENT)
    xmn = Poly.monomial(K_LAURENT, f, -n)
    xn = Poly.monomial(K_LAURENT, f, n)
    sig = [list(F.sigma.data[i]) + [cls.y[i] * xmn] for i in range(F.P.gens)]
    sig.append([zero] * F.M.gens + [one])
    tau = [list(F.tau.data[i]) + [cls.z[i]] for i in range(F.P.gens)]
    tau.append([zero] * F.N.gens + [xn])
    X = QcohSheaf(M, N, P, PolyMatrix(K_LAURENT, f, P.gens, M.gens, sig),
                  PolyMatrix(K_LAURENT, f, P.gens, N.gens, tau))

    def inc(ring, k):
        I = PolyMatrix.identity(ring, f, k)
        return PolyMatrix.vstack(ring, f, k, [I, PolyMatrix.zeros(ring, f, 1, k)])

    def proj(ring, k):
        return PolyMatrix.from_rows(ring, f, [[Poly.zero(ring, f)] * k + [Poly.one(ring, f)]])

    O = make_line_bundle(n, f)
    i = SheafMorphism(F, X, inc(K_X, F.M.gens), inc(K_LAURENT, F.P.gens), inc(K_XINV, F.N.gens))
    p = SheafMorphism(X, O, proj(K_X, F.M.gens), proj(K_LAURENT, F.P.gens), proj(K_XINV, F.N.gens))
    return X, i, p


def section_system(n: int, F: QcohSheaf, bound: int):
    """Unknowns (u, v) in windows of size ``bound``; columns are P-coordinates of x^n sigma(u) - tau(v)."""
    f = F.field
    xn = Poly.monomial(K_LAURENT, f, n)
    cols, unknowns = [], []
    for i, e in module_monomials(F.M, 0, bound):
        vec = nf_unit_vector(F.M, i, e)
        img = (F.sigma @ PolyMatrix.column(K_LAURENT, f, [p.as_ring(K_LAURENT) for p in vec])).col(0)
        cols.append(F.P.coords([p * xn for p in img]))
        unknowns.append(("M", vec))
    for i, e in module_monomials(F.N, -bound, 0):
        vec = nf_unit_vector(F.N, i, e)
        img = (F.tau @ PolyMatrix.column(K_LAURENT, f, [p.as_ring(K_LAURENT) for p in vec])).col(0)
        cols.append(F.P.coords([-p for p in img]))
        unknowns.append(("N", vec))
    return SparseSystem(f, cols), unknowns


def _assemble(F, sol, unknowns):
    f = F.field
    u = [Poly.zero(K_X, f)] * F.M.gens
    v = [Poly.zero(K_XINV, f)] * F.N.gens
    for c, (kind, vec) in zip(sol, unknowns):
        if not c:
            continue
        if kind == "M":
            u = [a + b.scale(c) for a, b in zip(u, vec)]
        else:
            v = [a + b.scale(c) for a, b in zip(v, vec)]
    return u, v


def check_section(n, F, u, v, target) -> bool:
    f = F.field
    xn = Poly.monomial(K_LAURENT, f, n)
    su = (F.sigma @ PolyMatrix.column(K_LAURENT, f, [p.as_ring(K_LAURENT) for p in u])).col(0) \
        if F.M.gens else []
    tv = (F.tau @ PolyMatrix.column(K_LAURENT, f, [p.as_ring(K_LAURENT) for p in v])).col(0) \
        if F.N.gens else []
    lhs = [Poly.zero(K_LAURENT, f)] * F.P.gens
    if su:
        lhs = [a + b * xn for a, b in zip(lhs, su)]
    if tv:
        lhs = [a - b for a, b in zip(lhs, tv)]
    return F.P.is_zero_element([a - b for a, b in zip(lhs, target)])


def is_split(cls: ExtClass):
    """A witness (u, v) with x^n sigma(u) - tau(v) = z - y, or None when the class is nonzero."""
    if cls.canonical:
        return None
    F, n = cls.F, cls.n
    target = cls.difference
    if F.P.is_zero_element(target):
        f = F.field
        return [Poly.zero(K_X, f)] * F.M.gens, [Poly.zero(K_XINV, f)] * F.N.gens
    spans = [abs(e) for p in target if p.terms for e in (p.low, p.degree)]
    spans += [abs(e) for m in (F.sigma, F.tau) for r in m.data for p in r if p.terms
              for e in (p.low, p.degree)]
    bound = abs(n) + max(spans + [0]) + 2
    for _ in range(12):
        sys_, unknowns = section_system(n, F, bound)
        sol = sys_.solve(F.P.coords(target))
        if sol is not None:
            u, v = _assemble(F, sol, unknowns)
            if not check_section(n, F, u, v, target):
                raise ArithmeticError("section witness failed verification")
            return u, v
        bound *= 2
    raise ArithmeticError("zero class but no section found up to degree %d" % bound)


@dataclass
class UPerpResult:
    member: bool
    witness_n: int | None = None
    witness_dim: int = 0

    def __bool__(self):
        return self.member

    def to_json(self):
        return {"in_u_perp": self.member, "witness_n": self.witness_n, "witness_ext1_dim": self.witness_dim}


def in_u_perp(F: QcohSheaf) -> UPerpResult:
    """Ext^1(O(m), F) = 0 for all m iff F has no torsion-free part."""
    if F.P.free_rank == 0:
        return UPerpResult(True)
    n = max(classify(F).type) + 2
    dim = ext1_line(n, F).dimension
    if dim == 0:
        raise ArithmeticError("certificate failed: ext1_line(%d) vanished" % n)
    return UPerpResult(False, n, dim)
