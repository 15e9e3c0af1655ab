"""Zig-zag closure of index sets over decompositions M = (+) M_i, N = (+) N_j.

Starting from a seed set of M-summands, alternately add every N-summand
that S^-1(sum of chosen M_i) has a nonzero component in, and every
M-summand that T^-1(sum of chosen N_j) has a nonzero component in.
Components are read off by solving over k[x,x^-1] in P, where both
decompositions localize to direct sum decompositions of P.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..rings import K_LAURENT, K_X, K_XINV, PolyMatrix
from ..sheaves.sheaf import InvalidSheaf, QcohSheaf, validate


@dataclass
class ZigzagState:
    F: QcohSheaf
    M_parts: list          # generator matrices over k[x], one per summand M_i
    N_parts: list          # generator matrices over k[x^-1], one per summand N_j
    I_labels: list = dc_field(default_factory=list)
    J_labels: list = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.I_labels:
            self.I_labels = list(range(1, len(self.M_parts) + 1))
        if not self.J_labels:
            self.J_labels = list(range(1, len(self.N_parts) + 1))
        self.M_parts = [m.as_ring(K_X) for m in self.M_parts]
        self.N_parts = [m.as_ring(K_XINV) for m in self.N_parts]


@dataclass
class ZigzagResult:
    I: list
    J: list
    rounds: int
    equal_localizations: bool
    subsheaf: QcohSheaf | None = None
    subsheaf_valid: bool = True

    def to_json(self):
        return {"I": list(self.I), "J": list(self.J), "rounds": self.rounds,
                "localizations_equal": self.equal_localizations, "subsheaf_valid": self.subsheaf_valid}


def _images(F, parts, phi):
    return [phi @ p.as_ring(K_LAURENT) for p in parts]


def _components(P, blocks, target):
    """Indices of blocks in which the columns of ``target`` have a nonzero component."""
    if not blocks:
        return set()
    allb = PolyMatrix.hstack(K_LAURENT, P.field, P.gens, blocks)
    coeff = P.contains(allb, target)
    if coeff is None:
        raise InvalidSheaf("decomposition does not span P after localization")
    out = set()
    off = 0
    for j, b in enumerate(blocks):
        c = coeff.submatrix(rows=range(off, off + b.cols))
        comp = b @ c
        if not all(P.is_zero_element(comp.col(k)) for k in range(comp.cols)):
            out.add(j)
        off += b.cols
    return out


def _stack(P, blocks, idx):
    chosen = [blocks[i] for i in sorted(idx)]
    if not chosen:
        return PolyMatrix.zeros(K_LAURENT, P.field, P.gens, 0)
    return PolyMatrix.hstack(K_LAURENT, P.field, P.gens, chosen)


def _span_contains(P, G, H):
    if H.cols == 0:
        return True
    if G.cols == 0:
        return all(P.is_zero_element(H.col(k)) for k in range(H.cols))
    return P.contains(G, H) is not None


def zigzag_closure(state: ZigzagState, seed) -> ZigzagResult:
    F = state.F
    P = F.P
    sM = _images(F, state.M_parts, F.sigma)
    tN = _images(F, state.N_parts, F.tau)
    pos = {lab: i for i, lab in enumerate(state.I_labels)}
    I = {pos[s] for s in seed}
    J = set()
    rounds = 0
    while True:
        rounds += 1
        newJ = set(J)
        if I:
            newJ |= _components(P, tN, _stack(P, sM, I))
        newI = set(I)
        if newJ:
            newI |= _components(P, sM, _stack(P, tN, newJ))
        if newI == I and newJ == J:
            break
        I, J = newI, newJ
    GI, GJ = _stack(P, sM, I), _stack(P, tN, J)
    equal = _span_contains(P, GI, GJ) and _span_contains(P, GJ, GI)
    res = ZigzagResult([state.I_labels[i] for i in sorted(I)], [state.J_labels[j] for j in sorted(J)],
                       rounds, equal)
    if I or J:
        res.subsheaf = _subsheaf(F, state, I, J)
        res.subsheaf_valid = validate(res.subsheaf).ok
    return res


def _subsheaf(F, state, I, J):
    f = F.field
    hs = lambda ring, parts, rows: (PolyMatrix.hstack(ring, f, rows, parts) if parts
                                    else PolyMatrix.zeros(ring, f, rows, 0))
    GM = hs(K_X, [state.M_parts[i] for i in sorted(I)], F.M.gens)
    GN = hs(K_XINV, [state.N_parts[j] for j in sorted(J)], F.N.gens)
    sG = F.sigma @ GM.as_ring(K_LAURENT)
    tG = F.tau @ GN.as_ring(K_LAURENT)
    Msub = F.M.submodule_presentation(GM)
    Nsub = F.N.submodule_presentation(GN)
    Psub = F.P.submodule_presentation(sG)
    tau = F.P.contains(sG, tG) if sG.cols else PolyMatrix.zeros(K_LAURENT, f, 0, GN.cols)
    if tau is None:
        raise InvalidSheaf("closure is not a subrepresentation")
    return QcohSheaf(Msub, Nsub, Psub, PolyMatrix.identity(K_LAURENT, f, sG.cols), tau)
