"""Line-bundle filtrations of locally free sheaves.

After Birkhoff factorization the transition matrix is diagonal in the basis
given by the columns of the split isomorphism, so the subsheaf generated by
the first k basis vectors of M and N is a subrepresentation; the successive
quotients are the line bundles O(n_k).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..sheaves.classify import HasTorsion, classify, split_form
from ..sheaves.ops import cokernel, is_mono
from ..sheaves.sheaf import QcohSheaf, SheafMorphism, sum_of_line_bundles, summand_maps


@dataclass
class Filtration:
    sheaf: QcohSheaf
    steps: list = dc_field(default_factory=list)     # F_1 ... F_r (subsheaves)
    inclusions: list = dc_field(default_factory=list)  # F_i -> F
    labels: list = dc_field(default_factory=list)    # F_i / F_{i-1} = O(labels[i-1])

    def to_json(self):
        return {"length": len(self.labels), "labels": list(self.labels)}


def line_filtration(F: QcohSheaf) -> Filtration:
    c = classify(F)
    if not c.is_locally_free:
        raise HasTorsion("line_filtration needs a locally free sheaf")
    sd, to_F, _ = split_form(F)
    D = to_F.source
    r = len(sd.type)
    filt = Filtration(F)
    if r == 0:
        return filt
    lines = [sum_of_line_bundles([n], F.field) for n in sd.type]
    incs, _ = summand_maps(lines, D)
    for k in range(1, r + 1):
        sub = sum_of_line_bundles(sd.type[:k], F.field)
        sub_incs, _ = summand_maps(lines[:k], sub)
        # inclusion of the first k summands into D, then into F
        phi = incs[0] @ _proj_first(sub_incs, 0)
        for j in range(1, k):
            phi = phi + incs[j] @ _proj_first(sub_incs, j)
        inc = to_F @ phi
        filt.steps.append(sub)
        filt.inclusions.append(inc)
        filt.labels.append(sd.type[k - 1])
    return filt


def _proj_first(sub_incs, j):
    """Projection from the partial sum onto its j-th summand."""
    m = sub_incs[j]
    return SheafMorphism(m.target, m.source, m.phiM.transpose(), m.phiP.transpose(), m.phiN.transpose())


def check_filtration(filt: Filtration):
    """Each inclusion is a valid monomorphism and each quotient is the labelled line bundle."""
    from ..sheaves.sheaf import validate
    problems = []
    prev = None
    for k, (sub, inc, lab) in enumerate(zip(filt.steps, filt.inclusions, filt.labels)):
        if not validate(sub).ok or not inc.is_valid() or not is_mono(inc):
            problems.append("step %d inclusion invalid" % (k + 1))
            continue
        if prev is None:
            quot = sub
        else:
            # F_{k-1} -> F_k via factoring the inclusions
            from ..sheaves.ops import factor_through
            step = factor_through(inc, prev)
            quot, _ = cokernel(step)
        qc = classify(quot)
        if qc.type != [lab] or not qc.is_locally_free:
            problems.append("step %d quotient classifies as %s, expected O(%d)" % (k + 1, qc.to_json(), lab))
        prev = inc
    return problems
