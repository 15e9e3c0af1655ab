"""JSON descriptions of sheaves, morphisms and complexes.

Sheaf: explicit {"M", "N", "P", "sigma", "tau"} with modules
{"ring", "gens", "relations"} (ring "x", "xinv", "laurent" or
"k[x]", "k[x^-1]", "k[x,x^-1]"), or one of the shorthands
{"line_bundle": n}, {"torsion": {"point": p, "mult": m}},
{"transition": matrix}, {"direct_sum": [sheaf, ...]}.
Polynomials are strings ("x^2 - 1/2*x^-1") or exponent maps ({"2": "1"}).
Complex: {"window": [lo, hi], "objects": {deg: sheaf},
"differentials": {deg: {"M": matrix, "P": matrix, "N": matrix}}}.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from ..complexes.core import BoundedComplex
from ..rings import K_LAURENT, K_X, K_XINV, Field, PolyMatrix, matrix_from_json
from ..sheaves.modules import FpModule
from ..sheaves.sheaf import (QcohSheaf, SheafMorphism, direct_sum, from_transition_matrix,
                             make_line_bundle, make_torsion_sheaf)

RING_FOR = {"M": K_X, "P": K_LAURENT, "N": K_XINV}
RING_ALIASES = {"k[x]": K_X, "k[x^-1]": K_XINV, "k[x,x^-1]": K_LAURENT}


class ParseError(ValueError):
    def __init__(self, source, path, message):
        self.source, self.path = source, path
        super().__init__("%s: at %s: %s" % (source, path or "<root>", message))


def read_input(arg: str):
    """(parsed JSON, raw bytes, label).  Inline JSON is accepted when arg starts with { or [."""
    text = arg.strip()
    if text[:1] in "{[":
        raw = text.encode()
        label = "<inline>"
    else:
        p = Path(arg)
        try:
            raw = p.read_bytes()
        except OSError as exc:
            raise ParseError(arg, "", "cannot read file (%s)" % exc.strerror) from exc
        label = arg
    try:
        obj = json.loads(raw.decode())
    except json.JSONDecodeError as exc:
        raise ParseError(label, "line %d col %d" % (exc.lineno, exc.colno), exc.msg) from exc
    return obj, raw, label


def sha256_of(chunks) -> str:
    h = hashlib.sha256()
    for c in chunks:
        h.update(hashlib.sha256(c).digest())
    return h.hexdigest()


def _matrix(obj, ring, field, rows, cols, src, path):
    try:
        return matrix_from_json(obj, ring, field, rows, cols)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(src, path, str(exc)) from exc


def _module(obj, comp, field, src, path):
    if not isinstance(obj, dict):
        raise ParseError(src, path, "module must be an object, got %r" % (obj,))
    ring = obj.get("ring", RING_FOR[comp])
    ring = RING_ALIASES.get(ring, ring)
    if ring != RING_FOR[comp]:
        raise ParseError(src, path + ".ring", "expected %r for %s, got %r" % (RING_FOR[comp], comp, ring))
    gens = obj.get("gens")
    if not isinstance(gens, int) or gens < 0:
        raise ParseError(src, path + ".gens", "gens must be a nonnegative integer, got %r" % (gens,))
    rel = obj.get("relations", [])
    if rel and any(rel_row for rel_row in rel):
        R = _matrix(rel, ring, field, gens, None, src, path + ".relations")
    else:
        R = PolyMatrix.zeros(ring, field, gens, 0)
    return FpModule(ring, field, gens, R)


def sheaf_from_json(obj, field: Field, src="<input>", path="") -> QcohSheaf:
    if not isinstance(obj, dict):
        raise ParseError(src, path, "sheaf must be an object, got %r" % (obj,))
    here = lambda k: (path + "." + k) if path else k
    try:
        if "line_bundle" in obj:
            n = obj["line_bundle"]
            if not isinstance(n, int):
                raise ParseError(src, here("line_bundle"), "twist must be an integer, got %r" % (n,))
            return make_line_bundle(n, field)
        if "torsion" in obj:
            t = obj["torsion"]
            if not isinstance(t, dict) or "point" not in t:
                raise ParseError(src, here("torsion"), "expected {\"point\": p, \"mult\": m}")
            return make_torsion_sheaf(t["point"] if isinstance(t["point"], str) else field(t["point"]),
                                      int(t.get("mult", 1)), field)
        if "transition" in obj:
            T = _matrix(obj["transition"], K_LAURENT, field, None, None, src, here("transition"))
            return from_transition_matrix(T)
        if "direct_sum" in obj:
            parts = obj["direct_sum"]
            if not parts:
                return QcohSheaf.zero(field)
            return direct_sum(*[sheaf_from_json(p, field, src, "%s[%d]" % (here("direct_sum"), i))
                                for i, p in enumerate(parts)])
        if "zero" in obj:
            return QcohSheaf.zero(field)
    except ParseError:
        raise
    except (ValueError, TypeError, ZeroDivisionError, ArithmeticError) as exc:
        raise ParseError(src, path, str(exc)) from exc
    missing = [k for k in ("M", "N", "P", "sigma", "tau") if k not in obj]
    if missing:
        raise ParseError(src, path, "missing keys %s (or use a shorthand)" % ", ".join(missing))
    M = _module(obj["M"], "M", field, src, here("M"))
    N = _module(obj["N"], "N", field, src, here("N"))
    P = _module(obj["P"], "P", field, src, here("P"))
    sig = _matrix(obj["sigma"], K_LAURENT, field, P.gens, M.gens, src, here("sigma"))
    tau = _matrix(obj["tau"], K_LAURENT, field, P.gens, N.gens, src, here("tau"))
    return QcohSheaf(M, N, P, sig, tau)


def sheaf_to_json(F: QcohSheaf) -> dict:
    return {"M": F.M.to_json(), "N": F.N.to_json(), "P": F.P.to_json(),
            "sigma": F.sigma.to_json(), "tau": F.tau.to_json()}


def morphism_from_json(obj, source, target, src="<input>", path=""):
    if not isinstance(obj, dict):
        raise ParseError(src, path, "morphism must be an object with M, P, N matrices")
    f = source.field
    mats = {}
    for comp in ("M", "P", "N"):
        rows, cols = target.component(comp).gens, source.component(comp).gens
        data = obj.get(comp) or []
        if rows and cols and data:
            mats[comp] = _matrix(data, RING_FOR[comp], f, rows, cols, src, "%s.%s" % (path, comp))
        else:
            mats[comp] = PolyMatrix.zeros(RING_FOR[comp], f, rows, cols)
    return SheafMorphism(source, target, mats["M"], mats["P"], mats["N"])


def morphism_to_json(phi: SheafMorphism) -> dict:
    return {"M": phi.phiM.to_json(), "P": phi.phiP.to_json(), "N": phi.phiN.to_json()}


def complex_from_json(obj, field: Field, src="<input>") -> BoundedComplex:
    if not isinstance(obj, dict) or "objects" not in obj:
        raise ParseError(src, "", "complex needs an \"objects\" map")
    objs = {}
    for k, v in obj["objects"].items():
        try:
            deg = int(k)
        except ValueError as exc:
            raise ParseError(src, "objects", "degree %r is not an integer" % k) from exc
        objs[deg] = sheaf_from_json(v, field, src, "objects.%s" % k)
    if "window" in obj:
        lo, hi = obj["window"]
        outside = [d for d in objs if not lo <= d <= hi]
        if outside:
            raise ParseError(src, "window", "objects at degrees %s lie outside [%d, %d]" % (outside, lo, hi))
    C = BoundedComplex(objs, {}, field, check=False)
    for k, v in obj.get("differentials", {}).items():
        deg = int(k)
        C.differentials[deg] = morphism_from_json(v, C.obj(deg), C.obj(deg + 1), src, "differentials.%s" % k)
    C.check()
    return C


def complex_to_json(C: BoundedComplex) -> dict:
    lo, hi = C.window
    return {"window": [lo, hi],
            "objects": {str(k): sheaf_to_json(F) for k, F in sorted(C.objects.items())},
            "differentials": {str(k): morphism_to_json(d) for k, d in sorted(C.differentials.items())}}


def vector_from_json(obj, gens, field, src="<input>", path=""):
    """A P-vector given as a list of Laurent polynomials (or a single polynomial when gens = 1)."""
    if not isinstance(obj, list):
        obj = [obj]
    if len(obj) != gens:
        raise ParseError(src, path, "expected %d entries, got %d" % (gens, len(obj)))
    try:
        return [matrix_from_json([[e]], K_LAURENT, field)[0, 0] for e in obj]
    except (ValueError, TypeError) as exc:
        raise ParseError(src, path, str(exc)) from exc


def decomposition_from_json(obj, F, src="<input>"):
    """Zig-zag decomposition {"M": [matrix, ...], "N": [matrix, ...]}; columns generate each summand."""
    f = F.field
    parts = {}
    for comp, ring in (("M", K_X), ("N", K_XINV)):
        parts[comp] = [_matrix(m, ring, f, F.component(comp).gens, None, src, "%s[%d]" % (comp, i))
                       for i, m in enumerate(obj.get(comp, []))]
    return parts["M"], parts["N"]
