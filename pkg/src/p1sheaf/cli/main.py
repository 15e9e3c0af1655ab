"""p1sheaf command line.

Every subcommand takes --field (Q or Fp:<prime>, default from $P1SHEAF_FIELD
or Q) and --format (text or machine).  Machine output is canonical JSON
that carries the sha256 of the inputs it was computed from.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from ..complexes.core import homology
from ..complexes.homtensor import hom_complex, tensor_complex
from ..ext.baer import ExtClass, build_extension, is_split
from ..ext.lines import ext1_line, hom_line
from ..rings import K_X, K_XINV, Field, PolyMatrix, format_poly
from ..sheaves.classify import HasTorsion, classify, free_part
from ..sheaves.hom import HomSpace
from ..sheaves.sheaf import InvalidSheaf, validate
from ..splitting.birkhoff import birkhoff_factorize
from ..splitting.filtration import check_filtration, line_filtration
from ..splitting.zigzag import ZigzagState, zigzag_closure
from ..derived.globalext import NotInUPerp, compute_global_ext, hom_double_complex_ext
from ..derived.resolve import resolve
from .io import (ParseError, complex_from_json, complex_to_json, decomposition_from_json,
                 morphism_to_json, read_input, sha256_of, sheaf_from_json, sheaf_to_json,
                 vector_from_json)

FIELD_ENV = "P1SHEAF_FIELD"

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_MATH = 0, 1, 2, 3


@dataclass
class Report:
    command: str
    result: dict = dc_field(default_factory=dict)
    text: list = dc_field(default_factory=list)
    status: int = EXIT_OK
    summary: str = ""
    fmt: str = "text"


class Context:
    def __init__(self, field: Field):
        self.field = field
        self.chunks = []

    def _read(self, arg):
        obj, raw, label = read_input(arg)
        self.chunks.append(raw)
        return obj, label

    def sheaf(self, arg, check=True):
        obj, label = self._read(arg)
        F = sheaf_from_json(obj, self.field, label)
        if check:
            rep = validate(F)
            if not rep.ok:
                raise InvalidSheaf("%s: %s" % (label, "; ".join(rep.failures)))
        return F

    def complex(self, arg):
        obj, label = self._read(arg)
        return complex_from_json(obj, self.field, label)

    def json(self, arg):
        return self._read(arg)


def _fmt_type(t):
    return "[" + ", ".join(str(n) for n in t) + "]"


# -- commands -------------------------------------------------------------------

def cmd_validate(args, ctx):
    F = ctx.sheaf(args.sheaf, check=False)
    rep = validate(F)
    r = Report("validate", rep.to_json())
    if rep.ok:
        r.text = ["valid", "exponents: %s" % json.dumps(rep.exponents, sort_keys=True)]
        r.summary = "valid"
    else:
        r.text = ["invalid"] + ["  " + f for f in rep.failures]
        r.status = EXIT_FAILED
        r.summary = "invalid: " + "; ".join(rep.failures)
    return r


def cmd_classify(args, ctx):
    F = ctx.sheaf(args.sheaf)
    c = classify(F)
    j = c.to_json()
    tors = ", ".join("%s: %s" % (k, v) for k, v in sorted(c.torsion.items())) or "none"
    text = ["rank: %d" % c.rank, "type: %s" % _fmt_type(c.type), "torsion: %s" % tors]
    if c.other:
        text.append("torsion at non-rational points: %s" % ", ".join(c.other))
    return Report("classify", j, text, summary="type %s torsion %s" % (_fmt_type(c.type), tors))


def cmd_split(args, ctx):
    F = ctx.sheaf(args.sheaf)
    c = classify(F)
    if not c.is_locally_free:
        raise HasTorsion("sheaf has torsion %s; split applies to locally free sheaves" % c.to_json()["torsion"])
    fp = free_part(F)
    sd = birkhoff_factorize(fp.T)
    ok = sd.check(fp.T)
    res = sd.to_json()
    res["certificate_ok"] = ok
    res["T"] = fp.T.to_json()
    text = ["type: %s" % _fmt_type(sd.type),
            "certificate A*T*B = diag(x^n_i): %s" % ("ok" if ok else "FAILED"),
            "A (over k[x]):", *_matrix_lines(sd.A), "B (over k[x^-1]):", *_matrix_lines(sd.B)]
    return Report("split", res, text, EXIT_OK if ok else EXIT_MATH, "type %s" % _fmt_type(sd.type))


def _matrix_lines(m: PolyMatrix):
    return ["  [" + ", ".join(format_poly(p) for p in row) + "]" for row in m.data]


def cmd_filtrate(args, ctx):
    F = ctx.sheaf(args.sheaf)
    filt = line_filtration(F)
    problems = check_filtration(filt)
    res = filt.to_json()
    res["problems"] = problems
    text = ["quotients: " + ", ".join("O(%d)" % n for n in filt.labels)]
    text += ["problem: " + p for p in problems] or ["all inclusions validate"]
    return Report("filtrate", res, text, EXIT_FAILED if problems else EXIT_OK,
                  "labels %s" % _fmt_type(filt.labels))


def cmd_zigzag(args, ctx):
    F = ctx.sheaf(args.sheaf)
    f = F.field
    if args.decomp:
        obj, label = ctx.json(args.decomp)
        Mp, Np = decomposition_from_json(obj, F, label)
    else:
        Mp = [PolyMatrix.identity(K_X, f, F.M.gens).submatrix(cols=[i]) for i in range(F.M.gens)]
        Np = [PolyMatrix.identity(K_XINV, f, F.N.gens).submatrix(cols=[j]) for j in range(F.N.gens)]
    state = ZigzagState(F, Mp, Np)
    bad = [s for s in args.seed if s not in state.I_labels]
    if bad:
        raise ParseError("--seed", "", "unknown M-summand labels %s (have %s)" % (bad, state.I_labels))
    res = zigzag_closure(state, args.seed)
    text = ["I = %s" % res.I, "J = %s" % res.J, "rounds: %d" % res.rounds,
            "localizations equal: %s" % res.equal_localizations,
            "subsheaf valid: %s" % res.subsheaf_valid]
    ok = res.equal_localizations and res.subsheaf_valid
    return Report("zigzag", res.to_json(), text, EXIT_OK if ok else EXIT_MATH,
                  "I=%s J=%s" % (res.I, res.J))


def cmd_hom(args, ctx):
    if args.sheaf is not None:
        if args.n is None:
            raise ParseError("--n", "", "hom --sheaf needs --n")
        F = ctx.sheaf(args.sheaf)
        H = hom_line(args.n, F)
        sp = H.space()
        res = {"n": args.n, "dim": H.dimension, "basis": sp.labels}
        return Report("hom", res, ["dim %d" % H.dimension] + ["  " + l for l in sp.labels],
                      summary=str(H.dimension))
    if args.source is None or args.target is None:
        raise ParseError("hom", "", "give --sheaf with --n, or --source and --target")
    F, G = ctx.sheaf(args.source), ctx.sheaf(args.target)
    H = HomSpace(F, G)
    res = {"dim": H.dimension, "basis": [morphism_to_json(b) for b in H.basis]}
    return Report("hom", res, ["dim %d" % H.dimension], summary=str(H.dimension))


def cmd_ext(args, ctx):
    F = ctx.sheaf(args.sheaf)
    E = ext1_line(args.n, F)
    labels = E.labels()
    res = {"n": args.n, "dim": E.dimension, "basis": labels}
    return Report("ext", res, ["dim %d, basis [%s]" % (E.dimension, ", ".join(labels))],
                  summary=str(E.dimension))


def _ext_class(args, ctx):
    F = ctx.sheaf(args.sheaf)
    f = F.field
    vecs = []
    for flag, text in (("--y", args.y), ("--z", args.z)):
        if not text:
            vecs.append([0] * F.P.gens)
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(flag, "col %d" % exc.colno, exc.msg) from exc
        vecs.append(vector_from_json(obj, F.P.gens, f, flag))
    return ExtClass(args.n, F, vecs[0], vecs[1])


def cmd_extension(args, ctx):
    cls = _ext_class(args, ctx)
    if args.action == "build":
        X, i, p = build_extension(cls)
        rep = validate(X)
        c = classify(X)
        res = {"class": cls.to_json(), "middle": sheaf_to_json(X), "middle_valid": rep.ok,
               "middle_classification": c.to_json(),
               "inclusion": morphism_to_json(i), "projection": morphism_to_json(p)}
        text = ["class: %s" % cls.to_json()["canonical"], "middle valid: %s" % rep.ok,
                "middle type: %s" % _fmt_type(c.type)]
        return Report("extension build", res, text, EXIT_OK if rep.ok else EXIT_MATH,
                      "type %s" % _fmt_type(c.type))
    w = is_split(cls)
    res = {"class": cls.to_json(), "split": w is not None}
    text = ["class: %s" % cls.to_json()["canonical"], "split: %s" % (w is not None)]
    if w is not None:
        u, v = w
        res["witness"] = {"u": [p.to_json() for p in u], "v": [p.to_json() for p in v]}
        text.append("witness u = (%s), v = (%s)" % (", ".join(map(str, u)), ", ".join(map(str, v))))
    return Report("extension split", res, text, summary="split" if w is not None else "nonsplit")


def cmd_homology(args, ctx):
    C = ctx.complex(args.complex)
    H = homology(C, args.deg)
    c = classify(H)
    res = {"deg": args.deg, "classification": c.to_json(), "sheaf": sheaf_to_json(H),
           "zero": H.is_zero()}
    text = ["H^%d: %s" % (args.deg, "0" if H.is_zero() else json.dumps(c.to_json(), sort_keys=True))]
    return Report("homology", res, text, summary="0" if H.is_zero() else "type %s" % _fmt_type(c.type))


def cmd_homcomplex(args, ctx):
    X, Y = ctx.complex(args.source), ctx.complex(args.target)
    HC = hom_complex(X, Y)
    res = HC.to_json()
    text = ["dims: %s" % json.dumps(res["dims"], sort_keys=True),
            "cohomology: %s" % json.dumps(res["cohomology"], sort_keys=True)]
    return Report("homcomplex", res, text, summary=json.dumps(res["cohomology"], sort_keys=True))


def cmd_tensorcomplex(args, ctx):
    X, Y = ctx.complex(args.left), ctx.complex(args.right)
    T = tensor_complex(X, Y)
    cls = {str(k): classify(F).to_json() for k, F in sorted(T.objects.items())}
    res = {"complex": complex_to_json(T), "classification": cls}
    text = ["degree %s: %s" % (k, json.dumps(v, sort_keys=True)) for k, v in cls.items()]
    return Report("tensorcomplex", res, text, summary="window %s" % list(T.window))


def cmd_resolve(args, ctx):
    F = ctx.sheaf(args.sheaf)
    R = resolve(F, args.offset)
    res = R.to_json()
    res["certificates"] = R.certificates()
    res["complex"] = complex_to_json(R.as_complex())
    text = ["E0 = %s" % (" + ".join("O(%d)" % a for a in R.e0) or "0"),
            "E1 = %s" % (" + ".join("O(%d)" % b for b in R.e1) or "0"),
            "certificates: %s" % json.dumps(res["certificates"], sort_keys=True)]
    ok = all(res["certificates"].values())
    return Report("resolve", res, text, EXIT_OK if ok else EXIT_MATH,
                  "E0=%s E1=%s" % (R.e0, R.e1))


def cmd_derived_ext(args, ctx):
    F, G = ctx.sheaf(args.source), ctx.sheaf(args.target)
    ge = compute_global_ext(F, G, args.offset)
    res = ge.to_json()
    res["deg"] = args.deg
    res["dim"] = ge.dims.get(args.deg, 0) if args.deg >= 0 else 0
    text = ["Ext^%d = %d" % (args.deg, res["dim"]),
            "all degrees: %s" % json.dumps(res["dims"], sort_keys=True)]
    if args.double_complex:
        try:
            hd = hom_double_complex_ext(F, G, args.offset)
            res["double_complex"] = {str(k): v for k, v in hd.items()}
            text.append("double complex: %s" % json.dumps(res["double_complex"], sort_keys=True))
        except NotInUPerp as exc:
            res["double_complex"] = None
            text.append("double complex: n/a (%s)" % exc)
    return Report("derived-ext", res, text, summary=str(res["dim"]))


# -- batch ----------------------------------------------------------------------

def cmd_batch(args, ctx):
    obj, label = ctx.json(args.manifest)
    if isinstance(obj, dict):
        obj = obj.get("jobs", [])
    if not isinstance(obj, list):
        raise ParseError(label, "", "manifest must be a list of jobs")
    base = Path(args.manifest).parent if label != "<inline>" else Path(".")
    rows, failures = [], 0
    for k, job in enumerate(obj):
        name = "job%d" % k
        if isinstance(job, dict):
            name = str(job.get("name", name))
            argv = job.get("argv", [])
        else:
            argv = job
        argv = [str(a) for a in argv]
        argv = _rebase(argv, base)
        if "--field" not in argv:
            argv += ["--field", ctx.field.descriptor]
        status, rep, err = run(argv)
        if status != EXIT_OK:
            failures += 1
        rows.append({"name": name, "command": rep.command if rep else (argv[0] if argv else ""),
                     "status": status, "summary": rep.summary if rep and not err else err})
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(["name", "command", "status", "summary"])
    for r in rows:
        w.writerow([r["name"], r["command"], r["status"], r["summary"]])
    table = buf.getvalue()
    if args.table:
        Path(args.table).write_text(table)
    res = {"jobs": len(rows), "failures": failures, "rows": rows}
    text = table.rstrip("\n").split("\n") + ["%d jobs, %d failures" % (len(rows), failures)]
    # sibling failures are isolated; the batch itself succeeds
    return Report("batch", res, text, summary="%d/%d ok" % (len(rows) - failures, len(rows)))


_PATH_FLAGS = {"--sheaf", "--source", "--target", "--complex", "--left", "--right", "--decomp", "--decomposition",
               "--manifest"}


def _rebase(argv, base: Path):
    out = list(argv)
    for i in range(len(out) - 1):
        if out[i] in _PATH_FLAGS:
            v = out[i + 1]
            if v.strip()[:1] not in "{[" and not Path(v).is_absolute():
                out[i + 1] = str(base / v)
    return out


# -- parser ---------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None, help="Q or Fp:<prime> (default $%s or Q)" % FIELD_ENV)
    common.add_argument("--format", choices=["text", "machine"], default="text")

    p = argparse.ArgumentParser(prog="p1sheaf", description="Coherent sheaves on P^1 as quiver representations.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "check the quiver and localization conditions")
    sp.add_argument("--sheaf", required=True)
    sp = add("classify", cmd_classify, "torsion points and splitting type")
    sp.add_argument("--sheaf", required=True)
    sp = add("split", cmd_split, "Birkhoff factorization with certificate")
    sp.add_argument("--sheaf", required=True)
    sp = add("filtrate", cmd_filtrate, "line-bundle filtration of a locally free sheaf")
    sp.add_argument("--sheaf", required=True)
    sp = add("zigzag", cmd_zigzag, "zig-zag closure of summand index sets")
    sp.add_argument("--sheaf", required=True)
    sp.add_argument("--decomposition", "--decomp", dest="decomp", default=None, help="JSON {M: [matrix...], N: [matrix...]}")
    sp.add_argument("--seed", type=int, nargs="+", default=[1])
    sp = add("hom", cmd_hom, "Hom(O(n), F) or Hom(F, G)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--sheaf")
    sp.add_argument("--source")
    sp.add_argument("--target")
    sp = add("ext", cmd_ext, "Ext^1(O(n), F) with a monomial basis")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sheaf", required=True)
    sp = add("extension", cmd_extension, "build or test an extension 0 -> F -> X -> O(n) -> 0")
    sp.add_argument("action", choices=["build", "split"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sheaf", required=True)
    sp.add_argument("--y", default=None, help="JSON list of Laurent polynomials (P coordinates)")
    sp.add_argument("--z", default=None, help="JSON list of Laurent polynomials (P coordinates)")
    sp = add("homology", cmd_homology, "cohomology sheaf of a bounded complex")
    sp.add_argument("--complex", required=True)
    sp.add_argument("--deg", type=int, required=True)
    sp = add("homcomplex", cmd_homcomplex, "Hom complex dimensions and cohomology")
    sp.add_argument("--source", required=True)
    sp.add_argument("--target", required=True)
    sp = add("tensorcomplex", cmd_tensorcomplex, "graded tensor product of two complexes")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp = add("resolve", cmd_resolve, "two-term line-bundle resolution")
    sp.add_argument("--sheaf", required=True)
    sp.add_argument("--offset", type=int, default=0)
    sp = add("derived-ext", cmd_derived_ext, "global Ext^i(F, G)")
    sp.add_argument("--source", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--deg", type=int, required=True)
    sp.add_argument("--offset", type=int, default=0)
    sp.add_argument("--double-complex", action="store_true")
    sp = add("batch", cmd_batch, "run a manifest of jobs and tabulate the results")
    sp.add_argument("--manifest", required=True)
    sp.add_argument("--table", default=None, help="write the TSV summary here")
    return p


def _field(args):
    desc = args.field or os.environ.get(FIELD_ENV) or "Q"
    try:
        return Field.parse(desc)
    except ValueError as exc:
        raise ParseError("--field", "", str(exc)) from exc


def run(argv):
    """(exit status, Report or None, error message)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_INPUT if exc.code else EXIT_OK), None, "usage error"
    try:
        ctx = Context(_field(args))
        rep = args.fn(args, ctx)
    except ParseError as exc:
        return EXIT_INPUT, Report(args.command), "parse error: %s" % exc
    except InvalidSheaf as exc:
        return EXIT_FAILED, Report(args.command), "invalid: %s" % exc
    except (HasTorsion, NotInUPerp, ArithmeticError, ValueError) as exc:
        return EXIT_MATH, Report(args.command), "%s: %s" % (type(exc).__name__, exc)
    rep.result = {"command": rep.command, "field": ctx.field.descriptor,
                  "input_sha256": sha256_of(ctx.chunks), "result": rep.result,
                  "status": rep.status}
    rep.fmt = args.format
    return rep.status, rep, ""


def render(rep: Report) -> str:
    if rep.fmt == "machine":
        return json.dumps(rep.result, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
    return "\n".join(rep.text) + "\n"


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    status, rep, err = run(argv)
    if err:
        if err != "usage error":
            sys.stderr.write("p1sheaf: %s\n" % err)
        return status
    sys.stdout.write(render(rep))
    return status


if __name__ == "__main__":
    sys.exit(main())
