"""Command-line front end.

Exit codes: 0 consistent, 2 bad input (parse or hypothesis data), 3 resource cap,
4 SENSATION (a proved statement appears violated), 1 internal defect.
"""

import argparse
import os
import sys
from dataclasses import dataclass, field

from . import theorems as th
from .complex import identity_map
from .errors import DataError, InternalDefect, ParseError, ResourceLimitError
from .homology import GENERIC, MAXIMAL, homology_presentation, null_homotopy
from .koszul import koszul, koszul_level, self_action, suspend_action, sum_action
from .level import level_upper_bound
from .random_families import make_rng, random_complex, random_minors_instance
from .ring import GF, QQ, Ideal, Ring
from .textfmt import format_complex, format_matrix, format_ring, parse_document, parse_ring

EXIT_OK, EXIT_DEFECT, EXIT_DATA, EXIT_RESOURCE, EXIT_SENSATION = 0, 1, 2, 3, 4
SEED_ENV = "PERFCX_SEED"


@dataclass
class JobSpec:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    seed: int = th.DEFAULT_SEED
    json: bool = False
    timing: bool = True

    INPUT_KEYS = ("complex", "map", "input")
    GLOBAL_KEYS = ("command", "fn", "json", "seed", "no_timing")

    @classmethod
    def from_args(cls, args, seed):
        inputs, options = {}, {}
        for k, v in vars(args).items():
            if k in cls.GLOBAL_KEYS or v is None:
                continue
            (inputs if k in cls.INPUT_KEYS else options)[k] = v
        job = cls(args.command, inputs, options, seed, args.json, not args.no_timing)
        job.validate()
        return job

    def validate(self):
        o = self.options
        if o.get("nmax", 1) < 1:
            raise DataError("--nmax must be at least 1")
        if o.get("length", 0) < 0:
            raise DataError("--length must be nonnegative")
        if o.get("count", 0) < 0:
            raise DataError("--count must be nonnegative")
        if "fibers" in o:
            _fibers(o["fibers"])


# -- input helpers ------------------------------------------------------------------------

def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None


def _ring_from(args, doc=None):
    ring = parse_ring(args.ring) if getattr(args, "ring", None) else None
    if doc is not None and doc.ring is not None:
        if ring is not None and ring != doc.ring:
            raise DataError("--ring disagrees with the ring statement in the input file")
        return doc.ring
    if ring is None:
        raise DataError("no ring given (use --ring or a ring statement in the input file)")
    return ring


def _document(args, path, complexes=None):
    ring = parse_ring(args.ring) if getattr(args, "ring", None) else None
    doc = parse_document(_read(path), ring, complexes)
    _ring_from(args, doc)
    return doc


def _poly_list(ring, text, what):
    if text is None:
        raise DataError(f"missing {what}")
    text = text.strip()
    if text.startswith("["):
        text = text[1:-1] if text.endswith("]") else text
    if not text:
        return []
    return parse_document(f"v = [{text}];", ring).values["v"]


def _matrix(ring, text):
    return parse_document(f"A = {text};", ring).matrix_value("A")


def _fibers(text):
    out = []
    for part in (text or "m").split(","):
        part = part.strip()
        if part in ("m", "maximal"):
            out.append(MAXIMAL)
        elif part == "generic":
            out.append(GENERIC)
        else:
            raise DataError(f"unknown fiber {part!r} (use m or generic)")
    return tuple(out)


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise DataError(f"{SEED_ENV} must be an integer") from None
    return th.DEFAULT_SEED


# -- plain reports for the computational subcommands ---------------------------------------

def _plain_report(name, ring, instance, status, witness, seed, caveats=()):
    r = th.CheckReport(name, str(ring), th._jsonable(instance), seed=seed)
    r.conclude(status, witness)
    for c in caveats:
        r.caveat(c)
    return r


def _height_tag(report):
    return "CAVEAT" if any(c.startswith("height computed") for c in report.caveats) else "EXACT"


def _chain_lines(report):
    w = report.conclusion.get("witness") or {}
    if report.check == "improved-new-intersection" and "span" in w:
        return [f"d + 1 = {w['d_plus_1']} (EXACT) >= span F = {w['span']} (EXACT) >= "
                f"level F <= {w['level_upper']} (UPPER_BOUND), level F >= {w['level_lower']} "
                f"({'EXACT' if w['level_lower_provenance'].startswith('EXACT') else 'LOWER_BOUND'}) >= "
                f"height I + 1 = {w['height_plus_1']} ({_height_tag(report)})"]
    if report.check == "morphic-intersection" and "chain" in w:
        c = w["chain"]
        return [f"span F + span G - 1 = {c['span_F_plus_span_G_minus_1']} (EXACT) >= "
                f"level Hom(G,F) <= {c['level_upper']} (UPPER_BOUND) [{w['left_inequality']}]",
                f"level Hom(G,F) >= {c['level_lower']} (LOWER_BOUND) vs height I + 1 = "
                f"{c['height_plus_1']} ({_height_tag(report)}) [{w['right_inequality']}]"]
    return []


# -- subcommands ------------------------------------------------------------------------------

def cmd_homology(args, seed):
    doc = _document(args, args.complex)
    F = doc.complex(args.name)
    degs = [args.degree] if args.degree is not None else list(F.degrees())
    out, lines = {}, []
    for n in degs:
        H = homology_presentation(F, n)
        pruned = H.prune()[0]
        zero = pruned.is_zero()
        ann = "(1)" if zero else str(pruned.annihilator())
        out[str(n)] = {"generators": pruned.ngens, "relations": format_matrix(pruned.relations),
                       "zero": zero, "annihilator": ann}
        lines.append(f"H_{n}: " + ("0" if zero else
                                   f"{pruned.ngens} generators, relations {format_matrix(pruned.relations)}, "
                                   f"annihilator {ann}"))
    return _plain_report("homology", F.ring, {"ranks": F.ranks}, th.PASS, out, seed), lines


def cmd_homotopy(args, seed):
    doc = _document(args, args.map)
    f = doc.map(args.name)
    h = null_homotopy(f)
    if h is None:
        return _plain_report("homotopy", f.ring, {"source_ranks": f.source.ranks}, th.FAIL,
                             {"null_homotopic": False}, seed), ["not null-homotopic"]
    comps = {str(n): format_matrix(M) for n, M in sorted(h.comps.items())}
    lines = ["null-homotopic"] + [f"h{n} = {m}" for n, m in comps.items()]
    return _plain_report("homotopy", f.ring, {"source_ranks": f.source.ranks}, th.PASS,
                         {"null_homotopic": True, "homotopy": comps}, seed), lines


def cmd_nilpotence(args, seed):
    doc = _document(args, args.map)
    f = doc.map(args.name)
    res = th.nilpotence_search(f, args.nmax, confirm_next=True)
    inst = {"source_ranks": f.source.ranks, "nmax": args.nmax}
    if res.found:
        w = {"n": res.n, "next_power_null_homotopic": res.persists}
        return _plain_report("nilpotence", f.ring, inst, th.HOLDS, w, seed), [f"n = {res.n}"]
    return (_plain_report("nilpotence", f.ring, inst, th.UNDETERMINED, {"n": None}, seed),
            [f"NotFound (searched n <= {args.nmax})"])


def cmd_level(args, seed):
    if args.koszul:
        ring = _ring_from(args)
        K = koszul(_poly_list(ring, args.koszul, "--koszul"), ring)
        kl = koszul_level(K)
        lb = level_upper_bound(K)
        steps = lb.witness.step_ranks()
        w = {"level": kl.value, "status": kl.status, "witness_step_ranks": steps}
        lines = [f"{kl.value} ({kl.status})"] + [f"step {i + 1}: {s}" for i, s in enumerate(steps)]
        if kl.note:
            lines.append(f"note: {kl.note}")
        return _plain_report("level", ring, {"koszul": [str(x) for x in K.elements]}, th.PASS, w, seed,
                             [kl.note] if kl.note else ()), lines
    if not args.complex:
        raise DataError("level needs --complex FILE or --koszul ELEMENTS")
    doc = _document(args, args.complex)
    F = doc.complex(args.name)
    lb = level_upper_bound(F)
    steps = lb.witness.step_ranks()
    w = {"upper": th._num(lb.upper), "lower": lb.lower, "status": lb.status, "witness_step_ranks": steps}
    lines = [f"{th._num(lb.upper)} ({lb.status})", f"lower bound: {lb.lower}"]
    lines += [f"step {i + 1}: {s}" for i, s in enumerate(steps)]
    return _plain_report("level", F.ring, {"ranks": F.ranks}, th.PASS, w, seed, lb.notes), lines


def cmd_koszul(args, seed):
    doc = _document(args, args.input) if args.input else None
    ring = _ring_from(args, doc)
    if args.elements:
        elements = _poly_list(ring, args.elements, "--elements")
    elif doc is not None and doc.elements is not None:
        elements = doc.elements
    else:
        raise DataError("koszul needs --elements or an elements statement")
    K = koszul(elements, ring)
    text = format_complex(K, args.name or "K")
    w = {"complex": text, "ranks": K.ranks}
    names = [str(x) for x in elements]
    return _plain_report("koszul", ring, {"elements": names}, th.PASS, w, seed), \
        [format_ring(ring), f"elements = [{', '.join(names)}];", text]


def cmd_check_init(args, seed):
    doc = _document(args, args.complex)
    F = _as_koszul(doc.complex(args.name), doc)
    ring = F.ring
    I = Ideal(ring, _poly_list(ring, args.ideal, "--ideal"))
    z = _poly_list(ring, args.z, "--z")
    return th.check_init(F, I, z, seed=seed), None


def _as_koszul(F, doc):
    """Recognize the input complex as a Koszul complex when the document lists its elements."""
    if doc.elements is not None:
        K = koszul(doc.elements, F.ring)
        if K == F:
            return K
    return F


def _factorization(doc, f):
    g1 = doc.maps.get("g1")
    g2 = doc.maps.get("g2")
    if g1 is None and g2 is None:
        return identity_map(f.source), f
    if g1 is None or g2 is None:
        raise DataError("give both g1 and g2, or neither")
    return g1, g2


def cmd_check_mit(args, seed):
    doc = _document(args, args.map)
    f = doc.map(args.name or ("f" if "f" in doc.maps else None))
    I = Ideal(f.ring, _poly_list(f.ring, args.ideal, "--ideal"))
    return th.check_mit(f, I, _factorization(doc, f), _fibers(args.fibers), seed=seed), None


def cmd_check_canonical(args, seed):
    built = {}

    def predefined(ring):
        built["xs"] = _poly_list(ring, args.sop, "--sop")
        return {"K": koszul(built["xs"], ring)}

    if args.map:
        doc = _document(args, args.map, predefined)
        f = doc.map(args.name)
    else:
        K = predefined(_ring_from(args))["K"]
        f = identity_map(K)
    return th.check_canonical_element(built["xs"], f, seed=seed), None


def cmd_check_lift(args, seed):
    ring = _ring_from(args)
    I = _poly_list(ring, args.ideal, "--ideal")
    xs = _poly_list(ring, args.sop, "--sop")
    return th.check_lift_nonvanishing(I, xs, args.length, seed=seed), None


def cmd_check_minors(args, seed):
    ring = _ring_from(args)
    xs = _poly_list(ring, args.sop, "--sop")
    ys = _poly_list(ring, args.y, "--y")
    A = _matrix(ring, args.matrix)
    return th.check_minors(xs, ys, A, seed=seed), None


def cmd_check_monomial(args, seed):
    ring = _ring_from(args)
    ys = _poly_list(ring, args.sop, "--sop")
    r = th.check_monomial(ys, args.n, seed=seed)
    w = r.conclusion["witness"]
    return r, ([w["verdict"]] if w else None)


def cmd_check_wedge(args, seed):
    ring = _ring_from(args)
    return th.check_wedge_injectivity(_poly_list(ring, args.ideal, "--ideal"), args.length, seed=seed), None


def cmd_check_rank(args, seed):
    ring = _ring_from(args)
    K = koszul(_poly_list(ring, args.sop, "--sop"), ring)
    shifts = [int(s) for s in (args.shifts or "0").split(",")]
    if any(s < 0 for s in shifts):
        raise DataError("shifts must be nonnegative")
    S = sum_action(*[suspend_action(self_action(K), s) if s else self_action(K) for s in shifts])
    return th.check_rank_bound(S, seed=seed), None


# -- sweeps ---------------------------------------------------------------------------------

SWEEP_FAMILIES = ("mit", "minors", "monomial", "filtration")


def sweep_reports(family, count, seed, ring=None):
    """Deterministic list of reports for a randomized (or enumerated) family."""
    rng = make_rng(seed)
    reports = []
    if family == "monomial":
        for fld in (QQ, GF(2), GF(5)):
            for d in (1, 2, 3):
                R = Ring([f"y{i + 1}" for i in range(d)], fld)
                for n in (1, 2, 3):
                    reports.append(th.check_monomial(R.gens, n, seed=seed))
        return reports[:count] if count else reports
    ring = ring or Ring("x,y")
    for _ in range(count):
        if family == "mit":
            G = random_complex(ring, rng)
            f = identity_map(G)
            reports.append(th.check_mit(f, Ideal(ring, []), (f, f), seed=seed))
        elif family == "minors":
            inst = random_minors_instance(ring, rng, cols=ring.nvars + rng.randint(0, 1))
            if inst is None:
                continue
            reports.append(th.check_minors(*inst, seed=seed))
        elif family == "filtration":
            reports.append(_filtration_report(ring, rng, seed))
        else:
            raise DataError(f"unknown sweep family {family!r}")
    return reports


def _filtration_report(ring, rng, seed):
    from .level import dual_filtration, span_filtration, tensor_filtration, validate_filtration
    F, G = random_complex(ring, rng), random_complex(ring, rng)
    a, b = span_filtration(F), span_filtration(G)
    T, D = tensor_filtration(a, b), dual_filtration(a)
    r = th.CheckReport("filtration", str(ring), {"ranks_F": F.ranks, "ranks_G": G.ranks}, seed=seed)
    tv, dv = validate_filtration(T), validate_filtration(D)
    r.hyp("span filtrations are valid", th.PASS if validate_filtration(a) and validate_filtration(b) else th.FAIL)
    ok = tv.value and dv.value and T.length == a.length + b.length - 1 and D.length == a.length
    r.conclude(th.PASS if ok else th.SENSATION,
               {"tensor_length": T.length, "dual_length": D.length, "l": a.length, "m": b.length,
                "tensor_valid": tv.value, "dual_valid": dv.value})
    return r


def cmd_sweep(args, seed):
    ring = parse_ring(args.ring) if args.ring else None
    return sweep_reports(args.family, args.count, seed, ring), None


# -- argument parsing ----------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="perfcx", description="Exact checks for perfect complexes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help='ring, e.g. "Q[x,y] / (x*y)"')
    common.add_argument("--json", action="store_true", help="emit JSON reports")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (else ${SEED_ENV}, else default)")
    common.add_argument("--no-timing", action="store_true", help="report wallTimeMs = 0")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("homology", cmd_homology, "homology modules of a complex")
    sp.add_argument("--complex", required=True)
    sp.add_argument("--name")
    sp.add_argument("--degree", type=int)

    sp = add("homotopy", cmd_homotopy, "null-homotopy of a chain map")
    sp.add_argument("--map", required=True)
    sp.add_argument("--name")

    sp = add("nilpotence", cmd_nilpotence, "least n with the n-th tensor power null-homotopic")
    sp.add_argument("--map", required=True)
    sp.add_argument("--name")
    sp.add_argument("--nmax", type=int, default=3)

    sp = add("level", cmd_level, "level bound with a witness filtration")
    sp.add_argument("--complex")
    sp.add_argument("--koszul")
    sp.add_argument("--name")

    sp = add("koszul", cmd_koszul, "emit the Koszul complex on given elements")
    sp.add_argument("--elements")
    sp.add_argument("--input")
    sp.add_argument("--name")

    sp = add("check-init", cmd_check_init, "intersection inequality for a complex with I-killed homology")
    sp.add_argument("--complex", required=True)
    sp.add_argument("--name")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--z", default="1")

    sp = add("check-mit", cmd_check_mit, "morphic intersection inequalities")
    sp.add_argument("--map", required=True, help="file with complexes, map f and optionally g1, g2")
    sp.add_argument("--name")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--fibers", default="m")

    sp = add("check-canonical", cmd_check_canonical, "canonical element criterion")
    sp.add_argument("--sop", required=True)
    sp.add_argument("--map", help="file with a map from the Koszul complex K (default: identity)")
    sp.add_argument("--name")

    sp = add("check-lift", cmd_check_lift, "lift of R/(x) -> R/I has nonzero top component")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--sop", required=True)
    sp.add_argument("--length", type=int)

    sp = add("check-minors", cmd_check_minors, "maximal minors escape the parameter ideal")
    sp.add_argument("--sop", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--matrix", required=True)

    sp = add("check-monomial", cmd_check_monomial, "(y1...yd)^n is not in (y1^(n+1), ...)")
    sp.add_argument("--sop", required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("check-wedge", cmd_check_wedge, "top component criterion for wedge injectivity")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--length", type=int)

    sp = add("check-rank", cmd_check_rank, "rank bound for DG Koszul modules")
    sp.add_argument("--sop", required=True)
    sp.add_argument("--shifts", default="0", help="sum of shifted copies of K, e.g. 0,1")

    sp = add("sweep", cmd_sweep, "randomized family driver")
    sp.add_argument("--family", choices=SWEEP_FAMILIES, required=True)
    sp.add_argument("--count", type=int, default=20)
    return p


def _emit(reports, lines, job, out):
    for r in reports:
        if not job.timing:
            r.wallTimeMs = 0
        if job.json:
            out.write(r.to_json() + "\n")
    if job.json:
        return
    if lines is not None:
        out.write("\n".join(lines) + "\n")
        if len(reports) == 1 and reports[0].hypotheses:
            out.write(reports[0].summary() + "\n")
        return
    for r in reports:
        out.write(r.summary() + "\n")
        for line in _chain_lines(r):
            out.write("  chain: " + line + "\n")


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_DATA if exc.code else EXIT_OK
    try:
        job = JobSpec.from_args(args, _seed(args))
        result, lines = args.fn(args, job.seed)
        reports = result if isinstance(result, list) else [result]
        _emit(reports, lines, job, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_DATA
    except DataError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DATA
    except ResourceLimitError as exc:
        err.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except InternalDefect as exc:
        err.write(f"internal defect: {exc}\n")
        return EXIT_DEFECT
    if any(r.status == th.SENSATION for r in reports):
        return EXIT_SENSATION
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
