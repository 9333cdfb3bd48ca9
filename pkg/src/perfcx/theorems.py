"""Verification harness: each check evaluates hypotheses, then the conclusion, and emits a report.

Statuses.  Hypotheses: PASS, FAIL, UNDETERMINED.  Conclusions: PASS, HOLDS,
UNDETERMINED, N-A (some hypothesis did not pass) and SENSATION (the conclusion of a
proved theorem is violated; treated as a tool defect until re-verified by the oracles).
"""

import json
import math
import time
from dataclasses import dataclass, field

from .complex import (ChainMap, FreeComplex, hom_complex, identity_map, span, tensor_map,
                      tensor_power)
from .errors import DataError
from .homology import (MAXIMAL, FIBER_CAVEAT, ModulePresentation, field_fiber_homology_map,
                       is_fiberwise_zero, is_ghost, is_i_torsion, null_homotopy, _cycles)
from .koszul import (KoszulComplex, augmentation_to_quotient, is_system_of_parameters, koszul,
                     koszul_level, verify_dg_module)
from .level import level_upper_bound
from .resolutions import lift_through_resolution, minimal_resolution
from .ring import Ideal, RingMatrix, in_column_span, minors_ideal
from .ring.ideal import height_of
from .ring.linear import ConstOps, solve_field

PASS, FAIL, UNDETERMINED = "PASS", "FAIL", "UNDETERMINED"
NA, HOLDS, SENSATION = "N-A", "HOLDS", "SENSATION"

DEFAULT_SEED = 20240531

LEVEL_CAVEAT = "level enters only through sound upper bounds; a bound above the height is UNDETERMINED"
SENSATION_NOTE = ("SENSATION: a proved theorem appears violated; treat as a tool defect until the "
                  "instance is re-verified with the brute-force oracles")
GRADED_CAVEAT = "local ring realized as a graded-local ring (maximal ideal generated by the variables)"
RIGHT_INEQ_CAVEAT = ("the lower inequality for level can be certified only by a lower bound and "
                     "refuted only by an upper bound")

REPORT_SCHEMA = {
    "type": "object",
    "required": ["check", "ring", "instance", "hypotheses", "conclusion", "caveats", "seed", "wallTimeMs"],
    "additionalProperties": False,
    "properties": {
        "check": {"type": "string"},
        "ring": {"type": "string"},
        "instance": {"type": "object"},
        "hypotheses": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status", "witness"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": [PASS, FAIL, UNDETERMINED]},
                    "witness": {},
                },
            },
        },
        "conclusion": {
            "type": "object",
            "required": ["status", "witness"],
            "additionalProperties": False,
            "properties": {
                "status": {"enum": [PASS, FAIL, NA, HOLDS, UNDETERMINED, SENSATION]},
                "witness": {},
            },
        },
        "caveats": {"type": "array", "items": {"type": "string"}},
        "seed": {"type": "integer"},
        "wallTimeMs": {"type": "integer", "minimum": 0},
    },
}


@dataclass
class CheckReport:
    check: str
    ring: str
    instance: dict
    hypotheses: list = field(default_factory=list)
    conclusion: dict = field(default_factory=lambda: {"status": NA, "witness": None})
    caveats: list = field(default_factory=list)
    seed: int = DEFAULT_SEED
    wallTimeMs: int = 0

    def hyp(self, name, status, witness=None):
        self.hypotheses.append({"name": name, "status": status, "witness": _jsonable(witness)})
        return status

    def conclude(self, status, witness=None):
        self.conclusion = {"status": status, "witness": _jsonable(witness)}
        if status == SENSATION and SENSATION_NOTE not in self.caveats:
            self.caveats.append(SENSATION_NOTE)

    def caveat(self, text):
        if text not in self.caveats:
            self.caveats.append(text)

    def hypotheses_pass(self):
        return all(h["status"] == PASS for h in self.hypotheses)

    @property
    def status(self):
        return self.conclusion["status"]

    def to_dict(self):
        return {"check": self.check, "ring": self.ring, "instance": self.instance,
                "hypotheses": self.hypotheses, "conclusion": self.conclusion,
                "caveats": self.caveats, "seed": self.seed, "wallTimeMs": self.wallTimeMs}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self):
        lines = [f"{self.check}: {self.status}"]
        for h in self.hypotheses:
            lines.append(f"  hypothesis {h['name']}: {h['status']}")
        w = self.conclusion["witness"]
        if w is not None:
            lines.append(f"  conclusion: {json.dumps(w, sort_keys=True)}")
        for c in self.caveats:
            lines.append(f"  caveat: {c}")
        return "\n".join(lines)


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


class _timed:
    def __init__(self, report):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.wallTimeMs = int((time.perf_counter() - self.t0) * 1000)
        return False


def _new(check, ring, instance, seed):
    return CheckReport(check, str(ring), _jsonable(instance), seed=seed)


def _height_value(I, report):
    h = height_of(I)
    for c in h.caveats:
        report.caveat(c)
    return h.value


def _num(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


# -- nilpotence -------------------------------------------------------------------------

@dataclass
class NilpotenceResult:
    n: int
    homotopy: object
    checked: int
    persists: bool = None

    @property
    def found(self):
        return self.n is not None


def nilpotence_search(f, nmax, confirm_next=False):
    """Least n <= nmax with the n-th tensor power of f null-homotopic (n = None if none)."""
    for n in range(1, nmax + 1):
        h = null_homotopy(tensor_power(f, n))
        if h is not None:
            persists = None
            if confirm_next:
                persists = null_homotopy(tensor_power(f, n + 1)) is not None
            return NilpotenceResult(n, h, n, persists)
    return NilpotenceResult(None, None, nmax)


# -- the sharpness example for the level hypothesis ------------------------------------------

@dataclass
class SharpnessInstance:
    koszul: KoszulComplex
    map: ChainMap
    d: int


def sharpness_instance(ring_or_d, sop=None):
    """The surjection K(sop) -> S^d R onto the top degree for a system of parameters.

    An integer d builds Q[x1..xd] with the variables as the system of parameters.
    """
    if isinstance(ring_or_d, int):
        if ring_or_d < 1:
            raise DataError("d must be at least 1")
        from .ring import Ring
        ring = Ring([f"x{i + 1}" for i in range(ring_or_d)])
    else:
        ring = ring_or_d
    if sop is None:
        sop = ring.gens
    if not is_system_of_parameters(ring, sop):
        raise DataError("the given elements are not a system of parameters")
    K = koszul(sop, ring)
    return SharpnessInstance(K, augmentation_to_quotient(K), K.n)


# -- tensor nilpotence ---------------------------------------------------------------------

def _single_free(F):
    return len(F.ranks) == 1 and next(iter(F.ranks.values())) == 1


def _hom_level_lower(G, F, lb, report):
    """Lower bound for level Hom(G, F), exact when Hom(G, F) is a shifted Koszul complex on a sop.

    Hom(K, S^i R) is a suspension of the dual of K, and K* is a suspension of K.
    """
    K = None
    if isinstance(G, KoszulComplex) and _single_free(F):
        K = G
    elif isinstance(F, KoszulComplex) and _single_free(G):
        K = F
    if K is not None:
        kl = koszul_level(K)
        if kl.status == "EXACT":
            report.caveat(kl.note)
            return max(kl.value, lb.lower), "EXACT (shifted Koszul complex on a system of parameters)"
    return lb.lower, "lower bound"


def _factorization_hyp(report, f, factorization):
    g1, g2 = factorization
    ok = (g1.failing_degree() is None and g2.failing_degree() is None
          and g1.source == f.source and g2.target == f.target and g1.target == g2.source
          and (g2 @ g1) == f)
    return report.hyp("factorization g2 o g1 = f", PASS if ok else FAIL,
                      {"through_ranks": {str(n): r for n, r in sorted(g1.target.ranks.items())}})


def _torsion_hyp(report, X, I, name="factoring complex is I-torsion"):
    t = is_i_torsion(X, I)
    return report.hyp(name, PASS if t.value else FAIL,
                      {"annihilators": {str(n): str(a) for n, a in sorted(t.annihilators.items())},
                       "failing": t.witness})


def _fiber_witness(results):
    return [{"fiber": str(r.fiber), "is_zero": r.is_zero,
             "induced_ranks": {str(n): v["map"] for n, v in sorted(r.degrees.items())}} for r in results]


def check_tensor_nilpotence(f, I, factorization, fibers=(MAXIMAL,), nmax=3, seed=DEFAULT_SEED,
                            iso=None):
    """Factorization through an I-torsion complex plus level(Hom(G,F)) <= height I forces
    f to be fiberwise zero."""
    ring = f.ring
    report = _new("tensor-nilpotence", ring, {"source_ranks": f.source.ranks, "target_ranks": f.target.ranks,
                                              "ideal": str(I), "nmax": nmax}, seed)
    with _timed(report):
        report.caveat(LEVEL_CAVEAT)
        report.caveat(GRADED_CAVEAT)
        _factorization_hyp(report, f, factorization)
        _torsion_hyp(report, factorization[0].target, I)
        H = hom_complex(f.source, f.target)
        lb = level_upper_bound(H, iso=iso)
        lower, provenance = _hom_level_lower(f.source, f.target, lb, report)
        h = _height_value(I, report)
        if lb.upper <= h:
            st = PASS
        elif lower > h:
            st = FAIL
        else:
            st = UNDETERMINED
        report.hyp("level Hom(G,F) <= height I", st,
                   {"level_upper": _num(lb.upper), "level_lower": lower, "level_lower_provenance": provenance,
                    "height": _num(h)})
        fz = is_fiberwise_zero(f, fibers)
        report.caveat(FIBER_CAVEAT)
        search = nilpotence_search(f, nmax)
        witness = {"fiberwise_zero": fz.value, "fibers": _fiber_witness(fz.per_fiber),
                   "nilpotence_n": search.n, "nilpotence_searched_up_to": nmax}
        if not report.hypotheses_pass():
            report.conclude(NA, witness)
        elif fz.value:
            report.conclude(PASS, witness)
        else:
            report.conclude(SENSATION, witness)
    return report


# -- morphic intersection -----------------------------------------------------------------

def _window_condition(f, ring):
    G, F = f.source, f.target
    if G.is_zero() or F.is_zero():
        return True, {"sup_F": None, "inf_G": None}
    val = F.hi - G.lo
    return val <= ring.dim() - 1, {"sup_F_minus_inf_G": val, "dim_R_minus_1": ring.dim() - 1}


def check_mit(f, I, factorization, fibers=(MAXIMAL,), seed=DEFAULT_SEED, iso=None):
    """span F + span G - 1 >= level Hom(G, F) >= height I + 1 for f not fiberwise zero and
    factoring through an I-torsion complex."""
    ring = f.ring
    G, F = f.source, f.target
    report = _new("morphic-intersection", ring, {"source_ranks": G.ranks, "target_ranks": F.ranks,
                                                 "ideal": str(I)}, seed)
    with _timed(report):
        report.caveat(LEVEL_CAVEAT)
        report.caveat(RIGHT_INEQ_CAVEAT)
        report.caveat(GRADED_CAVEAT)
        report.caveat(FIBER_CAVEAT)
        _factorization_hyp(report, f, factorization)
        _torsion_hyp(report, factorization[0].target, I)
        fz = is_fiberwise_zero(f, fibers)
        nonzero = [r for r in fz.per_fiber if not r.is_zero]
        report.hyp("f is not fiberwise zero at some supplied fiber", PASS if nonzero else FAIL,
                   _fiber_witness(fz.per_fiber))
        # alternative route through the window condition (maximal ideal only)
        win, wwit = _window_condition(f, ring)
        m_torsion = is_i_torsion(factorization[0].target, ring.max_ideal()).value
        max_fiber_nonzero = any(r.fiber == MAXIMAL and not r.is_zero for r in fz.per_fiber)
        wwit.update({"factors_through_m_torsion": m_torsion, "fiber_at_m_nonzero": max_fiber_nonzero})
        window_violated = win and m_torsion and max_fiber_nonzero and report.hypotheses[0]["status"] == PASS
        if not report.hypotheses_pass():
            report.conclude(NA, {"window_route": {"condition": win, **wwit}})
            return report
        H = hom_complex(G, F)
        lb = level_upper_bound(H, iso=iso)
        lower, provenance = _hom_level_lower(G, F, lb, report)
        h = _height_value(I, report)
        left_value = span(F) + span(G) - 1
        left_ok = left_value >= lb.upper
        if lb.upper < h + 1:
            right = SENSATION if ring.equidimensional else UNDETERMINED
        elif lower >= h + 1:
            right = HOLDS
        else:
            right = UNDETERMINED
        witness = {
            "chain": {"span_F_plus_span_G_minus_1": _num(left_value), "level_upper": _num(lb.upper),
                      "level_lower": lower, "level_lower_provenance": provenance,
                      "height_plus_1": _num(h + 1)},
            "left_inequality": HOLDS if left_ok else SENSATION,
            "right_inequality": right,
            "window_route": {"condition": win, **wwit,
                             "status": SENSATION if window_violated else ("APPLIES" if win else "N-A")},
        }
        if not left_ok or right == SENSATION or window_violated:
            report.conclude(SENSATION, witness)
        elif right == HOLDS:
            report.conclude(HOLDS, witness)
        else:
            report.conclude(UNDETERMINED, witness)
    return report


# -- improved new intersection -----------------------------------------------------------------

def check_init(F, I, z, seed=DEFAULT_SEED):
    """d + 1 >= span F >= level F >= height I + 1 when I kills H_{>=1}(F) and some z in H_0 \\ m H_0."""
    ring = F.ring
    report = _new("improved-new-intersection", ring,
                  {"ranks": F.ranks, "ideal": str(I), "z": [str(p) for p in z]}, seed)
    with _timed(report):
        report.caveat(LEVEL_CAVEAT)
        report.caveat(GRADED_CAVEAT)
        if F.is_zero() or F.lo < 0:
            raise DataError("the complex must be nonzero and live in degrees 0..d")
        d = F.hi
        zcol = RingMatrix.from_rows(ring, [[p] for p in z], cols=1)
        if zcol.rows != F.rank(0):
            raise DataError(f"z has {zcol.rows} coordinates, F_0 has rank {F.rank(0)}")
        report.hyp("z is a cycle", PASS, "F_{-1} = 0")
        # z not in m H_0: over k, z mod m is not in the image of k (x) d_1
        ops = ConstOps(ring.field)
        zbar = [row[0] for row in zcol.constant_part()]
        cols = [[row[j] for row in F.diff(1).constant_part()] for j in range(F.rank(1))] if F.rank(1) else []
        outside = any(zbar) and solve_field(cols, zbar, ops) is None
        report.hyp("class of z not in m H_0(F)", PASS if outside else FAIL, {"z_mod_m": [str(c) for c in zbar]})
        B1 = F.diff(1)
        bad = [str(g) for g in I.gens if not in_column_span(B1, zcol.scale(g))] if B1.cols else \
            [str(g) for g in I.gens if not zcol.scale(g).is_zero()]
        report.hyp("I z = 0 in H_0(F)", PASS if not bad else FAIL, {"failing_generators": bad})
        bad = []
        for i in range(1, d + 1):
            Z = _cycles(F, i)
            if Z.cols == 0:
                continue
            B = F.diff(i + 1)
            for g in I.gens:
                gz = Z.scale(g)
                if gz.is_zero():
                    continue
                if not B.cols or not in_column_span(B, gz):
                    bad.append({"degree": i, "generator": str(g)})
        report.hyp("I H_i(F) = 0 for i >= 1", PASS if not bad else FAIL, {"failing": bad})
        lb = level_upper_bound(F)
        h = _height_value(I, report)
        sp = span(F)
        lower, lower_tag = lb.lower, "lower bound"
        if isinstance(F, KoszulComplex):
            kl = koszul_level(F)
            if kl.status == "EXACT":
                lower, lower_tag = kl.value, "EXACT (Koszul complex on a system of parameters)"
                report.caveat(kl.note)
        chain = {"d_plus_1": d + 1, "span": _num(sp), "level_upper": _num(lb.upper),
                 "level_lower": lower, "level_lower_provenance": lower_tag, "height_plus_1": _num(h + 1)}
        if not report.hypotheses_pass():
            report.conclude(NA, chain)
            return report
        exact_ok = d + 1 >= sp >= lb.upper
        if not exact_ok or lb.upper < h + 1:
            status = SENSATION if ring.equidimensional or not exact_ok else UNDETERMINED
        elif lower >= h + 1:
            status = HOLDS
        else:
            status = UNDETERMINED
        chain["right_inequality"] = status
        report.conclude(status, chain)
    return report


# -- canonical element ----------------------------------------------------------------------

def top_class_escapes(f, xs):
    """Whether f_d(top) avoids (x) F_d + d(F_{d+1}), i.e. H_d(S (x) f) != 0 for S = R/(x)."""
    K, F = f.source, f.target
    ring = f.ring
    d = K.hi
    v = f.comp(d)
    if v.is_zero():
        return False, "f_d = 0"
    r = F.rank(d)
    blocks = [RingMatrix.scalar(ring, r, x) for x in xs]
    if F.rank(d + 1):
        blocks.append(F.diff(d + 1))
    span_ = RingMatrix.hstack(ring, r, blocks)
    inside = in_column_span(span_, v)
    return (not inside), [str(p) for p in (v[i, 0] for i in range(r))]


def check_canonical_element(xs, f, seed=DEFAULT_SEED):
    """H_0(k (x) f) != 0 for f: K(x) -> F with x a system of parameters forces H_d(S (x) f) != 0."""
    K = f.source
    ring = f.ring
    report = _new("canonical-element", ring,
                  {"sop": [str(x) for x in xs], "target_ranks": f.target.ranks}, seed)
    with _timed(report):
        report.caveat(GRADED_CAVEAT)
        sop = is_system_of_parameters(ring, xs)
        report.hyp("x is a system of parameters", PASS if sop else FAIL, {"dim_R": ring.dim()})
        koszul_ok = isinstance(K, FreeComplex) and K == koszul(xs, ring)
        report.hyp("source is the Koszul complex on x", PASS if koszul_ok else FAIL)
        chain_ok = f.failing_degree() is None
        report.hyp("f is a chain map", PASS if chain_ok else FAIL)
        fib = field_fiber_homology_map(f, MAXIMAL)
        h0 = fib.degrees.get(0, {"map": 0})["map"]
        report.hyp("H_0(k (x) f) != 0", PASS if h0 else FAIL, {"rank_H0_map": h0})
        if not report.hypotheses_pass():
            report.conclude(NA)
            return report
        ok, wit = top_class_escapes(f, xs)
        report.conclude(PASS if ok else SENSATION, {"f_d_top": wit, "degree": K.hi})
    return report


def _cyclic_resolution(ring, gens, length):
    return minimal_resolution(ModulePresentation.cyclic(ring, gens), length)


def check_lift_nonvanishing(I_gens, xs, length=None, seed=DEFAULT_SEED):
    """Any lift K(x) -> F of R/(x) -> R/I, F a resolution of R/I, has f_d != 0."""
    ring = (xs[0] if xs else I_gens[0]).ring
    d = ring.dim()
    length = max(length or d + 2, d)
    report = _new("lift-nonvanishing", ring,
                  {"ideal": [str(g) for g in I_gens], "sop": [str(x) for x in xs], "length": length}, seed)
    with _timed(report):
        report.caveat(GRADED_CAVEAT)
        I = Ideal(ring, I_gens)
        contained = all(I.contains(x) for x in xs)
        report.hyp("(x) is contained in I", PASS if contained else FAIL)
        sop = is_system_of_parameters(ring, xs)
        report.hyp("x is a system of parameters", PASS if sop else FAIL, {"dim_R": d})
        if not report.hypotheses_pass():
            report.conclude(NA)
            return report
        K = koszul(xs, ring)
        res = _cyclic_resolution(ring, I_gens, length)
        phi0 = RingMatrix.identity(ring, 1)
        f = lift_through_resolution(phi0, res, K)
        fd = f.comp(d)
        report.caveat(f"resolution truncated at length {length}")
        report.conclude(PASS if not fd.is_zero() else SENSATION,
                        {"f_d": str(fd), "resolution_ranks": res.complex.ranks})
    return report


def check_minors(xs, ys, A, seed=DEFAULT_SEED):
    """A y = x with x a system of parameters forces I_d(A) not inside (x)."""
    ring = A.ring
    d = ring.dim()
    report = _new("minors", ring, {"sop": [str(x) for x in xs], "y": [str(y) for y in ys], "A": str(A)}, seed)
    with _timed(report):
        report.caveat(GRADED_CAVEAT)
        ycol = RingMatrix.from_rows(ring, [[y] for y in ys], cols=1)
        xcol = RingMatrix.from_rows(ring, [[x] for x in xs], cols=1)
        shape_ok = A.cols == len(ys) and A.rows == len(xs)
        ok = shape_ok and (A @ ycol) == xcol
        report.hyp("A y = x", PASS if ok else FAIL, {"shape": list(A.shape)})
        sop = is_system_of_parameters(ring, xs)
        report.hyp("x is a system of parameters", PASS if sop else FAIL, {"dim_R": d})
        if not report.hypotheses_pass():
            report.conclude(NA)
            return report
        Id = minors_ideal(A, d)
        X = Ideal(ring, xs)
        escaping = [str(m) for m in Id.gens if not X.contains(m)]
        report.conclude(PASS if escaping else SENSATION,
                        {"minors": [str(m) for m in Id.gens], "outside_x": escaping})
    return report


def check_monomial(ys, n, seed=DEFAULT_SEED):
    """(y_1 ... y_d)^n is not in (y_1^{n+1}, ..., y_d^{n+1}) for a system of parameters y."""
    ring = ys[0].ring
    report = _new("monomial", ring, {"sop": [str(y) for y in ys], "n": n}, seed)
    with _timed(report):
        report.caveat(GRADED_CAVEAT)
        if n < 1:
            raise DataError("n must be at least 1")
        sop = is_system_of_parameters(ring, ys)
        report.hyp("y is a system of parameters", PASS if sop else FAIL, {"dim_R": ring.dim()})
        if not report.hypotheses_pass():
            report.conclude(NA)
            return report
        prod = ring.one
        for y in ys:
            prod = prod * y
        p = ring.reduce(prod ** n)
        I = Ideal(ring, [y ** (n + 1) for y in ys])
        member = I.contains(p)
        report.conclude(SENSATION if member else PASS,
                        {"element": str(p), "verdict": "MEMBER" if member else "NOT MEMBER"})
    return report


def minimal_generators(I):
    """A minimal homogeneous generating set, chosen greedily by degree."""
    ring = I.ring
    gens = sorted((g for g in I.gens if g.terms), key=lambda g: (g.degree(), str(g)))
    kept = []
    for g in gens:
        if kept and Ideal(ring, kept).contains(g):
            continue
        kept.append(g)
    return kept


def check_wedge_injectivity(I_gens, length=None, seed=DEFAULT_SEED):
    """For a parameter ideal I, H_d(S (x) hg) != 0 where g: K -> G lifts id_S and h: G -> F
    lifts S -> k; this makes mu^k injective (a map out of an exterior algebra that is
    nonzero in the top degree is injective)."""
    ring = I_gens[0].ring
    d = ring.dim()
    length = max(length or d, d)
    report = _new("wedge-injectivity", ring, {"ideal": [str(g) for g in I_gens], "length": length}, seed)
    with _timed(report):
        report.caveat(GRADED_CAVEAT)
        report.caveat("the exterior-algebra map is injective once its top component is nonzero; "
                      "only the top component is computed")
        I = Ideal(ring, I_gens)
        xs = minimal_generators(I)
        sop = is_system_of_parameters(ring, xs)
        report.hyp("I is a parameter ideal", PASS if sop else FAIL,
                   {"minimal_generators": [str(x) for x in xs], "dim_R": d})
        if not report.hypotheses_pass():
            report.conclude(NA)
            return report
        K = koszul(xs, ring)
        G = _cyclic_resolution(ring, xs, length)
        F = _cyclic_resolution(ring, ring.gens, length)
        one = RingMatrix.identity(ring, 1)
        g = lift_through_resolution(one, G, K)
        h = lift_through_resolution(one, F, G.complex)
        f = h @ g
        ok, wit = top_class_escapes(f, xs)
        report.caveat(f"resolutions truncated at length {length}")
        report.conclude(PASS if ok else SENSATION, {"hg_top": wit, "degree": d,
                                                   "G_ranks": G.complex.ranks, "F_ranks": F.complex.ranks})
    return report


def check_rank_bound(S, seed=DEFAULT_SEED):
    """A DG K(sop)-module F with H_0 != 0 and F_{<0} = 0 has rank F_n >= C(d, n)."""
    from math import comb
    from .homology import homology_presentation
    F = S.complex
    ring = F.ring
    d = ring.dim()
    report = _new("rank-bound", ring, {"ranks": F.ranks, "sop": [str(x) for x in S.koszul.elements]}, seed)
    with _timed(report):
        report.caveat(GRADED_CAVEAT)
        sop = is_system_of_parameters(ring, S.koszul.elements)
        report.hyp("Koszul elements form a system of parameters", PASS if sop else FAIL, {"dim_R": d})
        dg = verify_dg_module(S)
        report.hyp("DG module axioms", PASS if dg.value else FAIL, dg.witness)
        report.caveat(dg.note)
        h0 = not homology_presentation(F, 0).is_zero()
        report.hyp("H_0(F) != 0", PASS if h0 else FAIL)
        neg = [n for n in F.ranks if n < 0]
        report.hyp("F_i = 0 for i < 0", PASS if not neg else FAIL, {"negative_degrees": neg})
        if not report.hypotheses_pass():
            report.conclude(NA)
            return report
        table = {str(n): {"rank": F.rank(n), "binomial": comb(d, n)} for n in range(0, d + 1)}
        bad = [n for n in range(0, d + 1) if F.rank(n) < comb(d, n)]
        if bad:
            table["instance"] = {"ranks": F.ranks, "diffs": {n: str(M) for n, M in F.diffs.items()}}
        report.conclude(SENSATION if bad else PASS, {"table": table, "deficient_degrees": bad})
    return report


# -- ghost lemma -----------------------------------------------------------------------------

def check_ghost_lemma(F, ghosts, seed=DEFAULT_SEED):
    """If g = g_c o ... o g_1 with each g_i a ghost and level F <= c, then F (x) g is a ghost."""
    ring = F.ring
    c = len(ghosts)
    report = _new("ghost-lemma", ring, {"ranks": F.ranks, "c": c}, seed)
    with _timed(report):
        report.caveat(LEVEL_CAVEAT)
        comp = ghosts[0]
        for i, g in enumerate(ghosts):
            gh = is_ghost(g)
            report.hyp(f"factor {i + 1} is a ghost", PASS if gh.value else FAIL, gh.failing)
            if i:
                comp = g @ comp
        lb = level_upper_bound(F)
        st = PASS if lb.upper <= c else (FAIL if lb.lower > c else UNDETERMINED)
        report.hyp("level F <= c", st, {"level_upper": _num(lb.upper)})
        if not report.hypotheses_pass():
            report.conclude(NA)
            return report
        res = is_ghost(tensor_map(identity_map(F), comp))
        report.conclude(PASS if res.value else SENSATION, {"failing": res.failing})
    return report


__all__ = [
    "PASS", "FAIL", "UNDETERMINED", "NA", "HOLDS", "SENSATION", "DEFAULT_SEED", "REPORT_SCHEMA",
    "CheckReport", "NilpotenceResult", "nilpotence_search", "SharpnessInstance", "sharpness_instance",
    "check_tensor_nilpotence", "check_mit", "check_init", "check_canonical_element",
    "check_lift_nonvanishing", "check_minors", "check_monomial", "check_wedge_injectivity",
    "check_rank_bound", "check_ghost_lemma", "top_class_escapes", "minimal_generators",
]
