"""Homology over the ring and over field fibers; ghosts, null-homotopies, torsion."""

from dataclasses import dataclass, field

from .complex import Homotopy, homotopy_residual, identity_map, tensor_map
from .errors import DataError, InternalDefect
from .ring import Ideal, RingMatrix, in_column_span, radical_membership, solve_linear, syzygies
from .ring.linear import ColumnSpan, ConstOps, FractionOps, kernel_basis, rank


class ModulePresentation:
    """Cokernel of ``relations`` : R^r -> R^g."""

    def __init__(self, ring, ngens, relations=None):
        self.ring = ring
        self.ngens = ngens
        if relations is None:
            relations = RingMatrix.zero(ring, ngens, 0)
        if relations.rows != ngens:
            raise DataError(f"relations have {relations.rows} rows for {ngens} generators")
        self.relations = relations

    @classmethod
    def cyclic(cls, ring, ideal_gens):
        """R / (ideal_gens)."""
        gens = [ring.reduce(ring.coerce(g)) for g in ideal_gens]
        return cls(ring, 1, RingMatrix.from_rows(ring, [gens], cols=len(gens)))

    @classmethod
    def free(cls, ring, n=1):
        return cls(ring, n)

    def __repr__(self):
        return f"ModulePresentation({self.ngens} generators, {self.relations.cols} relations)"

    def contains(self, col):
        """Whether the element given by the sparse column {gen: Poly} is zero in the module."""
        return ColumnSpan(self.relations, track=False).contains(col)

    def is_zero(self):
        if self.ngens == 0:
            return True
        return in_column_span(self.relations, RingMatrix.identity(self.ring, self.ngens))

    def zero_generators(self):
        span_ = ColumnSpan(self.relations, track=False)
        one = self.ring.one
        return [i for i in range(self.ngens) if span_.contains({i: one})]

    def annihilator(self):
        """ann(M) as the first coordinates of the syzygies of [stacked e_i | rel, ..., rel]."""
        ring, g = self.ring, self.ngens
        if g == 0:
            return Ideal(ring, [ring.one])
        rel = self.relations
        stacked = RingMatrix(ring, g * g, 1, {(i * g + i, 0): ring.one for i in range(g)}, reduce=False)
        blocks = RingMatrix.block_diag(ring, [rel] * g)
        S = syzygies(RingMatrix.hstack(ring, g * g, [stacked, blocks]))
        return Ideal(ring, [S[0, j] for j in range(S.cols)])

    def prune(self):
        """Equivalent presentation after eliminating generators killed by unit relations.

        Returns (pruned, P, kept): P : R^g -> R^g' sends old generators to new ones and
        new generator k is the old generator kept[k].
        """
        ring = self.ring
        rel = self.relations
        P = RingMatrix.identity(ring, self.ngens)
        kept = list(range(self.ngens))
        while True:
            piv = None
            for (i, j), p in sorted(rel.entries.items()):
                if p.is_constant():
                    piv = (i, j, p)
                    break
            if piv is None:
                break
            i, j, p = piv
            inv = ring.const(ring.field.inv(p.constant_term()))
            rows = [k for k in range(rel.rows) if k != i]
            cols = [l for l in range(rel.cols) if l != j]
            delta = rel.submatrix([i], cols)
            gamma = rel.submatrix(rows, [j])
            rel = rel.submatrix(rows, cols) - (gamma @ delta).scale(inv)
            # e_i = -inv * sum_k gamma_k e_k
            proj = RingMatrix.hstack(ring, len(rows), [gamma.scale(-inv), RingMatrix.identity(ring, len(rows))])
            order = list(range(1, i + 1)) + [0] + list(range(i + 1, len(rows) + 1))
            P = proj.submatrix(list(range(len(rows))), order) @ P
            del kept[i]
        keep = [j for j in range(rel.cols) if rel.column(j)]
        rel = rel.submatrix(list(range(rel.rows)), keep)
        return ModulePresentation(ring, rel.rows, rel), P, kept


def _cycles(F, n):
    """Matrix whose columns generate ker d_n."""
    r = F.rank(n)
    if r == 0:
        return RingMatrix.zero(F.ring, 0, 0)
    d = F.diff(n)
    if F.rank(n - 1) == 0 or d.is_zero():
        return RingMatrix.identity(F.ring, r)
    return syzygies(d)


def homology_presentation(F, n):
    ring = F.ring
    Z = _cycles(F, n)
    if Z.cols == 0:
        return ModulePresentation(ring, 0)
    B = F.diff(n + 1)
    rels = []
    if B.cols:
        X = solve_linear(Z, B)
        if X is None:
            raise InternalDefect(f"boundaries in degree {n} are not cycles")
        rels.append(X)
    S = syzygies(Z)
    if S.cols:
        rels.append(S)
    R = RingMatrix.hstack(ring, Z.cols, rels) if rels else RingMatrix.zero(ring, Z.cols, 0)
    return ModulePresentation(ring, Z.cols, R)


def homology_is_zero(F, n):
    return in_column_span(F.diff(n + 1), _cycles(F, n)) if F.rank(n) else True


def nonzero_homology_degrees(F):
    return [n for n in F.degrees() if not homology_is_zero(F, n)]


# -- I-torsion ------------------------------------------------------------------------

@dataclass
class TorsionResult:
    value: bool
    annihilators: dict = field(default_factory=dict)
    witness: tuple = None

    def __bool__(self):
        return self.value


def is_i_torsion(F, I):
    """Whether every homology module of F is annihilated by a power of I."""
    anns = {}
    for n in F.degrees():
        H = homology_presentation(F, n)
        if H.is_zero():
            continue
        ann = H.annihilator()
        anns[n] = ann
        for g in I.gens:
            if not radical_membership(g, ann):
                return TorsionResult(False, anns, (n, str(g)))
    return TorsionResult(True, anns)


# -- ghosts ---------------------------------------------------------------------------

@dataclass
class GhostResult:
    value: bool
    witness: dict = field(default_factory=dict)
    failing: tuple = None
    checked_degrees: tuple = ()

    def __bool__(self):
        return self.value


def is_ghost(f, max_degree=None, min_degree=None):
    """Whether H(f) = 0: each cycle generator of the source maps into the boundaries of the target."""
    G, F = f.source, f.target
    preimages, checked = {}, []
    for n in G.degrees():
        if max_degree is not None and n > max_degree:
            break
        if min_degree is not None and n < min_degree:
            continue
        if not F.rank(n):
            continue
        Z = _cycles(G, n)
        img = f.comp(n) @ Z
        checked.append(n)
        if img.is_zero():
            continue
        B = F.diff(n + 1)
        X = solve_linear(B, img) if B.cols else None
        if X is None:
            bad = next(j for j in range(img.cols) if img.column(j) and
                       (not B.cols or not ColumnSpan(B, track=False).contains(img.column(j))))
            cyc = [str(Z[i, bad]) for i in range(Z.rows)]
            return GhostResult(False, preimages, (n, cyc), tuple(checked))
        preimages[n] = X
    return GhostResult(True, preimages, None, tuple(checked))


# -- null-homotopies --------------------------------------------------------------------

def null_homotopy(f):
    """h with d h + h d = f, solved as one linear system over the ring, or None."""
    G, F, ring = f.source, f.target, f.ring
    unknowns, off = {}, 0
    for n in sorted(G.ranks):
        a, b = F.rank(n + 1), G.rank(n)
        if a and b:
            unknowns[n] = (off, a, b)
            off += a * b
    equations, eoff = {}, 0
    for n in sorted(G.ranks):
        a, b = F.rank(n), G.rank(n)
        if a and b:
            equations[n] = (eoff, a, b)
            eoff += a * b
    if eoff == 0:
        return Homotopy(G, F, {})
    ent, rhs = {}, {}

    def put(k, v):
        p = ent.get(k)
        ent[k] = v if p is None else p + v

    for n, (e0, a, b) in equations.items():
        fn = f.comp(n)
        for (i, j), p in fn.entries.items():
            rhs[(e0 + j * a + i, 0)] = p
        if n in unknowns:  # d^F_{n+1} h_n
            u0, ua, _ = unknowns[n]
            D = F.diff(n + 1)
            for (i, k), p in D.entries.items():
                for j in range(b):
                    put((e0 + j * a + i, u0 + j * ua + k), p)
        if n - 1 in unknowns:  # h_{n-1} d^G_n
            u0, ua, _ = unknowns[n - 1]
            D = G.diff(n)
            for (k, j), p in D.entries.items():
                for i in range(a):
                    put((e0 + j * a + i, u0 + k * ua + i), p)
    M = RingMatrix(ring, eoff, off, ent)
    B = RingMatrix(ring, eoff, 1, rhs)
    if off == 0:
        return Homotopy(G, F, {}) if B.is_zero() else None
    X = solve_linear(M, B)
    if X is None:
        return None
    comps = {}
    for n, (u0, a, b) in unknowns.items():
        comps[n] = RingMatrix(ring, a, b, {(i, j): X[u0 + j * a + i, 0]
                                           for i in range(a) for j in range(b)}, reduce=False)
    h = Homotopy(G, F, comps)
    if not homotopy_residual(f, h).is_zero():
        raise InternalDefect("null-homotopy solution fails the homotopy identity")
    return h


def is_null_homotopic(f):
    return null_homotopy(f) is not None


# -- field fibers ---------------------------------------------------------------------

@dataclass(frozen=True)
class FieldFiber:
    """A residue field of the ring: the graded maximal ideal or the generic point of a domain."""

    kind: str

    def __post_init__(self):
        if self.kind not in ("maximal", "generic"):
            raise DataError(f"unknown field fiber {self.kind!r}")

    def __str__(self):
        return "m" if self.kind == "maximal" else "generic"


MAXIMAL = FieldFiber("maximal")
GENERIC = FieldFiber("generic")

FIBER_CAVEAT = "fiberwise-zero checked only at the supplied fibers, a sample of Spec R"


def _fiber_setup(ring, fiber):
    if fiber.kind == "maximal":
        ops = ConstOps(ring.field)

        def conv(M):
            return M.constant_part()
    else:
        if not ring.domain:
            raise DataError("the generic point needs the ring to be flagged as a domain")
        ops = FractionOps(ring)

        def conv(M):
            z, o = ring.zero, ring.one
            out = [[(z, o)] * M.cols for _ in range(M.rows)]
            for (i, j), p in M.entries.items():
                out[i][j] = (p, o)
            return out
    return ops, conv


def _matmul_dense(A, B, ops, inner):
    rows = len(A)
    cols = len(B[0]) if B else 0
    out = [[ops.zero] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            a = A[i][k]
            if ops.is_zero(a):
                continue
            for j in range(cols):
                b = B[k][j]
                if not ops.is_zero(b):
                    out[i][j] = ops.add(out[i][j], ops.mul(a, b))
    return out


def _columns(M, ncols):
    return [[row[j] for row in M] for j in range(ncols)]


@dataclass
class FiberResult:
    fiber: FieldFiber
    degrees: dict
    is_zero: bool


def field_fiber_homology_map(f, fiber=MAXIMAL):
    """Ranks of H_n(source), H_n(target) and of H_n(k (x) f) over the chosen residue field."""
    G, F, ring = f.source, f.target, f.ring
    ops, conv = _fiber_setup(ring, fiber)
    out = {}
    degs = sorted(set(G.ranks) | set(F.ranks))
    for n in degs:
        rg, rf = G.rank(n), F.rank(n)
        dG = conv(G.diff(n)) if G.rank(n - 1) and rg else []
        kerG = kernel_basis(dG, rg, ops) if rg else []
        bG = rank(conv(G.diff(n + 1)), ops) if rg and G.rank(n + 1) else 0
        dF = conv(F.diff(n)) if F.rank(n - 1) and rf else []
        kerF = kernel_basis(dF, rf, ops) if rf else []
        BF = conv(F.diff(n + 1)) if rf and F.rank(n + 1) else []
        bF = rank(BF, ops) if BF else 0
        hG, hF = len(kerG) - bG, len(kerF) - bF
        induced = 0
        if hG and hF and kerG:
            fn = conv(f.comp(n))
            Zm = [[v[i] for v in kerG] for i in range(rg)]
            img = _matmul_dense(fn, Zm, ops, rg)
            img_cols = _columns(img, len(kerG))
            b_cols = _columns(BF, F.rank(n + 1)) if BF else []
            both = b_cols + img_cols
            mat = [[c[i] for c in both] for i in range(rf)]
            induced = rank(mat, ops) - bF
        out[n] = {"source": hG, "target": hF, "map": induced}
    return FiberResult(fiber, out, all(v["map"] == 0 for v in out.values()))


@dataclass
class FiberwiseVerdict:
    value: bool
    per_fiber: list
    caveat: str = FIBER_CAVEAT

    def __bool__(self):
        return self.value


def is_fiberwise_zero(f, fibers=(MAXIMAL,)):
    results = [field_fiber_homology_map(f, fb) for fb in fibers]
    return FiberwiseVerdict(all(r.is_zero for r in results), results)


# -- ghost after tensoring with a test module ------------------------------------------

FINITE_PROXY_CAVEAT = ("finite proxy: the big Cohen-Macaulay module is replaced by a "
                       "finitely generated test module")


@dataclass
class GhostAfterTensor:
    value: bool
    resolution_length: int
    checked_up_to: object
    ghost: GhostResult
    caveat: str = FINITE_PROXY_CAVEAT

    def __bool__(self):
        return self.value


def ghost_after_tensor(C, f, length=None):
    """Whether H(C (x) f) = 0, computed with a truncated free resolution P of C."""
    from .resolutions import minimal_resolution

    if C.is_zero():
        return GhostAfterTensor(True, 0, None, GhostResult(True))
    G, F = f.source, f.target
    if f.is_zero() or (G.is_zero() and F.is_zero()):
        return GhostAfterTensor(True, 0, None, GhostResult(True))
    lo = min(G.lo if not G.is_zero() else F.lo, F.lo if not F.is_zero() else G.lo)
    hi = max(G.hi, F.hi)
    if length is None:
        length = (hi - lo + 1) + C.ring.dim() + 2
    res = minimal_resolution(C, length)
    P = res.complex
    Pf = tensor_map(identity_map(P), f)
    limit = None if res.terminated else length + lo - 1
    g = is_ghost(Pf, max_degree=limit)
    return GhostAfterTensor(g.value, length, limit, g)


__all__ = [
    "ModulePresentation", "homology_presentation", "homology_is_zero", "nonzero_homology_degrees",
    "TorsionResult", "is_i_torsion", "GhostResult", "is_ghost", "null_homotopy", "is_null_homotopic",
    "FieldFiber", "MAXIMAL", "GENERIC", "FIBER_CAVEAT", "FiberResult", "field_fiber_homology_map",
    "FiberwiseVerdict", "is_fiberwise_zero", "FINITE_PROXY_CAVEAT", "GhostAfterTensor",
    "ghost_after_tensor",
]
