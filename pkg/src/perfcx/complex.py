"""Bounded complexes of finite free modules over a quotient ring, and their calculus.

Sign conventions, fixed once:

* suspension: (S^i F)_n = F_{n-i}, with differential (-1)^i d^F_{n-i};
* tensor: d(a (x) b) = da (x) b + (-1)^|a| a (x) db; the basis of (F (x) G)_n is
  ordered by blocks j = deg a ascending, Kronecker order inside a block;
* dual: (F*)_n = (F_{-n})*, with differential the plain transpose
  d^{F*}_n = (d^F_{1-n})^T, so that dual(dual(F)) == F on the nose.  The
  evaluation F* (x) F -> R is then a chain map when the pairing on the block
  F*_{-a} (x) F_a carries the sign (-1)^{a(a+1)/2}.
"""

import math
from dataclasses import dataclass

from .errors import DataError, InternalDefect, NotLocalError
from .ring import RingMatrix, solve_linear

NEG_INF = -math.inf


class FreeComplex:
    """Bounded complex: ranks per degree and differentials d_n : F_n -> F_{n-1}."""

    def __init__(self, ring, ranks, diffs=None, check=True, name=None):
        self.ring = ring
        self.name = name
        self.ranks = {int(n): int(r) for n, r in ranks.items() if r}
        if any(r < 0 for r in self.ranks.values()):
            raise DataError("negative rank")
        self.diffs = {}
        for n, M in (diffs or {}).items():
            n = int(n)
            want = (self.rank(n - 1), self.rank(n))
            if M.shape != want:
                raise DataError(f"d{n} has shape {M.shape}, expected {want}")
            if M.entries:
                self.diffs[n] = M
        if check:
            self.check()

    @property
    def lo(self):
        return min(self.ranks) if self.ranks else 0

    @property
    def hi(self):
        return max(self.ranks) if self.ranks else -1

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def rank(self, n):
        return self.ranks.get(n, 0)

    def diff(self, n):
        M = self.diffs.get(n)
        if M is None:
            return RingMatrix.zero(self.ring, self.rank(n - 1), self.rank(n))
        return M

    def is_zero(self):
        return not self.ranks

    def check(self):
        for n in self.diffs:
            if n - 1 in self.diffs and not (self.diffs[n - 1] @ self.diffs[n]).is_zero():
                raise DataError(f"d{n - 1} d{n} != 0")
        return True

    def __eq__(self, other):
        if not isinstance(other, FreeComplex):
            return NotImplemented
        return (self.ring == other.ring and self.ranks == other.ranks
                and self.diffs.keys() == other.diffs.keys()
                and all(self.diffs[n] == other.diffs[n] for n in self.diffs))

    def __hash__(self):
        return hash((tuple(sorted(self.ranks.items())), tuple(sorted(self.diffs))))

    def __repr__(self):
        ranks = ", ".join(f"{n}:{r}" for n, r in sorted(self.ranks.items()))
        return f"FreeComplex({{{ranks}}})"

    def total_rank(self):
        return sum(self.ranks.values())


class ChainMap:
    """Degree-zero map f: source -> target with comp(n) of shape target.rank(n) x source.rank(n)."""

    def __init__(self, source, target, comps=None, check=True):
        if source.ring != target.ring:
            raise DataError("chain map between complexes over different rings")
        self.source = source
        self.target = target
        self.ring = source.ring
        self.comps = {}
        for n, M in (comps or {}).items():
            want = (target.rank(n), source.rank(n))
            if M.shape != want:
                raise DataError(f"component {n} has shape {M.shape}, expected {want}")
            if M.entries:
                self.comps[int(n)] = M
        if check:
            self.check()

    def comp(self, n):
        M = self.comps.get(n)
        if M is None:
            return RingMatrix.zero(self.ring, self.target.rank(n), self.source.rank(n))
        return M

    def degrees(self):
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        return range(lo, hi + 2)

    def failing_degree(self):
        for n in self.degrees():
            lhs = self.target.diff(n) @ self.comp(n)
            rhs = self.comp(n - 1) @ self.source.diff(n)
            if lhs != rhs:
                return n
        return None

    def check(self):
        n = self.failing_degree()
        if n is not None:
            raise DataError(f"not a chain map: square at degree {n} does not commute")
        return True

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.comps.keys() == other.comps.keys()
                and all(self.comps[n] == other.comps[n] for n in self.comps))

    def __hash__(self):
        return hash(tuple(sorted(self.comps)))

    def __add__(self, other):
        degs = set(self.comps) | set(other.comps)
        return ChainMap(self.source, self.target,
                        {n: self.comp(n) + other.comp(n) for n in degs}, check=False)

    def __neg__(self):
        return ChainMap(self.source, self.target, {n: -M for n, M in self.comps.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ChainMap(self.source, self.target,
                        {n: M.scale(c) for n, M in self.comps.items()}, check=False)

    def __matmul__(self, other):
        """Composition self o other."""
        if other.target != self.source:
            raise DataError("composition of non-composable chain maps")
        degs = set(self.comps) & set(other.comps)
        return ChainMap(other.source, self.target,
                        {n: self.comp(n) @ other.comp(n) for n in degs}, check=False)

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


@dataclass
class Homotopy:
    """h_n : source_n -> target_{n+1}."""

    source: FreeComplex
    target: FreeComplex
    comps: dict

    def comp(self, n):
        M = self.comps.get(n)
        if M is None:
            return RingMatrix.zero(self.source.ring, self.target.rank(n + 1), self.source.rank(n))
        return M

    def boundary(self):
        """The null-homotopic map d h + h d."""
        lo = min(self.source.lo, self.target.lo) - 1
        hi = max(self.source.hi, self.target.hi) + 1
        comps = {}
        for n in range(lo, hi + 1):
            comps[n] = self.target.diff(n + 1) @ self.comp(n) + self.comp(n - 1) @ self.source.diff(n)
        return ChainMap(self.source, self.target,
                        {n: M for n, M in comps.items() if self.source.rank(n) and self.target.rank(n)},
                        check=False)

    def is_zero(self):
        return all(M.is_zero() for M in self.comps.values())


def homotopy_residual(f, h):
    """f - (d h + h d); the zero map exactly when h is a null-homotopy of f."""
    return f - h.boundary()


# -- basic objects ------------------------------------------------------------------

def zero_complex(ring):
    return FreeComplex(ring, {})


def free_module(ring, rank=1, degree=0):
    """R^rank concentrated in one degree."""
    return FreeComplex(ring, {degree: rank})


def identity_map(F):
    return ChainMap(F, F, {n: RingMatrix.identity(F.ring, r) for n, r in F.ranks.items()}, check=False)


def zero_map(G, F):
    return ChainMap(G, F, {}, check=False)


def scalar_map(F, c):
    """Multiplication by the ring element c on F."""
    return ChainMap(F, F, {n: RingMatrix.scalar(F.ring, r, c) for n, r in F.ranks.items()}, check=False)


def span(F):
    if F.is_zero():
        return NEG_INF
    return F.hi - F.lo + 1


def suspend(F, i=1):
    sign = -1 if i % 2 else 1
    diffs = {n + i: (M if sign == 1 else -M) for n, M in F.diffs.items()}
    return FreeComplex(F.ring, {n + i: r for n, r in F.ranks.items()}, diffs, check=False)


def suspend_map(f, i=1):
    return ChainMap(suspend(f.source, i), suspend(f.target, i),
                    {n + i: M for n, M in f.comps.items()}, check=False)


def dual(F):
    ranks = {-n: r for n, r in F.ranks.items()}
    diffs = {1 - n: M.T for n, M in F.diffs.items()}
    return FreeComplex(F.ring, ranks, diffs, check=False)


def dual_map(f):
    """f*: target* -> source*, with components (f_{-n})^T."""
    return ChainMap(dual(f.target), dual(f.source), {-n: M.T for n, M in f.comps.items()}, check=False)


def direct_sum(*Fs):
    ring = Fs[0].ring
    degs = sorted(set().union(*(F.ranks for F in Fs)))
    ranks = {n: sum(F.rank(n) for F in Fs) for n in degs}
    diffs = {n: RingMatrix.block_diag(ring, [F.diff(n) for F in Fs]) for n in degs}
    return FreeComplex(ring, ranks, diffs, check=False)


def direct_sum_maps(*fs):
    ring = fs[0].ring
    src = direct_sum(*(f.source for f in fs))
    tgt = direct_sum(*(f.target for f in fs))
    degs = set(src.ranks) | set(tgt.ranks)
    return ChainMap(src, tgt, {n: RingMatrix.block_diag(ring, [f.comp(n) for f in fs]) for n in degs},
                    check=False)


def cone(f):
    """Mapping cone of f: G -> F; cone_n = F_n + G_{n-1}, d = [[dF, f], [0, -dG]]."""
    F, G, ring = f.target, f.source, f.ring
    degs = set(F.ranks) | {n + 1 for n in G.ranks}
    ranks = {n: F.rank(n) + G.rank(n - 1) for n in degs}
    diffs = {}
    for n in degs | {n + 1 for n in degs}:
        top = RingMatrix.hstack(ring, F.rank(n - 1), [F.diff(n), f.comp(n - 1)])
        bot = RingMatrix.hstack(ring, G.rank(n - 2),
                                [RingMatrix.zero(ring, G.rank(n - 2), F.rank(n)), -G.diff(n - 1)])
        diffs[n] = RingMatrix.vstack(ring, F.rank(n) + G.rank(n - 1), [top, bot])
    return FreeComplex(ring, ranks, {n: M for n, M in diffs.items() if M.rows and M.cols},
                       check=False)


# -- tensor products ------------------------------------------------------------------

def _blocks(F, G, n):
    """[(j, offset, size)] for the blocks F_j (x) G_{n-j} of (F (x) G)_n."""
    out, off = [], 0
    for j in sorted(F.ranks):
        s = F.rank(j) * G.rank(n - j)
        if s:
            out.append((j, off, s))
            off += s
    return out, off


def tensor(F, G):
    if F.ring != G.ring:
        raise DataError("tensor product of complexes over different rings")
    ring = F.ring
    if F.is_zero() or G.is_zero():
        return zero_complex(ring)
    ranks = {}
    layout = {}
    for n in range(F.lo + G.lo, F.hi + G.hi + 1):
        blocks, total = _blocks(F, G, n)
        if total:
            ranks[n] = total
            layout[n] = {j: (off, s) for j, off, s in blocks}
    diffs = {}
    for n in ranks:
        if n - 1 not in ranks:
            continue
        ent = {}
        for j, (off, _) in layout[n].items():
            Gr = G.rank(n - j)
            if j - 1 in layout[n - 1]:
                blk = F.diff(j).kron(RingMatrix.identity(ring, Gr))
                toff = layout[n - 1][j - 1][0]
                for (a, b), p in blk.entries.items():
                    ent[(a + toff, b + off)] = p
            if j in layout[n - 1]:
                blk = RingMatrix.identity(ring, F.rank(j)).kron(G.diff(n - j))
                toff = layout[n - 1][j][0]
                neg = j % 2 == 1
                for (a, b), p in blk.entries.items():
                    ent[(a + toff, b + off)] = -p if neg else p
        diffs[n] = RingMatrix(ring, ranks[n - 1], ranks[n], ent, reduce=False)
    return FreeComplex(ring, ranks, diffs, check=False)


def tensor_layout(F, G, n):
    """{j: (offset, size)} describing the blocks of (F (x) G)_n."""
    blocks, _ = _blocks(F, G, n)
    return {j: (off, s) for j, off, s in blocks}


def tensor_map(f, g):
    """f (x) g : G1 (x) G2 -> F1 (x) F2 (degree-zero maps carry no sign)."""
    ring = f.ring
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    comps = {}
    for n in src.ranks:
        if not tgt.rank(n):
            continue
        sl = tensor_layout(f.source, g.source, n)
        tl = tensor_layout(f.target, g.target, n)
        ent = {}
        for j, (soff, _) in sl.items():
            if j not in tl:
                continue
            toff = tl[j][0]
            blk = f.comp(j).kron(g.comp(n - j))
            for (a, b), p in blk.entries.items():
                ent[(a + toff, b + soff)] = p
        comps[n] = RingMatrix(ring, tgt.rank(n), src.rank(n), ent, reduce=False)
    return ChainMap(src, tgt, comps, check=False)


def tensor_power_complex(F, n):
    if n < 0:
        raise DataError("negative tensor power")
    out = free_module(F.ring)
    for k in range(n):
        out = F if k == 0 else tensor(out, F)
    return out


def tensor_power(f, n):
    """Left-associated n-fold tensor power of f; n = 0 gives the identity of R."""
    if n < 0:
        raise DataError("negative tensor power")
    if n == 0:
        return identity_map(free_module(f.ring))
    out = f
    for _ in range(n - 1):
        out = tensor_map(out, f)
    return out


def hom_complex(F, G):
    """Hom(F, G) realized as F* (x) G."""
    return tensor(dual(F), G)


# -- truncation -------------------------------------------------------------------------

@dataclass
class Truncation:
    """F_{<d} --inclusion--> F --surjection--> F_{>=d}."""

    sub: FreeComplex
    inclusion: ChainMap
    quotient: FreeComplex
    surjection: ChainMap


def _restrict(F, keep):
    ranks = {n: r for n, r in F.ranks.items() if keep(n)}
    diffs = {n: M for n, M in F.diffs.items() if keep(n) and keep(n - 1)}
    return FreeComplex(F.ring, ranks, diffs, check=False)


def truncate_below(F, d):
    ring = F.ring
    sub = _restrict(F, lambda n: n < d)
    quo = _restrict(F, lambda n: n >= d)
    inc = ChainMap(sub, F, {n: RingMatrix.identity(ring, r) for n, r in sub.ranks.items()}, check=False)
    sur = ChainMap(F, quo, {n: RingMatrix.identity(ring, r) for n, r in quo.ranks.items()}, check=False)
    return Truncation(sub, inc, quo, sur)


# -- minimization -------------------------------------------------------------------------

@dataclass
class Minimization:
    """Minimal complex with homotopy-inverse maps to_min: F -> M and from_min: M -> F."""

    complex: FreeComplex
    to_min: ChainMap
    from_min: ChainMap
    pivots: int


def _unit_inverse(ring, phi):
    """Inverse of phi in R, or None if phi is not a unit."""
    if phi.is_constant():
        return ring.const(ring.field.inv(phi.constant_term()))
    X = solve_linear(RingMatrix(ring, 1, 1, {(0, 0): phi}), RingMatrix.identity(ring, 1))
    return None if X is None else X[0, 0]


def _find_pivot(diffs):
    """A unit-candidate entry of some differential: constant entries first, then sparse ones."""
    best = None
    for n in sorted(diffs):
        for (i, j), p in diffs[n].entries.items():
            if not p.constant_term():
                continue
            score = (0 if p.is_constant() else 1, len(p.terms), n, i, j)
            if best is None or score < best[0]:
                best = (score, n, i, j)
    return best


def _drop(M, rows=None, cols=None):
    keep_r = [r for r in range(M.rows) if r != rows]
    keep_c = [c for c in range(M.cols) if c != cols]
    return M.submatrix(keep_r, keep_c)


def minimize(F):
    """Split off unit entries of the differentials until all entries lie in the maximal ideal."""
    ring = F.ring
    ranks = dict(F.ranks)
    diffs = {n: F.diff(n) for n in F.ranks if n - 1 in F.ranks}
    to = {n: RingMatrix.identity(ring, r) for n, r in ranks.items()}
    back = {n: RingMatrix.identity(ring, r) for n, r in ranks.items()}
    pivots = 0
    while True:
        found = _find_pivot(diffs)
        if found is None:
            break
        _, n, i, j = found
        d = diffs[n]
        phi = d[i, j]
        inv = _unit_inverse(ring, phi)
        if inv is None:
            raise NotLocalError(f"differential entry {phi} has a nonzero constant term but is not a unit")
        # d_n = [[phi, delta], [gamma, D]] with row i / column j split off
        delta = _drop(d.submatrix([i], list(range(d.cols))), cols=j)
        gamma = _drop(d.submatrix(list(range(d.rows)), [j]), rows=i)
        D = _drop(d, rows=i, cols=j)
        new_d = D - (gamma @ delta).scale(inv)
        # maps F_old -> F_new
        p_n = _drop(RingMatrix.identity(ring, d.cols), rows=j)
        p_m = RingMatrix.hstack(ring, d.rows - 1,
                                [gamma.scale(-inv), RingMatrix.identity(ring, d.rows - 1)])
        # reorder columns of p_m so column i is the pivot row position
        order = list(range(1, i + 1)) + [0] + list(range(i + 1, d.rows))
        p_m = p_m.submatrix(list(range(d.rows - 1)), order)
        # maps F_new -> F_old
        q_n = RingMatrix.vstack(ring, d.cols - 1, [delta.scale(-inv), RingMatrix.identity(ring, d.cols - 1)])
        order_n = list(range(1, j + 1)) + [0] + list(range(j + 1, d.cols))
        q_n = q_n.submatrix(order_n, list(range(d.cols - 1)))
        q_m = _drop(RingMatrix.identity(ring, d.rows), cols=i)

        if n + 1 in diffs:
            diffs[n + 1] = _drop(diffs[n + 1], rows=j)
        if n - 1 in diffs:
            diffs[n - 1] = _drop(diffs[n - 1], cols=i)
        diffs[n] = new_d
        to[n] = p_n @ to[n]
        to[n - 1] = p_m @ to[n - 1]
        back[n] = back[n] @ q_n
        back[n - 1] = back[n - 1] @ q_m
        ranks[n] -= 1
        ranks[n - 1] -= 1
        pivots += 1
    M = FreeComplex(ring, ranks, {n: A for n, A in diffs.items() if ranks.get(n) and ranks.get(n - 1)},
                    check=False)
    to_min = ChainMap(F, M, {n: A for n, A in to.items() if A.rows and A.cols}, check=False)
    from_min = ChainMap(M, F, {n: A for n, A in back.items() if A.rows and A.cols}, check=False)
    return Minimization(M, to_min, from_min, pivots)


def is_minimal(F):
    return all(M.entries_in_max_ideal() for M in F.diffs.values())


# -- evaluation -------------------------------------------------------------------------

def evaluation_sign(a):
    return -1 if (a * (a + 1) // 2) % 2 else 1


def evaluation_map(F):
    """The evaluation e: F* (x) F -> R (R in degree 0), a chain map."""
    ring = F.ring
    src = tensor(dual(F), F)
    R = free_module(ring)
    if not src.rank(0):
        return zero_map(src, R)
    layout = tensor_layout(dual(F), F, 0)
    one = ring.one
    ent = {}
    for j, (off, _) in layout.items():
        a = -j
        r = F.rank(a)
        s = evaluation_sign(a)
        for i in range(r):
            ent[(0, off + i * r + i)] = one if s == 1 else -one
    return ChainMap(src, R, {0: RingMatrix(ring, 1, src.rank(0), ent, reduce=False)}, check=False)


@dataclass
class EvaluationReduction:
    """f' = e o (F* (x) f) and, when a factorization f = g2 o g1 through X is supplied,
    the transported factorization f' = (e o (F* (x) g2)) o (F* (x) g1) through F* (x) X."""

    reduced: ChainMap
    first: ChainMap = None
    second: ChainMap = None


def evaluation_reduce(f, factorization=None):
    F = f.target
    idF = identity_map(dual(F))
    e = evaluation_map(F)
    red = e @ tensor_map(idF, f)
    if factorization is None:
        return EvaluationReduction(red)
    g1, g2 = factorization
    if g1.target != g2.source or g2.target != F or g1.source != f.source:
        raise DataError("factorization does not compose to a map with the same ends as f")
    first = tensor_map(idF, g1)
    second = e @ tensor_map(idF, g2)
    if second @ first != red:
        raise InternalDefect("transported factorization does not reproduce f'")
    return EvaluationReduction(red, first, second)
