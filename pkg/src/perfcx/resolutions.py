"""Minimal free resolutions by iterated syzygies, and lifting maps through them."""

from dataclasses import dataclass

from .complex import ChainMap, FreeComplex, minimize
from .errors import DataError, InternalDefect
from .homology import ModulePresentation, homology_is_zero
from .ring import RingMatrix, solve_linear, syzygies
from .ring.linear import ColumnSpan


@dataclass
class PartialResolution:
    """F_L -> ... -> F_0 with F_0 -> module given by ``augmentation`` (module gens x rank F_0).

    ``terminated`` means the resolution was computed to its end (F_{n} = 0 for n > hi).
    """

    module: ModulePresentation
    complex: FreeComplex
    augmentation: RingMatrix
    length: int
    terminated: bool

    @classmethod
    def from_complex(cls, F, module=None, terminated=True):
        """Wrap a complex known to resolve H_0(F) (e.g. a Koszul complex on a regular sequence)."""
        ring = F.ring
        if module is None:
            module = ModulePresentation(ring, F.rank(0), F.diff(1))
        aug = RingMatrix.identity(ring, F.rank(0))
        return cls(module, F, aug, F.hi, terminated)

    def exact_in_interior(self):
        top = self.complex.hi if self.terminated else self.length - 1
        return all(homology_is_zero(self.complex, n) for n in range(1, top + 1))


def _col_degree(col, degs):
    return max((p.degree() + degs[i] for i, p in col.items()), default=0)


def _minimal_columns(cols, degs, ring, rows):
    """Greedy minimal generating subset, processing columns by increasing degree."""
    items = sorted(((_col_degree(c, degs), k, c) for k, c in enumerate(cols) if c), key=lambda t: (t[0], t[1]))
    kept, kept_degs = [], []
    for d, _, c in items:
        if kept:
            span = ColumnSpan(RingMatrix.from_columns(ring, rows, kept), track=False)
            if span.contains(c):
                continue
        kept.append(c)
        kept_degs.append(d)
    return kept, kept_degs


def minimal_resolution(M, length):
    """Length-``length`` minimal free resolution of the module M (graded input gives a minimal one)."""
    if length < 0:
        raise DataError("resolution length must be nonnegative")
    ring = M.ring
    pruned, _, kept = M.prune()
    g = pruned.ngens
    aug = RingMatrix(ring, M.ngens, g, {(kept[k], k): ring.one for k in range(g)}, reduce=False)
    ranks = {0: g} if g else {}
    diffs = {}
    degs = [0] * g
    current = pruned.relations
    terminated = False
    for n in range(1, length + 1):
        rows = ranks.get(n - 1, 0)
        if rows == 0:
            terminated = True
            break
        cols, degs = _minimal_columns(current.columns(), degs, ring, rows)
        if not cols:
            terminated = True
            break
        d = RingMatrix.from_columns(ring, rows, cols)
        ranks[n] = d.cols
        diffs[n] = d
        if n < length:
            current = syzygies(d)
    else:
        if ranks.get(length) and syzygies(diffs[length]).cols == 0:
            terminated = True
    F = FreeComplex(ring, ranks, diffs, check=False)
    m = minimize(F)
    if m.pivots:
        F = m.complex
        aug = aug @ m.from_min.comp(0) if F.rank(0) else RingMatrix.zero(ring, M.ngens, 0)
    return PartialResolution(M, F, aug, length, terminated)


def lift_through_resolution(phi0, target, source):
    """Chain map f: source -> target.complex with f_0 = phi0, built degree by degree.

    phi0 : source_0 -> target_0 must make the square with the augmentations commute
    modulo the image of the target differential.
    """
    F = target.complex if isinstance(target, PartialResolution) else target
    G = source
    ring = F.ring
    if phi0.shape != (F.rank(0), G.rank(0)):
        raise DataError(f"phi0 has shape {phi0.shape}, expected {(F.rank(0), G.rank(0))}")
    if G.lo < 0:
        raise DataError("source complex must live in nonnegative degrees")
    length = target.length if isinstance(target, PartialResolution) else F.hi
    terminated = target.terminated if isinstance(target, PartialResolution) else True
    if G.hi > length and not terminated:
        raise DataError(f"resolution length {length} is below the top degree {G.hi} of the source")
    comps = {0: phi0}
    for n in range(1, G.hi + 1):
        rhs = comps[n - 1] @ G.diff(n)
        if not F.rank(n):
            if not rhs.is_zero():
                if n == 1:
                    raise DataError("phi0 is not compatible with the augmentations")
                raise InternalDefect(f"lift obstruction at degree {n} in a resolved range")
            comps[n] = RingMatrix.zero(ring, 0, G.rank(n))
            continue
        X = solve_linear(F.diff(n), rhs)
        if X is None:
            if n == 1:
                raise DataError("phi0 is not compatible with the augmentations")
            raise InternalDefect(f"lift obstruction at degree {n} in a resolved range")
        comps[n] = X
    return ChainMap(G, F, {n: M for n, M in comps.items() if M.rows and M.cols})
