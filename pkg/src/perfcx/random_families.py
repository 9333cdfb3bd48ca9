"""Seeded random instances for property tests, sweeps and scripts."""

import random
from dataclasses import dataclass

from .complex import FreeComplex
from .koszul import is_system_of_parameters
from .ring import RingMatrix, syzygies

DEFAULT_SEED = 20240531


@dataclass
class ComplexFamily:
    max_span: int = 3
    max_rank: int = 2
    max_degree: int = 2
    max_terms: int = 2
    unit_probability: float = 0.1
    coeff_range: int = 3
    lowest_degree: int = 0


def make_rng(seed=None):
    return random.Random(DEFAULT_SEED if seed is None else seed)


def _monomials(ring, lo, hi):
    out = []

    def rec(i, left, e):
        if i == ring.nvars - 1:
            out.append(tuple(e + [left]))
            return
        for a in range(left + 1):
            rec(i + 1, left - a, e + [a])

    for d in range(lo, hi + 1):
        if ring.nvars:
            rec(0, d, [])
    return out


def _coeff(rng, cfg, ring):
    while True:
        c = rng.randint(-cfg.coeff_range, cfg.coeff_range)
        if ring.field(c):
            return c


def random_poly(ring, rng, cfg=None, allow_unit=True):
    """Either a nonzero constant or a sum of a few monomials of degree 1..max_degree."""
    cfg = cfg or ComplexFamily()
    if allow_unit and rng.random() < cfg.unit_probability:
        return ring.const(_coeff(rng, cfg, ring))
    mons = _monomials(ring, 1, cfg.max_degree)
    p = ring.zero
    for _ in range(rng.randint(1, cfg.max_terms)):
        p = p + ring.monomial(rng.choice(mons), _coeff(rng, cfg, ring))
    return ring.reduce(p)


def random_matrix(ring, rows, cols, rng, cfg=None, density=0.7, allow_unit=True):
    cfg = cfg or ComplexFamily()
    ent = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                ent[(i, j)] = random_poly(ring, rng, cfg, allow_unit)
    return RingMatrix(ring, rows, cols, ent)


def _local_entry(p):
    """Constant or without constant term (so that minimization never needs a non-unit inverse)."""
    return p.is_constant() or not p.constant_term()


def _admissible(col, cfg):
    return all(_local_entry(p) and p.degree() <= cfg.max_degree for p in col.values())


def random_complex(ring, rng, cfg=None):
    """Bounded complex with d_{n+1} assembled from scaled syzygy columns of d_n."""
    cfg = cfg or ComplexFamily()
    lo = cfg.lowest_degree
    length = rng.randint(1, cfg.max_span)
    ranks = {lo: rng.randint(1, cfg.max_rank)}
    diffs = {}
    if length >= 2:
        r1 = rng.randint(1, cfg.max_rank)
        d = random_matrix(ring, ranks[lo], r1, rng, cfg)
        if d.is_zero():
            d = RingMatrix(ring, ranks[lo], r1, {(0, 0): random_poly(ring, rng, cfg, False)})
        ranks[lo + 1] = r1
        diffs[lo + 1] = d
    for n in range(lo + 2, lo + length):
        prev = diffs[n - 1]
        cand = [c for c in syzygies(prev).columns() if c and _admissible(c, cfg)]
        if not cand:
            break
        k = rng.randint(1, cfg.max_rank)
        cols = []
        for _ in range(k):
            c = rng.choice(cand)
            s = ring.const(_coeff(rng, cfg, ring))
            cols.append({i: p * s for i, p in c.items()})
        d = RingMatrix.from_columns(ring, prev.cols, cols)
        ranks[n] = d.cols
        diffs[n] = d
    return FreeComplex(ring, ranks, diffs)


def random_complexes(ring, count, seed=None, cfg=None):
    rng = make_rng(seed)
    return [random_complex(ring, rng, cfg) for _ in range(count)]


def random_minors_instance(ring, rng, cols=None, cfg=None, attempts=50):
    """(x, y, A) with A y = x and x a system of parameters.

    y is the list of variables followed by ``cols - nvars`` random elements of m.
    """
    cfg = cfg or ComplexFamily(unit_probability=0.3, max_degree=1)
    d = ring.dim()
    cols = ring.nvars if cols is None else cols
    if cols < ring.nvars:
        raise ValueError("cols must be at least the number of variables")
    for _ in range(attempts):
        ys = ring.gens + [random_poly(ring, rng, cfg, allow_unit=False) for _ in range(cols - ring.nvars)]
        A = random_matrix(ring, d, cols, rng, cfg, density=0.8)
        ycol = RingMatrix.from_rows(ring, [[y] for y in ys], cols=1)
        xs = [(A @ ycol)[i, 0] for i in range(d)]
        if all(x.terms for x in xs) and is_system_of_parameters(ring, xs):
            return xs, ys, A
    return None


def ghost_lemma_instance(ring, rng, c, cfg=None):
    """(F, ghosts) with c composable ghosts on a Koszul complex of a sop and level F <= c.

    The ghosts multiply by elements of the sop ideal; with c >= 2 the last one may instead
    be the projection onto the top degree, which kills homology for degree reasons.
    """
    from .complex import direct_sum, free_module, scalar_map, suspend
    from .koszul import augmentation_to_quotient, koszul
    cfg = cfg or ComplexFamily(max_degree=2)
    sop = [g ** rng.randint(1, 2) for g in ring.gens]
    K = koszul(sop, ring)
    ghosts = []
    for i in range(c):
        if i == c - 1 and c >= 2 and rng.random() < 0.5:
            ghosts.append(augmentation_to_quotient(K))
            continue
        a = ring.zero
        while not a.terms:
            a = ring.reduce(sum((s * random_poly(ring, rng, cfg) for s in sop), ring.zero))
        ghosts.append(scalar_map(K, a))
    if c == 1:
        F = direct_sum(*[suspend(free_module(ring, rng.randint(1, 2)), rng.randint(-1, 2))
                         for _ in range(rng.randint(1, 2))])
    else:
        p = random_poly(ring, rng, cfg, allow_unit=False)
        F = koszul([p], ring)
        if rng.random() < 0.5:
            F = direct_sum(F, suspend(free_module(ring), rng.randint(-1, 3)))
    return F, ghosts
