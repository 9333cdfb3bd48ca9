"""Ideals of a quotient ring: membership, dimension, height, radical membership, minors."""

import math
from dataclasses import dataclass, field
from itertools import combinations

from .groebner import buchberger, normal_form
from ..errors import DataError

NEG_INF = -math.inf

EQUIDIM_CAVEAT = "height computed as dim R - dim R/I; the ring is not flagged equidimensional"


class Ideal:
    """Ideal of ``ring`` (a quotient ring); generators are stored in normal form."""

    def __init__(self, ring, gens):
        self.ring = ring
        gs = []
        for g in gens:
            g = ring.reduce(ring.coerce(g))
            if g.terms and all(g.terms != h.terms for h in gs):
                gs.append(g)
        self.gens = gs
        self._gb = None

    @property
    def gb(self):
        """Reduced Groebner basis of gens + quotient ideal (in the ambient ring)."""
        if self._gb is None:
            self._gb = buchberger(self.gens, self.ring)
        return self._gb

    def __contains__(self, p):
        return self.contains(p)

    def contains(self, p):
        return not normal_form(self.ring.coerce(p), self.gb).terms

    def is_unit(self):
        return any(g.is_constant() and g.terms for g in self.gb)

    def is_zero(self):
        return not self.gens

    def __add__(self, other):
        return Ideal(self.ring, self.gens + other.gens)

    def __le__(self, other):
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self <= other and other <= self

    def __hash__(self):
        return hash(tuple(sorted(str(g) for g in self.gb)))

    def __repr__(self):
        return f"Ideal({self})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def dim(self):
        return krull_dimension(self)

    def height(self):
        return height_of(self)

    def radical_contains(self, p):
        return radical_membership(p, self)


def ideal_membership(p, I):
    return I.contains(p)


def leading_exponents(I):
    return [g.lead()[0] for g in I.gb]


def independent_sets(lead_exps, nvars):
    """Subsets S of variable indices such that no leading monomial lives on S alone."""
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in lead_exps]
    out = []
    for size in range(nvars, -1, -1):
        for S in combinations(range(nvars), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                out.append(S)
    return out


def krull_dimension(I):
    """dim ring/I as the largest set of variables independent modulo lt(I + J)."""
    if I.is_unit():
        return NEG_INF
    leads = leading_exponents(I)
    n = I.ring.nvars
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in leads]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return NEG_INF


@dataclass
class Height:
    value: float
    caveats: list = field(default_factory=list)

    def __int__(self):
        return int(self.value)


def height_of(I):
    """Height as dim R - dim R/I, with a caveat unless the ring is flagged equidimensional."""
    ring = I.ring
    caveats = [] if ring.equidimensional else [EQUIDIM_CAVEAT]
    dR = krull_dimension(Ideal(ring, []))
    dI = krull_dimension(I)
    if dI == NEG_INF:
        return Height(math.inf, caveats)
    return Height(dR - dI, caveats)


def radical_membership(p, I):
    """p in sqrt(I), via 1 in (I, 1 - t*p) in an extra variable t."""
    ring = I.ring
    p = ring.reduce(ring.coerce(p))
    if not p.terms:
        return True
    name = "_t"
    while name in ring.variables:
        name += "_"
    big = ring.extend([name], order="degrevlex")
    t = big.var(name)
    gens = [ring.embed(g, big) for g in I.gens]
    gens.append(big.one - t * ring.embed(p, big))
    gb = buchberger(gens, big)
    return any(g.is_constant() and g.terms for g in gb)


def determinant(rows, ring):
    """Laplace expansion along the first row (exact; small sizes only)."""
    n = len(rows)
    if n == 0:
        return ring.one
    if n == 1:
        return rows[0][0]
    total = ring.zero
    for j, a in enumerate(rows[0]):
        if not a.terms:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * determinant(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def minors(A, d):
    """All d x d minors of A in (row subset, column subset) lexicographic order."""
    rows = A.to_rows()
    out = []
    for rs in combinations(range(A.rows), d):
        for cs in combinations(range(A.cols), d):
            sub = [[rows[i][j] for j in cs] for i in rs]
            out.append(A.ring.reduce(determinant(sub, A.ring)))
    return out


def minors_ideal(A, d):
    if d < 0:
        raise DataError("minor size must be nonnegative")
    if d > min(A.rows, A.cols):
        return Ideal(A.ring, [])
    return Ideal(A.ring, minors(A, d))
