"""Koszul complexes with their exterior DG algebra structure and Koszul-specific identities.

The degree-i basis of K(x_1..x_n) is the size-i subsets of {0..n-1} in lexicographic
order, and d(e_S) = sum_k (-1)^k x_{S[k]} e_{S - S[k]}; so K(x, y) has d_2 = [-y; x].
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .complex import (ChainMap, FreeComplex, direct_sum, dual, suspend, tensor, tensor_layout,
                      tensor_map, identity_map)
from .errors import DataError, InternalDefect
from .ring import Ideal, RingMatrix
from .ring.linear import ConstOps, rref


def subsets(n, k):
    return list(combinations(range(n), k))


def _index(n):
    return {S: idx for k in range(n + 1) for idx, S in enumerate(subsets(n, k))}


def wedge_sign(A, B):
    """Sign of the shuffle sorting A + B (both sorted, disjoint); 0 if they meet."""
    if set(A) & set(B):
        return 0
    inv = sum(1 for a in A for b in B if a > b)
    return -1 if inv % 2 else 1


class KoszulComplex(FreeComplex):
    """K(x_1, ..., x_n) as a FreeComplex carrying its elements and subset basis."""

    def __init__(self, ring, elements):
        xs = [ring.reduce(ring.coerce(x)) for x in elements]
        n = len(xs)
        basis = {k: subsets(n, k) for k in range(n + 1)}
        pos = _index(n)
        diffs = {}
        for k in range(1, n + 1):
            ent = {}
            for j, S in enumerate(basis[k]):
                for t, s in enumerate(S):
                    T = S[:t] + S[t + 1:]
                    ent[(pos[T], j)] = xs[s] if t % 2 == 0 else -xs[s]
            diffs[k] = RingMatrix(ring, comb(n, k - 1), comb(n, k), ent)
        super().__init__(ring, {k: comb(n, k) for k in range(n + 1)}, diffs, check=False)
        self.elements = xs
        self.n = n
        self.basis = basis
        self.position = pos

    def top(self):
        return tuple(range(self.n))


def koszul(elements, ring=None):
    if ring is None:
        ring = elements[0].ring
    return KoszulComplex(ring, elements)


def augmentation_to_quotient(K):
    """Comparison map K -> S^n R onto the top degree (identity on K_n)."""
    from .complex import free_module
    T = free_module(K.ring, 1, K.n)
    return ChainMap(K, T, {K.n: RingMatrix.identity(K.ring, 1)})


# -- systems of parameters -----------------------------------------------------------

def is_system_of_parameters(ring, elements):
    """dim R/(x) = 0 and len(x) = dim R."""
    I = Ideal(ring, elements)
    return I.dim() == 0 and len(elements) == ring.dim()


def is_partial_system_of_parameters(ring, elements):
    """dim R/(x_1..x_c) = dim R - c."""
    return Ideal(ring, elements).dim() == ring.dim() - len(elements)


# -- DG structure --------------------------------------------------------------------

@dataclass
class DGModuleStructure:
    """Action nu[(i, m)] : F_m -> F_{m+1} of the degree-one Koszul generators on F."""

    koszul: KoszulComplex
    complex: FreeComplex
    action: dict

    def nu(self, i, m):
        M = self.action.get((i, m))
        if M is None:
            return RingMatrix.zero(self.complex.ring, self.complex.rank(m + 1), self.complex.rank(m))
        return M


def self_action(K):
    """K acting on itself by left multiplication: nu_i e_S = (-1)^{#{s < i}} e_{S + i}."""
    ring = K.ring
    action = {}
    for i in range(K.n):
        for m in range(K.n):
            ent = {}
            for j, S in enumerate(K.basis[m]):
                if i in S:
                    continue
                T = tuple(sorted(S + (i,)))
                sign = wedge_sign((i,), S)
                ent[(K.position[T], j)] = ring.one if sign == 1 else -ring.one
            action[(i, m)] = RingMatrix(ring, K.rank(m + 1), K.rank(m), ent, reduce=False)
    return DGModuleStructure(K, K, action)


def suspend_action(S, s=1):
    """Action on S^s F: the generators act by (-1)^s nu."""
    neg = s % 2 == 1
    action = {(i, m + s): (-M if neg else M) for (i, m), M in S.action.items()}
    return DGModuleStructure(S.koszul, suspend(S.complex, s), action)


def sum_action(*Ss):
    K = Ss[0].koszul
    ring = K.ring
    F = direct_sum(*(S.complex for S in Ss))
    degs = set()
    for S in Ss:
        degs |= {m for (_, m) in S.action}
    action = {}
    for i in range(K.n):
        for m in degs:
            action[(i, m)] = RingMatrix.block_diag(ring, [S.nu(i, m) for S in Ss])
    return DGModuleStructure(K, F, action)


DG_GENERATION_NOTE = ("K is the exterior algebra on K_1, so the Leibniz rule and alternation on "
                      "the degree-one generators imply all DG-module axioms")


@dataclass
class DGCheck:
    value: bool
    witness: dict = None
    note: str = DG_GENERATION_NOTE

    def __bool__(self):
        return self.value


def verify_dg_module(S):
    K, F = S.koszul, S.complex
    ring = F.ring
    for (i, m), M in S.action.items():
        if not 0 <= i < K.n:
            raise DataError(f"action index {i} out of range")
        if M.shape != (F.rank(m + 1), F.rank(m)):
            raise DataError(f"nu[{i},{m}] has shape {M.shape}, expected {(F.rank(m + 1), F.rank(m))}")
    degs = range(F.lo - 1, F.hi + 1) if not F.is_zero() else range(0)
    for i in range(K.n):
        x = K.elements[i]
        for m in degs:
            if not F.rank(m):
                continue
            lhs = F.diff(m + 1) @ S.nu(i, m) + S.nu(i, m - 1) @ F.diff(m)
            if lhs != RingMatrix.scalar(ring, F.rank(m), x):
                return DGCheck(False, {"axiom": "leibniz", "generator": i, "degree": m})
    for i in range(K.n):
        for j in range(i, K.n):
            for m in degs:
                if not F.rank(m):
                    continue
                a = S.nu(i, m + 1) @ S.nu(j, m)
                if i == j:
                    if not a.is_zero():
                        return DGCheck(False, {"axiom": "square-zero", "generator": i, "degree": m})
                else:
                    b = S.nu(j, m + 1) @ S.nu(i, m)
                    if not (a + b).is_zero():
                        return DGCheck(False, {"axiom": "alternation", "generators": [i, j], "degree": m})
    return DGCheck(True)


# -- self-duality K* = S^{-n} K ------------------------------------------------------

@dataclass
class SelfDuality:
    iso: ChainMap
    inverse: ChainMap
    signs: dict


def _signed_inverse(M):
    """Inverse of a signed permutation matrix (its transpose)."""
    return M.T


def self_duality(K):
    """Contraction against the top form, K* -> S^{-n} K, with per-degree signs fixed by the squares."""
    ring, n = K.ring, K.n
    if n > 6:
        raise DataError("self-duality is only built for at most six elements")
    D = dual(K)
    T = suspend(K, -n)
    full = K.top()
    comps, signs = {}, {}
    for m in range(-n, 1):
        k = -m
        ent = {}
        for j, S in enumerate(K.basis[k]):
            C = tuple(s for s in full if s not in S)
            sgn = wedge_sign(S, C)
            ent[(K.position[C], j)] = ring.one if sgn == 1 else -ring.one
        comps[m] = RingMatrix(ring, T.rank(m), D.rank(m), ent, reduce=False)
    signs[-n] = 1
    for m in range(-n + 1, 1):
        lhs = T.diff(m) @ comps[m]
        rhs = comps[m - 1] @ D.diff(m)
        if lhs == rhs:
            signs[m] = 1
        elif lhs == -rhs:
            signs[m] = -1
            comps[m] = -comps[m]
        else:
            raise InternalDefect(f"contraction is not a chain map up to sign in degree {m}")
        # propagate: later squares compare against the already-signed component
    iso = ChainMap(D, T, comps)
    inv = ChainMap(T, D, {m: _signed_inverse(M) for m, M in comps.items()})
    if (iso @ inv) != identity_map(T) or (inv @ iso) != identity_map(D):
        raise InternalDefect("self-duality map is not invertible")
    return SelfDuality(iso, inv, signs)


# -- K (x) K = sum_i S^i K^(n choose i) -------------------------------------------------

def _ext_mul(a, b):
    """Product in the exterior algebra on constants: dicts {sorted tuple: int}."""
    out = {}
    for A, ca in a.items():
        for B, cb in b.items():
            s = wedge_sign(A, B)
            if s:
                key = tuple(sorted(A + B))
                out[key] = out.get(key, 0) + s * ca * cb
    return {k: v for k, v in out.items() if v}


@dataclass
class TensorDecomposition:
    rank_identity: bool
    ranks_tensor: dict
    ranks_sum: dict
    source: FreeComplex = None
    iso: ChainMap = None
    inverse: ChainMap = None
    summands: list = field(default_factory=list)


def _invert_constant(M):
    """Inverse of a square matrix with constant entries, via field row reduction."""
    ring = M.ring
    F = ring.field
    n = M.rows
    ops = ConstOps(F)
    A = M.constant_part()
    aug = [A[i] + [F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    R, piv = rref(aug, ops)
    if piv[:n] != list(range(n)):
        raise InternalDefect("matrix is not invertible over the constants")
    return RingMatrix.from_rows(ring, [[ring.const(R[i][n + j]) for j in range(n)] for i in range(n)])


def tensor_decomposition(K, explicit=None):
    """Rank identity for K (x) K and, for n <= 3, the explicit isomorphism sum S^|S| K -> K (x) K.

    The copy of K indexed by S maps by a |-> u_S (a (x) 1) with u_i = 1 (x) e_i - e_i (x) 1.
    """
    n, ring = K.n, K.ring
    KK = tensor(K, K)
    ranks_sum = {}
    for i in range(n + 1):
        for k in range(n + 1):
            ranks_sum[i + k] = ranks_sum.get(i + k, 0) + comb(n, i) * comb(n, k)
    ranks_sum = {d: r for d, r in ranks_sum.items() if r}
    out = TensorDecomposition(ranks_sum == KK.ranks, dict(KK.ranks), ranks_sum)
    if explicit is None:
        explicit = n <= 3
    if not explicit:
        return out
    summands = [S for k in range(n + 1) for S in subsets(n, k)]
    src = direct_sum(*(suspend(K, len(S)) for S in summands))
    u = {i: {(n + i,): 1, (i,): -1} for i in range(n)}
    comps = {}
    for m in src.ranks:
        layout = tensor_layout(K, K, m)
        ent = {}
        col = 0
        for S in summands:
            k = m - len(S)
            if not 0 <= k <= n:
                continue
            uS = {(): 1}
            for s in S:
                uS = _ext_mul(uS, u[s])
            for T in K.basis[k]:
                prod = _ext_mul(uS, {T: 1})
                for M, c in prod.items():
                    A = tuple(a for a in M if a < n)
                    B = tuple(b - n for b in M if b >= n)
                    off = layout[len(A)][0]
                    row = off + K.position[A] * K.rank(len(B)) + K.position[B]
                    ent[(row, col)] = ring.const(c)
                col += 1
        comps[m] = RingMatrix(ring, KK.rank(m), src.rank(m), ent)
    iso = ChainMap(src, KK, comps)
    inv = ChainMap(KK, src, {m: _invert_constant(M) for m, M in comps.items()})
    out.source, out.iso, out.inverse, out.summands = src, iso, inv, summands
    return out


def hom_decomposition(K):
    """Mutually inverse chain isomorphisms Hom(K, K) = K* (x) K <-> S^{-n}(sum_S S^|S| K).

    Composite of the self-duality on the first factor and the tensor decomposition; it is
    used to transport level bounds to Hom(K, K).
    """
    n = K.n
    sd = self_duality(K)
    td = tensor_decomposition(K, explicit=True)
    idK = identity_map(K)
    a = tensor_map(sd.iso, idK)          # K* (x) K -> S^{-n}K (x) K == S^{-n}(K (x) K)
    a_inv = tensor_map(sd.inverse, idK)
    target = suspend(td.source, -n)
    shifted_inv = ChainMap(a.target, target, {m - n: M for m, M in td.inverse.comps.items()})
    shifted = ChainMap(target, a.target, {m - n: M for m, M in td.iso.comps.items()})
    forward = shifted_inv @ a
    backward = a_inv @ shifted
    forward.check()
    backward.check()
    return forward, backward


# -- level --------------------------------------------------------------------------

SOP_EXACT_NOTE = ("EXACT encodes the theorem that level equals span for a Koszul complex on a "
                  "system of parameters; the lower bound is not computed independently")


@dataclass
class KoszulLevel:
    value: int
    status: str
    note: str = ""


def koszul_level(K):
    n = K.n
    if is_system_of_parameters(K.ring, K.elements):
        return KoszulLevel(n + 1, "EXACT", SOP_EXACT_NOTE)
    return KoszulLevel(n + 1, "UPPER_BOUND", "span bound; the elements are not a system of parameters")
