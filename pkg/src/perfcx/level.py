"""Semiprojective filtrations as explicit witnesses, and upper bounds for level.

A filtration of F is a list of steps F^1 <= ... <= F^l = F (F^0 = 0 is implicit).
Each step stores, per degree n, a split inclusion E_n : F^i_n -> F_n together with a
splitting S_n (S_n E_n = 1).  Steps built by the constructors here are coordinate
subspaces and also record their index sets.
"""

import math
from dataclasses import dataclass, field

from .complex import (FreeComplex, dual, minimize, span, tensor_layout, tensor)
from .errors import DataError
from .ring import RingMatrix


@dataclass
class Step:
    embed: dict                 # n -> RingMatrix rank(n) x k_n
    split: dict                 # n -> RingMatrix k_n x rank(n)
    indices: dict = None        # n -> sorted tuple of basis indices (selection steps only)

    def dims(self):
        return {n: M.cols for n, M in self.embed.items() if M.cols}


def selection_step(F, indices):
    ring = F.ring
    embed, split = {}, {}
    idx = {}
    for n in F.ranks:
        sel = tuple(sorted(indices.get(n, ())))
        idx[n] = sel
        E = RingMatrix(ring, F.rank(n), len(sel), {(i, k): ring.one for k, i in enumerate(sel)}, reduce=False)
        embed[n] = E
        split[n] = E.T
    return Step(embed, split, idx)


@dataclass
class Filtration:
    complex: FreeComplex
    steps: list

    @property
    def length(self):
        return len(self.steps)

    def step_ranks(self):
        return [{n: d for n, d in sorted(s.dims().items())} for s in self.steps]

    def is_selection(self):
        return all(s.indices is not None for s in self.steps)


@dataclass
class FiltrationCheck:
    value: bool
    failing_step: int = None
    reason: str = ""

    def __bool__(self):
        return self.value


def _mat(step, n, F, which):
    d = step.embed if which == "E" else step.split
    M = d.get(n)
    if M is None:
        k = 0
        return (RingMatrix.zero(F.ring, F.rank(n), k) if which == "E"
                else RingMatrix.zero(F.ring, k, F.rank(n)))
    return M


def validate_filtration(phi):
    """Check split inclusions, subcomplexes, nesting, zero quotient differentials, exhaustion."""
    F = phi.complex
    ring = F.ring
    if F.is_zero():
        return FiltrationCheck(True)
    if not phi.steps:
        return FiltrationCheck(False, 0, "empty filtration of a nonzero complex")
    degs = list(F.ranks)
    for i, st in enumerate(phi.steps, start=1):
        for n in degs:
            E, S = _mat(st, n, F, "E"), _mat(st, n, F, "S")
            if E.rows != F.rank(n) or S.cols != F.rank(n) or S.rows != E.cols:
                raise DataError(f"step {i} degree {n}: shape mismatch")
            if S @ E != RingMatrix.identity(ring, E.cols):
                return FiltrationCheck(False, i, f"splitting fails in degree {n}")
        prev = phi.steps[i - 2] if i > 1 else None
        for n in degs:
            E = _mat(st, n, F, "E")
            dE = F.diff(n) @ E
            # subcomplex and zero quotient differential: d(F^i) lies in F^{i-1}
            if prev is None:
                if not dE.is_zero():
                    return FiltrationCheck(False, i, f"first step has nonzero differential in degree {n}")
            else:
                Ep, Sp = _mat(prev, n - 1, F, "E"), _mat(prev, n - 1, F, "S")
                if Ep @ (Sp @ dE) != dE:
                    return FiltrationCheck(False, i, f"quotient differential nonzero in degree {n}")
                Ep_n, S_n = _mat(prev, n, F, "E"), _mat(st, n, F, "S")
                if E @ (S_n @ Ep_n) != Ep_n:
                    return FiltrationCheck(False, i, f"step {i - 1} is not contained in step {i} in degree {n}")
            En1, Sn1 = _mat(st, n - 1, F, "E"), _mat(st, n - 1, F, "S")
            if En1 @ (Sn1 @ dE) != dE:
                return FiltrationCheck(False, i, f"not a subcomplex in degree {n}")
    last = phi.steps[-1]
    for n in degs:
        E, S = _mat(last, n, F, "E"), _mat(last, n, F, "S")
        if E.cols != F.rank(n) or E @ S != RingMatrix.identity(ring, F.rank(n)):
            return FiltrationCheck(False, len(phi.steps), f"last step misses part of degree {n}")
    return FiltrationCheck(True)


def filtration_from_function(F, phi_of, length):
    """Selection filtration with F^i spanned by basis elements v with phi_of(n, j) <= i."""
    steps = []
    for i in range(1, length + 1):
        idx = {n: [j for j in range(r) if phi_of(n, j) <= i] for n, r in F.ranks.items()}
        steps.append(selection_step(F, idx))
    return Filtration(F, steps)


def _selection_function(phi):
    """For a selection filtration: (n, j) -> least i with basis vector j in F^i_n."""
    F = phi.complex
    table = {}
    for i, st in enumerate(phi.steps, start=1):
        if st.indices is None:
            raise DataError("operation needs a coordinate (selection) filtration")
        for n, sel in st.indices.items():
            for j in sel:
                table.setdefault((n, j), i)
    for n, r in F.ranks.items():
        for j in range(r):
            if (n, j) not in table:
                raise DataError("filtration does not exhaust the complex")
    return table


def span_filtration(F):
    """F^i = F_{< lo + i}; length span F."""
    if F.is_zero():
        return Filtration(F, [])
    lo = F.lo
    return filtration_from_function(F, lambda n, j: n - lo + 1, span(F))


def dual_filtration(phi):
    """F^i(P*) = Ker(P* -> (F^{l-i}P)*): in degree -n, the basis duals outside F^{l-i}_n."""
    F = phi.complex
    D = dual(F)
    l = phi.length
    table = _selection_function(phi)
    # e_j* lies in F^i(P*) iff j is not in F^{l-i}, i.e. table[j] > l - i, i.e. i >= l - table[j] + 1
    return filtration_from_function(D, lambda m, j: l - table[(-m, j)] + 1, l)


def tensor_filtration(phi, psi):
    """F^k(P (x) Q) spanned by a (x) b with phi(a) + psi(b) - 1 <= k; length l + m - 1."""
    P, Q = phi.complex, psi.complex
    C = tensor(P, Q)
    if C.is_zero():
        return Filtration(C, [])
    tp, tq = _selection_function(phi), _selection_function(psi)
    val = {}
    for n in C.ranks:
        for j, (off, _) in tensor_layout(P, Q, n).items():
            rq = Q.rank(n - j)
            for a in range(P.rank(j)):
                for b in range(rq):
                    val[(n, off + a * rq + b)] = tp[(j, a)] + tq[(n - j, b)] - 1
    return filtration_from_function(C, lambda n, j: val[(n, j)], phi.length + psi.length - 1)


def suspend_filtration(phi, s=1):
    from .complex import suspend
    F = suspend(phi.complex, s)
    steps = [selection_step(F, {n + s: sel for n, sel in st.indices.items()}) for st in phi.steps]
    return Filtration(F, steps)


def transport_filtration(phi, iso, inverse):
    """Image of a filtration of iso.source under the chain isomorphism iso (inverse given)."""
    F = iso.target
    steps = []
    for st in phi.steps:
        embed = {n: iso.comp(n) @ _mat(st, n, phi.complex, "E") for n in F.ranks}
        split = {n: _mat(st, n, phi.complex, "S") @ inverse.comp(n) for n in F.ranks}
        steps.append(Step(embed, split))
    return Filtration(F, steps)


# -- level bounds ------------------------------------------------------------------------

def longest_path_function(F):
    """phi(v) = 1 + max phi(w) over basis vectors w occurring in d(v); phi = 1 on cycles of basis."""
    phi = {}
    for n in sorted(F.ranks):
        D = F.diff(n)
        out = {}
        for (i, j), _ in D.entries.items():
            out.setdefault(j, []).append(i)
        for j in range(F.rank(n)):
            phi[(n, j)] = 1 + max((phi[(n - 1, i)] for i in out.get(j, ())), default=0)
    return phi


def path_filtration(F):
    if F.is_zero():
        return Filtration(F, [])
    phi = longest_path_function(F)
    return filtration_from_function(F, lambda n, j: phi[(n, j)], max(phi.values()))


@dataclass
class LevelBound:
    upper: float
    lower: int
    witness: Filtration
    minimized: FreeComplex
    status: str
    notes: list = field(default_factory=list)


def level_upper_bound(F, iso=None):
    """Upper bound for level_R F with a witness filtration of the minimized complex.

    The bound is the length of the longest chain of nonzero differential entries in the
    minimal complex; it never exceeds the span.  ``iso`` = (to, back), a pair of mutually
    inverse chain isomorphisms from F to another complex, lets a better-adapted basis be
    used; the witness is then transported back to F.
    """
    notes = []
    if iso is not None:
        to, back = iso
        if to.source != F or back.target != F:
            raise DataError("isomorphism hint does not start at the given complex")
        if not (to.failing_degree() is None and back.failing_degree() is None):
            raise DataError("isomorphism hint is not a pair of chain maps")
        from .complex import identity_map
        if (back @ to) != identity_map(F) or (to @ back) != identity_map(to.target):
            raise DataError("isomorphism hint maps are not mutually inverse")
        inner = level_upper_bound(to.target)
        if inner.minimized == to.target:
            witness = transport_filtration(inner.witness, back, to)
            mini = F
        else:
            witness, mini = inner.witness, inner.minimized
            notes.append("witness filtration lives on the minimized image of the hinted complex")
        notes.append("bound computed through the supplied isomorphism")
        return LevelBound(inner.upper, inner.lower, witness, mini, inner.status, inner.notes + notes)
    m = minimize(F).complex
    if m.is_zero():
        return LevelBound(0, 0, Filtration(m, []), m, "EXACT", ["zero complex: level 0, span -inf"])
    phi = path_filtration(m)
    upper = phi.length
    # a minimal complex has level 1 only when its differential vanishes
    lower = 2 if any(not D.is_zero() for D in m.diffs.values()) else 1
    status = "EXACT" if upper == lower else "UPPER_BOUND"
    return LevelBound(upper, lower, phi, m, status, notes)


def span_bound(F):
    m = minimize(F).complex
    return span(m) if not m.is_zero() else -math.inf
