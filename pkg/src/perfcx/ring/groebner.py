"""Buchberger's algorithm for ideals and for submodules of free modules.

Vectors of P^m are dicts ``{(position, exponent): coefficient}``; an ideal is the
rank-one case (position 0).  Module terms are compared position-over-term, the
lower position being larger, so that a leading block of positions can be
eliminated.  Optionally every basis element carries a *track*: its expression
``{generator index: term dict}`` in the original generators.
"""

import heapq

from ..errors import ResourceLimitError
from .poly import Poly, t_sub


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


class ModuleGB:
    """Groebner basis of the submodule generated by ``vectors``.

    The basis is not interreduced unless ``reduced()`` is called; ``reduce`` gives
    the remainder of a vector together with the tracked quotient data.
    """

    def __init__(self, ring, vectors, tracks=None, rank1=False):
        self.F = ring.field
        mkey = ring.key
        self.tkey = lambda t: (-t[0], mkey(t[1]))
        self.caps = ring.caps
        self.rank1 = rank1
        self.track = tracks is not None
        self.basis = []
        self.leads = []
        self.tracks = []
        self.by_pos = {}
        self._npairs = 0
        self._nterms = 0
        self._pending = set()
        self._heap = []
        self._counter = 0
        for k, v in enumerate(vectors):
            tr = tracks[k] if self.track else None
            v, tr = self.reduce(v, tr)
            if v:
                self._add(v, tr)
        self._run()

    # -- reduction -------------------------------------------------------------
    def _find_divisor(self, pos, exp):
        for i in self.by_pos.get(pos, ()):
            if _divides(self.leads[i][1], exp):
                return i
        return None

    def _sub_shift(self, v, g, c, q):
        F = self.F
        for (pos, e), gc in g.items():
            k = (pos, tuple(a + b for a, b in zip(e, q)))
            nv = F.sub(v.get(k, F.zero), F.mul(c, gc))
            if nv:
                v[k] = nv
            else:
                v.pop(k, None)

    def _track_sub(self, tr, i, c, q):
        F = self.F
        for gen, terms in self.tracks[i].items():
            shifted = {tuple(a + b for a, b in zip(e, q)): F.mul(c, x) for e, x in terms.items()}
            new = t_sub(F, tr.get(gen, {}), shifted)
            if new:
                tr[gen] = new
            else:
                tr.pop(gen, None)

    def reduce(self, v, tr=None, full=True):
        """Remainder of v (full or top reduction) and the updated track."""
        v = dict(v)
        tr = dict(tr) if tr is not None else ({} if self.track else None)
        rem = {}
        tkey = self.tkey
        while v:
            t = max(v, key=tkey)
            c = v[t]
            i = self._find_divisor(*t)
            if i is None:
                if not full:
                    return v, tr
                rem[t] = c
                del v[t]
                continue
            q = tuple(a - b for a, b in zip(t[1], self.leads[i][1]))
            self._sub_shift(v, self.basis[i], c, q)
            if tr is not None and self.track:
                self._track_sub(tr, i, c, q)
        return rem, tr

    # -- Buchberger loop --------------------------------------------------------
    def _add(self, v, tr):
        F = self.F
        lt = max(v, key=self.tkey)
        inv = F.inv(v[lt])
        if v[lt] != F.one:
            v = {t: F.mul(c, inv) for t, c in v.items()}
            if tr:
                tr = {g: {e: F.mul(x, inv) for e, x in terms.items()} for g, terms in tr.items()}
        idx = len(self.basis)
        self.basis.append(v)
        self.leads.append(lt)
        self.tracks.append(tr if tr is not None else {})
        self._nterms += len(v)
        if self._nterms > self.caps.max_terms:
            raise ResourceLimitError(f"Groebner basis exceeded {self.caps.max_terms} terms")
        pos, exp = lt
        for j in self.by_pos.get(pos, ()):
            ej = self.leads[j][1]
            if self.rank1 and all(a == 0 or b == 0 for a, b in zip(exp, ej)):
                continue
            lcm = tuple(max(a, b) for a, b in zip(exp, ej))
            self._pending.add((j, idx))
            self._counter += 1
            heapq.heappush(self._heap, (sum(lcm), self._counter, j, idx, lcm))
        self.by_pos.setdefault(pos, []).append(idx)

    def _criterion(self, i, j, pos, lcm):
        pend = self._pending
        for k in self.by_pos.get(pos, ()):
            if k == i or k == j:
                continue
            if not _divides(self.leads[k][1], lcm):
                continue
            if (min(i, k), max(i, k)) not in pend and (min(j, k), max(j, k)) not in pend:
                return True
        return False

    def _run(self):
        F = self.F
        while self._heap:
            _, _, i, j, lcm = heapq.heappop(self._heap)
            self._pending.discard((i, j))
            pos = self.leads[i][0]
            if self._criterion(i, j, pos, lcm):
                continue
            self._npairs += 1
            if self._npairs > self.caps.max_pairs:
                raise ResourceLimitError(f"Groebner basis exceeded {self.caps.max_pairs} S-pairs")
            qi = tuple(a - b for a, b in zip(lcm, self.leads[i][1]))
            qj = tuple(a - b for a, b in zip(lcm, self.leads[j][1]))
            s = {}
            self._sub_shift(s, self.basis[i], F.neg(F.one), qi)
            self._sub_shift(s, self.basis[j], F.one, qj)
            tr = None
            if self.track:
                tr = {}
                self._track_sub(tr, i, F.neg(F.one), qi)
                self._track_sub(tr, j, F.one, qj)
            s, tr = self.reduce(s, tr)
            if s:
                self._add(s, tr)

    # -- output -----------------------------------------------------------------
    def minimal_indices(self):
        keep = []
        for i, (pos, exp) in enumerate(self.leads):
            dominated = False
            for j, (pj, ej) in enumerate(self.leads):
                if j == i or pj != pos or not _divides(ej, exp):
                    continue
                if ej != exp or j < i:
                    dominated = True
                    break
            if not dominated:
                keep.append(i)
        return keep

    def reduced(self):
        """Reduced Groebner basis (tracks dropped), sorted by leading term."""
        keep = self.minimal_indices()
        out = []
        for i in keep:
            others = [k for k in keep if k != i]
            sub = _Sub(self, others)
            v, _ = sub.reduce(self.basis[i])
            out.append(v)
        F = self.F
        res = []
        for v in out:
            lt = max(v, key=self.tkey)
            inv = F.inv(v[lt])
            res.append({t: F.mul(c, inv) for t, c in v.items()})
        res.sort(key=lambda v: self.tkey(max(v, key=self.tkey)))
        return res


class _Sub(ModuleGB):
    """Reduction against a subset of another basis (used for interreduction)."""

    def __init__(self, parent, indices):
        self.F = parent.F
        self.tkey = parent.tkey
        self.track = False
        self.basis = parent.basis
        self.leads = parent.leads
        self.by_pos = {}
        for i in indices:
            self.by_pos.setdefault(self.leads[i][0], []).append(i)


def _as_vec(terms):
    return {(0, e): c for e, c in terms.items()}


def _as_terms(vec):
    return {e: c for (_, e), c in vec.items()}


def groebner_terms(ring, gens):
    """Reduced Groebner basis (term dicts) of the ideal of P generated by ``gens``."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    gb = ModuleGB(ring, [_as_vec(g) for g in gens], rank1=True)
    return [_as_terms(v) for v in gb.reduced()]


def reduce_terms(ring, terms, basis):
    """Full multivariate-division remainder of ``terms`` by the list ``basis``."""
    F = ring.field
    key = ring.key
    leads = []
    for g in basis:
        e = max(g, key=key)
        leads.append((e, g[e]))
    v = dict(terms)
    rem = {}
    while v:
        e = max(v, key=key)
        c = v[e]
        for (le, lc), g in zip(leads, basis):
            if _divides(le, e):
                q = tuple(a - b for a, b in zip(e, le))
                f = F.div(c, lc)
                for ge, gc in g.items():
                    k = tuple(a + b for a, b in zip(ge, q))
                    nv = F.sub(v.get(k, F.zero), F.mul(f, gc))
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
                break
        else:
            rem[e] = c
            del v[e]
    return rem


def buchberger(gens, ring):
    """Reduced Groebner basis of (gens) + quotient ideal, as a list of ``Poly``."""
    terms = [ring.coerce(g).terms for g in gens] + [g.terms for g in ring.gb]
    return [Poly(ring, t) for t in groebner_terms(ring, terms)]


def normal_form(p, basis):
    """Unique remainder of p modulo the Groebner basis ``basis``."""
    ring = p.ring
    return Poly(ring, reduce_terms(ring, p.terms, [ring.coerce(b).terms for b in basis if b]))
