"""Sparse multivariate polynomials over an exact field and quotient rings P/J.

A ``Poly`` is an element of the ambient polynomial ring P: its arithmetic never
reduces modulo the quotient ideal.  ``Ring.reduce`` (or ``Poly.nf``) returns the
canonical normal form; every ``RingMatrix`` entry is kept in normal form.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import DataError
from .field import QQ, Field


@dataclass(frozen=True)
class Caps:
    """Resource caps for Groebner computations."""

    max_pairs: int = 10**5
    max_terms: int = 10**7


def make_order_key(order, nvars, weights=None):
    """Sort key on exponent tuples; a larger key is a larger monomial."""
    if order == "degrevlex":
        def key(e):
            return (sum(e), tuple(-a for a in reversed(e)))
    elif order == "lex":
        def key(e):
            return e
    elif order == "weighted":
        if weights is None or len(weights) != nvars:
            raise DataError("weighted order needs one weight per variable")
        w = tuple(weights)
        if any(x <= 0 for x in w):
            raise DataError("weights must be positive")

        def key(e):
            return (sum(a * b for a, b in zip(w, e)), sum(e), tuple(-a for a in reversed(e)))
    else:
        raise DataError(f"unknown monomial order {order!r}")
    return lru_cache(maxsize=None)(key)


# -- term-dict arithmetic (exponent tuple -> coefficient) -------------------------

def t_add(F, a, b):
    out = dict(a)
    for e, c in b.items():
        s = F.add(out.get(e, F.zero), c)
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def t_sub(F, a, b):
    out = dict(a)
    for e, c in b.items():
        s = F.sub(out.get(e, F.zero), c)
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def t_scale(F, a, c, shift=None):
    """c * x^shift * a."""
    if not c:
        return {}
    if shift is None:
        return {e: F.mul(v, c) for e, v in a.items()}
    return {tuple(x + y for x, y in zip(e, shift)): F.mul(v, c) for e, v in a.items()}


def t_mul(F, a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = F.add(out.get(e, F.zero), F.mul(c1, c2))
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


class Ring:
    """The quotient ring P/J of P = field[variables] by the ideal generated by ``quotient``.

    ``equidimensional`` and ``domain`` are caller-supplied certificates; for a
    polynomial ring (empty quotient) both are set automatically.
    """

    def __init__(self, variables, field=QQ, order="degrevlex", quotient=(), weights=None,
                 equidimensional=None, domain=None, caps=None):
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise DataError("duplicate variable names")
        self.nvars = len(self.variables)
        self.field = field if isinstance(field, Field) else Field(field)
        self.order = order
        self.weights = tuple(weights) if weights is not None else None
        self.key = make_order_key(order, self.nvars, weights)
        self.caps = caps or Caps()
        self._zero_exp = (0,) * self.nvars
        self.quotient = tuple(self.coerce(q) for q in quotient)
        self.quotient = tuple(q for q in self.quotient if q.terms)
        from .groebner import groebner_terms
        gb = groebner_terms(self, [q.terms for q in self.quotient])
        if any(not any(e) for t in gb for e in t):
            raise DataError("quotient ideal is the unit ideal")
        self.gb = tuple(Poly(self, t) for t in gb)
        if not self.quotient:
            equidimensional = True if equidimensional is None else equidimensional
            domain = True if domain is None else domain
        self.equidimensional = equidimensional
        self.domain = domain

    # -- identity ------------------------------------------------------------
    def _ident(self):
        return (self.variables, self.field, self.order, self.weights,
                tuple(tuple(sorted(q.terms.items())) for q in self.gb))

    def __eq__(self, other):
        return isinstance(other, Ring) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        return f"Ring({self})"

    def __str__(self):
        base = f"{self.field}[{','.join(self.variables)}]"
        if self.quotient:
            base += " / (" + ", ".join(str(q) for q in self.quotient) + ")"
        return base

    def describe(self):
        return f"ring = {self}; order = {self.order};"

    # -- element construction -----------------------------------------------
    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field(c)
        return Poly(self, {self._zero_exp: c} if c else {})

    def var(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.variables.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    @property
    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1):
        c = self.field(coeff)
        return Poly(self, {tuple(exp): c} if c else {})

    def coerce(self, x):
        if isinstance(x, Poly):
            if x.ring is self or x.ring == self:
                return x if x.ring is self else Poly(self, x.terms)
            raise DataError("polynomial from a different ring")
        if isinstance(x, str):
            from .parse import parse_poly
            return parse_poly(self, x)
        if isinstance(x, (int, Fraction)):
            return self.const(x)
        if isinstance(x, dict):
            F = self.field
            return Poly(self, {tuple(e): F(c) for e, c in x.items() if F(c)})
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    __call__ = coerce

    # -- quotient arithmetic ---------------------------------------------------
    def reduce(self, p):
        """Normal form modulo the quotient ideal."""
        p = self.coerce(p)
        if not self.gb or not p.terms:
            return p
        from .groebner import reduce_terms
        return Poly(self, reduce_terms(self, p.terms, [g.terms for g in self.gb]))

    def is_zero(self, p):
        return not self.reduce(p).terms

    def equal(self, a, b):
        return self.is_zero(self.coerce(a) - self.coerce(b))

    def max_ideal(self):
        from .ideal import Ideal
        return Ideal(self, self.gens)

    def ideal(self, gens):
        from .ideal import Ideal
        return Ideal(self, gens)

    def dim(self):
        from .ideal import Ideal
        return Ideal(self, []).dim()

    def with_order(self, order, weights=None):
        return Ring(self.variables, self.field, order, [dict(q.terms) for q in self.quotient],
                    weights, self.equidimensional, self.domain, self.caps)

    def extend(self, names, order=None, weights=None):
        """Ring with extra variables appended; quotient generators carried over."""
        names = tuple(names)
        pad = (0,) * len(names)
        quot = [{e + pad: c for e, c in q.terms.items()} for q in self.quotient]
        return Ring(self.variables + names, self.field, order or self.order, quot, weights,
                    caps=self.caps)

    def embed(self, p, target):
        """Map p into ``target`` (same field, variables a prefix of target's)."""
        pad = (0,) * (target.nvars - self.nvars)
        return Poly(target, {e + pad: c for e, c in p.terms.items()})


class Poly:
    """Element of the ambient polynomial ring, stored as {exponent tuple: coefficient}."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def _other(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise DataError("polynomials from different rings")
            return other
        return self.ring.coerce(other)

    def __add__(self, other):
        other = self._other(other)
        return Poly(self.ring, t_add(self.ring.field, self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        return Poly(self.ring, t_sub(self.ring.field, self.terms, other.terms))

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        other = self._other(other)
        return Poly(self.ring, t_mul(self.ring.field, self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, str)):
            other = self.ring.coerce(other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def nf(self):
        return self.ring.reduce(self)

    def sorted_terms(self):
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead(self):
        """(exponent, coefficient) of the leading term."""
        key = self.ring.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self):
        return self.terms.get(self.ring._zero_exp, self.ring.field.zero)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def in_max_ideal(self):
        return not self.constant_term()

    def monic(self):
        if not self.terms:
            return self
        F = self.ring.field
        inv = F.inv(self.lead()[1])
        return Poly(self.ring, {e: F.mul(c, inv) for e, c in self.terms.items()})

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        names = self.ring.variables
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (n if a == 1 else f"{n}^{a}") for n, a in zip(names, e) if a
            )
            neg = False
            if F.characteristic == 0 and c < 0:
                neg, c = True, -c
            cs = F.to_str(c)
            if mono:
                s = mono if cs == "1" else f"{cs}*{mono}"
            else:
                s = cs
            out.append(("-" if neg else "+", s))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, s in out[1:]:
            text += f" {sign} {s}"
        return text
