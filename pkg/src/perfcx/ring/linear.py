"""Linear algebra over R = P/J via module Groebner bases, and over fields.

Column spans are handled by a position-over-term Groebner basis of the columns
of A together with J * e_i, with division tracking.  Kernels use the augmented
module generated by (a_j, e_j) and (J e_i, 0): with the A-block positions
ranked first, the basis elements whose A-block vanishes generate the syzygies.
"""

from .groebner import ModuleGB
from .matrix import RingMatrix
from .poly import Poly
from ..errors import DataError


def _col_vec(col, offset=0):
    return {(i + offset, e): c for i, p in col.items() for e, c in p.terms.items()}


class ColumnSpan:
    """The submodule of R^m spanned by the columns of A, ready for membership queries."""

    def __init__(self, A, track=True):
        ring = A.ring
        self.ring = ring
        self.A = A
        one = {ring._zero_exp: ring.field.one}
        vectors, tracks = [], []
        for j, col in enumerate(A.columns()):
            if col:
                vectors.append(_col_vec(col))
                tracks.append({j: one})
        for i in range(A.rows):
            for g in ring.gb:
                vectors.append({(i, e): c for e, c in g.terms.items()})
                tracks.append({})
        self.gb = ModuleGB(ring, vectors, tracks if track else None)
        self.track = track

    def contains(self, col):
        """``col`` is a sparse column {row: Poly}."""
        r, _ = self.gb.reduce(_col_vec(col), None, full=False)
        return not r

    def solve_column(self, col):
        r, tr = self.gb.reduce(_col_vec(col), {} if self.track else None, full=False)
        if r:
            return None
        if not self.track:
            raise DataError("ColumnSpan built without tracking cannot solve")
        F = self.ring.field
        return {j: Poly(self.ring, {e: F.neg(c) for e, c in t.items()}) for j, t in tr.items()}

    def solve(self, B):
        if B.rows != self.A.rows:
            raise DataError(f"row mismatch: A is {self.A.shape}, B is {B.shape}")
        cols = []
        for col in B.columns():
            x = self.solve_column(col)
            if x is None:
                return None
            cols.append(x)
        return RingMatrix.from_columns(self.ring, self.A.cols, cols)


def solve_linear(A, B):
    """X with A @ X == B over the quotient ring, or None when no solution exists."""
    return ColumnSpan(A).solve(B)


def in_column_span(A, B):
    span = ColumnSpan(A, track=False)
    return all(span.contains(c) for c in B.columns())


def syzygies(A):
    """Matrix whose columns generate {v : A v = 0} over the quotient ring."""
    ring = A.ring
    m, n = A.shape
    if n == 0:
        return RingMatrix(ring, 0, 0)
    one = ring.field.one
    vectors = []
    for j, col in enumerate(A.columns()):
        v = _col_vec(col)
        v[(m + j, ring._zero_exp)] = one
        vectors.append(v)
    for i in range(m):
        for g in ring.gb:
            vectors.append({(i, e): c for e, c in g.terms.items()})
    gb = ModuleGB(ring, vectors)
    seen = set()
    cols = []
    for v in gb.reduced():
        if min(pos for pos, _ in v) < m:
            continue
        col = {}
        for (pos, e), c in v.items():
            col.setdefault(pos - m, {})[e] = c
        col = {i: ring.reduce(Poly(ring, t)) for i, t in col.items()}
        col = {i: p for i, p in col.items() if p.terms}
        if not col:
            continue
        sig = frozenset((i, frozenset(p.terms.items())) for i, p in col.items())
        if sig not in seen:
            seen.add(sig)
            cols.append(col)
    return RingMatrix.from_columns(ring, n, cols)


# -- exact linear algebra over a field ---------------------------------------------

class ConstOps:
    """Scalars of the coefficient field."""

    def __init__(self, field):
        self.F = field
        self.zero = field.zero
        self.one = field.one

    def add(self, a, b):
        return self.F.add(a, b)

    def sub(self, a, b):
        return self.F.sub(a, b)

    def mul(self, a, b):
        return self.F.mul(a, b)

    def div(self, a, b):
        return self.F.div(a, b)

    def is_zero(self, a):
        return not a


class FractionOps:
    """Fraction field of a domain P/J: pairs (num, den) of normal forms."""

    def __init__(self, ring):
        self.ring = ring
        self.zero = (ring.zero, ring.one)
        self.one = (ring.one, ring.one)

    def _mk(self, n, d):
        R = self.ring
        return (R.reduce(n), R.reduce(d))

    def add(self, a, b):
        return self._mk(a[0] * b[1] + b[0] * a[1], a[1] * b[1])

    def sub(self, a, b):
        return self._mk(a[0] * b[1] - b[0] * a[1], a[1] * b[1])

    def mul(self, a, b):
        return self._mk(a[0] * b[0], a[1] * b[1])

    def div(self, a, b):
        if self.is_zero(b):
            raise ZeroDivisionError("division by zero in the fraction field")
        return self._mk(a[0] * b[1], a[1] * b[0])

    def is_zero(self, a):
        return not a[0].terms


def rref(M, ops):
    """Reduced row echelon form of a dense matrix; returns (rows, pivot columns)."""
    A = [list(r) for r in M]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if not ops.is_zero(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv_row = A[r]
        p = inv_row[c]
        A[r] = [ops.div(x, p) for x in inv_row]
        for i in range(len(A)):
            if i != r and not ops.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M, ops):
    return len(rref(M, ops)[1]) if M and M[0] else 0


def kernel_basis(M, ncols, ops):
    """Basis (list of column vectors) of the right kernel of the dense matrix M."""
    if not M:
        return [[ops.one if i == j else ops.zero for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(M, ops)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [ops.zero] * ncols
        v[f] = ops.one
        for row, pc in zip(R, piv):
            v[pc] = ops.sub(ops.zero, row[f])
        basis.append(v)
    return basis


def solve_field(cols, v, ops):
    """Coefficients expressing v in the span of ``cols`` (list of vectors), or None."""
    n = len(v)
    if not cols:
        return [] if all(ops.is_zero(x) for x in v) else None
    aug = [[cols[j][i] for j in range(len(cols))] + [v[i]] for i in range(n)]
    R, piv = rref(aug, ops)
    k = len(cols)
    if k in piv:
        return None
    x = [ops.zero] * k
    for row, pc in zip(R, piv):
        x[pc] = row[k]
    return x
