"""Sparse matrices over a quotient ring; entries are kept in normal form."""

from .poly import Poly, t_add, t_mul
from ..errors import DataError


class RingMatrix:
    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows, cols, entries=None, reduce=True):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        ent = {}
        if entries:
            for (i, j), p in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise DataError(f"entry ({i},{j}) outside a {rows}x{cols} matrix")
                p = ring.coerce(p)
                if reduce:
                    p = ring.reduce(p)
                if p.terms:
                    ent[(i, j)] = p
        self.entries = ent

    # -- constructors -------------------------------------------------------------
    @classmethod
    def zero(cls, ring, rows, cols):
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring, n):
        return cls.scalar(ring, n, 1)

    @classmethod
    def scalar(cls, ring, n, c):
        c = ring.reduce(ring.coerce(c))
        return cls(ring, n, n, {(i, i): c for i in range(n)} if c else None, reduce=False)

    @classmethod
    def from_rows(cls, ring, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DataError("ragged matrix rows")
        ent = {(i, j): x for i, r in enumerate(rows) for j, x in enumerate(r)}
        return cls(ring, len(rows), cols, ent)

    @classmethod
    def from_columns(cls, ring, rows, columns):
        """Build from a list of sparse columns ``{row: Poly}``."""
        ent = {(i, j): p for j, col in enumerate(columns) for i, p in col.items()}
        return cls(ring, rows, len(columns), ent)

    # -- access ---------------------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        return self.entries.get(ij) or self.ring.zero

    def column(self, j):
        return {i: p for (i, jj), p in self.entries.items() if jj == j}

    def columns(self):
        cols = [dict() for _ in range(self.cols)]
        for (i, j), p in self.entries.items():
            cols[j][i] = p
        return cols

    def to_rows(self):
        z = self.ring.zero
        out = [[z] * self.cols for _ in range(self.rows)]
        for (i, j), p in self.entries.items():
            out[i][j] = p
        return out

    def is_zero(self):
        return not self.entries

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.entries.keys() == other.entries.keys()
                and all(self.entries[k].terms == other.entries[k].terms for k in self.entries))

    def __hash__(self):
        return hash((self.shape, frozenset((k, hash(v)) for k, v in self.entries.items())))

    # -- arithmetic -----------------------------------------------------------------
    def _check_same(self, other):
        if self.shape != other.shape:
            raise DataError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        F = self.ring.field
        ent = {k: p.terms for k, p in self.entries.items()}
        for k, p in other.entries.items():
            ent[k] = t_add(F, ent.get(k, {}), p.terms)
        return RingMatrix(self.ring, self.rows, self.cols,
                          {k: Poly(self.ring, t) for k, t in ent.items() if t}, reduce=False)

    def __neg__(self):
        return RingMatrix(self.ring, self.rows, self.cols,
                          {k: -p for k, p in self.entries.items()}, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ring.coerce(c)
        if not self.ring.gb and c.is_constant():
            if not c.terms:
                return RingMatrix(self.ring, self.rows, self.cols)
            return RingMatrix(self.ring, self.rows, self.cols,
                              {k: p * c for k, p in self.entries.items()}, reduce=False)
        return RingMatrix(self.ring, self.rows, self.cols, {k: p * c for k, p in self.entries.items()})

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DataError(f"cannot multiply {self.shape} by {other.shape}")
        F = self.ring.field
        by_row = {}
        for (k, j), p in other.entries.items():
            by_row.setdefault(k, []).append((j, p.terms))
        acc = {}
        for (i, k), p in self.entries.items():
            for j, q in by_row.get(k, ()):
                prod = t_mul(F, p.terms, q)
                acc[(i, j)] = t_add(F, acc[(i, j)], prod) if (i, j) in acc else prod
        ring = self.ring
        return RingMatrix(ring, self.rows, other.cols,
                          {k: Poly(ring, t) for k, t in acc.items() if t}, reduce=bool(ring.gb))

    def transpose(self):
        return RingMatrix(self.ring, self.cols, self.rows,
                          {(j, i): p for (i, j), p in self.entries.items()}, reduce=False)

    @property
    def T(self):
        return self.transpose()

    def kron(self, other):
        """Kronecker product; row (i, k) -> i * other.rows + k."""
        ring = self.ring
        r2, c2 = other.rows, other.cols
        ent = {}
        for (i, j), p in self.entries.items():
            for (k, l), q in other.entries.items():
                ent[(i * r2 + k, j * c2 + l)] = p * q
        return RingMatrix(ring, self.rows * r2, self.cols * c2, ent, reduce=bool(ring.gb))

    def submatrix(self, rows, cols):
        rmap = {r: a for a, r in enumerate(rows)}
        cmap = {c: b for b, c in enumerate(cols)}
        ent = {(rmap[i], cmap[j]): p for (i, j), p in self.entries.items() if i in rmap and j in cmap}
        return RingMatrix(self.ring, len(rows), len(cols), ent, reduce=False)

    def map_entries(self, fn):
        return RingMatrix(self.ring, self.rows, self.cols,
                          {k: fn(p) for k, p in self.entries.items()})

    @staticmethod
    def hstack(ring, rows, blocks):
        ent = {}
        off = 0
        for b in blocks:
            if b.rows != rows:
                raise DataError("hstack row mismatch")
            for (i, j), p in b.entries.items():
                ent[(i, j + off)] = p
            off += b.cols
        return RingMatrix(ring, rows, off, ent, reduce=False)

    @staticmethod
    def vstack(ring, cols, blocks):
        ent = {}
        off = 0
        for b in blocks:
            if b.cols != cols:
                raise DataError("vstack column mismatch")
            for (i, j), p in b.entries.items():
                ent[(i + off, j)] = p
            off += b.rows
        return RingMatrix(ring, off, cols, ent, reduce=False)

    @staticmethod
    def block_diag(ring, blocks):
        ent = {}
        r0 = c0 = 0
        for b in blocks:
            for (i, j), p in b.entries.items():
                ent[(i + r0, j + c0)] = p
            r0 += b.rows
            c0 += b.cols
        return RingMatrix(ring, r0, c0, ent, reduce=False)

    def constant_part(self):
        """Dense list of field constants: the image modulo the maximal ideal."""
        F = self.ring.field
        out = [[F.zero] * self.cols for _ in range(self.rows)]
        for (i, j), p in self.entries.items():
            out[i][j] = p.constant_term()
        return out

    def entries_in_max_ideal(self):
        return all(p.in_max_ideal() for p in self.entries.values())

    def __repr__(self):
        return f"RingMatrix({self.rows}x{self.cols}, {self})"

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(p) for p in row) + "]" for row in self.to_rows()) + "]"
