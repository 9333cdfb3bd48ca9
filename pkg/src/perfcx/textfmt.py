"""Text formats for rings, complexes and chain maps.

A document is a sequence of statements::

    ring = Q[x,y] / (x*y); order = degrevlex;
    equidimensional = true;
    elements = [x^2, y^3];
    complex F { deg 0: rank 1; deg 1: rank 2; d1 = [[x, y]]; }
    map f : F -> F { c0 = [[1]]; c1 = [[1, 0], [0, 1]]; }

``#`` starts a comment.  Any other ``name = [...]`` statement is kept as a raw list
of polynomials (or a matrix, for nested lists).
"""

from dataclasses import dataclass, field

from .complex import ChainMap, FreeComplex
from .errors import DataError, ParseError
from .ring import GF, QQ, Ring, RingMatrix
from .ring.parse import parse_poly_tokens, tokenize

ORDERS = ("degrevlex", "lex", "weighted")


def _tokens(text):
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        out.extend(tokenize(line, lineno, 1))
    return out


class _Cursor:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def where(self):
        t = self.peek()
        if t:
            return t[2], t[3]
        if self.toks:
            return self.toks[-1][2], self.toks[-1][3] + 1
        return 1, 1

    def fail(self, msg):
        raise ParseError(msg, *self.where())

    def at_op(self, op):
        t = self.peek()
        return t is not None and t[0] == "OP" and t[1] == op

    def at_name(self, name=None):
        t = self.peek()
        return t is not None and t[0] == "NAME" and (name is None or t[1] == name)

    def op(self, op):
        if not self.at_op(op):
            self.fail(f"expected {op!r}")
        self.i += 1

    def name(self, expected=None):
        t = self.peek()
        if t is None or t[0] != "NAME" or (expected is not None and t[1] != expected):
            self.fail(f"expected {expected!r}" if expected else "expected a name")
        self.i += 1
        return t[1]

    def integer(self):
        neg = False
        if self.at_op("-"):
            self.i += 1
            neg = True
        t = self.peek()
        if t is None or t[0] != "INT":
            self.fail("expected an integer")
        self.i += 1
        return -t[1] if neg else t[1]

    def until(self, stops):
        """Tokens up to (not including) the first OP in ``stops`` at bracket depth 0."""
        start, depth = self.i, 0
        while True:
            t = self.peek()
            if t is None:
                self.fail(f"expected one of {' '.join(stops)}")
            if t[0] == "OP":
                if depth == 0 and t[1] in stops:
                    return self.toks[start:self.i]
                if t[1] in "([":
                    depth += 1
                elif t[1] in ")]":
                    depth -= 1
            self.i += 1


def _split_commas(toks):
    parts, cur, depth = [], [], 0
    for t in toks:
        if t[0] == "OP" and t[1] == "," and depth == 0:
            parts.append(cur)
            cur = []
            continue
        if t[0] == "OP" and t[1] in "([":
            depth += 1
        elif t[0] == "OP" and t[1] in ")]":
            depth -= 1
        cur.append(t)
    parts.append(cur)
    return parts


def _poly(ring, toks, cur):
    if not toks:
        cur.fail("empty polynomial")
    line, col = toks[-1][2], toks[-1][3] + 1
    return parse_poly_tokens(ring, toks, line, col)


# -- rings -----------------------------------------------------------------------------

def _field(cur):
    name = cur.name()
    if name in ("Q", "QQ"):
        return QQ
    if name == "GF":
        cur.op("(")
        p = cur.integer()
        cur.op(")")
    elif name.startswith("F") and name.lstrip("F_").isdigit():
        p = int(name.lstrip("F_"))
    else:
        cur.i -= 1
        cur.fail(f"unknown field {name!r} (use Q or GF(p))")
    try:
        return GF(p)
    except ValueError as exc:
        cur.fail(str(exc))


def _ring_expr(cur, stops):
    """field [vars] ( / (polys) )?  Returns (field, variables, quotient token lists)."""
    fld = _field(cur)
    cur.op("[")
    names = [cur.name()]
    while cur.at_op(","):
        cur.i += 1
        names.append(cur.name())
    cur.op("]")
    quotient = []
    if cur.at_op("/"):
        cur.i += 1
        cur.op("(")
        inner = cur.until((")",))
        cur.op(")")
        quotient = [p for p in _split_commas(inner) if p]
    if cur.peek() is not None and not (cur.peek()[0] == "OP" and cur.peek()[1] in stops):
        cur.fail("unexpected token after ring")
    return fld, names, quotient


def _build_ring(fld, names, quotient, order="degrevlex", weights=None, flags=None, cur=None):
    flags = flags or {}
    try:
        base = Ring(names, fld)
        quot = [parse_poly_tokens(base, q, q[-1][2], q[-1][3] + 1) for q in quotient]
        return Ring(names, fld, order, [dict(q.terms) for q in quot], weights,
                    flags.get("equidimensional"), flags.get("domain"))
    except ParseError:
        raise
    except DataError as exc:
        if cur is not None:
            cur.fail(str(exc))
        raise


def parse_ring(text):
    """Parse ``Q[x,y] / (x*y)`` or a full ``ring = ...; order = ...;`` header."""
    if "=" in text:
        doc = parse_document(text)
        if doc.ring is None:
            raise ParseError("no ring statement", 1, 1)
        return doc.ring
    cur = _Cursor(_tokens(text))
    fld, names, quot = _ring_expr(cur, (";",))
    return _build_ring(fld, names, quot, cur=cur)


def format_ring(ring):
    out = [f"ring = {ring};", f"order = {ring.order};"]
    if ring.weights:
        out.append("weights = [" + ", ".join(str(w) for w in ring.weights) + "];")
    if ring.quotient:
        if ring.equidimensional is not None:
            out.append(f"equidimensional = {'true' if ring.equidimensional else 'false'};")
        if ring.domain is not None:
            out.append(f"domain = {'true' if ring.domain else 'false'};")
    return " ".join(out)


# -- documents ----------------------------------------------------------------------------

@dataclass
class Document:
    ring: Ring = None
    complexes: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)

    @property
    def elements(self):
        return self.values.get("elements")

    def complex(self, name=None):
        if name is None:
            if len(self.complexes) != 1:
                raise DataError(f"expected exactly one complex, found {len(self.complexes)}")
            return next(iter(self.complexes.values()))
        if name not in self.complexes:
            raise DataError(f"no complex named {name!r}")
        return self.complexes[name]

    def map(self, name=None):
        if name is None:
            if len(self.maps) != 1:
                raise DataError(f"expected exactly one map, found {len(self.maps)}")
            return next(iter(self.maps.values()))
        if name not in self.maps:
            raise DataError(f"no map named {name!r}")
        return self.maps[name]

    def list_value(self, name):
        v = self.values.get(name)
        if v is None:
            raise DataError(f"missing statement {name} = [...]")
        return v

    def matrix_value(self, name):
        v = self.list_value(name)
        if not v or not isinstance(v[0], list):
            raise DataError(f"{name} must be a matrix [[...], ...]")
        return RingMatrix.from_rows(self.ring, v)


class _DocParser:
    def __init__(self, text, ring=None, complexes=None):
        self.cur = _Cursor(_tokens(text))
        # ``complexes`` may be a function of the ring, called once the ring is known
        self.pending = complexes if callable(complexes) else None
        self.doc = Document(ring, {} if callable(complexes) else dict(complexes or {}))
        self.header = None
        self.order = "degrevlex"
        self.weights = None
        self.flags = {}

    def ring(self):
        if self.header is not None:
            fld, names, quot, where = self.header
            self.header = None
            saved = self.cur.i
            self.cur.i = where
            self.doc.ring = _build_ring(fld, names, quot, self.order, self.weights, self.flags, self.cur)
            self.cur.i = saved
        if self.doc.ring is None:
            self.cur.fail("a ring statement must come first")
        if self.pending is not None:
            extra, self.pending = self.pending, None
            self.doc.complexes.update(extra(self.doc.ring))
        return self.doc.ring

    def parse(self):
        cur = self.cur
        while cur.peek() is not None:
            if cur.at_op(";"):
                cur.i += 1
                continue
            if cur.at_name("complex"):
                self.complex_block()
            elif cur.at_name("map"):
                self.map_block()
            else:
                self.statement()
        if self.header is not None:
            self.ring()
        return self.doc

    def statement(self):
        cur = self.cur
        key = cur.name()
        cur.op("=")
        if key == "ring":
            where = cur.i
            fld, names, quot = _ring_expr(cur, (";",))
            self.header = (fld, names, quot, where)
        elif key == "order":
            self._header_setting()
            self.order = cur.name()
            if self.order not in ORDERS:
                cur.i -= 1
                cur.fail(f"unknown monomial order {self.order!r}")
        elif key in ("equidimensional", "domain"):
            self._header_setting()
            v = cur.name()
            if v not in ("true", "false"):
                cur.i -= 1
                cur.fail("expected true or false")
            self.flags[key] = v == "true"
        elif key == "weights":
            self._header_setting()
            cur.op("[")
            self.weights = [cur.integer()]
            while cur.at_op(","):
                cur.i += 1
                self.weights.append(cur.integer())
            cur.op("]")
        else:
            self.doc.values[key] = self.value()
        if cur.peek() is not None:
            cur.op(";")

    def _header_setting(self):
        if self.header is None and self.doc.ring is not None and self.doc.complexes:
            self.cur.fail("ring settings must precede complexes and maps")

    def value(self):
        cur = self.cur
        if cur.at_op("["):
            cur.i += 1
            if cur.at_op("]"):
                cur.i += 1
                return []
            items = [self.value()]
            while cur.at_op(","):
                cur.i += 1
                items.append(self.value())
            cur.op("]")
            return items
        toks = cur.until((",", "]", ";"))
        return _poly(self.ring(), toks, cur)

    def matrix(self):
        cur = self.cur
        start = cur.where()
        v = self.value()
        if not isinstance(v, list) or any(not isinstance(r, list) for r in v):
            raise ParseError("expected a matrix [[...], ...]", *start)
        if len({len(r) for r in v}) > 1:
            raise ParseError("ragged matrix rows", *start)
        return v, start

    def _indexed(self, prefix):
        """NAME like d1 / c0, or prefix '-' INT for negative degrees."""
        cur = self.cur
        t = cur.peek()
        name = cur.name()
        if name == prefix:
            return cur.integer()
        rest = name[len(prefix):]
        if name.startswith(prefix) and rest.isdigit():
            return int(rest)
        cur.i -= 1
        cur.fail(f"expected {prefix}<degree>, got {t[1]!r}")

    def complex_block(self):
        cur = self.cur
        cur.name("complex")
        name = cur.name()
        ring = self.ring()
        cur.op("{")
        ranks, mats = {}, {}
        while not cur.at_op("}"):
            if cur.peek() is None:
                cur.fail("unterminated complex block")
            if cur.at_name("deg"):
                cur.i += 1
                n = cur.integer()
                cur.op(":")
                cur.name("rank")
                r = cur.integer()
                if r < 0:
                    cur.fail("rank must be nonnegative")
                if n in ranks:
                    cur.fail(f"degree {n} declared twice")
                ranks[n] = r
            else:
                n = self._indexed("d")
                cur.op("=")
                mats[n] = self.matrix()
            cur.op(";")
        cur.op("}")
        diffs = {}
        for n, (rows, where) in mats.items():
            r, c = ranks.get(n - 1, 0), ranks.get(n, 0)
            if len(rows) != r or (rows and len(rows[0]) != c):
                got = (len(rows), len(rows[0]) if rows else 0)
                raise ParseError(f"d{n} has shape {got}, expected {(r, c)}", *where)
            diffs[n] = RingMatrix.from_rows(ring, rows, c)
        try:
            F = FreeComplex(ring, ranks, diffs, name=name)
        except DataError as exc:
            raise ParseError(f"complex {name}: {exc}", *cur.where()) from None
        self.doc.complexes[name] = F

    def map_block(self):
        cur = self.cur
        cur.name("map")
        name = cur.name()
        cur.op(":")
        src = cur.name()
        cur.op("-")
        cur.op(">")
        tgt = cur.name()
        ring = self.ring()
        for c in (src, tgt):
            if c not in self.doc.complexes:
                cur.fail(f"unknown complex {c!r}")
        G, F = self.doc.complexes[src], self.doc.complexes[tgt]
        cur.op("{")
        comps = {}
        while not cur.at_op("}"):
            if cur.peek() is None:
                cur.fail("unterminated map block")
            n = self._indexed("c")
            cur.op("=")
            rows, where = self.matrix()
            r, c = F.rank(n), G.rank(n)
            if len(rows) != r or (rows and len(rows[0]) != c):
                got = (len(rows), len(rows[0]) if rows else 0)
                raise ParseError(f"c{n} has shape {got}, expected {(r, c)}", *where)
            comps[n] = RingMatrix.from_rows(ring, rows, c)
            cur.op(";")
        cur.op("}")
        try:
            f = ChainMap(G, F, comps)
        except DataError as exc:
            raise ParseError(f"map {name}: {exc}", *cur.where()) from None
        self.doc.maps[name] = f


def parse_document(text, ring=None, complexes=None):
    """Parse a document; ``ring`` is used when the text has no ring statement.

    ``complexes`` (a dict, or a function of the ring returning one) predefines names
    that maps may refer to.
    """
    return _DocParser(text, ring, complexes).parse()


def parse_complex(text, ring=None):
    return parse_document(text, ring).complex()


def parse_map(text, ring=None, complexes=None):
    return parse_document(text, ring, complexes).map()


# -- formatting ----------------------------------------------------------------------------

def format_matrix(M):
    rows = M.to_rows()
    return "[" + ", ".join("[" + ", ".join(str(p) for p in r) + "]" for r in rows) + "]"


def format_complex(F, name=None):
    name = name or getattr(F, "name", None) or "F"
    lines = [f"complex {name} {{"]
    for n in sorted(F.ranks):
        lines.append(f"  deg {n}: rank {F.rank(n)};")
    for n in sorted(F.diffs):
        lines.append(f"  d{n} = {format_matrix(F.diff(n))};")
    lines.append("}")
    return "\n".join(lines)


def format_map(f, name="f", source="G", target="F"):
    lines = [f"map {name} : {source} -> {target} {{"]
    for n in f.degrees():
        M = f.comp(n)
        if M.rows and M.cols and not M.is_zero():
            lines.append(f"  c{n} = {format_matrix(M)};")
    lines.append("}")
    return "\n".join(lines)


def format_document(ring, complexes=(), maps=()):
    """``complexes``: (name, F) pairs; ``maps``: (name, f, source name, target name)."""
    parts = [format_ring(ring)]
    parts += [format_complex(F, name) for name, F in complexes]
    parts += [format_map(f, name, s, t) for name, f, s, t in maps]
    return "\n".join(parts) + "\n"
