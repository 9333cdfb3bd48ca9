"""Tokenizer and recursive-descent parser for polynomial expressions.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := INT ['/' INT] | NAME | '(' expr ')'
"""

import re
from fractions import Fraction

from ..errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(text, line=1, col0=1):
    """List of (kind, value, line, col); kinds are INT, NAME, OP."""
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        col = col0 + m.start(m.lastindex)
        if m.group(1):
            out.append(("INT", int(m.group(1)), line, col))
        elif m.group(2):
            out.append(("NAME", m.group(2), line, col))
        else:
            out.append(("OP", m.group(3), line, col))
        pos = m.end()
    return out


class _PolyParser:
    def __init__(self, ring, tokens, line=1, col=1):
        self.ring = ring
        self.toks = tokens
        self.i = 0
        self.end = (line, col)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def where(self):
        t = self.peek()
        return (t[2], t[3]) if t else self.end

    def fail(self, msg):
        raise ParseError(msg, *self.where())

    def take_op(self, op):
        t = self.peek()
        if t and t[0] == "OP" and t[1] == op:
            self.i += 1
            return True
        return False

    def expr(self):
        neg = False
        if self.take_op("-"):
            neg = True
        else:
            self.take_op("+")
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            if self.take_op("+"):
                acc = acc + self.term()
            elif self.take_op("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self):
        acc = self.factor()
        while self.take_op("*"):
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.atom()
        if self.take_op("^"):
            t = self.peek()
            if not t or t[0] != "INT":
                self.fail("expected integer exponent")
            self.i += 1
            base = base ** t[1]
        return base

    def atom(self):
        t = self.peek()
        if t is None:
            self.fail("unexpected end of polynomial")
        kind, val = t[0], t[1]
        if kind == "INT":
            self.i += 1
            if self.take_op("/"):
                d = self.peek()
                if not d or d[0] != "INT" or d[1] == 0:
                    self.fail("expected nonzero integer denominator")
                self.i += 1
                try:
                    return self.ring.const(Fraction(val, d[1]))
                except ZeroDivisionError as exc:
                    self.fail(str(exc))
            return self.ring.const(val)
        if kind == "NAME":
            if val not in self.ring.variables:
                self.fail(f"unknown variable {val!r}")
            self.i += 1
            return self.ring.var(val)
        if self.take_op("("):
            e = self.expr()
            if not self.take_op(")"):
                self.fail("expected ')'")
            return e
        self.fail(f"unexpected token {val!r}")


def parse_poly_tokens(ring, tokens, line=1, col=1):
    p = _PolyParser(ring, tokens, line, col)
    out = p.expr()
    if p.peek() is not None:
        p.fail(f"unexpected token {p.peek()[1]!r}")
    return out


def parse_poly(ring, text, line=1, col=1):
    return parse_poly_tokens(ring, tokenize(text, line, col), line, col + len(text))
