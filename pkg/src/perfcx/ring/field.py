"""Exact coefficient fields: the rationals and prime fields F_p."""

from fractions import Fraction


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Coefficient field of characteristic 0 (Q, as ``Fraction``) or a prime p (ints mod p)."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic=0):
        p = int(characteristic)
        if p != 0 and not (_is_prime(p) and p < 2**31):
            raise ValueError(f"characteristic must be 0 or a prime < 2^31, got {p}")
        self.characteristic = p

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, c):
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        p = self.characteristic
        if isinstance(c, str):
            c = Fraction(c)
        if p == 0:
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {c.denominator} vanishes mod {p}")
            return c.numerator * pow(c.denominator, -1, p) % p
        return int(c) % p

    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else a * b % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return 1 / a if p == 0 else pow(a, -1, p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_str(self, c):
        if self.characteristic:
            return str(c)
        c = Fraction(c)
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


QQ = Field(0)


def GF(p):
    return Field(p)
