"""Exact base fields: the rationals and prime fields F_p."""
from __future__ import annotations

import re
from fractions import Fraction


class ModP:
    """Residue class modulo a prime, normalized to [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __pow__(self, e: int):
        if e < 0:
            return ModP(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return ModP(pow(self.v, e, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash(("ModP", self.v, self.p))

    def __repr__(self):
        return "ModP(%d, %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class Field:
    """Descriptor for the base field k: ``Field()`` is Q, ``Field(7)`` is F_7.

    Calling the field coerces ints, strings and Fractions into its scalars.
    """

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError("F_p requires a prime p, got %r" % (p,))
        self.p = p

    @classmethod
    def parse(cls, descriptor: str) -> "Field":
        d = descriptor.strip()
        if d.upper() in ("Q", "QQ"):
            return cls()
        m = re.match(r"^(?:Fp|GF|F)\s*:?\s*(\d+)$", d, re.IGNORECASE)
        if m:
            return cls(int(m.group(1)))
        raise ValueError("unknown field descriptor %r (expected Q or Fp:<prime>)" % descriptor)

    @property
    def descriptor(self) -> str:
        return "Q" if self.p is None else "Fp:%d" % self.p

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __call__(self, value):
        if self.p is None:
            if isinstance(value, ModP):
                raise TypeError("cannot coerce an F_p residue into Q")
            if isinstance(value, str):
                return self.parse_scalar(value)
            return Fraction(value)
        if isinstance(value, ModP):
            if value.p != self.p:
                raise TypeError("residue modulo %d used in F_%d" % (value.p, self.p))
            return value
        if isinstance(value, str):
            return self.parse_scalar(value)
        if isinstance(value, Fraction):
            return ModP(value.numerator, self.p) / value.denominator
        return ModP(int(value), self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse_scalar(self, text: str):
        m = _FRACTION_RE.match(text)
        if not m:
            raise ValueError("cannot parse scalar %r" % text)
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError("zero denominator in %r" % text)
        if self.p is None:
            return Fraction(num, den)
        return ModP(num, self.p) / den

    def format(self, c) -> str:
        if self.p is None:
            c = Fraction(c)
            if c.denominator == 1:
                return str(c.numerator)
            return "%d/%d" % (c.numerator, c.denominator)
        return str(self(c).v)

    def elements(self):
        """Enumerate F_p (only meaningful for finite fields)."""
        if self.p is None:
            raise ValueError("Q is infinite")
        return [ModP(i, self.p) for i in range(self.p)]

    def random(self, rng, bound: int = 5):
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return ModP(rng.randrange(self.p), self.p)

    def random_nonzero(self, rng, bound: int = 5):
        while True:
            c = self.random(rng, bound)
            if c:
                return c

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(%s)" % self.descriptor


QQ = Field()
