"""Sparse univariate and Laurent polynomials over the three coordinate rings.

Ring tags:

* ``K_X``       -- k[x], exponents >= 0
* ``K_XINV``    -- k[x^-1], exponents <= 0
* ``K_LAURENT`` -- k[x, x^-1], any exponent

All three rings are Euclidean domains.  k[x^-1] arithmetic is done by
negating exponents and reusing the k[x] routines.
"""
from __future__ import annotations

import re

from .field import Field

K_X = "x"
K_XINV = "xinv"
K_LAURENT = "laurent"
RING_TAGS = (K_X, K_XINV, K_LAURENT)


class NotAUnit(ValueError):
    pass


class ZeroInput(ValueError):
    pass


class Poly:
    """Immutable sparse polynomial: ``terms`` maps exponent -> nonzero scalar."""

    __slots__ = ("ring", "field", "terms", "_hash")

    def __init__(self, ring: str, field: Field, terms=None, *, _trusted=False):
        self.ring = ring
        self.field = field
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            if terms:
                for e, c in terms.items():
                    c = field(c)
                    if c:
                        clean[int(e)] = c
            if ring == K_X and any(e < 0 for e in clean):
                raise ValueError("negative exponent in k[x] polynomial")
            if ring == K_XINV and any(e > 0 for e in clean):
                raise ValueError("positive exponent in k[x^-1] polynomial")
            self.terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, ring, field):
        return cls(ring, field, {}, _trusted=True)

    @classmethod
    def one(cls, ring, field):
        return cls(ring, field, {0: field.one}, _trusted=True)

    @classmethod
    def const(cls, ring, field, c):
        c = field(c)
        return cls(ring, field, {0: c} if c else {}, _trusted=True)

    @classmethod
    def monomial(cls, ring, field, e, c=1):
        return cls(ring, field, {e: c})

    # -- inspection -------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self):
        """Largest exponent (None for zero)."""
        return max(self.terms) if self.terms else None

    @property
    def low(self):
        """Smallest exponent (None for zero)."""
        return min(self.terms) if self.terms else None

    @property
    def span(self):
        if not self.terms:
            return None
        return max(self.terms) - min(self.terms)

    def lc(self):
        return self.terms[max(self.terms)]

    def tc(self):
        return self.terms[min(self.terms)]

    def coeff(self, e):
        return self.terms.get(e, self.field.zero)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    # -- arithmetic -------------------------------------------------------
    def _new(self, terms, ring=None):
        return Poly(ring or self.ring, self.field, terms, _trusted=True)

    def _check(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.ring, self.field, other)
        if other.ring != self.ring:
            raise TypeError("ring mismatch: %s vs %s" % (self.ring, other.ring))
        return other

    def __add__(self, other):
        other = self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field(other)
            if not c:
                return self._new({})
            return self._new({e: a * c for e, a in self.terms.items()})
        other = self._check(other)
        if not self.terms or not other.terms:
            return self._new({})
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = t.get(e)
                t[e] = c1 * c2 if s is None else s + c1 * c2
        return self._new({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        r = Poly.one(self.ring, self.field)
        base = self
        while n > 0:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def shift(self, e: int):
        """Multiply by x^e, keeping the ring tag (validated)."""
        if not e:
            return self
        t = {k + e: c for k, c in self.terms.items()}
        if self.ring == K_X and t and min(t) < 0:
            raise ValueError("shift leaves k[x]")
        if self.ring == K_XINV and t and max(t) > 0:
            raise ValueError("shift leaves k[x^-1]")
        return self._new(t)

    def scale(self, c):
        return self * c

    def as_ring(self, ring: str):
        """Reinterpret in another ring; raises if the exponents do not fit."""
        if ring == self.ring:
            return self
        if ring == K_X and self.terms and min(self.terms) < 0:
            raise ValueError("%s is not in k[x]" % self)
        if ring == K_XINV and self.terms and max(self.terms) > 0:
            raise ValueError("%s is not in k[x^-1]" % self)
        return self._new(self.terms, ring)

    def fits(self, ring: str) -> bool:
        if ring == K_X:
            return not self.terms or min(self.terms) >= 0
        if ring == K_XINV:
            return not self.terms or max(self.terms) <= 0
        return True

    def negate_exponents(self, ring=None):
        return self._new({-e: c for e, c in self.terms.items()}, ring or self.ring)

    def truncate(self, lo=None, hi=None):
        """Keep terms with lo <= e <= hi."""
        return self._new({e: c for e, c in self.terms.items()
                          if (lo is None or e >= lo) and (hi is None or e <= hi)})

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        try:
            return self.terms == Poly.const(self.ring, self.field, other).terms
        except (TypeError, ValueError):
            return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted((e, hash(c)) for e, c in self.terms.items())))
        return self._hash

    # -- formatting -------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return "Poly(%s, %s)" % (self.ring, format_poly(self))

    def to_json(self):
        return {str(e): self.field.format(c) for e, c in sorted(self.terms.items())}


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        s = p.field.format(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        if e == 0:
            mono = s
        else:
            xe = "x" if e == 1 else "x^%d" % e
            mono = xe if s == "1" else "%s*%s" % (s, xe)
        if not parts:
            parts.append("-" + mono if neg else mono)
        else:
            parts.append(("- " if neg else "+ ") + mono)
    return " ".join(parts)


_TERM_RE = re.compile(r"([+-]?)\s*([^+-]+)")


def parse_poly(text: str, ring: str, field: Field) -> Poly:
    """Parse strings such as ``"x^2 - 3/2*x^-1 + 1"``."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    # protect negative exponents from the term splitter
    s = s.replace("^-", "^~")
    if s[0] not in "+-":
        s = "+" + s
    terms = {}
    pos = 0
    for m in re.finditer(r"([+-])([^+-]+)", s):
        if m.start() != pos:
            raise ValueError("cannot parse polynomial %r" % text)
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).replace("^~", "^-")
        if "x" in body:
            coef_part, _, exp_part = body.partition("x")
            coef_part = coef_part.rstrip("*")
            if exp_part:
                if not exp_part.startswith("^"):
                    raise ValueError("bad exponent in %r" % text)
                e = int(exp_part[1:])
            else:
                e = 1
            c = field.parse_scalar(coef_part) if coef_part else field.one
        else:
            e = 0
            c = field.parse_scalar(body)
        c = c * sign
        terms[e] = terms.get(e, field.zero) + c
    if pos != len(s):
        raise ValueError("cannot parse polynomial %r" % text)
    return Poly(ring, field, terms)


def poly_from_json(obj, ring: str, field: Field) -> Poly:
    if isinstance(obj, Poly):
        return obj.as_ring(ring)
    if isinstance(obj, dict):
        return Poly(ring, field, {int(e): field(c) if not isinstance(c, str) else field.parse_scalar(c)
                                  for e, c in obj.items()})
    if isinstance(obj, (int,)):
        return Poly.const(ring, field, obj)
    if isinstance(obj, str):
        return parse_poly(obj, ring, field)
    raise ValueError("cannot read polynomial from %r" % (obj,))


# ---------------------------------------------------------------------------
# Euclidean structure
# ---------------------------------------------------------------------------

def _divmod_x(a: Poly, b: Poly):
    """Division with remainder in k[x]; both arguments tagged K_X."""
    if not b.terms:
        raise ZeroDivisionError("polynomial division by zero")
    field = a.field
    db = b.degree
    inv_lc = field.one / b.lc()
    r = dict(a.terms)
    q = {}
    bt = b.terms
    while r:
        dr = max(r)
        if dr < db:
            break
        c = r[dr] * inv_lc
        s = dr - db
        q[s] = c
        for e, bc in bt.items():
            k = e + s
            v = r.get(k)
            v = -c * bc if v is None else v - c * bc
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return Poly(a.ring, field, q, _trusted=True), Poly(a.ring, field, r, _trusted=True)


class Ring:
    """Euclidean operations for one ring tag."""

    def __init__(self, tag: str):
        if tag not in RING_TAGS:
            raise ValueError("unknown ring tag %r" % tag)
        self.tag = tag

    def norm(self, a: Poly) -> int:
        if self.tag == K_X:
            return a.degree
        if self.tag == K_XINV:
            return -a.low
        return a.span

    def divmod(self, a: Poly, b: Poly):
        if self.tag == K_X:
            return _divmod_x(a, b)
        if self.tag == K_XINV:
            q, r = _divmod_x(a.negate_exponents(K_X), b.negate_exponents(K_X))
            return q.negate_exponents(K_XINV), r.negate_exponents(K_XINV)
        # Laurent: strip the monomial parts, divide in k[x], restore
        if not b.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if not a.terms:
            return a, a
        la, lb = a.low, b.low
        at = Poly(K_X, a.field, {e - la: c for e, c in a.terms.items()}, _trusted=True)
        bt = Poly(K_X, b.field, {e - lb: c for e, c in b.terms.items()}, _trusted=True)
        q, r = _divmod_x(at, bt)
        q = Poly(K_LAURENT, a.field, {e + la - lb: c for e, c in q.terms.items()}, _trusted=True)
        r = Poly(K_LAURENT, a.field, {e + la: c for e, c in r.terms.items()}, _trusted=True)
        return q, r

    def divides(self, d: Poly, a: Poly) -> bool:
        if not a.terms:
            return True
        if not d.terms:
            return False
        return not self.divmod(a, d)[1].terms

    def exact_div(self, a: Poly, d: Poly) -> Poly:
        q, r = self.divmod(a, d)
        if r.terms:
            raise ArithmeticError("%s does not divide %s" % (d, a))
        return q

    def is_unit(self, a: Poly) -> bool:
        if not a.terms:
            return False
        if self.tag == K_LAURENT:
            return len(a.terms) == 1
        return len(a.terms) == 1 and 0 in a.terms

    def unit_inverse(self, u: Poly) -> Poly:
        if not self.is_unit(u):
            raise NotAUnit("%s is not a unit of %s" % (u, self.tag))
        (e, c), = u.terms.items()
        return Poly(self.tag, u.field, {-e: u.field.one / c}, _trusted=True)

    def normalizer(self, a: Poly) -> Poly:
        """Unit u such that u*a is the canonical associate of a (a != 0)."""
        f = a.field
        if self.tag == K_X:
            return Poly(K_X, f, {0: f.one / a.lc()}, _trusted=True)
        if self.tag == K_XINV:
            return Poly(K_XINV, f, {0: f.one / a.tc()}, _trusted=True)
        return Poly(K_LAURENT, f, {-a.low: f.one / a.lc()}, _trusted=True)

    def normalize(self, a: Poly) -> Poly:
        if not a.terms:
            return a
        return self.normalizer(a) * a

    def canonical_residue(self, a: Poly, d: Poly) -> Poly:
        """Canonical representative of a modulo the nonzero, non-unit d.

        k[x]: degree < deg d.  k[x^-1]: exponents in (-deg d, 0].
        Laurent: d normalized to a k[x] polynomial with nonzero constant
        term and the representative has exponents in [0, deg d).
        """
        if self.tag != K_LAURENT:
            return self.divmod(a, d)[1]
        if not a.terms:
            return a
        dn = self.normalize(d)
        dx = Poly(K_X, d.field, dn.terms, _trusted=True)
        n = dx.degree
        if n == 0:
            return Poly.zero(K_LAURENT, a.field)
        hi = a.degree
        # x^-1 mod d: d = d0 + x*g  =>  x * (-g/d0) = 1 mod d
        d0 = dx.coeff(0)
        g = Poly(K_X, d.field, {e - 1: c for e, c in dx.terms.items() if e > 0}, _trusted=True)
        xinv = g * (-(d.field.one / d0))
        # Horner over exponents from hi down to low, then multiply by x^low
        low = a.low
        acc = Poly.zero(K_X, a.field)
        x = Poly(K_X, a.field, {1: a.field.one}, _trusted=True)
        for e in range(hi, low - 1, -1):
            acc = acc * x
            c = a.terms.get(e)
            if c is not None:
                acc = acc + Poly(K_X, a.field, {0: c}, _trusted=True)
            if acc.terms and acc.degree >= n:
                acc = _divmod_x(acc, dx)[1]
        # acc represents a * x^-low
        if low < 0:
            for _ in range(-low):
                acc = _divmod_x(acc * xinv, dx)[1]
        elif low > 0:
            for _ in range(low):
                acc = _divmod_x(acc * x, dx)[1]
        return Poly(K_LAURENT, a.field, acc.terms, _trusted=True)

    def residue_window(self, d: Poly):
        """Exponents spanning the canonical residues modulo d."""
        if self.tag == K_X:
            return range(0, d.degree)
        if self.tag == K_XINV:
            return range(d.low + 1, 1)
        dn = self.normalize(d)
        return range(0, dn.degree)

    def gcd(self, a: Poly, b: Poly) -> Poly:
        while b.terms:
            a, b = b, self.divmod(a, b)[1]
        return self.normalize(a)

    def __eq__(self, other):
        return isinstance(other, Ring) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return "Ring(%s)" % self.tag


_RINGS = {t: Ring(t) for t in RING_TAGS}


def ring_of(tag: str) -> Ring:
    return _RINGS[tag]


def laurent_unit_decompose(u: Poly):
    """Return (c, e) with u = c*x^e; raises NotAUnit / ZeroInput otherwise."""
    if not u.terms:
        raise ZeroInput("zero is not a unit")
    if len(u.terms) != 1:
        raise NotAUnit("%s has %d terms; units of k[x,x^-1] are monomials" % (u, len(u.terms)))
    (e, c), = u.terms.items()
    return c, e
