"""Dense matrices of polynomials sharing one ring tag."""
from __future__ import annotations

from .field import Field
from .poly import K_LAURENT, Poly, poly_from_json, ring_of


class PolyMatrix:
    """rows x cols grid of :class:`Poly`; treated as immutable once built."""

    __slots__ = ("ring", "field", "rows", "cols", "data")

    def __init__(self, ring: str, field: Field, rows: int, cols: int, data=None):
        self.ring = ring
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            z = Poly.zero(ring, field)
            data = [[z] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("matrix data does not match %dx%d" % (rows, cols))
            for r in data:
                for p in r:
                    if p.ring != ring:
                        raise TypeError("entry %r not in ring %s" % (p, ring))
        self.data = data

    # -- constructors ---------------------------------------------------
    @classmethod
    def zeros(cls, ring, field, rows, cols):
        return cls(ring, field, rows, cols)

    @classmethod
    def identity(cls, ring, field, n):
        z, o = Poly.zero(ring, field), Poly.one(ring, field)
        return cls(ring, field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, ring, field, entries, rows=None, cols=None):
        n = len(entries)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        m = cls.zeros(ring, field, rows, cols)
        data = [list(r) for r in m.data]
        for i, e in enumerate(entries):
            data[i][i] = e
        return cls(ring, field, rows, cols, data)

    @classmethod
    def from_rows(cls, ring, field, rows, ncols=None):
        rows = [[p if isinstance(p, Poly) else poly_from_json(p, ring, field) for p in r]
                for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(ring, field, len(rows), ncols, rows)

    @classmethod
    def column(cls, ring, field, entries):
        return cls.from_rows(ring, field, [[e] for e in entries], 1)

    @classmethod
    def hstack(cls, ring, field, rows, mats):
        mats = [m for m in mats]
        for m in mats:
            if m.rows != rows:
                raise ValueError("hstack row mismatch")
        data = [[p for m in mats for p in m.data[i]] for i in range(rows)]
        return cls(ring, field, rows, sum(m.cols for m in mats), data)

    @classmethod
    def vstack(cls, ring, field, cols, mats):
        for m in mats:
            if m.cols != cols:
                raise ValueError("vstack column mismatch")
        data = [list(r) for m in mats for r in m.data]
        return cls(ring, field, len(data), cols, data)

    @classmethod
    def block_diag(cls, ring, field, mats):
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = cls.zeros(ring, field, rows, cols)
        data = [list(r) for r in out.data]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                for j in range(m.cols):
                    data[r0 + i][c0 + j] = m.data[i][j]
            r0 += m.rows
            c0 += m.cols
        return cls(ring, field, rows, cols, data)

    # -- access -----------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def col(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def row(self, i):
        return list(self.data[i])

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def submatrix(self, rows=None, cols=None):
        rows = range(self.rows) if rows is None else list(rows)
        cols = range(self.cols) if cols is None else list(cols)
        data = [[self.data[i][j] for j in cols] for i in rows]
        return PolyMatrix(self.ring, self.field, len(data), len(list(cols)), data)

    @property
    def shape(self):
        return (self.rows, self.cols)

    # -- algebra ----------------------------------------------------------
    def _like(self, data, rows=None, cols=None, ring=None):
        return PolyMatrix(ring or self.ring, self.field,
                          self.rows if rows is None else rows,
                          self.cols if cols is None else cols, data)

    def __add__(self, other):
        self._same_shape(other)
        return self._like([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        self._same_shape(other)
        return self._like([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __neg__(self):
        return self._like([[-a for a in r] for r in self.data])

    def _same_shape(self, other):
        if self.shape != other.shape or self.ring != other.ring:
            raise ValueError("shape/ring mismatch %s%s vs %s%s"
                             % (self.ring, self.shape, other.ring, other.shape))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("cannot multiply %s by %s" % (self.shape, other.shape))
        if self.ring != other.ring:
            raise TypeError("ring mismatch in product: %s vs %s" % (self.ring, other.ring))
        z = Poly.zero(self.ring, self.field)
        ocols = [other.col(j) for j in range(other.cols)]
        data = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a.terms]
            row = []
            for c in ocols:
                s = z
                for k, a in nz:
                    b = c[k]
                    if b.terms:
                        s = s + a * b
                row.append(s)
            data.append(row)
        return PolyMatrix(self.ring, self.field, self.rows, other.cols, data)

    def scale(self, c):
        """Multiply every entry by a scalar or a polynomial of the same ring."""
        return self._like([[a * c for a in r] for r in self.data])

    def transpose(self):
        return PolyMatrix(self.ring, self.field, self.cols, self.rows,
                          [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    @property
    def T(self):
        return self.transpose()

    def kron(self, other):
        if self.ring != other.ring:
            raise TypeError("ring mismatch in kron")
        rows, cols = self.rows * other.rows, self.cols * other.cols
        data = [[self.data[i // other.rows][j // other.cols] * other.data[i % other.rows][j % other.cols]
                 for j in range(cols)] for i in range(rows)]
        return PolyMatrix(self.ring, self.field, rows, cols, data)

    def as_ring(self, ring):
        if ring == self.ring:
            return self
        return PolyMatrix(ring, self.field, self.rows, self.cols,
                          [[a.as_ring(ring) for a in r] for r in self.data])

    def fits(self, ring):
        return all(a.fits(ring) for r in self.data for a in r)

    def shift(self, e):
        return self._like([[a.shift(e) for a in r] for r in self.data])

    def map(self, fn, ring=None):
        return PolyMatrix(ring or self.ring, self.field, self.rows, self.cols,
                          [[fn(a) for a in r] for r in self.data])

    def is_zero(self):
        return all(not a.terms for r in self.data for a in r)

    def is_identity(self):
        if self.rows != self.cols:
            return False
        return all((a == 1) if i == j else not a.terms
                   for i, r in enumerate(self.data) for j, a in enumerate(r))

    def min_exponent(self):
        lows = [a.low for r in self.data for a in r if a.terms]
        return min(lows) if lows else None

    def max_exponent(self):
        his = [a.degree for r in self.data for a in r if a.terms]
        return max(his) if his else None

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.shape == other.shape
                and all(a == b for r1, r2 in zip(self.data, other.data) for a, b in zip(r1, r2)))

    def __hash__(self):
        return hash((self.shape, tuple(hash(a) for r in self.data for a in r)))

    def __repr__(self):
        return "PolyMatrix(%s, %s)" % (self.ring, [[str(a) for a in r] for r in self.data])

    def to_json(self):
        return [[a.to_json() for a in r] for r in self.data]

    def determinant(self):
        """Fraction-free Bareiss elimination; exact over any of the three rings."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        ring = ring_of(self.ring)
        if n == 0:
            return Poly.one(self.ring, self.field)
        a = [list(r) for r in self.data]
        sign = 1
        prev = Poly.one(self.ring, self.field)
        for k in range(n - 1):
            if not a[k][k].terms:
                for i in range(k + 1, n):
                    if a[i][k].terms:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return Poly.zero(self.ring, self.field)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                    a[i][j] = ring.exact_div(num, prev)
            prev = a[k][k]
        d = a[n - 1][n - 1]
        return d if sign > 0 else -d


def to_laurent(m: PolyMatrix) -> PolyMatrix:
    return m.as_ring(K_LAURENT)


def matrix_from_json(obj, ring, field, rows=None, cols=None):
    """Row-major nested lists of polynomials (JSON maps or strings)."""
    if isinstance(obj, PolyMatrix):
        return obj.as_ring(ring)
    if not obj:
        return PolyMatrix.zeros(ring, field, rows or 0, cols or 0)
    m = PolyMatrix.from_rows(ring, field, obj)
    if rows is not None and m.rows != rows:
        raise ValueError("expected %d rows, got %d" % (rows, m.rows))
    if cols is not None and m.cols != cols:
        raise ValueError("expected %d columns, got %d" % (cols, m.cols))
    return m
