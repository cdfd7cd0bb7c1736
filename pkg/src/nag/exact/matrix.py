"""Immutable exact matrices over Q or Q(i).

Shapes with a zero dimension are legal; they are the unit objects for the
block direct sum.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import PreconditionError, require
from .scalars import Q, QI, GaussRational, coerce, format_scalar, kind_of, one, parse_scalar, zero


class Matrix:
    __slots__ = ("nrows", "ncols", "kind", "rows", "_hash")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Sequence], kind: str = Q, _trusted: bool = False):
        require(nrows >= 0 and ncols >= 0, "matrix dimensions must be nonnegative")
        if _trusted:
            data = rows
        else:
            require(kind in (Q, QI), f"unknown scalar kind {kind!r}")
            require(len(rows) == nrows, "entries must have exactly rows*cols elements")
            data = []
            for r in rows:
                require(len(r) == ncols, "entries must have exactly rows*cols elements")
                data.append(tuple(coerce(x, kind) for x in r))
            data = tuple(data)
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], kind: str | None = None, ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if kind is None:
            kind = QI if any(isinstance(x, GaussRational) for r in rows for x in r) else Q
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows, kind)

    @classmethod
    def zeros(cls, n: int, m: int, kind: str = Q) -> "Matrix":
        z = zero(kind)
        return cls(n, m, tuple((z,) * m for _ in range(n)), kind, _trusted=True)

    @classmethod
    def identity(cls, n: int, kind: str = Q) -> "Matrix":
        z, o = zero(kind), one(kind)
        return cls(n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), kind, _trusted=True)

    @classmethod
    def diag(cls, values: Iterable, kind: str = Q) -> "Matrix":
        vals = [coerce(v, kind) for v in values]
        n = len(vals)
        z = zero(kind)
        return cls(n, n, tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), kind, _trusted=True)

    @classmethod
    def column(cls, values: Iterable, kind: str | None = None) -> "Matrix":
        return cls.from_rows([[v] for v in values], kind=kind, ncols=1)

    # basic protocol

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def entries(self):
        for r in self.rows:
            yield from r

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.kind == other.kind and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nrows, self.ncols, self.kind, self.rows)))
        return self._hash

    def __repr__(self):
        return f"Matrix.parse({str(self)!r})"

    def __str__(self):
        return format_matrix(self)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def as_kind(self, kind: str) -> "Matrix":
        if kind == self.kind:
            return self
        return Matrix(self.nrows, self.ncols, self.rows, kind)

    def _check_kind(self, other: "Matrix"):
        if self.kind != other.kind:
            raise PreconditionError("scalar kind is fixed per matrix; mixing Rational and GaussRational is not allowed")

    # algebra

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_kind(other)
        require(self.shape == other.shape, f"shape mismatch: {self.shape} + {other.shape}")
        rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix(self.nrows, self.ncols, rows, self.kind, _trusted=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_kind(other)
        require(self.shape == other.shape, f"shape mismatch: {self.shape} - {other.shape}")
        rows = tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix(self.nrows, self.ncols, rows, self.kind, _trusted=True)

    def __neg__(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols, tuple(tuple(-a for a in r) for r in self.rows), self.kind, _trusted=True)

    def scale(self, c) -> "Matrix":
        c = coerce(c, self.kind)
        return Matrix(self.nrows, self.ncols, tuple(tuple(c * a for a in r) for r in self.rows), self.kind, _trusted=True)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_kind(other)
        require(self.ncols == other.nrows, f"shapes do not compose: {self.shape} then {other.shape}")
        z = zero(self.kind)
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        rows = []
        for r in self.rows:
            out = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
            rows.append(tuple(out))
        return Matrix(self.nrows, other.ncols, tuple(rows), self.kind, _trusted=True)

    def __pow__(self, k: int) -> "Matrix":
        require(self.is_square(), "matrix power needs a square matrix")
        require(k >= 0, "matrix power needs a nonnegative exponent")
        result = Matrix.identity(self.nrows, self.kind)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self) -> "Matrix":
        rows = tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols))
        return Matrix(self.ncols, self.nrows, rows, self.kind, _trusted=True)

    @property
    def H(self) -> "Matrix":
        """Starred (conjugate) transpose; equals ``T`` for rational matrices."""
        if self.kind == Q:
            return self.T
        t = self.T
        return Matrix(t.nrows, t.ncols, tuple(tuple(x.conjugate() for x in r) for r in t.rows), self.kind, _trusted=True)

    def oplus(self, other: "Matrix") -> "Matrix":
        """Block direct sum diag(self, other)."""
        self._check_kind(other)
        z = zero(self.kind)
        top = tuple(r + (z,) * other.ncols for r in self.rows)
        bottom = tuple((z,) * self.ncols + r for r in other.rows)
        return Matrix(self.nrows + other.nrows, self.ncols + other.ncols, top + bottom, self.kind, _trusted=True)

    def kron(self, other: "Matrix") -> "Matrix":
        self._check_kind(other)
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append(tuple(a * b for a in r for b in s))
        return Matrix(self.nrows * other.nrows, self.ncols * other.ncols, tuple(rows), self.kind, _trusted=True)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        rows = tuple(r[c0:c1] for r in self.rows[r0:r1])
        return Matrix(r1 - r0, c1 - c0, rows, self.kind, _trusted=True)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_kind(other)
        require(self.nrows == other.nrows, "hstack needs equal row counts")
        rows = tuple(r + s for r, s in zip(self.rows, other.rows))
        return Matrix(self.nrows, self.ncols + other.ncols, rows, self.kind, _trusted=True)

    def trace(self):
        require(self.is_square(), "trace needs a square matrix")
        acc = zero(self.kind)
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.H

    def is_integral(self) -> bool:
        return self.kind == Q and all(x.denominator == 1 for x in self.entries())

    # elimination

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        m = [list(r) for r in self.rows]
        pivots = []
        row = 0
        for c in range(self.ncols):
            if row >= self.nrows:
                break
            p = next((i for i in range(row, self.nrows) if m[i][c]), None)
            if p is None:
                continue
            m[row], m[p] = m[p], m[row]
            pv = m[row][c]
            if pv != 1:
                m[row] = [x / pv for x in m[row]]
            for i in range(self.nrows):
                if i != row and m[i][c]:
                    f = m[i][c]
                    ri = m[i]
                    rr = m[row]
                    m[i] = [a - f * b for a, b in zip(ri, rr)]
            pivots.append(c)
            row += 1
        out = Matrix(self.nrows, self.ncols, tuple(tuple(r) for r in m), self.kind, _trusted=True)
        return out, tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def inverse(self) -> "Matrix":
        require(self.is_square(), "inverse needs a square matrix")
        n = self.nrows
        aug = self.hstack(Matrix.identity(n, self.kind))
        r, piv = aug.rref()
        if tuple(p for p in piv if p < n) != tuple(range(n)):
            raise PreconditionError("matrix is singular")
        return r.block(0, n, n, 2 * n)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    # text grammar

    @classmethod
    def parse(cls, text: str) -> "Matrix":
        return parse_matrix(text)


def format_matrix(a: Matrix) -> str:
    """``n m ; e11 e12 ; e21 e22`` (one ``;`` segment per row)."""
    parts = [f"{a.nrows} {a.ncols}"]
    for r in a.rows:
        parts.append(" ".join(format_scalar(x) for x in r))
    return " ; ".join(parts)


def parse_matrix(text: str) -> Matrix:
    segments = [s.strip() for s in text.strip().split(";")]
    head = segments[0].split()
    if len(head) != 2:
        raise PreconditionError(f"matrix text must start with 'n m': {text!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise PreconditionError(f"matrix dimensions must be integers: {text!r}") from exc
    body = segments[1:]
    if m == 0 and not any(body):
        body = [""] * n
    if len(body) != n:
        raise PreconditionError(f"expected {n} rows, found {len(body)}: {text!r}")
    tokens = [seg.split() for seg in body]
    for t in tokens:
        if len(t) != m:
            raise PreconditionError(f"entries must have exactly rows*cols elements: {text!r}")
    kind = QI if any(tok.endswith("i") for t in tokens for tok in t) else Q
    rows = [[parse_scalar(tok, force=kind) for tok in t] for t in tokens]
    return Matrix(n, m, rows, kind)


def frac_matrix(rows) -> Matrix:
    """Shorthand for a rational matrix from nested lists of ints/strings/Fractions."""
    return Matrix.from_rows([[Fraction(x) if not isinstance(x, Fraction) else x for x in r] for r in rows], kind=Q)
