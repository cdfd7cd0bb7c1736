"""Kernels, projections, subspace intersections, characteristic polynomials,
positive-semidefiniteness and p-adic integrality, all exact."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import ensure, require
from ..numtheory import is_prime
from .matrix import Matrix
from .scalars import QI, coerce, real_part, zero


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of K^ambient_dim stored as the nonzero rows of its RREF.

    Two bases of the same subspace have identical representations, so ``==``
    is subspace equality.
    """

    ambient_dim: int
    kind: str
    rows: tuple

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable, kind: str = "Q") -> "SubspaceBasis":
        vecs = []
        for v in vectors:
            if isinstance(v, Matrix):
                v = v.col(0) if v.ncols == 1 else v.rows[0]
            v = tuple(coerce(x, kind) for x in v)
            require(len(v) == ambient_dim, "vector length must equal the ambient dimension")
            vecs.append(v)
        if not vecs:
            return cls(ambient_dim, kind, ())
        r, piv = Matrix(len(vecs), ambient_dim, tuple(vecs), kind, _trusted=True).rref()
        return cls(ambient_dim, kind, r.rows[: len(piv)])

    @classmethod
    def full(cls, n: int, kind: str = "Q") -> "SubspaceBasis":
        return cls(n, kind, Matrix.identity(n, kind).rows)

    @classmethod
    def zero_space(cls, n: int, kind: str = "Q") -> "SubspaceBasis":
        return cls(n, kind, ())

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def vectors(self) -> list[Matrix]:
        return [Matrix(self.ambient_dim, 1, tuple((x,) for x in r), self.kind, _trusted=True) for r in self.rows]

    @property
    def matrix(self) -> Matrix:
        """ambient_dim x dim matrix whose columns are the basis vectors."""
        return Matrix(self.dim, self.ambient_dim, self.rows, self.kind, _trusted=True).T

    def contains(self, v: Sequence) -> bool:
        return SubspaceBasis.from_vectors(self.ambient_dim, list(self.rows) + [tuple(v)], self.kind).dim == self.dim

    def is_subspace_of(self, other: "SubspaceBasis") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __str__(self):
        return "span{" + ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self.rows) + "}"


def column_space(a: Matrix) -> SubspaceBasis:
    return SubspaceBasis.from_vectors(a.nrows, [a.col(j) for j in range(a.ncols)], a.kind)


def kernel_basis(m: Matrix) -> SubspaceBasis:
    """Canonical basis of {x : Mx = 0}."""
    r, piv = m.rref()
    free = [c for c in range(m.ncols) if c not in set(piv)]
    z = zero(m.kind)
    vecs = []
    for f in free:
        v = [z] * m.ncols
        v[f] = coerce(1, m.kind)
        for i, p in enumerate(piv):
            v[p] = -r.rows[i][f]
        vecs.append(v)
    basis = SubspaceBasis.from_vectors(m.ncols, vecs, m.kind)
    ensure(basis.dim == m.ncols - len(piv), "rank-nullity violated in kernel_basis")
    return basis


def char_poly(m: Matrix) -> list:
    """Coefficients of det(xI - M), leading coefficient first (monic).

    Faddeev-LeVerrier recurrence; exact over Q and Q(i).
    """
    require(m.is_square(), "char_poly needs a square matrix")
    n = m.nrows
    coeffs = [coerce(1, m.kind)]
    ident = Matrix.identity(n, m.kind)
    mk = Matrix.zeros(n, n, m.kind)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[-1])
        coeffs.append(-((m @ mk).trace()) / k)
    return coeffs


def is_psd(m: Matrix) -> bool:
    """Exact PSD test for symmetric / Hermitian M.

    With det(xI - M) = sum_k (-1)^k c_k x^(n-k), M is PSD iff every c_k >= 0.
    """
    require(m.is_square() and m.is_hermitian(), "M square, symmetric (or Hermitian for GaussRational)")
    # a negative diagonal entry is a 1x1 principal minor below zero
    if any(real_part(m.rows[i][i]) < 0 for i in range(m.nrows)):
        return False
    coeffs = char_poly(m)
    for k, c in enumerate(coeffs):
        if m.kind == QI:
            ensure(c.im == 0, "Hermitian characteristic polynomial has a non-real coefficient")
            c = c.re
        if (-c if k % 2 else c) < 0:
            return False
    return True


def norm_leq_one(a: Matrix) -> bool:
    """Operator l2-norm of a is at most 1, i.e. I - a*a is PSD."""
    return is_psd(Matrix.identity(a.ncols, a.kind) - a.H @ a)


def p_integral(a: Matrix, p: int) -> bool:
    """No entry of a has p in its denominator."""
    require(is_prime(p), "p prime")
    require(a.kind != QI, "Rational entries")
    return all(x.denominator % p for x in a.entries())


def projection_onto(b: SubspaceBasis) -> Matrix:
    """Orthogonal projection matrix onto span(b)."""
    if b.dim == 0:
        return Matrix.zeros(b.ambient_dim, b.ambient_dim, b.kind)
    bm = b.matrix
    return bm @ (bm.H @ bm).inverse() @ bm.H


def subspace_intersect(b1: SubspaceBasis, b2: SubspaceBasis) -> SubspaceBasis:
    require(b1.ambient_dim == b2.ambient_dim, "equal ambient dimensions")
    require(b1.kind == b2.kind, "scalar kind is fixed per matrix; mixing Rational and GaussRational is not allowed")
    if b1.dim == 0 or b2.dim == 0:
        return SubspaceBasis.zero_space(b1.ambient_dim, b1.kind)
    m1, m2 = b1.matrix, b2.matrix
    ker = kernel_basis(m1.hstack(-m2))
    vecs = [m1 @ v.block(0, b1.dim, 0, 1) for v in ker.vectors]
    return SubspaceBasis.from_vectors(b1.ambient_dim, vecs, b1.kind)


def det(m: Matrix):
    """Determinant via the constant term of the characteristic polynomial."""
    c = char_poly(m)[-1]
    return -c if m.nrows % 2 else c
