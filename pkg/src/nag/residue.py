"""The residue prop at the real (complex) prime: partial isometries and the
residue map a -> â carried by the eigenvalue-1 spaces of a*a and aa*."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, ensure, require
from .exact import (
    Matrix,
    SubspaceBasis,
    column_space,
    kernel_basis,
    norm_leq_one,
    projection_onto,
    subspace_intersect,
)
from .exact.scalars import QI, coerce


def _is_orth_idempotent(p: Matrix) -> bool:
    return p == p.H and p @ p == p


@dataclass(frozen=True)
class PartialIsometry:
    """A partial isometry W <- V stored as its matrix u.

    V is the column space of u*u and W the column space of uu*.
    """

    u: Matrix

    def __post_init__(self):
        self.check()

    @property
    def kind(self) -> str:
        return self.u.kind

    @property
    def shape(self):
        return self.u.shape

    @property
    def source(self) -> SubspaceBasis:
        return column_space(self.u.H @ self.u)

    @property
    def target(self) -> SubspaceBasis:
        return column_space(self.u @ self.u.H)

    @property
    def rank(self) -> int:
        return self.u.rank()

    def check(self) -> None:
        u = self.u
        src, tgt = u.H @ u, u @ u.H
        ensure(_is_orth_idempotent(src), "u*u is not a symmetric idempotent")
        ensure(_is_orth_idempotent(tgt), "uu* is not a symmetric idempotent")
        r = u.rank()
        ensure(r == src.rank() == tgt.rank(), "rank(u), rank(u*u), rank(uu*) disagree")
        for v in column_space(src).vectors:
            w = u @ v
            ensure((w.H @ w) == (v.H @ v), "u does not preserve length on its source space")

    @classmethod
    def empty(cls, n: int, m: int, kind: str = "Q") -> "PartialIsometry":
        return cls(Matrix.zeros(n, m, kind))

    @classmethod
    def identity(cls, n: int, kind: str = "Q") -> "PartialIsometry":
        return cls(Matrix.identity(n, kind))

    def to_text(self) -> str:
        return f"{self.kind}: {self.u}"


def eigenspace(a: Matrix, lam) -> SubspaceBasis:
    """ker(a*a - lam I)."""
    lam = coerce(lam, a.kind)
    return kernel_basis(a.H @ a - Matrix.identity(a.ncols, a.kind).scale(lam))


def target_eigenspace(a: Matrix, lam) -> SubspaceBasis:
    """ker(aa* - lam I)."""
    lam = coerce(lam, a.kind)
    return kernel_basis(a @ a.H - Matrix.identity(a.nrows, a.kind).scale(lam))


def residue(a: Matrix) -> PartialIsometry:
    """â: a restricted to its eigenvalue-1 space V(1), landing on W(1)."""
    if not norm_leq_one(a):
        raise PreconditionError("membership(a, Z_R) (or Z_C on Gaussian rationals): norm > 1")
    v1 = eigenspace(a, 1)
    p = projection_onto(v1)
    u = a @ p
    ensure(u.H @ u == p, "residue: u*u differs from the projection onto V(1)")
    ensure(column_space(u @ u.H) == target_eigenspace(a, 1), "residue: W(1) mismatch")
    return PartialIsometry(u)


def compose_by_intersection(u: PartialIsometry, v: PartialIsometry) -> PartialIsometry:
    """The direct construction: source v^-1(V(u) ∩ W(v)), map u∘v."""
    s = subspace_intersect(u.source, v.target)
    # v is an isometry V(v) -> W(v), so the pull-back of s ⊆ W(v) is v*(s)
    pulled = SubspaceBasis.from_vectors(v.shape[1], [v.u.H @ x for x in s.vectors], v.kind)
    return PartialIsometry(u.u @ v.u @ projection_onto(pulled))


def pi_compose(u: PartialIsometry, v: PartialIsometry) -> PartialIsometry:
    """u ∘ v, computed as the residue of the matrix product and checked
    against the subspace-intersection construction."""
    if u.kind != v.kind:
        raise PreconditionError("scalar kind is fixed per matrix; mixing Rational and GaussRational is not allowed")
    if u.shape[1] != v.shape[0]:
        raise PreconditionError("source dim of u equals target dim of v")
    out = residue(u.u @ v.u)
    ensure(out == compose_by_intersection(u, v), "pi_compose: residue of product disagrees with intersection construction")
    return out


def pi_oplus(u1: PartialIsometry, u2: PartialIsometry) -> PartialIsometry:
    if u1.kind != u2.kind:
        raise PreconditionError("same scalar kind")
    out = PartialIsometry(u1.u.oplus(u2.u))
    ensure(out.rank == u1.rank + u2.rank, "pi_oplus: ranks do not add")
    return out


def parse_partial_isometry(text: str) -> PartialIsometry:
    """Inverse of :meth:`PartialIsometry.to_text`; the kind tag is optional."""
    from .exact import parse_matrix

    kind = None
    if ":" in text:
        kind, text = text.split(":", 1)
        kind = kind.strip()
    m = parse_matrix(text)
    if kind is not None:
        if kind not in ("Q", "QI"):
            raise PreconditionError(f"unknown scalar-kind tag {kind!r}")
        m = m.as_kind(kind)
    try:
        return PartialIsometry(m)
    except Exception as exc:  # InvariantError on a non-isometry input
        raise PreconditionError("matrix is not a partial isometry") from exc


def singular_value_check(a: Matrix, lam) -> bool:
    """a maps ker(a*a - lam) bijectively onto ker(aa* - lam), for lam != 0."""
    lam = coerce(lam, a.kind)
    require(lam != 0, "lam ≠ 0")
    src, tgt = eigenspace(a, lam), target_eigenspace(a, lam)
    if src.dim != tgt.dim:
        return False
    image = SubspaceBasis.from_vectors(a.nrows, [a @ v for v in src.vectors], a.kind)
    return image == tgt
