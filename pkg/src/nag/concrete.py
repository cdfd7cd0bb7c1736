"""The named props F, F[±1], Z_p, Z_R, Z_C as membership predicates, their
general linear groups, and Einstein addition."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import PreconditionError, ensure, require
from .exact import GaussRational, Matrix, norm_leq_one, p_integral
from .exact.scalars import Q, QI, to_fraction
from .numtheory import is_prime

PROP_NAMES = ("F", "F_PM1", "Z_p", "Z_R", "Z_C", "MatQ", "MatZ")
_TOKENS = {"F": "F", "Fpm": "F_PM1", "ZR": "Z_R", "ZC": "Z_C", "MatQ": "MatQ", "MatZ": "MatZ"}


@dataclass(frozen=True)
class PropId:
    name: str
    p: int | None = None

    def __post_init__(self):
        require(self.name in PROP_NAMES, f"unknown prop {self.name!r}")
        if self.name == "Z_p":
            require(self.p is not None and is_prime(self.p), "p prime")
        else:
            require(self.p is None, f"{self.name} takes no parameter")

    @classmethod
    def parse(cls, token: str) -> "PropId":
        token = token.strip()
        if token.startswith("Zp:"):
            try:
                p = int(token[3:])
            except ValueError as exc:
                raise PreconditionError(f"bad prime in {token!r}") from exc
            return cls("Z_p", p)
        if token in _TOKENS:
            return cls(_TOKENS[token])
        raise PreconditionError(f"unknown prop token {token!r}; expected F, Fpm, Zp:<prime>, ZR, ZC, MatQ, MatZ")

    def __str__(self):
        if self.name == "Z_p":
            return f"Zp:{self.p}"
        return {v: k for k, v in _TOKENS.items()}[self.name]


F = PropId("F")
F_PM1 = PropId("F_PM1")
Z_R = PropId("Z_R")
Z_C = PropId("Z_C")
MAT_Q = PropId("MatQ")
MAT_Z = PropId("MatZ")


def Z_p(p: int) -> PropId:
    return PropId("Z_p", p)


@dataclass(frozen=True)
class SignedPartialPerm:
    """An element of F[±1]: column c goes to ``sign * e_row`` or to 0.

    ``assign[c]`` is ``None`` or ``(row, sign)`` with 0-based rows.
    """

    nrows: int
    ncols: int
    assign: tuple

    def __post_init__(self):
        require(len(self.assign) == self.ncols, "one assignment slot per column")
        used = set()
        for a in self.assign:
            if a is None:
                continue
            r, s = a
            require(0 <= r < self.nrows and s in (1, -1), f"bad assignment {a}")
            require(r not in used, "at most one assignment per column and per row")
            used.add(r)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def rank(self) -> int:
        return sum(a is not None for a in self.assign)

    def is_unsigned(self) -> bool:
        return all(a is None or a[1] == 1 for a in self.assign)

    def to_matrix(self) -> Matrix:
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for c, a in enumerate(self.assign):
            if a is not None:
                rows[a[0]][c] = a[1]
        return Matrix(self.nrows, self.ncols, rows, Q)

    @classmethod
    def from_matrix(cls, a: Matrix) -> "SignedPartialPerm":
        require(a.kind == Q, "input not in 𝔽[±1]")
        assign = []
        used = set()
        for c in range(a.ncols):
            slot = None
            for r in range(a.nrows):
                x = a.rows[r][c]
                if x == 0:
                    continue
                if x not in (1, -1) or slot is not None or r in used:
                    raise PreconditionError("input not in 𝔽[±1]")
                slot = (r, int(x))
                used.add(r)
            assign.append(slot)
        return cls(a.nrows, a.ncols, tuple(assign))

    @classmethod
    def identity(cls, n: int) -> "SignedPartialPerm":
        return cls(n, n, tuple((i, 1) for i in range(n)))

    def compose(self, other: "SignedPartialPerm") -> "SignedPartialPerm":
        """self ∘ other (apply other first)."""
        require(self.ncols == other.nrows, "shape mismatch")
        out = []
        for a in other.assign:
            if a is None or self.assign[a[0]] is None:
                out.append(None)
            else:
                r, s = self.assign[a[0]]
                out.append((r, s * a[1]))
        return SignedPartialPerm(self.nrows, other.ncols, tuple(out))

    def oplus(self, other: "SignedPartialPerm") -> "SignedPartialPerm":
        shifted = tuple(None if a is None else (a[0] + self.nrows, a[1]) for a in other.assign)
        return SignedPartialPerm(self.nrows + other.nrows, self.ncols + other.ncols, self.assign + shifted)

    def kron(self, other: "SignedPartialPerm") -> "SignedPartialPerm":
        out = []
        for a in self.assign:
            for b in other.assign:
                if a is None or b is None:
                    out.append(None)
                else:
                    out.append((a[0] * other.nrows + b[0], a[1] * b[1]))
        return SignedPartialPerm(self.nrows * other.nrows, self.ncols * other.ncols, tuple(out))

    def power(self, k: int) -> "SignedPartialPerm":
        require(self.nrows == self.ncols, "power needs a square element")
        result = SignedPartialPerm.identity(self.nrows)
        for _ in range(k):
            result = self.compose(result)
        return result

    def transpose(self) -> "SignedPartialPerm":
        out = [None] * self.nrows
        for c, a in enumerate(self.assign):
            if a is not None:
                out[a[0]] = (c, a[1])
        return SignedPartialPerm(self.ncols, self.nrows, tuple(out))


def enumerate_partial_perms(n: int, m: int, signed: bool = True) -> Iterator[SignedPartialPerm]:
    """All elements of F[±1]_{n,m} (or F_{n,m} when signed is False), in a fixed order."""
    signs = (1, -1) if signed else (1,)
    for k in range(min(n, m) + 1):
        for cols in itertools.combinations(range(m), k):
            for rows in itertools.permutations(range(n), k):
                for ss in itertools.product(signs, repeat=k):
                    assign = [None] * m
                    for c, r, s in zip(cols, rows, ss):
                        assign[c] = (r, s)
                    yield SignedPartialPerm(n, m, tuple(assign))


def _pattern_ok(a: Matrix, allowed) -> bool:
    if a.kind != Q or any(x not in allowed for x in a.entries()):
        return False
    if any(sum(1 for x in r if x) > 1 for r in a.rows):
        return False
    return all(sum(1 for r in a.rows if r[c]) <= 1 for c in range(a.ncols))


def membership(a: Matrix, prop: PropId) -> bool:
    """Is a an element of the given prop?"""
    name = prop.name
    if name == "Z_C":
        return norm_leq_one(a.as_kind(QI))
    require(a.kind == Q, f"incompatible scalar kind: {name} needs Rational entries")
    if name == "F":
        return _pattern_ok(a, (0, 1))
    if name == "F_PM1":
        return _pattern_ok(a, (0, 1, -1))
    if name == "Z_p":
        return p_integral(a, prop.p)
    if name == "Z_R":
        return norm_leq_one(a)
    if name == "MatZ":
        return a.is_integral()
    return True  # MatQ


GL_BOUND = 6


def gl_enumerate(prop: PropId, n: int, bound: int = GL_BOUND) -> list[SignedPartialPerm]:
    """All invertible elements of A_{n,n} whose inverse lies in A_{n,n}, for A = F or F[±1]."""
    require(prop.name in ("F", "F_PM1"), "GL enumeration is defined for F and F_PM1 only")
    require(0 <= n <= bound, f"n ≤ enumeration bound (default {GL_BOUND})")
    out = []
    for a in enumerate_partial_perms(n, n, signed=prop.name == "F_PM1"):
        m = a.to_matrix()
        if not m.is_invertible():
            continue
        if membership(m.inverse(), prop):
            out.append(a)
    return out


def is_gl_ZR(a: Matrix) -> bool:
    """a and a^-1 both have operator norm at most 1; asserts this matches a^t a = I."""
    require(a.kind == Q and a.is_square(), "a square, invertible over ℚ")
    if not a.is_invertible():
        raise PreconditionError("singular input")
    result = norm_leq_one(a) and norm_leq_one(a.inverse())
    ensure(result == (a.T @ a == Matrix.identity(a.nrows)), "GL_n(Z_R) = O(n) characterization disagrees")
    return result


def cayley_orthogonal(k: Matrix) -> Matrix:
    """(I - K)(I + K)^-1 for antisymmetric (skew-Hermitian) K."""
    require(k.is_square() and k.H == -k, "K square, antisymmetric (Kᵗ = −K)")
    ident = Matrix.identity(k.nrows, k.kind)
    if not (ident + k).is_invertible():
        raise PreconditionError("I + K singular")
    return (ident - k) @ (ident + k).inverse()


def random_rational(rng: random.Random, num: int = 3, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_antisymmetric(rng: random.Random, n: int) -> Matrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = random_rational(rng)
            rows[i][j], rows[j][i] = x, -x
    return Matrix(n, n, rows, Q)


def random_orthogonal(rng: random.Random, n: int) -> Matrix:
    """A rational orthogonal matrix: Cayley transform of a random antisymmetric
    matrix, with random row sign flips (Cayley alone misses eigenvalue -1)."""
    q = cayley_orthogonal(random_antisymmetric(rng, n))
    return Matrix.diag([rng.choice((1, -1)) for _ in range(n)]) @ q


CONTRACTION_VALUES = tuple(Fraction(x) for x in ("1", "-1", "1", "-1", "1/2", "-3/4", "0", "2/3"))


def random_contraction(rng: random.Random, n: int, m: int, values=CONTRACTION_VALUES) -> Matrix:
    """n x m 'diagonal' matrix with entries in [-1, 1] on the main diagonal."""
    rows = [[Fraction(0)] * m for _ in range(n)]
    for i in range(min(n, m)):
        rows[i][i] = rng.choice(values)
    return Matrix(n, m, rows, Q)


def random_ZR(rng: random.Random, n: int, m: int) -> Matrix:
    """Q_n · D · Q_m: exactly norm-bounded with rational singular values."""
    return random_orthogonal(rng, n) @ random_contraction(rng, n, m) @ random_orthogonal(rng, m)


def random_non_orthogonal_invertible(rng: random.Random, n: int) -> Matrix:
    """An invertible rational matrix that is not orthogonal."""
    while True:
        d = [Fraction(rng.choice((2, 3, 1)), rng.choice((1, 2, 3))) for _ in range(n)]
        if all(abs(x) == 1 for x in d):
            continue
        a = random_orthogonal(rng, n) @ Matrix.diag(d) @ random_orthogonal(rng, n)
        if a.is_invertible():
            return a


# Einstein addition

EINSTEIN_VARIANTS = ("real", "complex_a", "complex_b")


def einstein_add(z1, z2, variant: str = "real"):
    """(z1 + z2)/(1 + z1 z2), or the conjugated complex variants
    (z1 + conj z2)/(1 + z1 z2) [complex_a] and (z1 + z2)/(1 + z1 conj z2) [complex_b]."""
    if variant == "real":
        a, b = to_fraction(z1), to_fraction(z2)
        require(-1 <= a <= 1 and -1 <= b <= 1, "real variant: z1, z2 ∈ [−1,1]")
        den = 1 + a * b
        if den == 0:
            raise PreconditionError("vanishing denominator")
        return (a + b) / den
    if variant not in ("complex_a", "complex_b"):
        raise PreconditionError(f"variant must be one of {EINSTEIN_VARIANTS}")
    a, b = GaussRational.coerce(z1), GaussRational.coerce(z2)
    require(a.abs2() <= 1 and b.abs2() <= 1, "complex variants: GaussRational inputs in the closed unit disc")
    if variant == "complex_a":
        num, den = a + b.conjugate(), 1 + a * b
    else:
        num, den = a + b, 1 + a * b.conjugate()
    if den == 0:
        raise PreconditionError("vanishing denominator")
    return num / den


def _disc_grid():
    vals = [Fraction(k, 2) for k in (-1, 0, 1)] + [Fraction(1, 3)]
    pts = [GaussRational(x, y) for x in vals for y in vals if x * x + y * y < 1]
    return pts


def find_noncommuting_pair(variant: str):
    """First pair (z1, z2) on a small grid inside the disc where the variant is not commutative."""
    for z1, z2 in itertools.product(_disc_grid(), repeat=2):
        try:
            if einstein_add(z1, z2, variant) != einstein_add(z2, z1, variant):
                return z1, z2
        except PreconditionError:
            continue
    return None


def find_nonassociative_triple(variant: str):
    for z1, z2, z3 in itertools.product(_disc_grid(), repeat=3):
        try:
            lhs = einstein_add(einstein_add(z1, z2, variant), z3, variant)
            rhs = einstein_add(z1, einstein_add(z2, z3, variant), variant)
        except PreconditionError:
            continue
        if lhs != rhs:
            return z1, z2, z3
    return None
