"""The compactified spectrum of Z: points, opens, sections over opens, the
global-sections enumeration, Kronecker's eigenvalue check, and local zeta
factors."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .concrete import SignedPartialPerm, enumerate_partial_perms
from .errors import PreconditionError, ensure, require
from .exact import Matrix, char_poly, norm_leq_one, p_integral
from .exact.scalars import Q
from .numtheory import is_prime, prime_divisors
from .poly import CycloFactorization, cyclotomic_factor
from .witt import WittElement, class_of


@dataclass(frozen=True)
class ArithPoint:
    """(0), (p) or the real prime."""

    kind: str  # "generic" | "prime" | "real"
    p: int | None = None

    def __post_init__(self):
        require(self.kind in ("generic", "prime", "real"), f"unknown point kind {self.kind!r}")
        if self.kind == "prime":
            require(self.p is not None and is_prime(self.p), "FinitePrime carries a verified prime")

    @classmethod
    def generic(cls) -> "ArithPoint":
        return cls("generic")

    @classmethod
    def prime(cls, p: int) -> "ArithPoint":
        return cls("prime", p)

    @classmethod
    def real(cls) -> "ArithPoint":
        return cls("real")

    def __str__(self):
        return {"generic": "(0)", "real": "eta_R"}.get(self.kind) or f"({self.p})"


@dataclass(frozen=True)
class ComplexPlace:
    """Marker for the complex place in local_zeta."""

    def __str__(self):
        return "C"


@dataclass(frozen=True)
class ArithOpen:
    """The open set missing finitely many (p) and possibly eta_R."""

    excluded_primes: frozenset = frozenset()
    include_real: bool = True

    def __post_init__(self):
        ex = frozenset(int(p) for p in self.excluded_primes)
        for p in ex:
            require(is_prime(p), f"excluded entries must be primes, got {p}")
        object.__setattr__(self, "excluded_primes", ex)

    @classmethod
    def full(cls) -> "ArithOpen":
        return cls(frozenset(), True)

    @classmethod
    def parse(cls, exclude: str, real: str) -> "ArithOpen":
        """From the CLI pair ``--exclude 2,3,5 --real yes|no``."""
        ex = [int(x) for x in exclude.split(",") if x.strip()] if exclude else []
        if real not in ("yes", "no"):
            raise PreconditionError("--real takes yes or no")
        return cls(frozenset(ex), real == "yes")

    def is_subset_of(self, other: "ArithOpen") -> bool:
        return self.excluded_primes >= other.excluded_primes and (not self.include_real or other.include_real)

    def to_dict(self):
        return {"exclude": sorted(self.excluded_primes), "real": self.include_real}


def open_contains(u: ArithOpen, x: ArithPoint) -> bool:
    if x.kind == "generic":
        return True
    if x.kind == "prime":
        return x.p not in u.excluded_primes
    return u.include_real


def section_membership(a: Matrix, u: ArithOpen) -> bool:
    """a ∘ Z_p^m ⊆ Z_p^n for every (p) in U, and a ∘ Z_R^m ⊆ Z_R^n if eta_R is in U."""
    require(a.kind == Q, "Rational entries")
    # only primes dividing a denominator can fail integrality
    bad = set()
    for x in a.entries():
        bad.update(prime_divisors(x.denominator))
    for p in sorted(bad):
        if open_contains(u, ArithPoint.prime(p)) and not p_integral(a, p):
            return False
    if u.include_real and not norm_leq_one(a):
        return False
    return True


GLOBAL_SECTIONS_BOUND = 4


@dataclass
class GlobalSections:
    n: int
    m: int
    elements: list
    equals_Fpm: bool
    enumerated: int
    examined: int

    @property
    def count(self) -> int:
        return len(self.elements)


def global_sections(n: int, m: int, entry_bound: int = 1) -> GlobalSections:
    """Integer n x m matrices with entries in [-entry_bound, entry_bound] and norm ≤ 1.

    A matrix with a column of length > 1 cannot have norm ≤ 1 (a e_j = column j),
    so only products of short columns reach the exact norm test; every
    surviving candidate is decided by ``norm_leq_one``.
    """
    require(0 <= n <= GLOBAL_SECTIONS_BOUND and 0 <= m <= GLOBAL_SECTIONS_BOUND, "n, m ≤ 4")
    require(entry_bound >= 1, "entry_bound ≥ 1")
    vals = range(-entry_bound, entry_bound + 1)
    columns = [c for c in itertools.product(vals, repeat=n) if sum(x * x for x in c) <= 1]
    found = []
    examined = 0
    for cols in itertools.product(columns, repeat=m):
        examined += 1
        rows = [[Fraction(cols[j][i]) for j in range(m)] for i in range(n)]
        a = Matrix(n, m, rows, Q)
        if norm_leq_one(a):
            found.append(a)
    fpm = {p.to_matrix() for p in enumerate_partial_perms(n, m, signed=True)}
    return GlobalSections(n, m, found, set(found) == fpm and len(found) == len(fpm), len(vals) ** (n * m), examined)


def integer_char_poly(a: Matrix) -> list[int]:
    coeffs = char_poly(a)
    ensure(all(c.denominator == 1 for c in coeffs), "integer matrix with non-integral characteristic polynomial")
    return [int(c) for c in coeffs]


def factor_char_poly(a: SignedPartialPerm) -> CycloFactorization:
    return cyclotomic_factor(integer_char_poly(a.to_matrix()))


def kronecker_check(a) -> bool:
    """Every eigenvalue of a in F[±1]_{n,n} is zero or a root of unity.

    Also checks that the cyclotomic multiplicities agree with class_of(a).
    """
    if isinstance(a, Matrix):
        a = SignedPartialPerm.from_matrix(a)
    require(a.nrows == a.ncols, "a square, in 𝔽[±1]")
    fac = factor_char_poly(a)
    ok = fac.trivial_leftover
    if ok:
        ensure(WittElement(fac.multiplicities) == class_of(a), "cyclotomic multiplicities disagree with class_of")
    ensure(fac.expand() == integer_char_poly(a.to_matrix()), "factorization does not reproduce the polynomial")
    return ok


# Gamma and local zeta factors

_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(z: complex) -> complex:
    """Lanczos approximation (g = 7, 9 terms) with reflection for Re z < 1/2."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PreconditionError(f"pole of Γ at {z.real:g}")
    if z.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * z) * gamma(1 - z))
    z -= 1
    x = _LANCZOS[0]
    for i in range(1, _LANCZOS_G + 2):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return cmath.sqrt(2 * cmath.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


def _zeta_factor(place, s: complex) -> complex:
    if isinstance(place, ComplexPlace):
        return gamma(s)
    if place.kind == "real":
        return 2 ** (s / 2) * gamma(s / 2)
    if place.kind == "prime":
        den = 1 - complex(place.p) ** (-s)
        if abs(den) < 1e-300:
            raise PreconditionError(f"pole of (1 − p^−s)⁻¹ at s = {s}")
        return 1 / den
    raise PreconditionError("local zeta is defined at (p), eta_R and the complex place")


def local_zeta(place, s: complex, normalized: bool = False) -> complex:
    """zeta_p(s) = (1 - p^-s)^-1, zeta_R(s) = 2^(s/2) Γ(s/2), zeta_C(s) = Γ(s).

    ``normalized`` returns L(s) = zeta(s)/zeta(1), so L(1) = 1.
    """
    val = _zeta_factor(place, complex(s))
    if normalized:
        return val / _zeta_factor(place, 1)
    return val


def parse_place(token: str):
    """``p:<prime>`` or a bare prime, ``R``, ``C``."""
    t = token.strip()
    if t == "R":
        return ArithPoint.real()
    if t == "C":
        return ComplexPlace()
    if t.startswith("p:"):
        t = t[2:]
    try:
        return ArithPoint.prime(int(t))
    except ValueError as exc:
        raise PreconditionError(f"unknown place {token!r}; expected p:<prime>, R or C") from exc
