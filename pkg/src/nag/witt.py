"""The Witt ring W = ⊕ Z·phi_n on cyclotomic symbols.

phi_n stands for the Galois orbit of primitive n-th roots of unity. A root
exp(2πi·k/n) is represented by the reduced fraction k/n mod 1, so orders and
orbits are computed exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping

import numpy as np

from .concrete import SignedPartialPerm
from .errors import InvariantError, PreconditionError, ensure, require
from .numtheory import divisors, factorize, lcm, mobius, totient, totient_mobius
from .poly import cyclotomic

__all__ = [
    "Supernatural",
    "WittElement",
    "SignedCycleType",
    "phi",
    "totient_mobius",
    "ramanujan_sum",
    "ramanujan_sum_oracle",
    "frobenius",
    "witt_mul",
    "lambda_op",
    "trace_tm",
    "hermitian_form",
    "frobenius_adjoint",
    "signed_cycle_type",
    "class_of",
]


# supernatural numbers


class Supernatural:
    """prod_p p^(e_p) with e_p in N ∪ {∞}; finitely many finite nonzero e_p.

    ``Supernatural.ZERO`` has every exponent infinite and plays the role of 0,
    since gcd(n, 0) = n.
    """

    __slots__ = ("finite", "infinite", "is_zero")

    def __init__(self, finite: Mapping[int, int] | None = None, infinite: Iterable[int] = (), is_zero: bool = False):
        fin = {} if is_zero else {p: e for p, e in (finite or {}).items() if e}
        inf = frozenset() if is_zero else frozenset(infinite)
        for p in list(fin):
            if p in inf:
                del fin[p]
        object.__setattr__(self, "finite", tuple(sorted(fin.items())))
        object.__setattr__(self, "infinite", inf)
        object.__setattr__(self, "is_zero", is_zero)

    def __setattr__(self, name, value):
        raise AttributeError("Supernatural is immutable")

    @classmethod
    def of(cls, m) -> "Supernatural":
        if isinstance(m, Supernatural):
            return m
        if isinstance(m, int) and not isinstance(m, bool):
            require(m >= 0, "Frobenius index must be a nonnegative integer or a supernatural number")
            if m == 0:
                return cls.ZERO
            return cls(factorize(m))
        if isinstance(m, str):
            return cls.parse(m)
        raise PreconditionError(f"not a supernatural number: {m!r}")

    @classmethod
    def parse(cls, text: str) -> "Supernatural":
        """``0``, ``12``, or a product like ``2^inf*3^2*5``."""
        t = text.replace(" ", "")
        if t.isdigit():
            return cls.of(int(t))
        fin: dict[int, int] = {}
        inf = set()
        for part in t.split("*"):
            m = re.fullmatch(r"(\d+)(?:\^(\d+|inf))?", part)
            if not m:
                raise PreconditionError(f"not a supernatural number: {text!r}")
            base = int(m.group(1))
            exp = m.group(2) or "1"
            for p, e in factorize(base).items():
                if exp == "inf":
                    inf.add(p)
                else:
                    fin[p] = fin.get(p, 0) + e * int(exp)
        return cls(fin, inf)

    def __mul__(self, other) -> "Supernatural":
        other = Supernatural.of(other)
        if self.is_zero or other.is_zero:
            return Supernatural.ZERO
        fin = dict(self.finite)
        for p, e in other.finite:
            fin[p] = fin.get(p, 0) + e
        return Supernatural(fin, self.infinite | other.infinite)

    __rmul__ = __mul__

    def exponent(self, p: int) -> float:
        if self.is_zero or p in self.infinite:
            return float("inf")
        return dict(self.finite).get(p, 0)

    def gcd_int(self, n: int) -> int:
        """gcd(n, m) = prod p^min(v_p(n), e_p), always an ordinary integer."""
        out = 1
        for p, v in factorize(n).items():
            out *= p ** int(min(v, self.exponent(p)))
        return out

    def is_ordinary(self) -> bool:
        return not self.is_zero and not self.infinite

    def to_int(self) -> int:
        require(self.is_ordinary(), "supernatural number is not an ordinary integer")
        out = 1
        for p, e in self.finite:
            out *= p**e
        return out

    def __eq__(self, other):
        if not isinstance(other, Supernatural):
            try:
                other = Supernatural.of(other)
            except PreconditionError:
                return NotImplemented
        return (self.is_zero, self.finite, self.infinite) == (other.is_zero, other.finite, other.infinite)

    def __hash__(self):
        return hash((self.is_zero, self.finite, self.infinite))

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = [f"{p}^inf" for p in sorted(self.infinite)]
        parts += [f"{p}" if e == 1 else f"{p}^{e}" for p, e in self.finite]
        return "*".join(sorted(parts, key=lambda s: int(s.split("^")[0]))) or "1"

    def __repr__(self):
        return f"Supernatural({str(self)!r})"


Supernatural.ZERO = Supernatural(is_zero=True)


# Witt elements


class WittElement:
    """A finitely supported combination sum c_n·phi_n.

    Coefficients are ints; complex coefficients are allowed for the numeric
    variant used in zeta evaluations.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, object] = {}
        for n, c in items:
            require(isinstance(n, int) and n >= 1, f"phi index must be a positive integer, got {n!r}")
            acc[n] = acc.get(n, 0) + c
        object.__setattr__(self, "coeffs", tuple(sorted((n, c) for n, c in acc.items() if c != 0)))

    def __setattr__(self, name, value):
        raise AttributeError("WittElement is immutable")

    @classmethod
    def zero(cls) -> "WittElement":
        return cls()

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.coeffs)

    def coeff(self, n: int):
        return dict(self.coeffs).get(n, 0)

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for _, c in self.coeffs)

    def is_effective(self) -> bool:
        return self.is_integral() and all(c > 0 for _, c in self.coeffs)

    def rank(self) -> int:
        """Number of roots counted with multiplicity: sum c_n phi(n)."""
        return sum(c * totient(n) for n, c in self.coeffs)

    def conjugate(self) -> "WittElement":
        # inverse roots form the same orbit; only complex coefficients change
        return WittElement((n, c.conjugate()) for n, c in self.coeffs)

    def __add__(self, other: "WittElement") -> "WittElement":
        return WittElement(list(self.coeffs) + list(other.coeffs))

    def __neg__(self) -> "WittElement":
        return WittElement((n, -c) for n, c in self.coeffs)

    def __sub__(self, other: "WittElement") -> "WittElement":
        return self + (-other)

    def scale(self, k) -> "WittElement":
        return WittElement((n, k * c) for n, c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, WittElement):
            return witt_mul(self, other)
        return self.scale(other)

    def __rmul__(self, k):
        return self.scale(k)

    def __eq__(self, other):
        if not isinstance(other, WittElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"WittElement.parse({str(self)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*phi({n})" for n, c in self.coeffs)

    @classmethod
    def parse(cls, text: str) -> "WittElement":
        """Parse ``c1*phi(n1) + c2*phi(n2) - ...``; a bare ``phi(n)`` has coefficient 1."""
        t = text.replace(" ", "")
        if t in ("", "0"):
            return cls()
        pos = 0
        out = []
        term = re.compile(r"([+-]?)(?:(\d+)\*)?phi\((\d+)\)")
        while pos < len(t):
            m = term.match(t, pos)
            if not m:
                raise PreconditionError(f"not a Witt element: {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            coef = int(m.group(2)) if m.group(2) else 1
            out.append((int(m.group(3)), sign * coef))
            pos = m.end()
            if pos < len(t) and t[pos] not in "+-":
                raise PreconditionError(f"not a Witt element: {text!r}")
            # "+-3*phi(2)" form
            if t.startswith("+-", pos):
                pos += 1
        return cls(out)


def phi(n: int, c: int = 1) -> WittElement:
    return WittElement({n: c})


ONE = phi(1)


# arithmetic functions


def ramanujan_sum(n: int, m: int) -> int:
    """C_n^m = mu(n/(n,m)) phi(n)/phi(n/(n,m)); gcd(n, 0) = n."""
    require(isinstance(n, int) and n >= 1, "n ≥ 1")
    require(isinstance(m, int) and m >= 0, "m ≥ 0")
    q = n // gcd(n, m)
    return mobius(q) * (totient(n) // totient(q))


@lru_cache(maxsize=None)
def _power_residues(n: int) -> np.ndarray:
    """Row j holds x^j mod Phi_n, for j < n."""
    phi_n = list(cyclotomic(n))
    d = len(phi_n) - 1
    table = np.zeros((n, max(d, 1)), dtype=np.int64)
    cur = [0] * d
    if d:
        cur[-1] = 1  # x^0, leading-first of length d
    for j in range(n):
        table[j, :d] = cur
        # multiply by x and reduce by the monic Phi_n
        lead = cur[0] if d else 0
        cur = cur[1:] + [0]
        if lead:
            cur = [c - lead * p for c, p in zip(cur, phi_n[1:])]
    return table


def ramanujan_sum_oracle(n: int, m: int) -> int:
    """sum of xi^m over primitive n-th roots xi, evaluated exactly in Z[x]/Phi_n."""
    counts = np.zeros(n, dtype=np.int64)
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            counts[(k * m) % n] += 1
    residue = counts @ _power_residues(n)
    ensure(not residue[:-1].any(), f"root power sum for n={n}, m={m} is not rational")
    return int(residue[-1]) if n > 1 else int(counts[0])


# Frobenius


def frobenius(m, f: WittElement) -> WittElement:
    """F_m phi_n = (phi(n)/phi(n'))·phi_{n'} with n' = n/gcd(n, m), extended linearly."""
    m = Supernatural.of(m)
    out = []
    for n, c in f.coeffs:
        n2 = n // m.gcd_int(n)
        out.append((n2, c * (totient(n) // totient(n2))))
    return WittElement(out)


def frobenius_by_roots(m: int, n: int) -> WittElement:
    """Oracle: raise every primitive n-th root to the m-th power and regroup."""
    counts: dict[int, int] = {}
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            d = n // gcd(k * m % n, n)
            counts[d] = counts.get(d, 0) + 1
    out = []
    for d, c in counts.items():
        ensure(c % totient(d) == 0, f"Frobenius orbit count not divisible by phi({d})")
        out.append((d, c // totient(d)))
    return WittElement(out)


def frobenius_adjoint(m: int, f: WittElement) -> WittElement:
    """Adjoint of F_m for the Hermitian form: F_m^* phi_n = sum of phi_k over k with k/gcd(k, m) = n."""
    require(isinstance(m, int) and m >= 1, "ordinary positive m")
    out = []
    for n, c in f.coeffs:
        for d in divisors(m):
            k = n * d
            if gcd(k, m) == d:
                out.append((k, c))
    return WittElement(out)


# multiplication


def _orbit_counts(counts: Mapping[int, int], what: str) -> WittElement:
    out = []
    for d, c in counts.items():
        if c % totient(d):
            raise InvariantError(f"{what}: {c} roots of order {d} is not a multiple of phi({d}) (Galois invariance broken)")
        out.append((d, c // totient(d)))
    return WittElement(out)


@lru_cache(maxsize=None)
def phi_product(a: int, b: int) -> WittElement:
    """phi_a · phi_b from all products of a primitive a-th and b-th root."""
    L = a * b
    counts: dict[int, int] = {}
    ia = [i for i in range(1, a + 1) if gcd(i, a) == 1]
    jb = [j for j in range(1, b + 1) if gcd(j, b) == 1]
    for i in ia:
        for j in jb:
            num = (i * b + j * a) % L  # i/a + j/b as num/L
            d = L // gcd(num, L)
            counts[d] = counts.get(d, 0) + 1
    return _orbit_counts(counts, f"phi_{a}·phi_{b}")


def witt_mul(f: WittElement, g: WittElement) -> WittElement:
    out = []
    for a, c in f.coeffs:
        for b, e in g.coeffs:
            for d, k in phi_product(min(a, b), max(a, b)).coeffs:
                out.append((d, c * e * k))
    return WittElement(out)


def lambda_op(k: int, f: WittElement) -> WittElement:
    """lambda^k f: the products of k distinct roots of f, regrouped into orbits."""
    require(isinstance(k, int) and k >= 0, "k ≥ 0")
    if not f.is_integral() or any(c < 0 for _, c in f.coeffs):
        raise PreconditionError("f effective (nonnegative coefficients): negative coefficients")
    if k == 0:
        return ONE
    L = 1
    for n in f.support:
        L = lcm(L, n)
    roots = []
    for n, c in f.coeffs:
        roots += [(i * (L // n)) % L for i in range(1, n + 1) if gcd(i, n) == 1] * c
    if k > len(roots):
        return WittElement()
    # dp[j][r]: number of j-subsets of the roots seen so far with sum r/L
    dp = [np.zeros(L, dtype=object) for _ in range(k + 1)]
    dp[0][0] = 1
    for r in roots:
        for j in range(min(k, len(roots)), 0, -1):
            dp[j] = dp[j] + np.roll(dp[j - 1], r)
    counts: dict[int, int] = {}
    for r in range(L):
        c = int(dp[k][r])
        if c:
            d = L // gcd(r, L)
            counts[d] = counts.get(d, 0) + c
    return _orbit_counts(counts, f"lambda^{k}")


# traces and the form


def trace(f: WittElement):
    """tr(f) = sum of all roots = sum c_n mu(n)."""
    return sum(c * mobius(n) for n, c in f.coeffs)


def trace_tm(m, f: WittElement):
    """t_m = tr ∘ F_m."""
    return trace(frobenius(m, f))


def hermitian_form(f: WittElement, g: WittElement):
    """Coefficient of phi_1 in f · conj(g)."""
    return witt_mul(f, g.conjugate()).coeff(1)


# class map from F[±1]


@dataclass(frozen=True)
class SignedCycleType:
    cycles: tuple  # sorted (length, sign) pairs
    null: int

    def __str__(self):
        cyc = " ".join(f"{l}{'+' if s > 0 else '-'}" for l, s in self.cycles)
        return f"[{cyc}] null={self.null}"


def signed_cycle_type(a: SignedPartialPerm) -> SignedCycleType:
    require(a.nrows == a.ncols, "a square (n = m)")
    n = a.nrows
    nxt = [None if x is None else x[0] for x in a.assign]
    sgn = [None if x is None else x[1] for x in a.assign]
    has_pre = [False] * n
    for t in nxt:
        if t is not None:
            has_pre[t] = True
    seen = [False] * n
    null = 0
    for start in range(n):
        if has_pre[start]:
            continue
        c = start
        while c is not None and not seen[c]:
            seen[c] = True
            null += 1
            c = nxt[c]
    cycles = []
    for start in range(n):
        if seen[start]:
            continue
        length, sign, c = 0, 1, start
        while not seen[c]:
            seen[c] = True
            length += 1
            sign *= sgn[c]
            c = nxt[c]
        cycles.append((length, sign))
    return SignedCycleType(tuple(sorted(cycles)), null)


def cycle_class(length: int, sign: int) -> WittElement:
    """Roots of x^l - sign: sum_{d|l} phi_d, or sum_{d|2l, d∤l} phi_d."""
    if sign > 0:
        return WittElement((d, 1) for d in divisors(length))
    return WittElement((d, 1) for d in divisors(2 * length) if length % d)


def class_of(a: SignedPartialPerm, verify: bool = False) -> WittElement:
    """[a] in W: the class of a square signed partial permutation.

    With ``verify`` the result is cross-checked against the cyclotomic
    factorization of the characteristic polynomial.
    """
    if not isinstance(a, SignedPartialPerm):
        raise PreconditionError("a must be a signed partial permutation")
    if a.nrows != a.ncols:
        raise PreconditionError("a square (n = m): non-square input")
    ct = signed_cycle_type(a)
    out = WittElement()
    for length, sign in ct.cycles:
        out = out + cycle_class(length, sign)
    if verify:
        from .site import factor_char_poly

        fac = factor_char_poly(a)
        ensure(fac.trivial_leftover, "characteristic polynomial has a non-cyclotomic factor")
        ensure(WittElement(fac.multiplicities) == out, "class_of disagrees with the cyclotomic factorization")
        ensure(fac.x_power == ct.null, "nilpotent part disagrees with the null count")
    return out
