"""Integer polynomials as coefficient lists, leading coefficient first."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ensure, require
from .numtheory import divisors, totient


def trim(p: list[int]) -> list[int]:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return list(p[i:]) if p else [0]


def degree(p: list[int]) -> int:
    p = trim(p)
    return -1 if p == [0] else len(p) - 1


def mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_monic(p: list[int], d: list[int]) -> tuple[list[int], list[int]]:
    """Division of an integer polynomial by a monic one."""
    p, d = trim(p), trim(d)
    require(d[0] == 1, "divisor must be monic")
    if len(p) < len(d):
        return [0], p
    rem = list(p)
    quot = [0] * (len(p) - len(d) + 1)
    for i in range(len(quot)):
        c = rem[i]
        quot[i] = c
        if c:
            for j in range(1, len(d)):
                rem[i + j] -= c * d[j]
    r = trim(rem[len(quot):]) if len(d) > 1 else [0]
    return trim(quot), r


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple[int, ...]:
    """Phi_d by dividing x^d - 1 by Phi_e for every proper divisor e of d."""
    require(d >= 1, "cyclotomic index must be positive")
    p = [1] + [0] * (d - 1) + [-1]
    for e in divisors(d)[:-1]:
        p, r = divmod_monic(p, list(cyclotomic(e)))
        ensure(r == [0], f"Phi_{e} does not divide x^{d}-1")
    ensure(len(p) - 1 == totient(d), f"deg Phi_{d} != phi({d})")
    return tuple(p)


def format_poly(p: list[int], var: str = "x") -> str:
    p = trim(p)
    n = len(p) - 1
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        k = n - i
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


@dataclass(frozen=True)
class CycloFactorization:
    """x^k * prod Phi_d^e_d * leftover."""

    x_power: int
    multiplicities: dict = field(default_factory=dict)
    leftover: tuple = (1,)

    @property
    def trivial_leftover(self) -> bool:
        return tuple(self.leftover) == (1,)

    def expand(self) -> list[int]:
        p = [1] + [0] * self.x_power
        for d, e in self.multiplicities.items():
            for _ in range(e):
                p = mul(p, list(cyclotomic(d)))
        return mul(p, list(self.leftover))

    def __str__(self):
        parts = [f"x^{self.x_power}"]
        parts += [f"Phi_{d}^{e}" for d, e in sorted(self.multiplicities.items())]
        s = " * ".join(parts)
        if not self.trivial_leftover:
            s += f" * leftover: {format_poly(list(self.leftover))}"
        return s


def cyclotomic_factor(p: list[int]) -> CycloFactorization:
    """Strip powers of x, then divide out cyclotomic factors greedily."""
    p = trim([int(c) for c in p])
    require(p[0] == 1, "monic, integer coefficients, degree ≤ 64")
    require(len(p) - 1 <= 64, "monic, integer coefficients, degree ≤ 64")
    k = 0
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
        k += 1
    mult: dict[int, int] = {}
    d = 1
    # phi(d) >= sqrt(d/2), so no Phi_d with d > 2*deg^2 can divide
    while len(p) > 1 and d <= 2 * (len(p) - 1) ** 2:
        if totient(d) <= len(p) - 1:
            while True:
                q, r = divmod_monic(p, list(cyclotomic(d)))
                if r != [0]:
                    break
                p = q
                mult[d] = mult.get(d, 0) + 1
        d += 1
    return CycloFactorization(k, mult, tuple(p))
