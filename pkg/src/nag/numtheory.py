"""Deterministic elementary number theory by trial division."""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from .errors import require

MAX_N = 10**9


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of 1 <= n <= 10**9 as {p: exponent}."""
    require(isinstance(n, int) and 1 <= n <= MAX_N, "1 ≤ n ≤ 10⁹ (trial-division bound)")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p > MAX_N:
        # still exact, just slower; only used for validation
        return all(p % d for d in range(2, int(p**0.5) + 1))
    return factorize(p) == {p: 1}


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(abs(n))) if n not in (0, 1, -1) else []


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def totient_mobius(n: int) -> tuple[int, int]:
    """Euler totient and Möbius function of n."""
    return totient(n), mobius(n)


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
