"""Small integer helpers: trial-division factoring and primality."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``|n|`` as sorted ``(p, e)`` pairs (trial division).

    >>> factorize(360)
    ((2, 3), (3, 2), (5, 1))
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = Counter()
    while n % 2 == 0:
        out[2] += 1
        n //= 2
    p = 3
    while p * p <= n:
        while n % p == 0:
            out[p] += 1
            n //= p
        p += 2
    if n > 1:
        out[n] += 1
    return tuple(sorted(out.items()))


def prime_factors(n: int) -> list[int]:
    """Primes dividing ``n`` with multiplicity, ascending."""
    return [p for p, e in factorize(n) for _ in range(e)]


def big_omega(n: int) -> int:
    """Number of prime factors of ``n`` counted with multiplicity."""
    return sum(e for _, e in factorize(n))


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(n))
