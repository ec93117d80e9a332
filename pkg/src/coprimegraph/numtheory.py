"""Small integer helpers shared by the group and graph modules."""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import islice

from sympy import divisors as _divisors
from sympy import primefactors, primerange, totient

PrimeSet = tuple  # sorted tuple of distinct primes


@lru_cache(maxsize=None)
def prime_support(n: int) -> PrimeSet:
    """Sorted prime divisors of ``n``; the empty tuple for ``n == 1``."""
    if n < 1:
        raise ValueError(f"prime_support needs n >= 1, got {n}")
    return tuple(primefactors(n))


def radical(n: int) -> int:
    r = 1
    for p in prime_support(n):
        r *= p
    return r


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    return tuple(_divisors(n))


def phi(n: int) -> int:
    return int(totient(n))


def coprime(a: int, b: int) -> bool:
    return math.gcd(a, b) == 1


def is_prime_power(n: int) -> bool:
    """True for p**k with k >= 0 (so 1 counts)."""
    return len(prime_support(n)) <= 1


def first_primes(count: int) -> list[int]:
    """The ``count`` smallest primes, ascending."""
    if count <= 0:
        return []
    # p_k < k (ln k + ln ln k) for k >= 6
    bound = 15 if count < 6 else int(count * (math.log(count) + math.log(math.log(count)))) + 1
    return list(islice(primerange(2, bound + 1), count))
