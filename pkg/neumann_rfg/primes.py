"""
Primality, next-prime search and an independent sieve.
"""
from __future__ import annotations

import numpy as np

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

# deterministic witness set for every n < 2^64
_I64_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


def _is_composite_witness(n: int, s: int, d: int, a: int) -> bool:
    """
    True if a proves n composite. d * 2^s = n - 1 with d odd.
    """
    a %= n
    if a == 0:
        return False
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(1, s):
        x = x * x % n
        if x == n - 1:
            return False
        if x == 1:
            return True
    return True


def is_prime(n: int) -> bool:
    """
    Miller-Rabin, exact for n < 2^64. Larger inputs also try the small
    primes as witnesses.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    witnesses = _I64_WITNESSES if n < 1 << 64 else _I64_WITNESSES + _SMALL_PRIMES
    return not any(_is_composite_witness(n, s, d, a) for a in witnesses)


def next_prime(x: int) -> int:
    """
    Smallest prime >= x
    """
    candidate = max(x, 2)
    if candidate > 2 and candidate % 2 == 0:
        candidate += 1
    while not is_prime(candidate):
        candidate += 1 if candidate == 2 else 2
    return candidate


def prime_sieve(n: int) -> np.ndarray:
    """
    Boolean table of length n + 1, True at primes
    """
    table = np.ones(n + 1, dtype=bool)
    table[: min(2, n + 1)] = False
    for p in range(2, int(n**0.5) + 1):
        if table[p]:
            table[p * p :: p] = False
    return table


def primes_below(n: int) -> np.ndarray:
    """
    All primes p <= n, ascending
    """
    return np.flatnonzero(prime_sieve(n))


def smallest_prime_at_least(xs: np.ndarray, primes: np.ndarray) -> np.ndarray:
    """
    For every x in xs, the smallest prime >= x taken from primes, an
    ascending array as returned by primes_below.

    primes must extend past the answer for the largest x.
    """
    idx = np.searchsorted(primes, xs, side="left")
    if idx.size and idx.max() >= primes.size:
        raise ValueError("Prime table too short for the requested range")
    return primes[idx]
