"""Primality testing and deterministic prime streams.

Miller-Rabin with the fixed base set that is proven deterministic below
2^64; larger inputs get 40 pseudorandom bases (error < 4^-40, flagged
nowhere because nothing in this package tests primality above 64 bits).
"""

from __future__ import annotations

import random

SMALL_PRIMES = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
    151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229,
    233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311, 313,
]

_DET_BASES_64 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def _miller_rabin(n: int, base: int) -> bool:
    if base % n == 0:
        return True
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 2 ** 64:
        bases = _DET_BASES_64
    else:
        rng = random.Random(n & 0xFFFFFFFF)
        bases = [rng.randrange(2, n - 1) for _ in range(40)]
    return all(_miller_rabin(n, b) for b in bases)


def next_prime(n: int) -> int:
    n += 1
    if n <= 2:
        return 2
    if n % 2 == 0:
        n += 1
    while not is_prime(n):
        n += 2
    return n


def prime_stream(start_bits: int, count: int, seed: int):
    """Yields `count` distinct primes of roughly start_bits bits.

    Deterministic for a fixed (start_bits, count, seed); used for modular
    certificates where reproducibility matters more than randomness.
    """
    rng = random.Random((seed << 8) ^ start_bits)
    seen = set()
    produced = 0
    while produced < count:
        cand = rng.getrandbits(start_bits) | (1 << (start_bits - 1)) | 1
        p = cand if is_prime(cand) else next_prime(cand)
        if p in seen:
            continue
        seen.add(p)
        produced += 1
        yield p
