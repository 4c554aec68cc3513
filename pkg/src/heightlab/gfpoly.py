"""Dense polynomial arithmetic over GF(p), p an odd prime.

Lists of ints in [0, p), ascending degree, no trailing zeros.  Provides
what the rational factorization driver needs: gcd, Frobenius powers,
distinct-degree splitting and Cantor-Zassenhaus equal-degree splitting.
"""

from __future__ import annotations

import random


def normalize(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: list[int]) -> int:
    return len(f) - 1


def reduce_mod(f: list[int], p: int) -> list[int]:
    return normalize([c % p for c in f])


def add(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, a in enumerate(f):
        out[i] = a
    for i, b in enumerate(g):
        out[i] = (out[i] + b) % p
    return normalize(out)


def sub(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, a in enumerate(f):
        out[i] = a
    for i, b in enumerate(g):
        out[i] = (out[i] - b) % p
    return normalize(out)


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return normalize([c % p for c in out])


def mul_scalar(f, c, p):
    c %= p
    if c == 0:
        return []
    return normalize([(a * c) % p for a in f])


def monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], p - 2, p)
    return [(c * inv) % p for c in f]


def divmod_poly(f, g, p):
    if not g:
        raise ZeroDivisionError
    inv = pow(g[-1], p - 2, p)
    r = list(f)
    dg = degree(g)
    q = [0] * max(0, degree(f) - dg + 1)
    for k in range(degree(f), dg - 1, -1):
        if k >= len(r) or r[k] == 0:
            continue
        c = (r[k] * inv) % p
        q[k - dg] = c
        for j in range(dg + 1):
            r[k - dg + j] = (r[k - dg + j] - c * g[j]) % p
    return normalize(q), normalize(r)


def rem(f, g, p):
    return divmod_poly(f, g, p)[1]


def gcd(f, g, p):
    a, b = list(f), list(g)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def ext_gcd(f, g, p):
    """(d, s, t) with s*f + t*g = d = monic gcd."""
    r0, r1 = list(f), list(g)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_poly(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if r0:
        inv = pow(r0[-1], p - 2, p)
        r0 = mul_scalar(r0, inv, p)
        s0 = mul_scalar(s0, inv, p)
        t0 = mul_scalar(t0, inv, p)
    return r0, s0, t0


def mulmod(a, b, f, p):
    return rem(mul(a, b, p), f, p)


def pow_mod(a, e: int, f, p):
    result = [1]
    base = rem(a, f, p)
    while e:
        if e & 1:
            result = mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = mulmod(base, base, f, p)
    return result


def derivative(f, p):
    return normalize([(k * c) % p for k, c in enumerate(f)][1:])


def is_squarefree(f, p) -> bool:
    df = derivative(f, p)
    if not df:
        return degree(f) <= 0
    return degree(gcd(f, df, p)) == 0


def distinct_degree(f, p):
    """f monic squarefree; returns [(product_of_degree_d_factors, d)]."""
    out = []
    h = [0, 1]  # x
    v = list(f)
    d = 0
    while degree(v) >= 2 * (d + 1):
        d += 1
        h = pow_mod(h, p, v, p)
        g = gcd(sub(h, [0, 1], p), v, p)
        if degree(g) > 0:
            out.append((g, d))
            v, r = divmod_poly(v, g, p)
            assert not r
            h = rem(h, v, p)
    if degree(v) > 0:
        out.append((v, degree(v)))
    return out


def equal_degree_split(f, d, p, rng: random.Random):
    """f monic squarefree, all factors of degree d, deg f > d: one split."""
    n = degree(f)
    exponent = (p ** d - 1) // 2
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = normalize(a)
        if degree(a) < 1:
            continue
        g = gcd(a, f, p)
        if 0 < degree(g) < n:
            return g
        b = pow_mod(a, exponent, f, p)
        g = gcd(sub(b, [1], p), f, p)
        if 0 < degree(g) < n:
            return g


def equal_degree_factor(f, d, p, rng):
    if degree(f) == d:
        return [monic(f, p)]
    g = equal_degree_split(f, d, p, rng)
    h, r = divmod_poly(f, g, p)
    assert not r
    return equal_degree_factor(g, d, p, rng) + equal_degree_factor(h, d, p, rng)


def factor_squarefree_monic(f, p, seed: int = 0):
    """Monic squarefree f over GF(p): list of monic irreducible factors."""
    rng = random.Random((seed << 16) ^ p ^ (len(f) << 1))
    out = []
    for g, d in distinct_degree(f, p):
        out.extend(equal_degree_factor(g, d, p, rng))
    out.sort()
    return out


def degree_pattern(f, p, seed: int = 0) -> list[int]:
    """Sorted degrees of the irreducible factors of monic squarefree f mod p.

    Needs only distinct-degree splitting, no equal-degree randomness, so it
    is cheap and deterministic.
    """
    pattern = []
    for g, d in distinct_degree(f, p):
        pattern.extend([d] * (degree(g) // d))
    return sorted(pattern)
