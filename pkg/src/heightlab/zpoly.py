"""Integer polynomial kernels: subresultant resultants and modular gcd.

Polynomials here are plain lists of Python ints, ascending degree, no
trailing zeros.  These routines back the exact layer in `unipoly` when
coefficient growth would sink a naive fraction-based computation.
"""

from __future__ import annotations

from math import gcd, isqrt

from . import primes as _primes


def normalize(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: list[int]) -> int:
    return len(f) - 1


def content(f: list[int]) -> int:
    c = 0
    for a in f:
        c = gcd(c, a)
    return c


def primitive(f: list[int]) -> list[int]:
    c = content(f)
    if c == 0:
        return []
    if f[-1] < 0:
        c = -c
    return [a // c for a in f]


def mul(f: list[int], g: list[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] += a * b
    return out


def mul_scalar(f: list[int], c: int) -> list[int]:
    if c == 0:
        return []
    return [a * c for a in f]


def add(f: list[int], g: list[int]) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, a in enumerate(f):
        out[i] += a
    for i, b in enumerate(g):
        out[i] += b
    return normalize(out)


def sub(f: list[int], g: list[int]) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, a in enumerate(f):
        out[i] += a
    for i, b in enumerate(g):
        out[i] -= b
    return normalize(out)


def pseudo_rem(f: list[int], g: list[int]) -> list[int]:
    """prem(f, g): remainder of lc(g)^(deg f - deg g + 1) * f divided by g."""
    df, dg = degree(f), degree(g)
    if dg < 0:
        raise ZeroDivisionError
    r = list(f)
    lc = g[-1]
    steps = df - dg + 1
    while degree(r) >= dg:
        dr = degree(r)
        c = r[-1]
        r = [lc * a for a in r]
        for j in range(dg + 1):
            r[dr - dg + j] -= c * g[j]
        r = normalize(r)
        steps -= 1
    if steps > 0:
        r = [lc ** steps * a for a in r]
    return r


def divide_exact(f: list[int], g: list[int]) -> list[int]:
    """f // g when the division over Z is exact; raises otherwise."""
    if not g:
        raise ZeroDivisionError
    if not f:
        return []
    df, dg = degree(f), degree(g)
    if df < dg:
        raise ValueError("not divisible")
    r = list(f)
    q = [0] * (df - dg + 1)
    lc = g[-1]
    for k in range(df, dg - 1, -1):
        c = r[k] if k < len(r) else 0
        if c == 0:
            continue
        if c % lc:
            raise ValueError("not divisible")
        m = c // lc
        q[k - dg] = m
        for j in range(dg + 1):
            r[k - dg + j] -= m * g[j]
    if any(r):
        raise ValueError("not divisible")
    return normalize(q)


def eval_at(f: list[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def resultant_int(f: list[int], g: list[int]) -> int:
    """Subresultant PRS resultant of integer polynomials.

    Collins' scheme with the g/h defect bookkeeping; all interior divisions
    are exact by the subresultant theorem, so // is safe whatever the signs.
    """
    f = normalize(list(f))
    g = normalize(list(g))
    if not f or not g:
        return 0
    if degree(f) == 0:
        return f[0] ** degree(g)
    if degree(g) == 0:
        return g[0] ** degree(f)

    s = 1
    if degree(f) < degree(g):
        if degree(f) % 2 == 1 and degree(g) % 2 == 1:
            s = -s
        f, g = g, f

    gg = 1
    h = 1
    while True:
        dA, dB = degree(f), degree(g)
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        r = pseudo_rem(f, g)
        f = g
        if not r:
            return 0
        denom = gg * h ** delta
        g = [c // denom for c in r]
        gg = f[-1]
        if delta > 0:
            h = gg ** delta // h ** (delta - 1)
        if degree(g) == 0:
            dA = degree(f)
            return s * (g[0] ** dA // (h ** (dA - 1) if dA > 1 else 1))


def _gcd_mod_p(f: list[int], g: list[int], p: int) -> list[int]:
    a = normalize([c % p for c in f])
    b = normalize([c % p for c in g])
    while b:
        inv = pow(b[-1], p - 2, p)
        bm = [(c * inv) % p for c in b]
        r = list(a)
        while r and len(r) >= len(bm):
            if r[-1] == 0:
                r.pop()
                continue
            c = r[-1]
            off = len(r) - len(bm)
            for j in range(len(bm)):
                r[off + j] = (r[off + j] - c * bm[j]) % p
            r = normalize(r)
        a, b = bm, r
    # return monic form
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def squarefree_certificate_mod_p(f: list[int], tries: int = 8) -> int | None:
    """A prime p with gcd(f, f') = 1 mod p, or None.

    Such a prime certifies that f is squarefree over Q: the rational gcd,
    made integral, reduces mod p to a divisor of the mod-p gcd whenever p
    does not kill its leading coefficient, and lc(gcd) | lc(f).
    """
    df = normalize([k * c for k, c in enumerate(f)][1:])
    if not df:
        return None
    for p in _primes.prime_stream(start_bits=40, count=tries, seed=200):
        if f[-1] % p == 0:
            continue
        if degree(_gcd_mod_p(f, df, p)) == 0:
            return p
    return None


def gcd_int(f: list[int], g: list[int]) -> list[int]:
    """Primitive gcd over Z by modular images + CRT + trial division.

    Correctness does not rest on luck: a candidate is only returned after
    it exactly divides both inputs.
    """
    f = primitive(normalize(list(f)))
    g = primitive(normalize(list(g)))
    if not f:
        return g
    if not g:
        return f
    if degree(f) < degree(g):
        f, g = g, f
    lcg = gcd(f[-1], g[-1])

    best_deg = None
    images = []  # (p, monic gcd mod p scaled by lcg)
    modulus = 1
    for p in _primes.prime_stream(start_bits=62, count=200, seed=77):
        if f[-1] % p == 0 or g[-1] % p == 0:
            continue
        h = _gcd_mod_p(f, g, p)
        d = degree(h)
        if d == 0:
            return [1]
        if best_deg is None or d < best_deg:
            best_deg = d
            images = []
            modulus = 1
        if d == best_deg:
            inv = pow(h[-1], p - 2, p)
            scaled = [(c * inv * lcg) % p for c in h]
            images.append((p, scaled))
            modulus *= p
            cand = _crt_symmetric(images, best_deg)
            cand = primitive(cand)
            if cand and _divides(cand, f) and _divides(cand, g):
                return cand
    raise ArithmeticError("modular gcd did not stabilize")


def _crt_symmetric(images, deg_h) -> list[int]:
    M = 1
    for p, _ in images:
        M *= p
    out = []
    for k in range(deg_h + 1):
        x = 0
        for p, h in images:
            r = h[k] if k < len(h) else 0
            Mp = M // p
            x = (x + r * Mp * pow(Mp, p - 2, p)) % M
        if x > M // 2:
            x -= M
        out.append(x)
    return normalize(out)


def _divides(h: list[int], f: list[int]) -> bool:
    try:
        divide_exact(f, h)
        return True
    except ValueError:
        return False


def squarefree_part_int(f: list[int]) -> list[int]:
    """Primitive squarefree part of an integer polynomial.

    Fast path: a single mod-p certificate proves f already squarefree.
    Otherwise the exact modular gcd with f' is divided out.
    """
    f = primitive(normalize(list(f)))
    if degree(f) <= 1:
        return f
    if squarefree_certificate_mod_p(f) is not None:
        return f
    df = normalize([k * c for k, c in enumerate(f)][1:])
    h = gcd_int(f, df)
    return primitive(divide_exact(f, h))


def norm2_squared(f: list[int]) -> int:
    return sum(c * c for c in f)


def norm1(f: list[int]) -> int:
    return sum(abs(c) for c in f)


def isqrt_up(n: int) -> int:
    s = isqrt(n)
    return s if s * s == n else s + 1
