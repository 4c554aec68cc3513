"""Certified factorization over the rationals (Zassenhaus).

Route: Yun squarefree decomposition, then per squarefree part a reduction
mod several small primes.  Degree-pattern intersection across primes often
proves irreducibility outright; otherwise the factorization mod the prime
with the fewest factors is Hensel-lifted past the Landau-Mignotte bound
and factors are recovered by subset recombination with trial division.
Every emitted factor is exact (verified by polynomial division), and
irreducibility of emitted factors is a consequence of exhausting subsets,
not a probabilistic claim.

Degrees above the cap raise DegreeCapExceeded instead of silently taking
an open-ended amount of time.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import isqrt

from . import gfpoly, zpoly
from .unipoly import UniPoly, squarefree_decompose

DEGREE_CAP = 64

_SMALL_ODD_PRIMES = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
]


class DegreeCapExceeded(RuntimeError):
    def __init__(self, degree: int, cap: int):
        super().__init__(
            f"certified factorization capped at degree {cap}, got {degree}"
        )
        self.degree = degree
        self.cap = cap


def _subset_sums(pattern: list[int]) -> set[int]:
    sums = {0}
    for d in pattern:
        sums |= {s + d for s in sums}
    return sums


def _mignotte_bound(F: list[int]) -> int:
    """All integer factors of F have sup-norm at most this (F monic here)."""
    n = len(F) - 1
    norm2 = zpoly.isqrt_up(zpoly.norm2_squared(F))
    return (isqrt(n + 1) + 1) * (1 << n) * max(1, norm2)


# -- Hensel lifting --------------------------------------------------------


def _hensel_pair(f, g, h, s, t, p, target_modulus):
    """Lift f = g*h from mod p to mod >= target_modulus (quadratic steps).

    f, g, h monic integer lists, s*g + t*h = 1 mod p, deg s < deg h,
    deg t < deg g.  Returns (g, h) mod the final modulus.
    """
    m = p
    while m < target_modulus:
        m2 = m * m

        def red(poly):
            return zpoly.normalize([c % m2 for c in poly])

        e = red(zpoly.sub(f, zpoly.mul(g, h)))
        q, r = _divmod_mod(zpoly.mul(s, e), h, m2)
        g_new = red(zpoly.add(g, zpoly.add(zpoly.mul(t, e), zpoly.mul(q, g))))
        h_new = red(zpoly.add(h, r))
        # refresh the Bezout pair to the new modulus
        b = red(zpoly.sub(zpoly.add(zpoly.mul(s, g_new), zpoly.mul(t, h_new)), [1]))
        c, d = _divmod_mod(zpoly.mul(s, b), h_new, m2)
        s_new = red(zpoly.sub(s, d))
        t_new = red(zpoly.sub(t, zpoly.add(zpoly.mul(t, b), zpoly.mul(c, g_new))))
        g, h, s, t, m = g_new, h_new, s_new, t_new, m2
    return g, h, m


def _divmod_mod(f, g, m):
    """divmod over Z/m for monic g."""
    r = [c % m for c in f]
    dg = len(g) - 1
    q = [0] * max(0, len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c == 0:
            continue
        q[k - dg] = c
        for j in range(dg + 1):
            r[k - dg + j] = (r[k - dg + j] - c * g[j]) % m
    del r[dg:]
    return zpoly.normalize(q), zpoly.normalize(r)


def _lift_factors(F: list[int], factors_p: list[list[int]], p: int, bound: int):
    """Each mod-p factor lifted to a modulus exceeding bound; returns
    (lifted factors, modulus)."""
    target = 2 * bound + 1
    lifted = []
    modulus = None
    for g0 in factors_p:
        cof = gfpoly.divmod_poly([c % p for c in F], g0, p)[0]
        _, s, t = gfpoly.ext_gcd(g0, cof, p)
        g, _h, m = _hensel_pair(F, list(g0), list(cof), list(s), list(t), p, target)
        lifted.append(g)
        modulus = m
    return lifted, modulus


def _symmetric(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _mul_mod_sym(polys: list[list[int]], m: int) -> list[int]:
    acc = [1]
    for q in polys:
        acc = [c % m for c in zpoly.mul(acc, q)]
    return zpoly.normalize([_symmetric(c, m) for c in acc])


# -- squarefree integer factorization --------------------------------------


def _good_prime_data(F: list[int], max_primes: int = 25):
    """Degree patterns of F mod the first usable odd primes."""
    out = []
    for p in _SMALL_ODD_PRIMES:
        if len(out) >= max_primes:
            break
        if F[-1] % p == 0:
            continue
        Fp = gfpoly.reduce_mod(F, p)
        if gfpoly.degree(Fp) != len(F) - 1:
            continue
        if not gfpoly.is_squarefree(Fp, p):
            continue
        out.append((p, gfpoly.degree_pattern(gfpoly.monic(Fp, p), p)))
    return out


def factor_squarefree_monic_int(F: list[int]) -> list[list[int]]:
    """Monic squarefree integer F (F(0) != 0): list of monic irreducible
    integer factors, proven."""
    n = len(F) - 1
    if n <= 1:
        return [list(F)]

    prime_data = _good_prime_data(F)
    if not prime_data:
        raise ArithmeticError("no usable prime found")  # cannot happen for squarefree F

    # degree-pattern intersection: if no proper factor degree survives,
    # F is irreducible with a cheap certificate
    possible = None
    for _p, pattern in prime_data:
        s = _subset_sums(pattern)
        possible = s if possible is None else (possible & s)
        if len(pattern) == 1:
            return [list(F)]
    proper = {d for d in possible if 0 < d < n}
    if not proper:
        return [list(F)]

    # Zassenhaus on the prime with the fewest modular factors
    p, pattern = min(prime_data, key=lambda t: (len(t[1]), t[0]))
    Fp = gfpoly.monic(gfpoly.reduce_mod(F, p), p)
    factors_p = gfpoly.factor_squarefree_monic(Fp, p)
    bound = _mignotte_bound(F)
    lifted, modulus = _lift_factors(F, factors_p, p, bound)

    result = []
    remaining = list(range(len(lifted)))
    current = list(F)
    const_ok = current[0] != 0
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for combo in combinations(remaining, size):
            degs = sum(len(lifted[i]) - 1 for i in combo)
            if degs not in proper:
                continue
            if const_ok:
                c0 = 1
                for i in combo:
                    c0 = _symmetric(c0 * lifted[i][0], modulus)
                if c0 == 0 or current[0] % c0 != 0:
                    continue
            cand = _mul_mod_sym([lifted[i] for i in combo], modulus)
            try:
                quot = zpoly.divide_exact(current, cand)
            except ValueError:
                continue
            result.append(cand)
            current = quot
            remaining = [i for i in remaining if i not in combo]
            found = True
            break
        if not found:
            size += 1
    if len(current) > 1:
        result.append(current)
    result.sort(key=lambda f: (len(f), f))
    return result


def _factor_squarefree_rational(g: UniPoly, cap: int) -> list[UniPoly]:
    """Squarefree nonconstant g over Q: primitive integer irreducible factors."""
    if g.degree > cap:
        raise DegreeCapExceeded(g.degree, cap)
    G = g.primitive_integer()
    out = []
    # peel powers of x first; Zassenhaus below assumes a unit constant term
    coeffs = list(G.coeffs)
    v = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        v += 1
    if v:
        out.append(UniPoly.x())
    if not coeffs or len(coeffs) == 1:
        return out
    Z = [c.numerator for c in coeffs]
    if len(Z) == 2:
        out.append(UniPoly(Z).primitive_integer())
        return out

    b = Z[-1]
    if b != 1:
        # monicize by y = b*x: factor b^(n-1) F(y/b), map factors back
        n = len(Z) - 1
        M = [Z[k] * b ** (n - 1 - k) for k in range(n)] + [1]
        factors = factor_squarefree_monic_int(M)
        for H in factors:
            back = UniPoly(H).shift_scale(Fraction(b))
            out.append(back.primitive_integer())
    else:
        for H in factor_squarefree_monic_int(Z):
            out.append(UniPoly(H).primitive_integer())
    out.sort(key=lambda f: (f.degree, f.coeffs))
    return out


def factor_rationals(f: UniPoly, cap: int = DEGREE_CAP):
    """Full factorization over Q.

    Returns (unit, [(factor, multiplicity)]): factors are primitive integer
    polynomials with positive leading coefficient, pairwise distinct, and
    f = unit * prod factor^multiplicity exactly (asserted).
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if f.degree == 0:
        return f.lc, []
    if f.degree > cap:
        raise DegreeCapExceeded(f.degree, cap)

    out: list[tuple[UniPoly, int]] = []
    for g, mult in squarefree_decompose(f):
        for irr in _factor_squarefree_rational(g, cap):
            out.append((irr, mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs, t[1]))

    prod = UniPoly.constant(1)
    for fac, mult in out:
        prod = prod * fac ** mult
    unit = f.lc / prod.lc
    assert prod * unit == f, "factorization reassembly failed"
    return unit, out


def is_irreducible(f: UniPoly, cap: int = DEGREE_CAP) -> bool:
    """True iff f is irreducible over Q (degree >= 1, content ignored)."""
    if f.degree < 1:
        return False
    _unit, factors = factor_rationals(f, cap)
    return len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree == f.degree


def squarefree_part_certified(f: UniPoly) -> tuple[UniPoly, str]:
    """Primitive integer squarefree part plus a note on how it was certified."""
    F = f.primitive_integer()
    Z = F.int_coeffs()
    p = zpoly.squarefree_certificate_mod_p(Z)
    if p is not None:
        return F, f"squarefree (gcd with derivative trivial mod {p})"
    sf = zpoly.squarefree_part_int(Z)
    return UniPoly(sf), "squarefree part via exact modular gcd"
