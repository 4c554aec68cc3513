"""Polynomial gcds over a simple algebraic extension of the rationals.

Elements of Q[t]/(m) are polynomials reduced mod m; with m irreducible
every nonzero element is invertible (extended Euclid), so ordinary monic
Euclid decides gcds of polynomials with such coefficients.  Degrees stay
tiny here, so everything is plain Fraction arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from .unipoly import UniPoly


def _ext_gcd(a: UniPoly, b: UniPoly):
    """(g, u, v) with u a + v b = g, g monic unless zero."""
    r0, r1 = a, b
    s0, s1 = UniPoly.constant(1), UniPoly.zero()
    t0, t1 = UniPoly.zero(), UniPoly.constant(1)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    inv = Fraction(1) / r0.lc
    c = UniPoly.constant(inv)
    return r0 * c, s0 * c, t0 * c


class NumberField:
    """Q[t]/(m) for a monic image of an irreducible m; no certification
    here, the caller owns the irreducibility proof."""

    def __init__(self, min_poly: UniPoly):
        m = min_poly.monic()
        if m.degree < 1:
            raise ValueError("need a nonconstant minimal polynomial")
        self.min_poly = m

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    def reduce(self, a: UniPoly) -> UniPoly:
        return a % self.min_poly

    def mul(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return (a * b) % self.min_poly

    def inv(self, a: UniPoly) -> UniPoly:
        a = self.reduce(a)
        if a.is_zero:
            raise ZeroDivisionError("zero has no inverse")
        g, u, _ = _ext_gcd(a, self.min_poly)
        if g.degree != 0:
            # m reducible after all; the caller's certificate was wrong
            raise ArithmeticError("non-invertible element: modulus "
                                  "is not irreducible")
        return (u * UniPoly.constant(Fraction(1) / g[0])) % self.min_poly


def nf_gcd(K: NumberField, f: list, g: list) -> list:
    """Monic gcd of z-polynomials with coefficients in K.

    Polynomials are coefficient lists (UniPoly entries, ascending).
    Returns [] for gcd(0, 0).
    """

    def norm(p):
        p = [K.reduce(c) for c in p]
        while p and p[-1].is_zero:
            p.pop()
        return p

    def make_monic(p):
        inv = K.inv(p[-1])
        return [K.mul(c, inv) for c in p]

    def rem(p, q):
        q = make_monic(q)
        p = list(p)
        while len(p) >= len(q):
            lead = p[-1]
            if not lead.is_zero:
                shift = len(p) - len(q)
                for i, c in enumerate(q):
                    p[shift + i] = K.reduce(p[shift + i] - K.mul(lead, c))
            p.pop()
        return norm(p)

    a, b = norm(f), norm(g)
    while b:
        a, b = b, rem(a, b)
    return make_monic(a) if a else []
