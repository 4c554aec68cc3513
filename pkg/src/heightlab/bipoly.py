"""Polynomials in two variables (x, t) over the rationals.

Sparse map (x-degree, t-degree) -> coefficient.  The one heavy operation
is eliminating t against a univariate polynomial; the linear-in-t case is
done by a Horner substitution on integer coefficient lists, the general
case by evaluation and Lagrange interpolation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from . import zpoly
from .unipoly import UniPoly


class BiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] = ()):
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (i, j), c in items:
            c = Fraction(c)
            if c:
                clean[(int(i), int(j))] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def parse(cls, text: str, varx: str = "x", vart: str = "t") -> "BiPoly":
        from .polyparse import parse_terms

        return cls(parse_terms(text, (varx, vart)))

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_t(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def coefficient_vector(self) -> list[Fraction]:
        """Nonzero coefficients in (x-degree, t-degree) lexicographic order."""
        return [self.terms[k] for k in sorted(self.terms)]

    def coeff_of_t(self, j: int) -> UniPoly:
        """Coefficient of t^j as a polynomial in x."""
        if self.is_zero:
            return UniPoly.zero()
        out = [Fraction(0)] * (self.deg_x + 1)
        for (i, jj), c in self.terms.items():
            if jj == j:
                out[i] = c
        return UniPoly(out)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- arithmetic (desk scale) -------------------------------------------

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return BiPoly({e: c * other for e, c in self.terms.items()})
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return BiPoly(out)

    __rmul__ = __mul__

    def evaluate(self, x, t):
        acc = 0
        for (i, j), c in self.terms.items():
            acc = acc + c * x ** i * t ** j
        return acc

    def poly_in_x_at_t(self, t0):
        """Coefficient list (ascending in x) of P(x, t0); t0 may be numeric."""
        dx = self.deg_x
        out = [0] * (dx + 1)
        for (i, j), c in self.terms.items():
            out[i] = out[i] + c * t0 ** j
        return out

    # -- canonical form ----------------------------------------------------

    def content(self) -> Fraction:
        from math import gcd

        if self.is_zero:
            return Fraction(0)
        num, den = 0, 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_integer(self) -> "BiPoly":
        """Integer coefficients, content 1, leading term positive.

        Leading term = the (x-degree, t-degree) lexicographically largest.
        """
        if self.is_zero:
            return self
        c = self.content()
        p = self * (1 / c)
        lead = max(p.terms)
        if p.terms[lead] < 0:
            p = -p
        return p

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def to_string(self, varx: str = "x", vart: str = "t") -> str:
        if self.is_zero:
            return "0"
        def key(e):
            i, j = e
            return (-(i + j), -i)
        parts = []
        for (i, j) in sorted(self.terms, key=key):
            c = self.terms[(i, j)]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            pieces = []
            if i:
                pieces.append(varx if i == 1 else f"{varx}^{i}")
            if j:
                pieces.append(vart if j == 1 else f"{vart}^{j}")
            if not pieces or mag != 1:
                pieces.insert(0, str(mag))
            parts.append((sign, "*".join(pieces)))
        sign0, body0 = parts[0]
        s = body0 if sign0 == "+" else "-" + body0
        for sign, body in parts[1:]:
            s += sign + body
        return s

    def __repr__(self):
        return f"BiPoly({self.to_string()})"


# -- elimination -----------------------------------------------------------


def resultant_t(P: BiPoly, m: UniPoly) -> UniPoly:
    """Res_t(P(x,t), m(t)) as a polynomial in x, computed exactly.

    deg_t P = 1 uses the substitution formula
        Res = sum_k m_k (-b)^k a^(n-k),  P = a(x) t + b(x),  n = deg m,
    evaluated by Horner on integer coefficient lists.  Higher t-degrees go
    through specialization at integer points plus Lagrange interpolation,
    skipping points where the t-leading coefficient vanishes.
    """
    if P.is_zero or m.is_zero:
        return UniPoly.zero()
    dt = P.deg_t
    if dt < 1:
        raise ValueError("P must involve t")
    if m.degree < 1:
        return UniPoly.constant(m.lc ** dt)

    # scaling: work with integer forms, put the rational factor back at the end
    cP = P.content()
    cm = m.content()
    Pz = P * (1 / cP)
    mz = (m * (1 / cm)).int_coeffs()
    n = len(mz) - 1

    if dt == 1:
        a = Pz.coeff_of_t(1).int_coeffs()
        b = Pz.coeff_of_t(0).int_coeffs()
        negb = zpoly.mul_scalar(b, -1)
        apow = [[1]]
        for _ in range(n):
            apow.append(zpoly.mul(apow[-1], a))
        acc = zpoly.mul_scalar(apow[0], mz[n])
        for k in range(n - 1, -1, -1):
            acc = zpoly.mul(acc, negb)
            if mz[k]:
                acc = zpoly.add(acc, zpoly.mul_scalar(apow[n - k], mz[k]))
        R = UniPoly(acc)
    else:
        R = _resultant_t_interp(Pz, mz, n)

    scale = cP ** n * cm ** dt
    return R * scale


def _resultant_t_interp(Pz: BiPoly, mz: list[int], n: int) -> UniPoly:
    dt = Pz.deg_t
    dx = Pz.deg_x
    lc_t = Pz.coeff_of_t(dt)
    dR = n * dx
    xs: list[int] = []
    ys: list[Fraction] = []
    x0 = 0
    while len(xs) < dR + 1:
        for cand in ([x0] if x0 == 0 else [x0, -x0]):
            if len(xs) >= dR + 1:
                break
            if lc_t.evaluate(cand) == 0:
                continue
            col = [0] * (dt + 1)
            for (i, j), c in Pz.terms.items():
                col[j] += c.numerator * cand ** i  # integral: Pz primitive integer
            r = zpoly.resultant_int(zpoly.normalize(col), list(mz))
            xs.append(cand)
            ys.append(Fraction(r))
        x0 += 1
    return _lagrange(xs, ys)


def _lagrange(xs: list[int], ys: list[Fraction]) -> UniPoly:
    # Newton form is friendlier to exact arithmetic than textbook Lagrange
    n = len(xs)
    coeffs = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly.zero()
    for i in range(n - 1, -1, -1):
        poly = poly * (UniPoly.x() - UniPoly.constant(xs[i])) + UniPoly.constant(coeffs[i])
    return poly
