"""Dense univariate polynomials with exact rational coefficients.

Coefficients are `fractions.Fraction`, stored ascending (coeffs[k] is the
coefficient of x^k) with no trailing zeros.  The zero polynomial has an
empty coefficient tuple and degree -1.  Everything here is exact; numeric
evaluation accepts whatever coefficient-compatible scalar you pass in
(float, complex, mpmath types).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Sequence


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"bad coefficient {c!r}")


class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        if k < 0:
            raise ValueError("negative exponent")
        return cls((0,) * k + (c,))

    @classmethod
    def from_int_coeffs(cls, coeffs: Sequence[int]) -> "UniPoly":
        return cls(coeffs)

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UniPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "UniPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "UniPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            c = _to_fraction(other)
            return UniPoly(tuple(c * a for a in self.coeffs))
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly.zero()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __divmod__(self, other: "UniPoly"):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d = other.degree
        lc = other.lc
        for k in range(len(rem) - 1, d - 1, -1):
            if rem[k]:
                c = rem[k] / lc
                q[k - d] = c
                for j, oc in enumerate(other.coeffs):
                    rem[k - d + j] -= c * oc
        return UniPoly(q), UniPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("division is not exact")
        return q

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.constant(other)
        return NotImplemented

    # -- calculus, composition, transforms ---------------------------------

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1))

    def evaluate(self, x):
        """Horner evaluation; works for any ring element compatible with Fraction."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly.constant(c)
        return acc

    def reciprocal(self) -> "UniPoly":
        """x^deg * f(1/x): the coefficient-reversed polynomial."""
        return UniPoly(tuple(reversed(self.coeffs)))

    def shift_scale(self, a: Fraction) -> "UniPoly":
        """f(a*x) for a rational scalar a."""
        a = _to_fraction(a)
        p = Fraction(1)
        out = []
        for c in self.coeffs:
            out.append(c * p)
            p *= a
        return UniPoly(out)

    # -- integrality and canonical form ------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c integral, primitive. Zero poly -> 0."""
        if not self.coeffs:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = _int_gcd(num, c.numerator)
            den = den * c.denominator // _int_gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_integer(self) -> "UniPoly":
        """Canonical form: integer coefficients, content 1, positive leading coefficient."""
        if self.is_zero:
            return self
        c = self.content()
        p = self * (1 / c)
        if p.lc < 0:
            p = -p
        return p

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("coefficients are not integers")
        return [c.numerator for c in self.coeffs]

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self * (1 / self.lc)

    # -- printing ----------------------------------------------------------

    def to_string(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xpow = var if k == 1 else f"{var}^{k}"
                body = xpow if mag == 1 else f"{mag}*{xpow}"
            parts.append((sign, body))
        sign0, body0 = parts[0]
        s = body0 if sign0 == "+" else "-" + body0
        for sign, body in parts[1:]:
            s += sign + body
        return s

    def __repr__(self):
        return f"UniPoly({self.to_string()})"


# -- gcd, squarefree structure, resultants --------------------------------


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over Q.

    Integer inputs of nontrivial degree go through the modular CRT gcd in
    `zpoly` (the fraction-based Euclid below suffers quadratic coefficient
    blowup); everything else falls back to plain Euclid.
    """
    if f.is_zero:
        return g.monic() if not g.is_zero else g
    if g.is_zero:
        return f.monic()
    if min(f.degree, g.degree) >= 8:
        from . import zpoly

        F = f.primitive_integer().int_coeffs()
        G = g.primitive_integer().int_coeffs()
        H = zpoly.gcd_int(F, G)
        return UniPoly(H).monic()
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def squarefree_part(f: UniPoly) -> UniPoly:
    """f divided by gcd(f, f'), monic."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return UniPoly.constant(1)
    g = poly_gcd(f, f.derivative())
    return f.exact_div(g).monic()


def is_squarefree(f: UniPoly) -> bool:
    if f.is_zero:
        return False
    if f.degree <= 1:
        return True
    return poly_gcd(f, f.derivative()).degree == 0


def squarefree_decompose(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: returns [(g_i, i)] with f = lc * prod g_i^i,
    the g_i monic, squarefree, pairwise coprime, nonconstant only."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return []
    out = []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a) - b.derivative()
    i = 1
    while True:
        if b.degree == 0:
            break
        g = poly_gcd(b, c)
        if g.degree > 0:
            out.append((g.monic(), i))
        b2 = b.exact_div(g)
        c = c.exact_div(g) - b2.derivative()
        b = b2
        i += 1
    return out


def resultant(f: UniPoly, g: UniPoly) -> Fraction:
    """Res(f, g) over Q via the integer subresultant PRS.

    Denominators are cleared first; Res(c*f, g) = c^deg(g) * Res(f, g)
    recovers the rational answer exactly.
    """
    if f.is_zero or g.is_zero:
        return Fraction(0)
    if f.degree == 0:
        return f.lc ** g.degree if g.degree >= 0 else Fraction(1)
    if g.degree == 0:
        return g.lc ** f.degree

    from . import zpoly

    cf = f.content()
    cg = g.content()
    F = (f * (1 / cf)).int_coeffs()
    G = (g * (1 / cg)).int_coeffs()
    r = zpoly.resultant_int(F, G)
    return r * cf ** g.degree * cg ** f.degree


def discriminant(f: UniPoly) -> Fraction:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f), n = deg f (needs n >= 1)."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return Fraction(1)
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r / f.lc


# -- Sturm sequences -------------------------------------------------------


def _sturm_chain(f: UniPoly) -> list[UniPoly]:
    chain = [f, f.derivative()]
    while not chain[-1].is_zero and chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
    if chain[-1].is_zero:
        chain.pop()
    return chain

def _sign_at(p: UniPoly, x) -> int:
    v = p.evaluate(x)
    return (v > 0) - (v < 0)

def _sign_at_inf(p: UniPoly, positive: bool) -> int:
    if p.is_zero:
        return 0
    s = 1 if p.lc > 0 else -1
    if not positive and p.degree % 2 == 1:
        s = -s
    return s

def _variations(signs: list[int]) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def sturm_count(f: UniPoly, a=None, b=None) -> int:
    """Number of distinct real roots of f in (a, b); None means -+infinity.

    Works on the squarefree part, so multiple roots are counted once.
    Finite endpoints that are themselves roots are not counted (open
    interval semantics: a root at `a` is excluded by Sturm's (a, b]
    count, and a root at `b` is explicitly discounted).
    """
    if f.is_zero:
        raise ValueError("zero polynomial has infinitely many roots")
    f = squarefree_part(f)
    if f.degree == 0:
        return 0
    chain = _sturm_chain(f)
    if a is None:
        va = _variations([_sign_at_inf(p, positive=False) for p in chain])
    else:
        a = _to_fraction(a)
        va = _variations([_sign_at(p, a) for p in chain])
    if b is None:
        vb = _variations([_sign_at_inf(p, positive=True) for p in chain])
    else:
        b = _to_fraction(b)
        vb = _variations([_sign_at(p, b) for p in chain])
    n = va - vb
    if b is not None and f.evaluate(b) == 0:
        n -= 1
    return n
