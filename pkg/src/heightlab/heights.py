"""Absolute logarithmic heights: algebraic numbers, projective points, polynomials.

Two independent routes exist for the height of an algebraic number: the
root formula (log of leading coefficient plus log+ of certified root
moduli, divided by the degree) and the circle integral of log|f| computed
by adaptive quadrature.  They share no code beyond the polynomial type,
which is what makes the cross-check in the test suite meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath

from .unipoly import UniPoly, squarefree_decompose
from .roots import ComplexBall, PrecisionExhausted, complex_roots, select_root
from . import factor as _factor


# -- value carrier ---------------------------------------------------------


@dataclass(frozen=True)
class HeightValue:
    """A nonnegative height with an error field.

    For exact and quadrature methods abs_error is a bound: the true value
    lies within abs_error of value.  Under method "monte-carlo" the field
    holds one standard error and consumers apply a 3-sigma rule.
    """

    value: float
    abs_error: float
    method: str

    def __post_init__(self):
        if self.value < 0 or self.abs_error < 0:
            raise ValueError("height values and errors are nonnegative")


def _clamped(value: float, err: float, method: str) -> HeightValue:
    if value < 0:
        err += -value
        value = 0.0
    return HeightValue(value, err, method)


def _log_int(n: int) -> float:
    """log of a positive integer, safe for values beyond float range."""
    if n <= 0:
        raise ValueError
    k = n.bit_length() - 53
    if k <= 0:
        return math.log(n)
    return math.log(n >> k) + k * math.log(2)


def _log_fraction(q: Fraction) -> float:
    if q <= 0:
        raise ValueError
    return _log_int(q.numerator) - _log_int(q.denominator)


# -- projective points -----------------------------------------------------


class ProjectivePoint:
    """Point of P^N over Q, stored as integer coordinates with gcd 1.

    Canonical: the first nonzero coordinate is positive.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        cs = [Fraction(c) for c in coords]
        if len(cs) < 2 or all(c == 0 for c in cs):
            raise ValueError("need >= 2 coordinates, not all zero")
        den = 1
        for c in cs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in cs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        for v in ints:
            if v != 0:
                if v < 0:
                    ints = [-w for w in ints]
                break
        object.__setattr__(self, "coords", tuple(ints))

    def __setattr__(self, name, value):
        raise AttributeError("ProjectivePoint is immutable")

    @property
    def ambient_dim(self) -> int:
        return len(self.coords) - 1

    def __eq__(self, other):
        if isinstance(other, ProjectivePoint):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


# -- algebraic numbers -----------------------------------------------------


class AlgebraicNumber:
    """A root of a primitive integer polynomial, isolated by a certified ball.

    `certified` records whether min_poly is proven irreducible; heights
    computed from an assumed minimal polynomial carry a marker in their
    method tag so the assumption cannot silently disappear.
    """

    __slots__ = ("min_poly", "ball", "certified")

    def __init__(self, min_poly: UniPoly, ball: ComplexBall, certified: bool):
        object.__setattr__(self, "min_poly", min_poly.primitive_integer())
        object.__setattr__(self, "ball", ball)
        object.__setattr__(self, "certified", bool(certified))

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraicNumber is immutable")

    @classmethod
    def from_rational(cls, q) -> "AlgebraicNumber":
        q = Fraction(q)
        poly = UniPoly((-q.numerator, q.denominator)).primitive_integer()
        return cls(poly, ComplexBall(q, Fraction(0), Fraction(0)), True)

    @classmethod
    def from_min_poly(cls, f: UniPoly, certify: bool = True,
                      ball: ComplexBall | None = None) -> "AlgebraicNumber":
        """Attach a root of f; default selection is the largest modulus,
        ties broken by smallest principal argument."""
        F = f.primitive_integer()
        if F.degree < 1:
            raise ValueError("need degree >= 1")
        certified = False
        if certify:
            certified = _factor.is_irreducible(F)
            if not certified:
                raise ValueError("polynomial is reducible; factor it first")
        if ball is None:
            ball = select_root(complex_roots(F))
        return cls(F, ball, certified)

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    def approx(self) -> complex:
        return self.ball.center()

    def __repr__(self):
        c = self.ball.center()
        return f"AlgebraicNumber({self.min_poly.to_string()} ~ {c:.6g})"


# -- heights of algebraic numbers: root formula ----------------------------


def mahler_root_height(f: UniPoly, tol: float = 1e-12,
                       warm=None) -> HeightValue:
    """(1/deg f)(log|lc| + sum over roots, with multiplicity, of log+|root|).

    Root moduli enter through certified balls, so abs_error is a bound.
    `warm` seeds the root finder when f is already squarefree of matching
    degree (dropped otherwise); it cannot affect the certified result.
    """
    F = f.primitive_integer()
    n = F.degree
    if n < 1:
        raise ValueError("need degree >= 1")
    lc_term = _log_int(int(F.lc))

    pieces = [(g.primitive_integer(), m) for g, m in squarefree_decompose(F)]
    if warm is not None and (len(pieces) != 1 or pieces[0][0].degree != n):
        warm = None
    root_tol = tol / (8.0 * (n + 1))
    for _attempt in range(4):
        lo_sum = []
        hi_sum = []
        ok = True
        for g, mult in pieces:
            if g.degree < 1:
                continue
            try:
                balls = complex_roots(g, tol=root_tol, warm=warm)
            except PrecisionExhausted:
                ok = False
                break
            for b in balls:
                lo = b.abs_lower()
                hi = b.abs_upper()
                lo_v = math.log(float(lo)) if lo > 1 else 0.0
                hi_v = math.log(float(hi)) if hi > 1 else 0.0
                lo_sum.extend([lo_v] * mult)
                hi_sum.extend([hi_v] * mult)
        if not ok:
            break
        lo_total = (lc_term + math.fsum(lo_sum)) / n
        hi_total = (lc_term + math.fsum(hi_sum)) / n
        value = 0.5 * (lo_total + hi_total)
        err = 0.5 * (hi_total - lo_total) + 1e-14 * (1.0 + abs(value))
        if err <= tol:
            return _clamped(value, err, "exact-roots")
        root_tol /= 64.0
    raise PrecisionExhausted("could not reach requested height tolerance")


def height_algebraic(a: AlgebraicNumber, tol: float = 1e-12) -> HeightValue:
    h = mahler_root_height(a.min_poly, tol=tol)
    if not a.certified:
        return HeightValue(h.value, h.abs_error, h.method + ";assumed-minpoly")
    return h


# -- heights of algebraic numbers: circle integral -------------------------


def mahler_integral_height(f: UniPoly, tol: float = 1e-6) -> HeightValue:
    """(1/deg f) integral of log|f| over the unit circle, by quadrature.

    The circle is split at the arguments of the roots; the tanh-sinh rule
    then handles the integrable log singularities sitting at panel ends.
    An independent check on the root formula, not a substitute for it.
    """
    F = f.primitive_integer()
    n = F.degree
    if n < 1:
        raise ValueError("need degree >= 1")
    coeffs = F.int_coeffs()

    from .roots import _aberth, _aberth_f64
    from .factor import squarefree_part_certified

    sf, _note = squarefree_part_certified(F)
    if sf.degree >= 1:
        sf_coeffs = sf.int_coeffs()
        approx = _aberth(sf_coeffs, 128, warm=_aberth_f64(sf_coeffs))
    else:
        approx = []
    splits = set()
    for z in approx:
        t = float(mpmath.arg(z)) / (2 * math.pi)
        t %= 1.0
        splits.add(round(t, 12))
    points = sorted({0.0, 1.0} | {s for s in splits if 0.0 < s < 1.0})

    dps = max(25, int(-math.log10(tol)) + 12)
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(c) for c in coeffs]

        def integrand(t):
            z = mpmath.expjpi(2 * t)
            acc = mpmath.mpc(0)
            for c in reversed(cs):
                acc = acc * z + c
            m = abs(acc)
            if m == 0:
                return mpmath.mpf(0)
            return mpmath.log(m)

        total, est_err = mpmath.quad(integrand, points, error=True)
        value = float(total) / n
        err = float(est_err) / n + 10.0 ** (-(dps - 6)) + 1e-14 * (1 + abs(value))
    return _clamped(value, err, "quadrature")


# -- heights of points and polynomials -------------------------------------


def height_point(P: ProjectivePoint, norm: str = "inf") -> HeightValue:
    """Weil height of a rational projective point: sup-norm or l2-norm flavor.

    Integer gcd-1 coordinates make every finite place contribute zero, so
    only the archimedean norm remains and the value is exact up to float
    rounding.
    """
    coords = P.coords
    if norm == "inf":
        value = _log_int(max(abs(c) for c in coords))
    elif norm == "l2":
        value = 0.5 * _log_int(sum(c * c for c in coords))
    else:
        raise ValueError("norm must be 'inf' or 'l2'")
    err = 5e-15 * (1.0 + abs(value))
    return HeightValue(value, err, "exact")


def _coefficient_point(obj) -> ProjectivePoint:
    if isinstance(obj, UniPoly):
        vec = list(obj.coeffs)
    elif hasattr(obj, "coefficient_vector"):
        vec = obj.coefficient_vector()
    else:
        vec = [Fraction(c) for c in obj]
    vec = [c for c in vec if c != 0]
    if not vec:
        raise ValueError("zero polynomial has no height")
    if len(vec) == 1:
        vec = vec + [Fraction(0)]  # height of a monomial form is 0
        return ProjectivePoint(vec)
    return ProjectivePoint(vec)


def height_poly(f, norm: str = "inf") -> HeightValue:
    """Height of the coefficient vector of a polynomial (any arity),
    viewed as a projective point."""
    return height_point(_coefficient_point(f), norm=norm)


# -- the norm comparison ---------------------------------------------------


@dataclass(frozen=True)
class SandwichReport:
    h_inf: HeightValue
    h_l2: HeightValue
    ambient_dim: int
    upper_gap: float       # = h_inf + log(N+1)/2 - h_l2, must be >= 0
    lower_gap: float       # = h_l2 - h_inf, must be >= 0
    ok: bool


def sandwich_check(P: ProjectivePoint) -> SandwichReport:
    """h_inf <= h_l2 <= h_inf + log(N+1)/2, with float-error slack."""
    h_inf = height_point(P, "inf")
    h_l2 = height_point(P, "l2")
    N = P.ambient_dim
    slack = h_inf.abs_error + h_l2.abs_error + 1e-14
    lower = h_l2.value - h_inf.value
    upper = h_inf.value + 0.5 * math.log(N + 1) - h_l2.value
    ok = lower >= -slack and upper >= -slack
    return SandwichReport(h_inf, h_l2, N, upper, lower, ok)
