"""Certified complex root isolation.

Approximation by the Aberth-Ehrlich simultaneous iteration (a vectorized
double-precision pass, refined in mpmath), then an a-posteriori
certificate: for squarefree f of degree n and any point z, the disk
around z of radius n*|f(z)/f'(z)| contains at least one root (from
f'/f = sum 1/(z - a_i)).  If the n disks are pairwise disjoint, each
contains exactly one root, and that statement does not depend on the
floating point path that produced the centers.  The certificate is
evaluated in integer fixed point with outward error accounting, so the
radius is a true bound without exact-rational Horner costs.

Centers are stored as exact Gaussian rationals, radii as exact rational
upper bounds, so downstream interval reasoning stays honest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath
import numpy as np

from .unipoly import UniPoly
from . import zpoly

PREC_CEILING = 16384


class PrecisionExhausted(RuntimeError):
    pass


# extra fractional bits for the rational sqrt bounds; without the
# scaling, small-denominator inputs would get only integer resolution
_SQRT_SCALE = 1 << 64


def _sqrt_up(q: Fraction) -> Fraction:
    """Rational upper bound for sqrt(q), q >= 0."""
    if q < 0:
        raise ValueError
    n, d = q.numerator, q.denominator
    target = n * d * _SQRT_SCALE * _SQRT_SCALE
    s = isqrt(target)
    if s * s < target:
        s += 1
    return Fraction(s, d * _SQRT_SCALE)


def _sqrt_down(q: Fraction) -> Fraction:
    if q < 0:
        raise ValueError
    n, d = q.numerator, q.denominator
    return Fraction(isqrt(n * d * _SQRT_SCALE * _SQRT_SCALE), d * _SQRT_SCALE)


@dataclass(frozen=True)
class ComplexBall:
    """Closed disk: center re + im*i, radius. All entries exact rationals."""

    re: Fraction
    im: Fraction
    radius: Fraction

    def center(self) -> complex:
        return complex(self.re, self.im)

    def mid_mpc(self):
        return mpmath.mpc(mpmath.mpf(self.re.numerator) / self.re.denominator,
                          mpmath.mpf(self.im.numerator) / self.im.denominator)

    def abs_squared_center(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def abs_upper(self) -> Fraction:
        return _sqrt_up(self.abs_squared_center()) + self.radius

    def abs_lower(self) -> Fraction:
        lo = _sqrt_down(self.abs_squared_center()) - self.radius
        return lo if lo > 0 else Fraction(0)

    def may_be_real(self) -> bool:
        return abs(self.im) <= self.radius

    def distance_exceeds(self, other: "ComplexBall") -> bool:
        """True if the two disks are provably disjoint (conservative)."""
        d2 = (self.re - other.re) ** 2 + (self.im - other.im) ** 2
        return d2 > 2 * (self.radius ** 2 + other.radius ** 2)


def _mpf_to_fraction(x) -> Fraction:
    if isinstance(x, int):
        return Fraction(x)
    if not mpmath.isfinite(x):
        raise ValueError("nonfinite value")
    if isinstance(x, float):
        return Fraction(x)
    # read the mantissa/exponent pair off the mpf itself: reconstructing
    # through mpmath.mpf(x) would round to the ambient precision
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    m = -man if sign else man
    if exp >= 0:
        return Fraction(m * (1 << exp))
    return Fraction(m, 1 << (-exp))


def _aberth_f64(coeffs: list[int], max_steps: int = 300):
    """Vectorized double-precision Aberth pass for warm starts.

    Coefficients are scaled by a common power of two so that huge
    integers survive the float conversion.  Returns a list of complex
    approximations, or None when double precision cannot represent the
    problem (degenerate scaling, overflow mid-iteration).
    """
    n = len(coeffs) - 1
    if n < 2:
        return None
    top = max(abs(c) for c in coeffs)
    shift = top.bit_length() - 1

    def scaled(c: int) -> float:
        s = max(0, abs(c).bit_length() - 54)
        m = float(c >> s) if c >= 0 else -float(-c >> s)
        return math.ldexp(m, s - shift)

    cs = np.array([scaled(c) for c in coeffs], dtype=np.float64)
    if cs[-1] == 0.0 or not np.all(np.isfinite(cs)):
        return None
    dcs = cs[1:] * np.arange(1, n + 1, dtype=np.float64)
    # Fujiwara-style inclusion radius from bit lengths; the overflow
    # guard keeps radius^n inside double range during Horner
    lc_bits = abs(coeffs[-1]).bit_length()
    ratios = [(abs(coeffs[k]).bit_length() - lc_bits) / (n - k)
              for k in range(n) if coeffs[k]]
    r_log2 = 1.0 + max(0.0, max(ratios, default=0.0))
    if n * r_log2 > 1000.0:
        return None
    radius = 2.0 ** r_log2
    k = np.arange(n, dtype=np.float64)
    z = radius * np.exp(1j * (2.0 * np.pi * k / n + 0.37 * np.pi))
    with np.errstate(all="ignore"):
        for _step in range(max_steps):
            fz = np.zeros(n, dtype=np.complex128)
            for c in cs[::-1]:
                fz = fz * z + c
            dfz = np.zeros(n, dtype=np.complex128)
            for c in dcs[::-1]:
                dfz = dfz * z + c
            w = np.where(dfz != 0, fz / np.where(dfz != 0, dfz, 1.0), 0.0)
            D = z[:, None] - z[None, :]
            np.fill_diagonal(D, 1.0)
            S = (1.0 / D).sum(axis=1) - 1.0
            corr = w / (1.0 - w * S)
            corr = np.where(np.isfinite(corr), corr, 0.0)
            z = z - corr
            if not np.all(np.isfinite(z)):
                return None
            move = np.max(np.abs(corr) / np.maximum(1.0, np.abs(z)))
            if move < 5e-14:
                break
    return [complex(t) for t in z]


def _aberth(coeffs, prec, warm=None, max_steps=220):
    """Approximate all roots of the integer polynomial at binary precision."""
    n = len(coeffs) - 1
    with mpmath.workprec(prec):
        cs = [mpmath.mpf(c) for c in coeffs]
        dcs = [k * c for k, c in enumerate(cs)][1:]
        if warm is not None:
            z = [mpmath.mpc(w) for w in warm]
        else:
            lead = abs(cs[-1])
            radius = 1 + max(abs(c) / lead for c in cs[:-1])
            z = [
                radius * mpmath.expjpi(2 * mpmath.mpf(k) / n + mpmath.mpf(37) / 100)
                for k in range(n)
            ]

        def horner(cl, t):
            acc = mpmath.mpc(0)
            for c in reversed(cl):
                acc = acc * t + c
            return acc

        eps = mpmath.mpf(2) ** (-prec + 8)
        # ill-conditioned inputs plateau at their evaluation-noise floor
        # well above eps; a few sweeps without a factor-2 improvement mean
        # this rung has given what it can and certification should judge.
        # cold circle starts shuffle roots around early, so they get a
        # longer grace period than warm starts
        stall_limit = 3 if warm is not None else 4
        min_sweeps = 3 if warm is not None else 8
        best = None
        stall = 0
        for _step in range(max_steps):
            moved = mpmath.mpf(0)
            for k in range(n):
                fz = horner(cs, z[k])
                dfz = horner(dcs, z[k])
                if dfz == 0:
                    z[k] = z[k] * (1 + mpmath.mpf(1) / 65536) + mpmath.mpf(1) / 65536
                    moved = max(moved, mpmath.mpf(1))
                    continue
                w = fz / dfz
                s = mpmath.mpc(0)
                for j in range(n):
                    if j != k:
                        d = z[k] - z[j]
                        if d == 0:
                            d = eps
                        s += 1 / d
                denom = 1 - w * s
                if denom == 0:
                    corr = w
                else:
                    corr = w / denom
                z[k] = z[k] - corr
                scale = max(mpmath.mpf(1), abs(z[k]))
                moved = max(moved, abs(corr) / scale)
            if moved < eps:
                break
            if best is not None and moved >= best / 2:
                stall += 1
                if stall >= stall_limit and _step >= min_sweeps:
                    break
            else:
                stall = 0
            if best is None or moved < best:
                best = moved
        return [mpmath.mpc(t) for t in z]


def _isqrt_up(x: int) -> int:
    s = isqrt(x)
    if s * s < x:
        s += 1
    return s


def _dyadic(q: Fraction, L: int) -> int:
    """Nearest integer to q * 2^L."""
    num = q.numerator << L
    quo, rem = divmod(num, q.denominator)
    if 2 * rem >= q.denominator:
        quo += 1
    return quo


def _fixed_horner(coeffs: list[int], a: int, b: int, L: int, zu: int):
    """Horner at the exact dyadic point (a + b*i)/2^L, L fractional bits.

    Returns (A, B, E): the true value lies within E ulp of (A + B*i)/2^L.
    zu must be an upper bound for |z| in ulp units.  Error accounting is
    outward: each step carries the previous error around the multiply and
    adds the two floor-shift roundings (under sqrt(2) combined).
    """
    A = B = E = 0
    for c in reversed(coeffs):
        A, B = (A * a - B * b) >> L, (A * b + B * a) >> L
        A += c << L
        E = ((E * zu) >> L) + 3
    return A, B, E


def _certify(coeffs: list[int], approx, frac_bits: int
             ) -> list[ComplexBall] | None:
    """A-posteriori disk certificate; None if the disks fail to separate.

    Radii bound n*|f(c)/f'(c)| at the exact rounded center c: the fixed
    point evaluation gives |f| from above and |f'| from below, so the
    quotient, and with it the root-containment disk, is a true bound.
    """
    n = len(coeffs) - 1
    L = frac_bits
    one = 1 << L
    dcoeffs = [k * c for k, c in enumerate(coeffs)][1:]
    balls = []
    for z in approx:
        a = _dyadic(_mpf_to_fraction(z.real), L)
        b = _dyadic(_mpf_to_fraction(z.imag), L)
        zu = _isqrt_up(a * a + b * b) + 1
        fa, fb, fe = _fixed_horner(coeffs, a, b, L, zu)
        da, db, de = _fixed_horner(dcoeffs, a, b, L, zu)
        f_up = _isqrt_up(fa * fa + fb * fb) + fe
        df_low = isqrt(da * da + db * db) - de
        if df_low <= 0:
            return None
        balls.append(ComplexBall(Fraction(a, one), Fraction(b, one),
                                 Fraction(n * f_up, df_low)))
    for i in range(n):
        for j in range(i + 1, n):
            if not balls[i].distance_exceeds(balls[j]):
                return None
    return balls


def complex_roots(f: UniPoly, tol: float = 1e-12,
                  warm=None) -> list[ComplexBall]:
    """Certified root balls of a squarefree polynomial, radius <= tol each.

    Deterministic: fixed initial configuration, fixed precision ladder,
    canonical ordering (decreasing modulus, then increasing principal
    argument, computed from the exact centers).  A caller holding good
    approximations already (numeric continuation along a family, say)
    can pass them as `warm`; certification does not trust them, so a bad
    warm start costs time, never correctness.
    """
    F = f.primitive_integer()
    if F.degree < 1:
        raise ValueError("need degree >= 1")
    coeffs = F.int_coeffs()
    if zpoly.squarefree_certificate_mod_p(coeffs) is None:
        from .unipoly import is_squarefree

        if not is_squarefree(F):
            raise ValueError("polynomial must be squarefree")
    n = F.degree
    if n == 1:
        root = Fraction(-coeffs[0], coeffs[1])
        return [ComplexBall(root, Fraction(0), Fraction(0))]

    tol_frac = Fraction(tol).limit_denominator(10 ** 40)
    # clustered-conjugate inputs need roughly 2n working bits before the
    # disks separate; starting there skips rungs that cannot certify.
    # tight tolerances also push the floor up
    prec = max(64, 1 << (2 * n - 1).bit_length(),
               1 << int(8 + math.log2(max(4.0, n / max(tol, 1e-300)))
                        ).bit_length())
    if warm is not None and len(warm) != n:
        warm = None
    if warm is None:
        warm = _aberth_f64(coeffs)
    while prec <= PREC_CEILING:
        approx = _aberth(coeffs, prec, warm=warm)
        balls = _certify(coeffs, approx, prec + 64)
        if balls is not None and all(b.radius <= tol_frac for b in balls):
            return _sort_balls(balls)
        warm = approx
        prec *= 2
    raise PrecisionExhausted(f"no certificate below precision {PREC_CEILING}")


def _sort_balls(balls: list[ComplexBall]) -> list[ComplexBall]:
    import math

    def key(b: ComplexBall):
        a2 = float(b.abs_squared_center())
        arg = math.atan2(float(b.im), float(b.re))
        return (-a2, arg)

    return sorted(balls, key=key)


def select_root(balls: list[ComplexBall]) -> ComplexBall:
    """Largest modulus, ties by smallest principal argument.

    The balls from complex_roots are already in that order, and at the
    default tolerance the moduli of distinct roots either coincide exactly
    (conjugates) or differ detectably, so taking the head is the rule.
    """
    return balls[0]


def real_ball_count(balls: list[ComplexBall]) -> int:
    """Number of balls whose root is provably real.

    For a real squarefree polynomial with all disks pairwise disjoint, the
    root in a disk is real iff |Im center| <= radius: a nonreal root has
    its conjugate in a different, disjoint disk, forcing |Im| > radius.
    """
    return sum(1 for b in balls if b.may_be_real())
