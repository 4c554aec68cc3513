"""Heights of projective varieties through their dual resultant forms.

Desk scale only: points in P^N, hypersurfaces up to P^3 of degree 4, and
conic-with-line intersection cycles in P^2.  The dual form of a
hypersurface is exact (the defining form composed with the signed-minor
cofactor map); its archimedean part is a Monte-Carlo mean of log|F| over
products of unit spheres, and the finite part is always zero because
forms are stored primitive.  The tail of the module checks the
degree/height inequality for hyperplane intersections numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .heights import HeightValue, ProjectivePoint, height_point
from .mpoly import MPoly

CHUNK = 1 << 17
MAX_AMBIENT = 3
MAX_DEGREE = 4


class ScaleCapExceeded(ValueError):
    """Ambient dimension or degree beyond the supported desk scale."""


class LineContained(ValueError):
    """The line lies inside the hypersurface; no proper intersection."""


# -- domain types ----------------------------------------------------------


@dataclass(frozen=True)
class Hypersurface:
    N: int
    form: MPoly

    def __post_init__(self):
        if self.form.is_zero:
            raise ValueError("form must be nonzero")
        if self.form.nvars != self.N + 1:
            raise ValueError("form must have N+1 variables")
        if not self.form.is_homogeneous():
            raise ValueError("form must be homogeneous")
        object.__setattr__(self, "form", self.form.primitive_integer())

    @property
    def degree(self) -> int:
        return self.form.total_degree()

    @property
    def dim(self) -> int:
        return self.N - 1

    @classmethod
    def parse(cls, text: str, N: Optional[int] = None) -> "Hypersurface":
        if N is None:
            for n in range(1, MAX_AMBIENT + 1):
                names = tuple(f"x{i}" for i in range(n + 1))
                try:
                    f = MPoly.parse(text, names)
                except Exception:
                    continue
                used = {i for e in f.terms for i, k in enumerate(e) if k}
                if used and max(used) == n:
                    return cls(n, f)
            raise ValueError("could not infer the ambient dimension")
        names = tuple(f"x{i}" for i in range(N + 1))
        return cls(N, MPoly.parse(text, names))


@dataclass(frozen=True)
class SphereIntegralEstimate:
    value: float
    std_error: float
    samples: int
    seed: int


@dataclass(frozen=True)
class ZeroCycleChow:
    u_form: MPoly                      # primitive integer, 3 dual variables
    components: tuple                  # ((MPoly, multiplicity), ...)
    points: tuple                      # rational points found, if any

    @property
    def degree(self) -> int:
        return self.u_form.total_degree()


# -- sphere sampling -------------------------------------------------------


def _sub_seed(seed: int, idx: int) -> int:
    return (seed * 1000003 + idx) % (2 ** 63 - 1)


def sphere_log_integral(F: MPoly, blocks: int, N: int, samples: int,
                        seed: int) -> SphereIntegralEstimate:
    """Mean of log|F| over a product of `blocks` unit spheres in C^(N+1).

    Uniform sphere points come from normalized complex Gaussians; the
    counter-based generator makes the estimate a pure function of
    (seed, samples).  std_error is sample std / sqrt(samples).
    """
    if F.is_zero:
        raise ValueError("form must be nonzero")
    if F.nvars != blocks * (N + 1):
        raise ValueError("variable count must be blocks * (N+1)")
    if samples < 2:
        raise ValueError("need at least two samples")
    if F.total_degree() == 0:
        c = abs(float(F.terms[(0,) * F.nvars]))
        return SphereIntegralEstimate(math.log(c), 0.0, samples, seed)

    ev = F.numpy_evaluator()
    rng = np.random.Generator(np.random.Philox(key=seed))
    width = N + 1
    total = 0.0
    total_sq = 0.0
    kept = 0
    done = 0
    while done < samples:
        n = min(CHUNK, samples - done)
        re = rng.standard_normal((n, blocks, width))
        im = rng.standard_normal((n, blocks, width))
        z = re + 1j * im
        norms = np.sqrt(np.sum(z.real ** 2 + z.imag ** 2, axis=2,
                               keepdims=True))
        z = z / norms
        vals = ev(z.reshape(n, blocks * width))
        logs = np.log(np.abs(vals))
        good = np.isfinite(logs)
        logs = logs[good]
        total += float(np.sum(logs))
        total_sq += float(np.sum(logs * logs))
        kept += int(logs.size)
        done += n
    if kept < samples // 2:
        raise ArithmeticError("form vanished on too many sample points")
    mean = total / kept
    var = max(0.0, (total_sq - kept * mean * mean) / (kept - 1))
    return SphereIntegralEstimate(mean, math.sqrt(var / kept), kept, seed)


def _correction(k: int, deg: int, N: int) -> float:
    # k = (dim of the cycle) + 1 blocks; harmonic-type archimedean term
    return k * deg * math.fsum(1.0 / (2.0 * j) for j in range(1, N + 1))


def _mc_height(raw: float, sigma: float, method: str) -> HeightValue:
    if raw < 0.0:
        # keep the invariant value >= 0; the raw estimate stays readable
        return HeightValue(0.0, sigma + (-raw),
                           method + f";clamped-raw={raw!r}")
    return HeightValue(raw, sigma, method)


# -- heights ---------------------------------------------------------------


def chow_height_point(P: ProjectivePoint, samples: int = 10 ** 6,
                      seed: int = 0) -> HeightValue:
    """Height of a point through its dual linear form u . P.

    The coordinates are primitive integers, so the finite part is zero
    and the value is the sphere integral plus sum_{j<=N} 1/(2j); that
    equals the l2 height up to Monte-Carlo error.
    """
    N = P.ambient_dim
    F = MPoly.linear_form(P.coords)
    est = sphere_log_integral(F, 1, N, samples, seed)
    raw = est.value + _correction(1, 1, N)
    return _mc_height(raw, est.std_error,
                      f"chow-mc;samples={est.samples};seed={seed}")


def _signed_minor_map(N: int) -> list[MPoly]:
    """Coordinates of the intersection point of N hyperplanes in P^N.

    Entry j is (-1)^j times the maximal minor of the N x (N+1) matrix of
    dual vectors with column j removed; variables are the N blocks laid
    out consecutively.
    """
    nv = N * (N + 1)

    def var(block, col):
        return MPoly.variable(nv, block * (N + 1) + col)

    def det(cols, rows):
        # Laplace expansion along the last row
        if len(cols) == 1:
            return var(rows[0], cols[0])
        acc = MPoly.zero(nv)
        for pos, c in enumerate(cols):
            sub = det(cols[:pos] + cols[pos + 1:], rows[:-1])
            term = var(rows[-1], c) * sub
            acc = acc + term if (len(rows) - 1 + pos) % 2 == 0 else acc - term
        return acc

    out = []
    for j in range(N + 1):
        keep = [c for c in range(N + 1) if c != j]
        m = det(keep, list(range(N)))
        if j % 2 == 1:
            m = -m
        out.append(m)
    return out


def chow_dual_form(X: Hypersurface) -> MPoly:
    """Exact dual form: X composed with the signed-minor map, primitive."""
    if X.N > MAX_AMBIENT or X.degree > MAX_DEGREE:
        raise ScaleCapExceeded(f"supported scale is N <= {MAX_AMBIENT}, "
                               f"degree <= {MAX_DEGREE}")
    minors = _signed_minor_map(X.N)
    return X.form.compose(minors).primitive_integer()


def chow_height_hypersurface(X: Hypersurface, samples: int = 10 ** 6,
                             seed: int = 0) -> HeightValue:
    R = chow_dual_form(X)
    est = sphere_log_integral(R, X.N, X.N, samples, seed)
    raw = est.value + _correction(X.N, X.degree, X.N)
    return _mc_height(raw, est.std_error,
                      f"chow-mc;samples={est.samples};seed={seed}")


def zero_cycle_height(Y: ZeroCycleChow, samples: int = 10 ** 6,
                      seed: int = 0) -> HeightValue:
    """Sum of component heights, multiplicity counted; errors in quadrature."""
    total = 0.0
    var = 0.0
    methods = []
    for idx, (comp, mult) in enumerate(Y.components):
        est = sphere_log_integral(comp, 1, 2, samples, _sub_seed(seed, idx))
        h = est.value + _correction(1, comp.total_degree(), 2)
        total += mult * h
        var += (mult * est.std_error) ** 2
        methods.append(f"{mult}x(deg {comp.total_degree()})")
    return _mc_height(total, math.sqrt(var),
                      f"chow-mc;components={'+'.join(methods)};"
                      f"samples={samples};seed={seed}")


# -- conic meets line ------------------------------------------------------


def _as_line(L) -> tuple:
    if isinstance(L, Hypersurface):
        if L.N != 2 or L.degree != 1:
            raise ValueError("line must be a degree-1 form in P^2")
        cs = [int(L.form.terms.get(tuple(int(i == k) for i in range(3)), 0))
              for k in range(3)]
        return tuple(cs)
    cs = tuple(int(c) for c in L)
    if len(cs) != 3 or all(c == 0 for c in cs):
        raise ValueError("line must be three integers, not all zero")
    g = math.gcd(*[abs(c) for c in cs])
    return tuple(c // g for c in cs)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def _primitive_vec(v):
    g = math.gcd(*[abs(int(c)) for c in v])
    v = tuple(int(c) // g for c in v)
    for c in v:
        if c:
            return v if c > 0 else tuple(-x for x in v)
    raise ValueError("zero vector")


def intersect_conic_line(X: Hypersurface, L) -> ZeroCycleChow:
    """Dual form of the degree-2 cycle X meet L, split over the rationals.

    The line is parametrized by two integer points A, B; the restricted
    binary form q(s,t) = X(sA+tB) has the intersection points as roots,
    and the cycle's dual form is q20 b^2 - q11 a b + q02 a^2 with
    a = u.A, b = u.B.  Rational roots of q give linear components (a
    double root is one component of multiplicity 2); otherwise the
    quadratic is irreducible and is its own single component.
    """
    if X.N != 2 or X.degree != 2:
        raise ValueError("need a conic in P^2")
    ell = _as_line(L)
    cands = []
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        c = _cross(ell, e)
        if any(c):
            cands.append(c)
    A = cands[0]
    B = next(c for c in cands[1:] if any(_cross(A, c)))

    def ev(p):
        return int(X.form.evaluate([Fraction(c) for c in p]))

    q20, q02 = ev(A), ev(B)
    q11 = ev([a + b for a, b in zip(A, B)]) - q20 - q02
    if q20 == 0 and q11 == 0 and q02 == 0:
        raise LineContained("the line lies inside the conic")

    alpha = MPoly.linear_form(A)
    beta = MPoly.linear_form(B)
    u_form = (beta * beta * q20 - alpha * beta * q11
              + alpha * alpha * q02).primitive_integer()

    def linear_component(point):
        p = _primitive_vec(point)
        return MPoly.linear_form(p), p

    comps = []
    pts = []
    if q20 == 0 and q02 == 0:
        for pt in (A, B):
            c, p = linear_component(pt)
            comps.append((c, 1))
            pts.append(p)
    elif q20 == 0:
        # root (1:0) is A; the other root is (q02 : -q11)
        for pt in (A, tuple(q02 * a - q11 * b for a, b in zip(A, B))):
            c, p = linear_component(pt)
            comps.append((c, 1))
            pts.append(p)
    else:
        disc = q11 * q11 - 4 * q20 * q02
        if disc == 0:
            pt = tuple(-q11 * a + 2 * q20 * b for a, b in zip(A, B))
            c, p = linear_component(pt)
            comps.append((c, 2))
            pts.append(p)
        elif disc > 0 and math.isqrt(disc) ** 2 == disc:
            d = math.isqrt(disc)
            for sgn in (1, -1):
                pt = tuple((-q11 + sgn * d) * a + 2 * q20 * b
                           for a, b in zip(A, B))
                c, p = linear_component(pt)
                comps.append((c, 1))
                pts.append(p)
        else:
            comps.append((u_form, 1))

    prod = MPoly.constant(3, 1)
    for c, m in comps:
        prod = prod * (c ** m)
    prod = prod.primitive_integer()
    if prod != u_form and prod != -u_form:
        raise ArithmeticError("component product does not match the u-form")
    return ZeroCycleChow(u_form, tuple(comps), tuple(pts))


# -- the intersection inequality, numerically ------------------------------


@dataclass(frozen=True)
class RemondInstance:
    line: tuple
    cycle: ZeroCycleChow
    h_cycle: HeightValue
    rhs: float
    sigma: float               # combined 1-sigma error for the comparison
    margin: float              # rhs - h_cycle, >= -3 sigma when ok
    degree_ok: bool
    ok: bool


@dataclass(frozen=True)
class RemondReport:
    h_surface: HeightValue
    H_bound: float
    instances: tuple
    all_ok: bool


def remond_check(X: Hypersurface, lines: Sequence, H_bound: float,
                 samples: int = 10 ** 6, seed: int = 0) -> RemondReport:
    """h(X meet L) <= h(X) + (deg X) H for hyperplane cuts of a conic.

    Degrees are checked exactly (Bezout: the cycle has degree deg X);
    heights are Monte-Carlo, so the inequality is asserted within three
    combined standard errors.  Every line must have l2 height at most
    H_bound.
    """
    if X.N != 2 or X.degree != 2:
        raise ValueError("need a conic in P^2")
    hX = chow_height_hypersurface(X, samples=samples, seed=_sub_seed(seed, 0))
    out = []
    all_ok = True
    for k, L in enumerate(lines):
        ell = _as_line(L)
        hL = height_point(ProjectivePoint(ell), "l2")
        if hL.value > H_bound + 1e-12:
            raise ValueError(f"line {ell} exceeds the height budget")
        Y = intersect_conic_line(X, ell)
        hY = zero_cycle_height(Y, samples=samples, seed=_sub_seed(seed, k + 1))
        degree_ok = Y.degree <= X.degree
        rhs = hX.value + X.degree * H_bound
        sigma = math.hypot(hX.abs_error, hY.abs_error)
        margin = rhs - hY.value
        ok = degree_ok and margin >= -3.0 * sigma
        all_ok = all_ok and ok
        out.append(RemondInstance(ell, Y, hY, rhs, sigma, margin,
                                  degree_ok, ok))
    return RemondReport(hX, H_bound, tuple(out), all_ok)
