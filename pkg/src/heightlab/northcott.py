"""Families of algebraic numbers with certified height bounds.

Two kinds of object live here.  `iterate_sequence` builds the chain
x_0, x_1, ... with P(x_{i+1}, x_i) = 0: each step eliminates t from
P(x, t) against the current minimal polynomial, factors the resultant
(or certifies it squarefree and takes it whole), and follows one root
numerically to know which factor is the right one.  The remaining
operations wrap classical families whose height bounds come with a
finite certificate: the degree/height bound for iterated sequences,
trinomials x^i - x - 1, monic polynomials with prime constant term,
radical towers p^(1/p^i), and the discriminant quotient bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from mpmath import mp

from .bipoly import BiPoly, resultant_t
from .factor import (DEGREE_CAP, DegreeCapExceeded, factor_rationals,
                     is_irreducible, squarefree_part_certified)
from .heights import AlgebraicNumber, HeightValue, height_poly, \
    mahler_root_height
from .primes import is_prime
from .unipoly import UniPoly

TRACK_PREC_START = 128
TRACK_PREC_CEILING = 8192


class RootTrackingError(RuntimeError):
    """Numeric continuation could not tell two candidate roots apart."""


class LengthConditionFailed(ValueError):
    """Coefficient length is not below twice the designated prime."""


# -- sequence containers ---------------------------------------------------


@dataclass(frozen=True)
class SequenceSpec:
    P: BiPoly
    x0: AlgebraicNumber
    root_selection: str = "largest-modulus"
    mode: str = "certified"          # or "assume-irreducible"
    max_index: int = 5

    def __post_init__(self):
        if self.P.is_zero or self.P.deg_x <= self.P.deg_t or self.P.deg_t < 1:
            raise ValueError("need deg_x P > deg_t P > 0")
        if self.mode not in ("certified", "assume-irreducible"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.root_selection != "largest-modulus":
            raise ValueError(f"unknown root selection {self.root_selection!r}")
        if self.max_index < 0:
            raise ValueError("max_index must be >= 0")


@dataclass(frozen=True)
class ProfileRow:
    index: int
    degree: int
    height: HeightValue
    tag: str
    min_poly: Optional[UniPoly] = None


@dataclass(frozen=True)
class SequenceProfile:
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))

    @property
    def max_height(self) -> float:
        return max(r.height.value for r in self.rows)

    @property
    def min_height(self) -> float:
        return min(r.height.value for r in self.rows)

    def heights(self) -> list[float]:
        return [r.height.value for r in self.rows]

    def row(self, index: int) -> ProfileRow:
        for r in self.rows:
            if r.index == index:
                return r
        raise KeyError(index)


@dataclass(frozen=True)
class NorthcottEstimate:
    """Certificate-backed upper bound next to empirical heights.

    For the habegger certificate the bound dominates the whole profile.
    Length and tower bounds speak about the tail of a family whose
    heights decrease, so `tail_from` records the first index the bound
    constrains; earlier rows are empirical context only.
    """

    certified_upper_bound: Optional[float]
    certificate: str                  # habegger | length | tower | exact
    profile: Optional[SequenceProfile] = None
    Q: Optional[float] = None
    q: Optional[float] = None
    tail_from: int = 0

    def __post_init__(self):
        if self.certificate not in ("habegger", "length", "tower", "exact"):
            raise ValueError(f"unknown certificate {self.certificate!r}")
        if self.certified_upper_bound is not None and self.profile is not None:
            for r in self.profile.rows:
                if r.index < self.tail_from:
                    continue
                if r.height.value - r.height.abs_error \
                        > self.certified_upper_bound + 1e-12:
                    raise ValueError(
                        "certified bound %.6g does not dominate height %.6g "
                        "at index %d" % (self.certified_upper_bound,
                                         r.height.value, r.index))


# -- numeric continuation --------------------------------------------------


def _coeffs_in_x(P: BiPoly) -> list[UniPoly]:
    """Coefficient of x^j, as a polynomial in t, for j = 0..deg_x."""
    cols: list[dict] = [{} for _ in range(P.deg_x + 1)]
    for (i, j), c in P.terms.items():
        cols[i][j] = c
    out = []
    for col in cols:
        if not col:
            out.append(UniPoly.zero())
        else:
            coeffs = [col.get(k, Fraction(0)) for k in range(max(col) + 1)]
            out.append(UniPoly(coeffs))
    return out


def _eval_unipoly_mpc(f: UniPoly, z):
    acc = mp.mpc(0)
    for c in reversed(f.coeffs):
        acc = acc * z + mp.mpc(c.numerator) / c.denominator
    return acc


def _refine_root(f: UniPoly, z0, prec: int):
    """Newton refinement of an approximate root of f at working precision."""
    df = f.derivative()
    with mp.workprec(prec):
        z = mp.mpc(z0)
        for _ in range(prec):
            fz = _eval_unipoly_mpc(f, z)
            dz = _eval_unipoly_mpc(df, z)
            if dz == 0:
                break
            step = fz / dz
            z = z - step
            if abs(step) < mp.mpf(2) ** (-prec + 8) * (1 + abs(z)):
                break
        return z


def _step_roots(P_cols: list[UniPoly], z, prec: int) -> list:
    """All roots of P(x, t=z), numerically, at working precision."""
    with mp.workprec(prec):
        coeffs = [_eval_unipoly_mpc(c, z) for c in P_cols]
        while coeffs and abs(coeffs[-1]) == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) < 2:
            raise RootTrackingError("x-degree collapsed at the tracked value")
        roots = mp.polyroots(list(reversed(coeffs)), maxsteps=200,
                             extraprec=prec)
        return list(roots)


def _select_root(roots: list, prec: int):
    """Largest modulus, ties broken by smallest principal argument."""
    keyed = sorted(roots, key=lambda r: (-float(abs(r)),
                                         float(mp.arg(r)) if r != 0 else 0.0))
    best = keyed[0]
    if len(keyed) > 1:
        nxt = keyed[1]
        close = abs(abs(best) - abs(nxt)) <= mp.mpf(2) ** (-20) * (1 + abs(best))
        if close and abs(mp.arg(best) - mp.arg(nxt)) <= mp.mpf(2) ** (-20):
            raise RootTrackingError("selection tie at current precision")
    return best


def _match_factor(factors: list[UniPoly], z, prec: int) -> UniPoly:
    """The factor vanishing at z; ratio gap of 2^20 or it is ambiguous."""
    with mp.workprec(prec):
        scored = []
        for f in factors:
            v = abs(_eval_unipoly_mpc(f, z))
            scored.append((v, f))
        scored.sort(key=lambda p: float(p[0]))
        best_v, best_f = scored[0]
        if len(scored) > 1:
            second_v = scored[1][0]
            if second_v <= best_v * (2 ** 20):
                raise RootTrackingError("factor match ambiguous")
        return best_f


def iterate_sequence(spec: SequenceSpec, height_tol: float = 1e-10
                     ) -> SequenceProfile:
    """Chain of exact minimal polynomials guided by one numeric root.

    Certified mode factors every resultant, so each reported minimal
    polynomial is proved irreducible; the cost is a degree cap.  In
    assume-irreducible mode the squarefree, content-free resultant is
    taken whole and the row tag says so.
    """
    P_cols = _coeffs_in_x(spec.P)
    m = spec.x0.min_poly
    prec = TRACK_PREC_START
    z = _refine_root(m, spec.x0.approx(), prec)

    x0_tag = "certified" if spec.x0.certified else "assumed-minpoly"
    rows = [ProfileRow(0, m.degree, mahler_root_height(m, tol=height_tol),
                       x0_tag, m)]

    # the full conjugate set rides along purely as a warm start for the
    # root isolation of each minimal polynomial (the coefficients get too
    # big for a cold double-precision pass around degree 100); tracked at
    # a precision sized for the final degree, dropped on any mismatch
    n_top = m.degree * max(1, spec.P.deg_x) ** spec.max_index
    track_prec = min(4096, 2 * n_top + 192)
    conj = _all_roots_numeric(m, track_prec)

    for i in range(1, spec.max_index + 1):
        R = resultant_t(spec.P, m).primitive_integer()
        if R.degree < 1:
            raise RootTrackingError("resultant degenerated to a constant")
        sf, sf_note = squarefree_part_certified(R)

        while True:
            try:
                z_new = _select_root(_step_roots(P_cols, z, prec), prec)
                if spec.mode == "certified":
                    factors = [f for f, _ in factor_rationals(sf)[1]]
                    m_new = _match_factor(factors, z_new, prec)
                    tag = "certified"
                else:
                    m_new = sf
                    tag = "assumed-irreducible;" + sf_note
                break
            except RootTrackingError:
                if prec >= TRACK_PREC_CEILING:
                    raise
                prec *= 2
                z = _refine_root(m, z, prec)

        if conj is not None:
            try:
                nxt = []
                for s in conj:
                    nxt.extend(_step_roots(P_cols, s, track_prec))
                if len(nxt) > m_new.degree:
                    # proper factor or repeated resultant roots: keep the
                    # children where m_new actually vanishes
                    with mp.workprec(track_prec):
                        nxt.sort(key=lambda r: abs(_eval_unipoly_mpc(m_new, r)))
                    nxt = nxt[:m_new.degree]
                conj = nxt if len(nxt) == m_new.degree else None
            except RootTrackingError:
                conj = None

        h = mahler_root_height(m_new, tol=height_tol, warm=conj)
        rows.append(ProfileRow(i, m_new.degree, h, tag, m_new))
        m = m_new
        z = _refine_root(m, z_new, prec)

    return SequenceProfile(tuple(rows))


def _all_roots_numeric(m: UniPoly, prec: int) -> list:
    """Every root of m, numerically, at working precision."""
    with mp.workprec(prec):
        cs = [mp.mpf(c) for c in reversed(m.int_coeffs())]
        return list(mp.polyroots(cs, maxsteps=200, extraprec=prec))


def conjugate_tracking_heights(P: BiPoly, x0, max_index: int,
                               prec_bits: int = 256) -> list[float]:
    """Purely numeric cross-check for `iterate_sequence` heights.

    Enumerates every conjugate of x_i at once: the level-i set is all
    roots of P(x, s) = 0 with s running over the level-(i-1) set.  The
    height estimate is the mean of log+ of the moduli, which matches the
    exact path when the true minimal polynomial has unit leading
    coefficient and full degree (the caller checks degrees).  For that
    to hold the level-0 set must already be the whole conjugate set, so
    an AlgebraicNumber seeds every root of its minimal polynomial; a
    bare number seeds only itself and tracks a single branch.  Returned
    list holds levels 1..max_index; no error bounds, oracle use only.
    """
    P_cols = _coeffs_in_x(P)
    out = []
    with mp.workprec(prec_bits):
        if isinstance(x0, AlgebraicNumber):
            level = _all_roots_numeric(x0.min_poly, prec_bits)
        elif isinstance(x0, Fraction):
            level = [mp.mpf(x0.numerator) / x0.denominator]
        else:
            level = [mp.mpc(x0)]
        for _ in range(max_index):
            nxt = []
            for s in level:
                nxt.extend(_step_roots(P_cols, s, prec_bits))
            h = math.fsum(float(mp.log(abs(r))) for r in nxt
                          if abs(r) > 1) / len(nxt)
            out.append(h)
            level = nxt
    return out


# -- the degree/height bound for iterated sequences ------------------------


def habegger_gamma(P: BiPoly) -> float:
    """5 * sqrt(log(2^min(dx,dt) (dx+1)(dt+1)) + h(P)) for nonzero P."""
    dx, dt = P.deg_x, P.deg_t
    if P.is_zero or dx < 1 or dt < 1:
        raise ValueError("need both partial degrees >= 1")
    hP = height_poly(P).value
    return 5.0 * math.sqrt(math.log((2.0 ** min(dx, dt)) * (dx + 1) * (dt + 1))
                           + hP)


def habegger_bound(spec,
                   profile: Optional[SequenceProfile] = None
                   ) -> NorthcottEstimate:
    """Certified height bound deg_t * (gamma dx / (dx - dt))^2.

    Takes a SequenceSpec or a bare BiPoly; only the polynomial enters
    the bound.  Also reports the recurrence data Q = gamma sqrt(deg_t)
    and q = deg_t/deg_x.  An empirical profile, when supplied, is
    attached and checked for domination.
    """
    P = spec.P if isinstance(spec, SequenceSpec) else spec
    dx, dt = P.deg_x, P.deg_t
    if dx <= dt or dt < 1:
        raise ValueError("bound needs deg_x P > deg_t P >= 1")
    gamma = habegger_gamma(P)
    bound = dt * (gamma * dx / (dx - dt)) ** 2
    return NorthcottEstimate(bound, "habegger", profile,
                             Q=gamma * math.sqrt(dt), q=dt / dx)


def recurrence_check(profile: SequenceProfile, P: BiPoly,
                     slack: float = 1e-9) -> bool:
    """h_{i+1} <= q h_i + Q max(h_i, h_{i+1})^(1/2) for consecutive rows."""
    gamma = habegger_gamma(P)
    dx, dt = P.deg_x, P.deg_t
    Q = gamma * math.sqrt(dt)
    q = dt / dx
    rows = sorted(profile.rows, key=lambda r: r.index)
    for a, b in zip(rows, rows[1:]):
        ha, hb = a.height.value, b.height.value
        tol = slack + a.height.abs_error + b.height.abs_error
        if hb > q * ha + Q * math.sqrt(max(ha, hb)) + tol:
            return False
    return True


# -- classical families ----------------------------------------------------


def selmer_family(max_i: int, height_tol: float = 1e-10) -> NorthcottEstimate:
    """Trinomials x^i - x - 1: irreducible, with i*h(root) <= log 3.

    The bound is the coefficient length: deg * h(root) <= log Mahler
    <= log ||f||_1 = log 3, so the family's heights tend to 0 and the
    certified upper bound is log(3)/max_i.
    """
    if max_i < 2:
        raise ValueError("need max_i >= 2")
    log3 = math.log(3.0)
    rows = []
    for i in range(2, max_i + 1):
        f = UniPoly.monomial(i) - UniPoly.x() - UniPoly.constant(1)
        if i <= DEGREE_CAP:
            if not is_irreducible(f):
                raise ArithmeticError(f"x^{i}-x-1 unexpectedly reducible")
            tag = "certified"
        else:
            tag = "assumed-irreducible;degree-cap"
        h = mahler_root_height(f, tol=height_tol)
        if h.value - h.abs_error > log3 / i + 1e-12:
            raise ArithmeticError(f"length bound violated at i={i}")
        rows.append(ProfileRow(i, i, h, tag, f))
    return NorthcottEstimate(log3 / max_i, "length",
                             SequenceProfile(tuple(rows)),
                             tail_from=max_i)


@dataclass(frozen=True)
class PrimeFamilyCertificate:
    poly: UniPoly
    prime: int
    length: int
    height_bound: float     # log(length)/degree, the liminf estimate
    reason: str


def prime_constant_family(entries: Iterable[tuple[UniPoly, int]]
                          ) -> list[PrimeFamilyCertificate]:
    """Irreducibility certificates for monic f with constant term +-p.

    If ||f||_1 < 2p then every root z of f satisfies
    p = |sum_{k>=1} a_k z^k| <= (||f||_1 - p) max(1,|z|)^deg, hence
    |z| > 1; but a proper monic factor with unit constant term would
    need a root of modulus <= 1.  So f is irreducible.  Each
    certificate reports log(||f||_1)/deg, the height bound for the
    root that the family's liminf argument uses.
    """
    certs = []
    for f, p in entries:
        f = UniPoly(f.coeffs)
        if f.degree < 1 or not f.is_integral():
            raise ValueError("need an integer polynomial of degree >= 1")
        if f.lc != 1:
            raise ValueError("need a monic polynomial")
        if p >= 2 ** 64:
            raise ValueError("designated prime too large for certification")
        if not is_prime(p):
            raise ValueError(f"designated constant {p} is not prime")
        if abs(int(f.constant_term)) != p:
            raise ValueError("constant term is not +-(designated prime)")
        length = sum(abs(int(c)) for c in f.coeffs)
        if length >= 2 * p:
            raise LengthConditionFailed(
                f"||f||_1 = {length} is not < 2p = {2 * p}")
        certs.append(PrimeFamilyCertificate(
            f, p, length, math.log(length) / f.degree,
            "prime constant term and ||f||_1 < 2p force every root "
            "outside the unit circle"))
    return certs


def radical_tower(p: int, max_i: int) -> NorthcottEstimate:
    """Heights log(p)/p^i of the roots of x^(p^i) - p.

    Each minimal polynomial is irreducible by the Eisenstein criterion
    at p, and every root has modulus p^(1/p^i) > 1, so the height is
    exactly log(p)/p^i.  Polynomials of degree above 4096 are not
    materialized; the heights are closed-form either way.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if max_i < 0:
        raise ValueError("max_i must be >= 0")
    logp = math.log(p)
    rows = []
    for i in range(max_i + 1):
        n = p ** i
        value = logp / n
        h = HeightValue(value, 1e-15 * (1.0 + value), "eisenstein-exact")
        f = None
        if n <= 4096:
            f = UniPoly.monomial(n) - UniPoly.constant(p)
        rows.append(ProfileRow(i, n, h, "certified;tower", f))
    return NorthcottEstimate(logp / p ** max_i, "tower",
                             SequenceProfile(tuple(rows)),
                             tail_from=max_i)


def unramified_tower_bound(d: int, log_abs_disc: float) -> float:
    """log|disc| / degree: height budget available in the ground field."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    if log_abs_disc < 0:
        raise ValueError("log|disc| must be >= 0")
    return log_abs_disc / d
