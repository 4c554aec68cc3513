"""Small integral generators of number fields.

An order element is a coordinate vector over a caller-supplied integral
basis.  `char_poly` is exact (Faddeev-LeVerrier on the multiplication
matrix), primitivity is squarefreeness of that polynomial, and
`search_small_generator` scans sup-norm shells of coordinate vectors for
a primitive element whose height is at most log|disc| / degree.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .factor import is_irreducible
from .heights import AlgebraicNumber, HeightValue, mahler_root_height
from .unipoly import UniPoly, discriminant, is_squarefree, sturm_count


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, radius_cap: int, best=None):
        self.radius_cap = radius_cap
        self.best = best          # (coords, char_poly, HeightValue) or None
        msg = f"no qualifying generator within sup-norm radius {radius_cap}"
        if best is not None:
            msg += f"; best height seen {best[2].value:.6g}"
        super().__init__(msg)


# -- exact linear algebra at tiny sizes ------------------------------------


def _mat_inv(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("integral basis is not a basis")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [c * inv for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [r[n:] for r in aug]


def _mat_vec(rows, v):
    return [sum(a * b for a, b in zip(r, v)) for r in rows]


def _mat_mul(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


# -- field data ------------------------------------------------------------


@dataclass(frozen=True)
class NumberFieldSpec:
    defining_poly: UniPoly
    integral_basis: tuple          # UniPoly per basis element, degree < d
    abs_disc: int
    signature: tuple               # (real embeddings, complex pairs)

    def __post_init__(self):
        g = self.defining_poly
        d = g.degree
        if d < 1 or not g.is_integral() or g.lc != 1:
            raise ValueError("defining polynomial must be monic integral")
        if d <= 1 or is_irreducible(g):
            pass
        else:
            raise ValueError("defining polynomial is reducible")
        object.__setattr__(self, "integral_basis",
                           tuple(self.integral_basis))
        if len(self.integral_basis) != d:
            raise ValueError("basis size must equal the degree")
        for b in self.integral_basis:
            if b.degree >= d:
                raise ValueError("basis elements must have degree < d")
        if self.abs_disc < 1:
            raise ValueError("|disc| must be a positive integer")
        r, s = self.signature
        if r < 0 or s < 0 or r + 2 * s != d:
            raise ValueError("signature must satisfy r + 2s = d")
        # basis-change matrix from the power basis must be invertible
        self._power_matrix_inverse()

    @property
    def degree(self) -> int:
        return self.defining_poly.degree

    def _power_matrix(self) -> list[list[Fraction]]:
        d = self.degree
        return [[self.integral_basis[j][i] for j in range(d)]
                for i in range(d)]

    def _power_matrix_inverse(self) -> list[list[Fraction]]:
        return _mat_inv(self._power_matrix())

    @classmethod
    def from_defining_poly(cls, g: UniPoly, abs_disc: Optional[int] = None,
                           signature: Optional[tuple] = None
                           ) -> "NumberFieldSpec":
        """Power-basis convenience constructor.

        With no discriminant given, |disc(g)| is used; that equals the
        field discriminant only when the power order is maximal (always
        true when |disc(g)| is squarefree), and the height bound scales
        with whatever discriminant the caller accepts here.
        """
        d = g.degree
        if abs_disc is None:
            abs_disc = abs(int(discriminant(g)))
        if signature is None:
            r = sturm_count(g)
            signature = (r, (d - r) // 2)
        basis = tuple(UniPoly.monomial(k) for k in range(d))
        return cls(g, basis, abs_disc, signature)


@dataclass(frozen=True)
class OrderElement:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords",
                           tuple(int(c) for c in self.coords))
        if not self.coords:
            raise ValueError("empty coordinate vector")

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


# -- exact characteristic polynomial ---------------------------------------


def _mult_matrix(e: OrderElement, F: NumberFieldSpec) -> list[list[Fraction]]:
    d = F.degree
    if len(e.coords) != d:
        raise ValueError("coordinate count must equal the degree")
    g = F.defining_poly
    E = UniPoly.zero()
    for c, b in zip(e.coords, F.integral_basis):
        E = E + UniPoly.constant(c) * b
    Binv = F._power_matrix_inverse()
    cols = []
    for b in F.integral_basis:
        prod = (E * b) % g
        power = [prod[i] for i in range(d)]
        cols.append(_mat_vec(Binv, power))
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def char_poly(e: OrderElement, F: NumberFieldSpec) -> UniPoly:
    """det(x I - M) for the multiplication matrix M of e; monic integral."""
    M = _mult_matrix(e, F)
    d = F.degree
    # Faddeev-LeVerrier: exact, division only by small integers
    coeffs = [Fraction(1)]          # descending, starting at x^d
    Mk = [row[:] for row in M]
    for k in range(1, d + 1):
        ck = -sum(Mk[i][i] for i in range(d)) / k
        coeffs.append(ck)
        if k < d:
            for i in range(d):
                Mk[i][i] += ck
            Mk = _mat_mul(M, Mk)
    poly = UniPoly(list(reversed(coeffs)))
    if not poly.is_integral():
        raise ValueError("inconsistent basis: characteristic polynomial "
                         "is not integral")
    return poly


def is_primitive(e: OrderElement, F: NumberFieldSpec) -> bool:
    """True iff the characteristic polynomial is squarefree."""
    return is_squarefree(char_poly(e, F))


# -- the search ------------------------------------------------------------


def minkowski_box_T(F: NumberFieldSpec) -> Optional[float]:
    """(pi/4)(2/pi)^s sqrt|disc|; None when there is no complex embedding.

    The threshold is what the complex-embedding search region uses; for
    fields with a real embedding it is informational only.
    """
    _, s = F.signature
    if s == 0:
        return None
    return (math.pi / 4.0) * (2.0 / math.pi) ** s * math.sqrt(F.abs_disc)


def _float_height_estimate(f: UniPoly) -> float:
    cs = [float(c) for c in reversed(f.coeffs)]
    try:
        roots = np.roots(cs)
    except Exception:
        return 0.0
    acc = 0.0
    for r in roots:
        a = abs(r)
        if a > 1.0:
            acc += math.log(a)
    return acc / f.degree


def _default_radius_cap(F: NumberFieldSpec) -> int:
    T = minkowski_box_T(F)
    if T is not None and T > 0:
        return max(2, 2 * math.ceil(T ** (1.0 / F.degree)))
    return 8


def search_small_generator(F: NumberFieldSpec,
                           radius_cap: Optional[int] = None,
                           height_tol: float = 1e-11):
    """Primitive integral element with height <= log|disc|/degree.

    Shells of constant sup-norm are scanned outward; inside the first
    shell containing qualifying elements the one of smallest certified
    height wins, ties going to the lexicographically largest coordinate
    vector.  Returns (OrderElement, AlgebraicNumber, HeightValue).
    """
    d = F.degree
    bound = math.log(F.abs_disc) / d
    slack = 1e-9
    cap = radius_cap if radius_cap is not None else _default_radius_cap(F)
    best_seen = None

    for radius in range(1, cap + 1):
        qualifying = []
        for coords in itertools.product(range(-radius, radius + 1), repeat=d):
            if max(abs(c) for c in coords) != radius:
                continue
            e = OrderElement(coords)
            cp = char_poly(e, F)
            if not is_squarefree(cp):
                continue
            if _float_height_estimate(cp) > bound + slack + 0.02:
                continue
            h = mahler_root_height(cp, tol=height_tol)
            if best_seen is None or h.value < best_seen[2].value:
                best_seen = (e, cp, h)
            if h.value + h.abs_error <= bound + slack:
                qualifying.append((e, cp, h))
        if qualifying:
            h_min = min(q[2].value for q in qualifying)
            tied = [q for q in qualifying
                    if q[2].value <= h_min + q[2].abs_error + 1e-12]
            e, cp, h = max(tied, key=lambda q: q[0].coords)
            alpha = AlgebraicNumber.from_min_poly(cp, certify=True)
            return e, alpha, h
    raise SearchBudgetExceeded(cap, best_seen)
