"""Hyperplane sections of surfaces that stay smooth.

Three layers.  `plane_curve_smooth` is a complete, exact smoothness
decision for curves in the projective plane: candidate singular
directions are cut out by binary resultants of the partials, then each
direction (rational or algebraic) is checked for a genuine common root.
`smoothness_check` handles surfaces in P^3 up to degree 4: quadrics by
the rank of the symmetric matrix, cubics and quartics by a modular
elimination certificate (a nonzero Macaulay determinant mod p proves the
resultant of the partials is nonzero, hence smoothness) backed by an
exact search for singular witnesses when the certificate fails.
`section_search` runs through low-height hyperplanes and returns the
first one whose section is a smooth plane curve.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .chow import Hypersurface, chow_height_hypersurface
from .factor import factor_rationals
from .heights import HeightValue, ProjectivePoint, height_point
from .mpoly import MPoly
from .nfpoly import NumberField, nf_gcd
from .primes import prime_stream
from .unipoly import UniPoly, poly_gcd

SECTION_DEGREE_CAP = 4
# exhaustive witness box for rational singular points
WITNESS_BOX = 3


class SmoothnessUndecided(RuntimeError):
    """Neither a modular smoothness certificate nor a singular witness
    was found; the surface's status is genuinely open at this budget."""


class NotSmooth(ValueError):
    """The ambient surface is singular, so no section qualifies."""


class SectionBudgetExceeded(RuntimeError):
    def __init__(self, tried: int):
        super().__init__(f"no smooth section among the first {tried} "
                         "hyperplane candidates")
        self.tried = tried


# ---------------------------------------------------------------------------
# binary forms, stored as MPoly instances in two variables


def _z_coeff_forms(f: MPoly) -> list[MPoly]:
    """Coefficients of f as a polynomial in the last variable, ascending.

    Entries are binary forms in the first two variables; the top entry is
    nonzero by construction.
    """
    top = max(e[2] for e in f.terms)
    out = [MPoly.zero(2) for _ in range(top + 1)]
    for (ex, ey, ez), c in f.terms.items():
        out[ez] = out[ez] + MPoly(2, {(ex, ey): c})
    return out


def _binary_triple(b: MPoly):
    """(vx, vy, core) with b = x^vx y^vy * homogenized core, core(0) != 0."""
    if b.nvars != 2 or b.is_zero:
        raise ValueError("need a nonzero binary form")
    if not b.is_homogeneous():
        raise ArithmeticError("expected a binary form")
    vx = min(e[0] for e in b.terms)
    vy = min(e[1] for e in b.terms)
    top = max(e[0] for e in b.terms)
    coeffs = [Fraction(0)] * (top - vx + 1)
    for (i, _), c in b.terms.items():
        coeffs[i - vx] = c
    return vx, vy, UniPoly(coeffs)


def _triple_gcd(a, b):
    return (min(a[0], b[0]), min(a[1], b[1]), poly_gcd(a[2], b[2]))


def _sylvester_det(fc: list[MPoly], gc: list[MPoly]) -> MPoly:
    """Formal resultant in z of two ternary forms, given ascending
    z-coefficient lists with nonzero top entries.  A common projective
    zero off (0:0:1) forces the result to vanish at that direction, even
    when the z-degrees drop under specialization."""
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    zero = MPoly.zero(2)
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(reversed(fc)) + [zero] * (n - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(reversed(gc)) + [zero] * (m - 1 - i))

    memo: dict[tuple, MPoly] = {}

    def det(rs: tuple) -> MPoly:
        col = size - len(rs)
        if not rs:
            return MPoly.constant(2, 1)
        if rs in memo:
            return memo[rs]
        acc = MPoly.zero(2)
        for pos, r in enumerate(rs):
            entry = rows[r][col]
            if entry.is_zero:
                continue
            sub = entry * det(rs[:pos] + rs[pos + 1:])
            acc = acc + sub if pos % 2 == 0 else acc - sub
        memo[rs] = acc
        return acc

    return det(tuple(range(size)))


# ---------------------------------------------------------------------------
# common zeros of ternary forms


def _common_z_root_rational(zlists, x0, y0) -> bool:
    polys = []
    for zl in zlists:
        p = UniPoly([b.evaluate((x0, y0)) for b in zl])
        if not p.is_zero:
            polys.append(p)
    if not polys:
        # every form vanishes on the whole line over this direction
        return True
    g = polys[0]
    for p in polys[1:]:
        g = poly_gcd(g, p)
    return g.degree >= 1


def _common_z_root_algebraic(zlists, min_poly: UniPoly) -> bool:
    """Direction (t : 1) with t a root of an irreducible min_poly."""
    K = NumberField(min_poly)
    reduced = []
    for zl in zlists:
        coeffs = []
        for b in zl:
            p = UniPoly.zero()
            for (i, _), c in b.terms.items():
                p = p + UniPoly.monomial(i, c)
            coeffs.append(K.reduce(p))
        if any(not c.is_zero for c in coeffs):
            reduced.append(coeffs)
    if not reduced:
        return True
    g = reduced[0]
    for q in reduced[1:]:
        g = nf_gcd(K, g, q)
    return len(g) >= 2


def _ternary_common_zero(forms: Sequence[MPoly], pair_shortcut: bool) -> bool:
    """Whether the forms share a projective zero over the complex numbers.

    Complete for up to three forms.  With more, a degenerate resultant
    pair (two partials sharing a whole component) cannot be resolved by
    the intersection argument and raises SmoothnessUndecided.
    """
    live = [f for f in forms if not f.is_zero]
    for f in live:
        if f.total_degree() == 0:
            return False
    if len(live) <= 2:
        # at most two hypersurfaces in the plane always intersect
        return True

    if all(f.evaluate((0, 0, 1)) == 0 for f in live):
        return True

    zlists = [_z_coeff_forms(f) for f in live]
    zfree = [zl[0] for zl in zlists if len(zl) == 1]
    posz = [zl for zl in zlists if len(zl) > 1]

    gens = [_binary_triple(b) for b in zfree]
    for i in range(len(posz)):
        for j in range(i + 1, len(posz)):
            R = _sylvester_det(posz[i], posz[j])
            if R.is_zero:
                # the pair shares a curve of positive z-degree; with only
                # one form left, that curve meets it and gives a zero
                if pair_shortcut and len(live) == 3:
                    return True
                raise SmoothnessUndecided("two partials share a component")
            gens.append(_binary_triple(R))

    if not gens:
        raise AssertionError("no direction generators")
    G = gens[0]
    for t in gens[1:]:
        G = _triple_gcd(G, t)
    vx, vy, core = G
    if vx == 0 and vy == 0 and core.degree == 0:
        return False

    if vy > 0 and _common_z_root_rational(zlists, Fraction(1), Fraction(0)):
        return True
    if vx > 0 and _common_z_root_rational(zlists, Fraction(0), Fraction(1)):
        return True
    if core.degree >= 1:
        _, factors = factor_rationals(core)
        for q, _mult in factors:
            if q.degree == 1:
                root = -Fraction(q[0]) / q[1]
                if _common_z_root_rational(zlists, root, Fraction(1)):
                    return True
            else:
                if _common_z_root_algebraic(zlists, q):
                    return True
    return False


def plane_curve_smooth(form: MPoly) -> bool:
    """Exact smoothness decision for a plane projective curve.

    The input is a nonzero homogeneous polynomial in three variables.
    Smooth plane curves are geometrically irreducible, so no separate
    irreducibility check is needed downstream.
    """
    if form.nvars != 3:
        raise ValueError("expect a form in three variables")
    if form.is_zero or not form.is_homogeneous():
        raise ValueError("expect a nonzero homogeneous form")
    if form.total_degree() < 1:
        raise ValueError("constants do not define a curve")
    parts = [form.partial(i) for i in range(3)]
    return not _ternary_common_zero(parts, pair_shortcut=True)


# ---------------------------------------------------------------------------
# surfaces in P^3


def _frac_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def _quadric_matrix(form: MPoly) -> list[list[Fraction]]:
    n = form.nvars
    S = [[Fraction(0)] * n for _ in range(n)]
    for e, c in form.terms.items():
        support = [i for i, k in enumerate(e) if k]
        if len(support) == 1:
            i = support[0]
            S[i][i] = Fraction(c)
        else:
            i, j = support
            S[i][j] = S[j][i] = Fraction(c) / 2
    return S


def _degree_monomials(nvars: int, deg: int) -> list[tuple]:
    out = []
    for bars in itertools.combinations(range(deg + nvars - 1), nvars - 1):
        prev, exps = -1, []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(deg + nvars - 2 - prev)
        out.append(tuple(exps))
    return out


def _macaulay_matrix(parts: list[MPoly], d: int) -> np.ndarray:
    """Square elimination matrix for four forms of degree d in four
    variables; its determinant is the resultant times an extraneous
    factor, so a nonzero determinant certifies an empty common zero set.
    """
    nu = 4 * d - 3
    monos = _degree_monomials(4, nu)
    col = {m: i for i, m in enumerate(monos)}
    n = len(monos)
    M = np.zeros((n, n), dtype=object)
    for r, m in enumerate(monos):
        i = next(k for k in range(4) if m[k] >= d)
        quot = list(m)
        quot[i] -= d
        for e, c in parts[i].terms.items():
            tgt = tuple(q + ek for q, ek in zip(quot, e))
            cf = Fraction(c)
            if cf.denominator != 1:
                raise ValueError("partials must have integer coefficients")
            M[r, col[tgt]] += cf.numerator
    return M


def _full_rank_mod_p(M: np.ndarray, p: int) -> bool:
    A = (M.astype(object) % p).astype(np.int64)
    n = A.shape[0]
    for colidx in range(n):
        piv = None
        for r in range(colidx, n):
            if A[r, colidx] % p:
                piv = r
                break
        if piv is None:
            return False
        if piv != colidx:
            A[[colidx, piv]] = A[[piv, colidx]]
        inv = pow(int(A[colidx, colidx]), p - 2, p)
        below = A[colidx + 1:, colidx] % p
        mask = below != 0
        if mask.any():
            factors = (below * inv) % p
            A[colidx + 1:][mask] = (
                A[colidx + 1:][mask] - factors[mask, None] * A[colidx][None, :]
            ) % p
    return True


_SHEARS = []
for _a, _b in [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]:
    _T = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    _T[_a][_b] = 1
    _SHEARS.append(tuple(map(tuple, _T)))


def _apply_transform(form: MPoly, T) -> MPoly:
    args = [MPoly.linear_form([Fraction(x) for x in row]) for row in T]
    return form.compose(args)


def _restrict(form: MPoly, keep: tuple) -> MPoly:
    """Set the variables outside `keep` to zero and reindex."""
    out = {}
    for e, c in form.terms.items():
        if all(i in keep or k == 0 for i, k in enumerate(e)):
            out[tuple(e[i] for i in keep)] = c
    return MPoly(len(keep), out)


def _rational_witness(parts: list[MPoly]) -> Optional[tuple]:
    rng = range(-WITNESS_BOX, WITNESS_BOX + 1)
    for pt in itertools.product(rng, repeat=4):
        if all(c == 0 for c in pt):
            continue
        nz = next(c for c in pt if c)
        if nz < 0:
            continue
        if math.gcd(*[abs(c) for c in pt]) != 1:
            continue
        if all(g.evaluate(pt) == 0 for g in parts):
            return pt
    return None


def _axis_pair_witness(parts: list[MPoly]) -> bool:
    """Singular points supported on a coordinate line of P^3.

    Restricting every partial to the line gives binary forms; a
    nonconstant gcd means a common root, rational or not, and this is
    exhaustive for that class of points.
    """
    for pair in itertools.combinations(range(4), 2):
        live = [b for b in (_restrict(g, pair) for g in parts)
                if not b.is_zero]
        if not live:
            return True
        G = _binary_triple(live[0])
        for b in live[1:]:
            G = _triple_gcd(G, _binary_triple(b))
        if G[0] > 0 or G[1] > 0 or G[2].degree >= 1:
            return True
    return False


def _axis_triple_witness(parts: list[MPoly]) -> tuple[bool, bool]:
    """(found, undecided) over points supported on coordinate planes."""
    undecided = False
    for triple in itertools.combinations(range(4), 3):
        restricted = [_restrict(g, triple) for g in parts]
        try:
            if _ternary_common_zero(restricted, pair_shortcut=False):
                return True, undecided
        except SmoothnessUndecided:
            undecided = True
    return False, undecided


def smoothness_check(X: Hypersurface, primes_count: int = 3,
                     seed: int = 0) -> bool:
    """True if the surface is smooth, False if a singular point was
    found; raises SmoothnessUndecided when neither could be settled.

    Sound in both directions: True only under a modular resultant
    certificate (or exact rank for quadrics), False only with an exact
    witness argument.
    """
    if X.N != 3:
        raise ValueError("expect a surface in projective 3-space")
    if X.degree > SECTION_DEGREE_CAP:
        raise ValueError(f"degree {X.degree} exceeds the "
                         f"cap {SECTION_DEGREE_CAP}")
    D = X.degree
    if D == 1:
        return True
    parts = [X.form.partial(i) for i in range(4)]
    if any(g.is_zero for g in parts):
        # three hypersurfaces in P^3 always intersect, and the missing
        # partial vanishes everywhere
        return False
    if D == 2:
        return _frac_det(_quadric_matrix(X.form)) != 0

    d = D - 1
    primes = list(prime_stream(31, primes_count, seed))
    transforms = [tuple(map(tuple, np.eye(4, dtype=int).tolist()))] + _SHEARS
    for T in transforms:
        fT = _apply_transform(X.form, T)
        partsT = [fT.partial(i) for i in range(4)]
        M = _macaulay_matrix(partsT, d)
        for p in primes:
            if _full_rank_mod_p(M, p):
                return True

    if _rational_witness(parts) is not None:
        return False
    if _axis_pair_witness(parts):
        return False
    found, undecided = _axis_triple_witness(parts)
    if found:
        return False
    raise SmoothnessUndecided(
        "no modular certificate at the tried primes and no singular "
        "witness in the searched classes")


# ---------------------------------------------------------------------------
# section search


@dataclass(frozen=True)
class SectionCandidate:
    coeffs: tuple
    pivot: int
    section_form: MPoly
    tried: int

    @property
    def genus(self) -> int:
        D = self.section_form.total_degree()
        return (D - 1) * (D - 2) // 2


def _hyperplane_height(values: tuple) -> float:
    return height_point(ProjectivePoint(values), norm="inf").value


def section_search(X: Hypersurface, sample: Sequence,
                   budget: int = 1000) -> SectionCandidate:
    """First low-height hyperplane whose section of X is a smooth plane
    curve.

    Candidate coefficient tuples are drawn from `sample`^4, ordered by
    exact projective height and then by sample-index order, so the
    search is deterministic for a fixed sample list.  Only rational
    sample values are supported.
    """
    if not smoothness_check(X):
        raise NotSmooth("the surface itself is singular")

    vals = []
    for s in sample:
        try:
            if isinstance(s, complex):
                raise TypeError
            vals.append(Fraction(s))
        except (TypeError, ValueError):
            raise ValueError("only rational sample values are supported; "
                             "drop complex or non-rational entries") from None
    if not vals:
        raise ValueError("empty sample")
    if len(vals) ** 4 > 200_000:
        raise ValueError("sample too large to enumerate")

    pool = []
    for idx in itertools.product(range(len(vals)), repeat=4):
        values = tuple(vals[i] for i in idx)
        if all(v == 0 for v in values):
            continue
        pool.append((_hyperplane_height(values), idx, values))
    pool.sort(key=lambda t: (t[0], t[1]))

    tried = 0
    for _h, _idx, values in pool:
        if tried >= budget:
            break
        tried += 1
        pivot = max(i for i, v in enumerate(values) if v != 0)
        repl_coeffs = [-(v / values[pivot]) for v in values]
        repl_coeffs[pivot] = Fraction(0)
        section4 = X.form.substitute(pivot, MPoly.linear_form(repl_coeffs))
        section3 = section4.drop_variable(pivot)
        if section3.is_zero:
            continue
        section3 = section3.primitive_integer()
        if plane_curve_smooth(section3):
            return SectionCandidate(coeffs=values, pivot=pivot,
                                    section_form=section3, tried=tried)
    raise SectionBudgetExceeded(tried)


# ---------------------------------------------------------------------------
# degree and genus bounds for the section


@dataclass(frozen=True)
class SectionBoundReport:
    degree: int
    genus: int
    genus_bound: int
    genus_ok: bool
    height_rhs: Optional[float]
    height_rhs_error: Optional[float]
    height_term_constant: float
    h_surface: Optional[HeightValue]
    lhs_note: str
    ok: bool


def theorem12_bound_check(X: Hypersurface, candidate: SectionCandidate,
                          m_S: float = 0.0, samples: int = 0,
                          seed: int = 0) -> SectionBoundReport:
    """Degree and genus of the section against the explicit bounds.

    The genus of a smooth plane section of degree D is (D-1)(D-2)/2 and
    must not exceed D^2 + D.  The height side is reported as an upper
    bound only: the right-hand side combines the surface height with
    dim * deg * (N+1) * (m_S + 2); the section's own height is not
    computed here, so the report carries the bound without a comparison.
    """
    D = candidate.section_form.total_degree()
    genus = (D - 1) * (D - 2) // 2
    genus_bound = D * D + D
    genus_ok = genus <= genus_bound

    term = 2 * X.degree * (X.N + 1) * (m_S + 2.0)
    h_surface = None
    rhs = None
    rhs_err = None
    if samples > 0:
        h_surface = chow_height_hypersurface(X, samples=samples, seed=seed)
        rhs = h_surface.value + term
        rhs_err = h_surface.abs_error
    return SectionBoundReport(
        degree=D,
        genus=genus,
        genus_bound=genus_bound,
        genus_ok=genus_ok,
        height_rhs=rhs,
        height_rhs_error=rhs_err,
        height_term_constant=term,
        h_surface=h_surface,
        lhs_note="height of the section not computed",
        ok=genus_ok,
    )
