"""End-to-end acceptance battery.

Ten numbered checks exercising the whole stack: the iterated Smyth
profile and its certified bound, the Mahler root/integral identity,
the norm sandwich, small-generator search, the Selmer family, the
Monte-Carlo Chow height against the l2 height, the cut-height
inequality, smooth-section search, and the constants engine.  Each
check compresses to one CriterionResult with a single summary line;
`run_all` drives them in order and is shared by the test suite and
`heightlab verify-all`.

Statistical checks (7 and 8) run on frozen seeds, so a pass here is
reproducible, not a per-run coin flip.  Time budgets are part of the
contract: a correct-but-slow run fails.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .bipoly import BiPoly
from .bertini import section_search, theorem12_bound_check
from .chow import Hypersurface, chow_height_point, remond_check
from .constants import (BoundExpr, C3_chain, c9, c31_sweep_ok, derive_c31,
                        genus_cap, theorem14_compose, theta_ambient,
                        zarhin_factors)
from .generators import (NumberFieldSpec, char_poly, is_primitive,
                         search_small_generator)
from .heights import (AlgebraicNumber, ProjectivePoint, height_point,
                      mahler_integral_height, mahler_root_height,
                      sandwich_check)
from .northcott import (SequenceSpec, conjugate_tracking_heights,
                        habegger_bound, habegger_gamma, iterate_sequence,
                        recurrence_check, selmer_family)
from .polyparse import parse_poly
from .unipoly import UniPoly, sturm_count


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    summary: str
    elapsed: float

    def line(self) -> str:
        word = "PASS" if self.passed else "FAIL"
        return (f"criterion {self.number:2d} [{self.name}] {word} "
                f"({self.elapsed:.1f}s): {self.summary}")


class _Checker:
    """Collects named sub-checks; the criterion passes iff all do."""

    def __init__(self):
        self.failures: list[str] = []

    def expect(self, ok: bool, label: str):
        if not ok:
            self.failures.append(label)


def _smyth(shared: dict) -> dict:
    """Profile of the totally real quadratic-iteration family, cached.

    x_1 is the golden ratio, x_{i+1} the largest root of
    x^2 - x_i x - 1; profile rows 0..7 are x_1..x_8.
    """
    if "smyth" not in shared:
        P = BiPoly.parse("x^2-t*x-1")
        x0 = AlgebraicNumber.from_min_poly(parse_poly("x^2-x-1"))
        spec8 = SequenceSpec(P, x0, mode="assume-irreducible", max_index=7)
        spec5 = SequenceSpec(P, x0, mode="certified", max_index=4)
        shared["smyth"] = {
            "P": P, "x0": x0, "spec8": spec8,
            "profile": iterate_sequence(spec8),
            "certified": iterate_sequence(spec5),
        }
    return shared["smyth"]


def criterion_1(shared: dict):
    s = _smyth(shared)
    profile, certified = s["profile"], s["certified"]
    hs = profile.heights()
    ck = _Checker()
    ck.expect(len(hs) == 8, "profile does not have 8 rows")
    ck.expect(all(h <= 0.274 for h in hs),
              f"height above 0.274: max {max(hs):.6f}")
    closest = min(abs(h - 0.2732) for h in hs)
    ck.expect(closest <= 0.005, f"no height within 0.005 of 0.2732 "
                                f"(closest {closest:.4f})")
    oracle = conjugate_tracking_heights(s["P"], s["x0"], 7)
    gap = max(abs(a - b) for a, b in zip(hs[1:], oracle))
    ck.expect(gap <= 1e-8, f"conjugate-tracking oracle disagrees: {gap:.2e}")
    ck.expect(all(r.tag == "certified" for r in certified.rows),
              "certified run left an uncertified row")
    cert_gap = max(abs(a - b) for a, b in zip(certified.heights(), hs))
    ck.expect(cert_gap <= 1e-10,
              f"certified and assumed profiles disagree: {cert_gap:.2e}")
    real = [sturm_count(r.min_poly) == r.degree for r in certified.rows]
    ck.expect(all(real), "a certified minimal polynomial is not totally real")
    return (not ck.failures,
            ck.failures[0] if ck.failures else
            f"8 heights <= 0.274, limit gap {closest:.1e}, "
            f"oracle gap {gap:.1e}, x_1..x_5 totally real")


def criterion_2(shared: dict):
    s = _smyth(shared)
    gamma = habegger_gamma(s["P"])
    gamma_direct = 5.0 * math.sqrt(math.log(12.0))
    est = habegger_bound(s["spec8"], s["profile"])
    bound_direct = 100.0 * math.log(12.0)
    ck = _Checker()
    ck.expect(abs(gamma - gamma_direct) <= 1e-9,
              f"gamma {gamma!r} vs direct {gamma_direct!r}")
    ck.expect(abs(est.certified_upper_bound - bound_direct) <= 1e-9,
              f"bound {est.certified_upper_bound!r} vs {bound_direct!r}")
    ck.expect(recurrence_check(s["profile"], s["P"]),
              "recurrence inequality fails on a consecutive pair")
    return (not ck.failures,
            ck.failures[0] if ck.failures else
            f"gamma {gamma:.4f}, bound {est.certified_upper_bound:.2f}, "
            f"recurrence holds on all 7 pairs")


def _cyclotomics(upto: int) -> list[UniPoly]:
    table: dict[int, UniPoly] = {}
    for n in range(1, upto + 1):
        f = UniPoly.monomial(n) - UniPoly.constant(1)
        for d in range(1, n):
            if n % d == 0:
                f = f.exact_div(table[d])
        table[n] = f
    return [table[n] for n in range(1, upto + 1)]


def criterion_3(shared: dict):
    cyclos = _cyclotomics(12)
    named = [parse_poly(t) for t in
             ("x^2-x-1", "2*x-1", "x^3-x-1",
              "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1")]
    rng = random.Random(5)
    suite = cyclos + named
    while len(suite) < 50:
        d = rng.randint(2, 7)
        suite.append(UniPoly([rng.randint(-9, 9) for _ in range(d)]
                             + [rng.randint(1, 9)]))
    ck = _Checker()
    worst = 0.0
    for f in suite:
        a = mahler_root_height(f)
        b = mahler_integral_height(f)
        worst = max(worst, abs(a.value - b.value))
    ck.expect(worst <= 1e-6, f"root vs integral gap {worst:.2e}")
    golden = mahler_root_height(parse_poly("x^2-x-1")).value
    ck.expect(abs(golden - math.log((1 + math.sqrt(5)) / 2) / 2) <= 1e-12,
              f"golden-ratio height off: {golden!r}")
    half = mahler_root_height(parse_poly("2*x-1")).value
    ck.expect(abs(half - math.log(2.0)) <= 1e-12, f"h(1/2) off: {half!r}")
    cyclo_max = max(mahler_root_height(f).value for f in cyclos)
    ck.expect(cyclo_max <= 1e-12, f"cyclotomic height nonzero: {cyclo_max:.2e}")
    return (not ck.failures,
            ck.failures[0] if ck.failures else
            f"50 polynomials, max |root - integral| = {worst:.1e}")


def criterion_4(shared: dict):
    rng = random.Random(0)
    ck = _Checker()
    checked = 0
    for N in (2, 4):
        for _ in range(1000):
            coords = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(N + 1)]
            g = 0
            for c in coords:
                g = math.gcd(g, c)
            if g == 0:
                coords[0] = 1
                g = 1
            coords = [c // g for c in coords]
            rep = sandwich_check(ProjectivePoint(coords))
            if not rep.ok:
                ck.expect(False, f"sandwich fails at {tuple(coords)} in P^{N}")
                break
            checked += 1
        ones = sandwich_check(ProjectivePoint((1,) * (N + 1)))
        ck.expect(ones.h_inf.value == 0.0, f"h_inf(1:...:1) != 0 in P^{N}")
        ck.expect(abs(ones.h_l2.value - 0.5 * math.log(N + 1)) <= 1e-12,
                  f"h_l2(1:...:1) misses log({N + 1})/2")
    return (not ck.failures,
            ck.failures[0] if ck.failures else
            f"{checked} points sandwiched in P^2 and P^4, "
            f"equality case exact to 1e-12")


def criterion_5(shared: dict):
    plastic_h = mahler_root_height(parse_poly("x^3-x-1")).value
    cases = [
        ("x^2+1", 4, 0.0),
        ("x^2-2", 8, 0.5 * math.log(2.0)),
        ("x^3-x-1", 23, plastic_h),
        ("x^4+x^3+x^2+x+1", 125, None),
    ]
    ck = _Checker()
    ck.expect(abs(plastic_h - 0.0937) <= 5e-4,
              f"plastic height {plastic_h:.5f} is not near 0.0937")
    for text, disc, expect_h in cases:
        F = NumberFieldSpec.from_defining_poly(parse_poly(text))
        ck.expect(F.abs_disc == disc,
                  f"{text}: discriminant {F.abs_disc} != {disc}")
        elem, alpha, h = search_small_generator(F)
        cp = char_poly(elem, F)
        indep = mahler_root_height(alpha.min_poly)
        ck.expect(not elem.is_zero, f"{text}: zero generator")
        ck.expect(cp.lc == 1 and cp.is_integral(),
                  f"{text}: generator is not an algebraic integer")
        ck.expect(is_primitive(elem, F), f"{text}: generator not primitive")
        ck.expect(alpha.min_poly.degree == F.degree,
                  f"{text}: minimal polynomial degree drop")
        ck.expect(h.value <= math.log(disc) / F.degree + 1e-9,
                  f"{text}: height {h.value:.6f} exceeds log|disc|/d")
        ck.expect(abs(h.value - indep.value) <= 1e-9,
                  f"{text}: search height disagrees with Mahler evaluation")
        if expect_h is not None:
            ck.expect(abs(h.value - expect_h) <= 1e-9,
                      f"{text}: height {h.value!r} != expected {expect_h!r}")
    return (not ck.failures,
            ck.failures[0] if ck.failures else
            "4 fields: generators integral, primitive, under the "
            "discriminant bound, named heights exact")


def criterion_6(shared: dict):
    est = selmer_family(30)
    rows = est.profile.rows
    log3 = math.log(3.0)
    ck = _Checker()
    ck.expect(len(rows) == 29, f"expected 29 rows, got {len(rows)}")
    ck.expect(all(r.tag == "certified" for r in rows),
              "an index escaped irreducibility certification")
    ck.expect(all(r.height.value - r.height.abs_error > 0 for r in rows),
              "a height is not strictly positive")
    worst = max(r.index * r.height.value - log3 for r in rows)
    ck.expect(worst <= 1e-9, f"i*h exceeds log 3 by {worst:.2e}")
    return (not ck.failures,
            ck.failures[0] if ck.failures else
            f"i = 2..30 certified irreducible, i*h <= log 3 "
            f"(worst slack {-worst:.3f})")


def criterion_7(shared: dict):
    rng = random.Random(11)
    ck = _Checker()
    worst = 0.0
    for N in (2, 3):
        for k in range(10):
            while True:
                coords = [rng.randint(-50, 50) for _ in range(N + 1)]
                if any(coords):
                    break
            pt = ProjectivePoint(coords)
            hP = chow_height_point(pt, samples=10 ** 6, seed=100 * N + k)
            h2 = height_point(pt, "l2")
            sigma = hP.abs_error
            dev = abs(hP.value - h2.value) / sigma
            worst = max(worst, dev)
            ck.expect(dev <= 3.0,
                      f"point {tuple(coords)} in P^{N}: {dev:.2f} sigma")
            ck.expect(hP.value >= -3.0 * sigma,
                      f"point {tuple(coords)}: negative height beyond 3 sigma")
    p0 = chow_height_point(ProjectivePoint((1, 0)), samples=10 ** 6, seed=0)
    ck.expect(abs(p0.value) <= 3.0 * max(p0.abs_error, 1e-300),
              f"(1:0) height {p0.value!r} not zero within 3 sigma")
    return (not ck.failures,
            ck.failures[0] if ck.failures else
            f"20 points at 1e6 samples, worst deviation "
            f"{worst:.2f} sigma; (1:0) exact")


def criterion_8(shared: dict):
    X = Hypersurface.parse("x0^2+x1^2-x2^2")
    rng = random.Random(7)
    lines = []
    while len(lines) < 10:
        ell = tuple(rng.randint(-5, 5) for _ in range(3))
        if any(ell):
            lines.append(ell)
    H = max(height_point(ProjectivePoint(e), "l2").value
            for e in lines) + 1e-9
    rep = remond_check(X, lines, H_bound=H, samples=10 ** 6, seed=7)
    ck = _Checker()
    ck.expect(all(i.degree_ok for i in rep.instances),
              "a cut cycle exceeds the surface degree")
    ck.expect(rep.all_ok, "height inequality fails beyond 3 sigma")
    margin = min(i.margin / i.sigma for i in rep.instances)
    return (not ck.failures,
            ck.failures[0] if ck.failures else
            f"10 cuts of the conic: degrees exact, inequality holds "
            f"(min margin {margin:.0f} sigma)")


def criterion_9(shared: dict):
    ck = _Checker()
    quartic = Hypersurface.parse("x0^4+x1^4+x2^4+x3^4")
    cand = section_search(quartic, [0, 1, -1], budget=1000)
    rep = theorem12_bound_check(quartic, cand)
    ck.expect(cand.tried <= 1000, "budget exceeded")
    ck.expect(rep.genus == 3, f"quartic section genus {rep.genus} != 3")
    ck.expect(rep.genus_ok and rep.genus_bound == 20,
              "quartic genus bound check failed")
    quadric = Hypersurface.parse("x0^2+x1^2+x2^2+x3^2")
    cand2 = section_search(quadric, [0, 1, -1], budget=1000)
    rep2 = theorem12_bound_check(quadric, cand2)
    ck.expect(rep2.genus == 0, f"quadric section genus {rep2.genus} != 0")
    ck.expect(rep2.genus_ok and rep2.genus_bound == 6,
              "quadric genus bound check failed")
    return (not ck.failures,
            ck.failures[0] if ck.failures else
            f"smooth sections found (tried {cand.tried} and {cand2.tried}); "
            f"genus 3 <= 20 and 0 <= 6")


def criterion_10(shared: dict):
    ck = _Checker()
    ck.expect(genus_cap(2) == 262656, f"genus_cap(2) = {genus_cap(2)}")
    ck.expect(genus_cap(3) == 604004352, f"genus_cap(3) = {genus_cap(3)}")
    for g in (2, 3):
        m = 16 ** g * math.factorial(g)
        ck.expect(genus_cap(g) == m * m + m, "genus_cap oracle mismatch")
    ck.expect(c9(2) == 98304 == 4 ** 7 * 2 * 3, f"c9(2) = {c9(2)}")
    ck.expect(theta_ambient(2) == (255, 512),
              f"theta_ambient(2) = {theta_ambient(2)}")
    v31 = derive_c31(2)
    ck.expect(abs(v31 - 1.768e5) <= 1e2, f"c31(2) = {v31!r}")
    ck.expect(c31_sweep_ok(2, h_max=1e10), "c31 sweep found a violation")
    z = zarhin_factors(2)
    ck.expect(z.dimension == 16 and z.height_factor == 8, "zarhin record off")
    ck.expect(abs(z.field_degree_log10 - 1024 * math.log10(48)) <= 1e-9
              and abs(z.field_degree_log10 - 1721.6) <= 0.05,
              f"field degree log10 {z.field_degree_log10!r}")
    c5, c6 = theorem14_compose(1, 1, 0, 1, 0, g=2, mS=Fraction(137, 500))
    want = BoundExpr.quotient(BoundExpr.product(1, 1, 1), C3_chain(2))
    ck.expect(c5.json_dumps() == want.json_dumps(),
              "c5 does not compose as c0 c1 c3 / C3")
    iv6 = c6.interval(256)
    lo, hi = float(iv6.a), float(iv6.b)
    ck.expect(abs(lo - 1.274) <= 1e-12 and abs(hi - 1.274) <= 1e-12,
              f"identity-family c6 interval [{lo!r}, {hi!r}]")
    return (not ck.failures,
            ck.failures[0] if ck.failures else
            "exact integers, c31 sweep, field-degree log10, and the "
            "c5/c6 composition all verified")


# (number, name, function, time budget in seconds or None)
CRITERIA = [
    (1, "smyth-profile", criterion_1, 120.0),
    (2, "habegger-bound", criterion_2, 30.0),
    (3, "mahler-identity", criterion_3, 60.0),
    (4, "norm-sandwich", criterion_4, None),
    (5, "generator-search", criterion_5, 30.0),
    (6, "selmer-family", criterion_6, 120.0),
    (7, "chow-point-identity", criterion_7, 300.0),
    (8, "cut-height-inequality", criterion_8, None),
    (9, "section-search", criterion_9, 60.0),
    (10, "constants-engine", criterion_10, 30.0),
]


def run_criterion(number: int, shared: dict | None = None) -> CriterionResult:
    for num, name, fn, budget in CRITERIA:
        if num == number:
            break
    else:
        raise KeyError(number)
    if shared is None:
        shared = {}
    t0 = time.perf_counter()
    try:
        ok, summary = fn(shared)
    except Exception as e:
        ok, summary = False, f"error: {type(e).__name__}: {e}"
    dt = time.perf_counter() - t0
    if ok and budget is not None and dt > budget:
        ok = False
        summary += f"; over time budget ({dt:.1f}s > {budget:.0f}s)"
    return CriterionResult(num, name, ok, summary, dt)


def run_all(numbers=None) -> list[CriterionResult]:
    shared: dict = {}
    wanted = set(numbers) if numbers is not None else None
    out = []
    for num, _name, _fn, _budget in CRITERIA:
        if wanted is not None and num not in wanted:
            continue
        out.append(run_criterion(num, shared))
    return out


def format_lines(results) -> str:
    return "\n".join(r.line() for r in results)
