import random
from fractions import Fraction

import pytest

from heightlab.unipoly import (UniPoly, discriminant, is_squarefree,
                               poly_gcd, resultant, squarefree_decompose,
                               squarefree_part, sturm_count)


def P(*coeffs):
    """Ascending-coefficient constructor shorthand."""
    return UniPoly(coeffs)


def rand_poly(rng, deg, bound=9):
    cs = [rng.randint(-bound, bound) for _ in range(deg)]
    cs.append(rng.choice([c for c in range(-bound, bound + 1) if c]))
    return UniPoly(cs)


def test_degree_and_normalization():
    assert P(1, 2, 3).degree == 2
    assert P(5).degree == 0
    assert P(1, 0, 0).degree == 0
    assert UniPoly.zero().is_zero
    assert UniPoly.x().degree == 1
    assert UniPoly.monomial(7).degree == 7


def test_arithmetic_basics():
    f = P(-1, -1, 1)            # x^2 - x - 1
    g = P(1, 1)
    assert (f + g).coeffs == (0, 0, 1)
    assert (f - f).is_zero
    assert (f * g).evaluate(1) == f.evaluate(1) * g.evaluate(1)
    assert f.evaluate(Fraction(1, 2)) == Fraction(-5, 4)


def test_divmod_identity():
    rng = random.Random(20240901)
    for _ in range(120):
        f = rand_poly(rng, rng.randint(0, 8))
        g = rand_poly(rng, rng.randint(1, 5))
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.is_zero or r.degree < g.degree


def test_exact_div_raises_on_remainder():
    with pytest.raises(ValueError):
        P(1, 1, 1).exact_div(P(1, 1))


def test_gcd_common_factor():
    rng = random.Random(7)
    for _ in range(60):
        a = rand_poly(rng, rng.randint(1, 4))
        b = rand_poly(rng, rng.randint(1, 4))
        c = rand_poly(rng, rng.randint(1, 3))
        g = poly_gcd(a * c, b * c)
        # the planted factor must divide the gcd
        _, r = divmod(g, c.primitive_integer())
        assert r.is_zero


def test_resultant_known_values():
    # frozen from an independent computer-algebra evaluation
    assert resultant(P(-1, -1, 0, 1), P(-2, 0, 1)) == -1
    assert resultant(P(-1, 1, 0, 0, 3), P(1, 5, 2)) == -1511
    assert resultant(P(-1, -1, 0, 0, 0, 1), P(7, 2, 0, 1)) == 15076


def test_resultant_multiplicative():
    rng = random.Random(99)
    for _ in range(40):
        f = rand_poly(rng, rng.randint(1, 3))
        g = rand_poly(rng, rng.randint(1, 3))
        h = rand_poly(rng, rng.randint(1, 3))
        assert resultant(f * g, h) == resultant(f, h) * resultant(g, h)


def test_resultant_shared_root_vanishes():
    f = P(-2, 0, 1)
    assert resultant(f * P(3, 1), f * P(1, 1, 1)) == 0


def test_discriminant_known_values():
    assert discriminant(P(-1, -1, 0, 1)) == -23
    assert discriminant(P(-1, -1, 0, 0, 0, 1)) == 2869
    assert discriminant(P(6, -5, -38, -5, 6)) == 864360000
    assert discriminant(P(-1, -1, 1)) == 5


def test_squarefree_detection():
    f = P(-1, -1, 1)
    assert is_squarefree(f)
    assert not is_squarefree(f * f)
    assert discriminant(f * f) == 0


def test_squarefree_decompose_reconstructs():
    rng = random.Random(4242)
    for _ in range(40):
        base = [rand_poly(rng, rng.randint(1, 3)) for _ in range(2)]
        f = base[0] * base[0] * base[1]
        parts = squarefree_decompose(f)
        prod = UniPoly.constant(1)
        for g, m in parts:
            assert m >= 1
            assert is_squarefree(g) or g.degree == 0
            for _ in range(m):
                prod = prod * g
        # equal up to a rational unit
        q, r = divmod(f, prod)
        assert r.is_zero and q.degree == 0


def test_squarefree_part_divides():
    f = P(0, 1) ** 3 * P(-1, 1)
    sf = squarefree_part(f)
    assert is_squarefree(sf)
    assert sf.degree == 2


class TestSturm:
    def test_golden(self):
        assert sturm_count(P(-1, -1, 1)) == 2

    def test_no_real_roots(self):
        assert sturm_count(P(1, 0, 1)) == 0

    def test_interval(self):
        f = P(-2, 0, 1)          # roots +-sqrt(2)
        assert sturm_count(f) == 2
        assert sturm_count(f, 0, 2) == 1
        assert sturm_count(f, -2, 0) == 1

    def test_matches_random_products_of_linears(self):
        rng = random.Random(314)
        for _ in range(40):
            roots = sorted(rng.sample(range(-8, 9), rng.randint(1, 4)))
            f = UniPoly.constant(1)
            for r in roots:
                f = f * P(-r, 1)
            assert sturm_count(f) == len(roots)


def test_pow_and_repr_roundtrip():
    f = P(-1, -1, 1)
    assert (f ** 3).degree == 6
    assert f.to_string() == "x^2-x-1"
