import random
from fractions import Fraction

from heightlab import BiPoly, UniPoly, parse_poly, resultant_t
from heightlab.unipoly import resultant


def test_parse_and_degrees():
    P = BiPoly.parse("x^2-t*x-1")
    assert P.deg_x == 2
    assert P.deg_t == 1
    assert P.coeff_of_t(0) == parse_poly("x^2-1")
    assert P.coeff_of_t(1) == parse_poly("-x")


def test_evaluate_and_specialize():
    P = BiPoly.parse("x^2-t*x-1")
    assert P.evaluate(2, 1) == 1
    # ascending coefficient list of P(x, 3)
    assert P.poly_in_x_at_t(Fraction(3)) == [-1, -3, 1]


def test_resultant_t_golden():
    # first and third frozen from an independent computer-algebra run;
    # the middle one re-derived by hand from the deg_t = 1 substitution
    # formula Res(a*t+b, m) = a^n * m(-b/a)  (argument order matters:
    # swapping P and m flips the sign by (-1)^(deg_t P * deg m))
    cases = [
        ("x^2-t*x-1", "t^2-t-1", "x^4-x^3-3*x^2+x+1"),
        ("x^3-t*x-1", "t^3-t-1", "-x^9+3*x^6+x^5-2*x^3-x^2+1"),
        ("x^2-(t^2+1)*x+t", "t^2-2", "x^4-6*x^3+9*x^2-2"),
    ]
    for Ps, ms, want in cases:
        P = BiPoly.parse(Ps)
        m = parse_poly(ms.replace("t", "x"))
        assert resultant_t(P, m) == parse_poly(want)


def test_resultant_t_matches_direct_elimination():
    """Against the generic Sylvester resultant on randomly built pairs.

    Specializing x commutes with eliminating t as long as the t-leading
    coefficient of P survives the specialization.
    """
    rng = random.Random(1123)
    for _ in range(25):
        terms = {}
        for _ in range(rng.randint(2, 5)):
            e = (rng.randint(0, 2), rng.randint(0, 2))
            terms[e] = terms.get(e, 0) + rng.randint(-4, 4)
        P = BiPoly(terms) + BiPoly({(3, 0): 1})   # forces deg_x = 3
        if P.deg_t < 1:
            continue
        m = UniPoly([rng.randint(-4, 4), rng.randint(-4, 4), 1])
        R = resultant_t(P, m)
        dt = P.deg_t
        for x0 in (Fraction(0), Fraction(1), Fraction(-2), Fraction(1, 2)):
            if P.coeff_of_t(dt).evaluate(x0) == 0:
                continue
            # P(x0, t) as a polynomial in t
            pt = UniPoly([P.coeff_of_t(j).evaluate(x0)
                          for j in range(dt + 1)])
            assert R.evaluate(x0) == resultant(pt, m)


def test_resultant_t_degree_multiplication():
    P = BiPoly.parse("x^2-t*x-1")
    m = parse_poly("x^3-x-1")
    R = resultant_t(P, m)
    assert R.degree == P.deg_x * m.degree


def test_arith_ring_axioms():
    rng = random.Random(5)
    polys = [BiPoly.parse(s) for s in
             ("x^2-t*x-1", "t^2+x", "x*t-3", "x^3+t^3")]
    for _ in range(20):
        a, b, c = (rng.choice(polys) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert (a - a).is_zero


def test_primitive_integer_and_content():
    P = BiPoly.parse("x^2-t*x-1") * Fraction(2, 3)
    assert P.content() == Fraction(2, 3)
    assert P.primitive_integer() == BiPoly.parse("x^2-t*x-1")
