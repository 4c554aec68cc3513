from fractions import Fraction

import pytest

from heightlab import BiPoly, MPoly, ParseError, UniPoly, parse_poly


def test_univariate_golden():
    f = parse_poly("x^2 - x - 1")
    assert isinstance(f, UniPoly)
    assert f.coeffs == (-1, -1, 1)


def test_coefficient_forms():
    assert parse_poly("2*x - 1").coeffs == (-1, 2)
    assert parse_poly("1/2*x^2 + 3/4").coeffs == (Fraction(3, 4), 0, Fraction(1, 2))
    assert parse_poly("-x^3 + x").coeffs == (0, 1, 0, -1)


def test_parenthesized_products():
    f = parse_poly("(x-1)*(x+1)")
    assert f.coeffs == (-1, 0, 1)
    g = parse_poly("(x+1)^3")
    assert g.coeffs == (1, 3, 3, 1)


def test_whitespace_insensitive():
    a = parse_poly("x ^ 2 - t * x", ("x", "t"))
    b = parse_poly("x^2-t*x", ("x", "t"))
    assert a == b


def test_juxtaposition_is_not_multiplication():
    # products need an explicit *; "2x" is a syntax error, not 2*x
    with pytest.raises(ParseError):
        parse_poly("2x - 1")


def test_bivariate_dispatch():
    P = parse_poly("x^2 - t*x - 1", ("x", "t"))
    assert isinstance(P, BiPoly)
    assert P == BiPoly.parse("x^2-t*x-1")
    assert P.deg_x == 2 and P.deg_t == 1


def test_multivariate_dispatch():
    F = parse_poly("x0^2 + x1^2 - x2^2", ("x0", "x1", "x2"))
    assert isinstance(F, MPoly)
    assert F.total_degree() == 2
    assert F.is_homogeneous()


def test_unknown_variable_rejected():
    with pytest.raises(ParseError):
        parse_poly("x + y")


def test_malformed_inputs():
    for bad in ("", "x +", "x^", "((x)", "x^-2", "1//2"):
        with pytest.raises(ParseError):
            parse_poly(bad)


def test_parse_roundtrips_to_string():
    for s in ("x^2-x-1", "2*x-1", "x^10-x-1", "x^3+x^2-1"):
        f = parse_poly(s)
        assert parse_poly(f.to_string()) == f
