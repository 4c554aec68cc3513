import random

import pytest

from heightlab import (DEGREE_CAP, DegreeCapExceeded, UniPoly,
                       factor_rationals, is_irreducible, parse_poly,
                       squarefree_part_certified)
from heightlab.unipoly import is_squarefree, squarefree_part


def factors_of(text):
    unit, facs = factor_rationals(parse_poly(text))
    return unit, [(f.to_string(), m) for f, m in facs]


def test_golden_factorizations():
    """Frozen from an independent computer-algebra run."""
    unit, facs = factors_of("x^6-1")
    assert unit == 1
    assert facs == [("x-1", 1), ("x+1", 1), ("x^2-x+1", 1), ("x^2+x+1", 1)]

    unit, facs = factors_of("x^4-4")
    assert unit == 1
    assert facs == [("x^2-2", 1), ("x^2+2", 1)]

    unit, facs = factors_of("2*x^5+3*x^4-2*x^3-3*x^2")
    assert unit == 1
    assert facs == [("x-1", 1), ("x", 2), ("x+1", 1), ("2*x+3", 1)]

    unit, facs = factors_of("x^8+x^4+1")
    assert unit == 1
    assert facs == [("x^2-x+1", 1), ("x^2+x+1", 1), ("x^4-x^2+1", 1)]

    unit, facs = factors_of("6*x^4-5*x^3-38*x^2-5*x+6")
    assert unit == 1
    assert facs == [("x-3", 1), ("3*x-1", 1), ("2*x+1", 1), ("x+2", 1)]

    unit, facs = factors_of("x^12-1")
    assert unit == 1
    assert facs == [("x-1", 1), ("x+1", 1), ("x^2-x+1", 1), ("x^2+1", 1),
                    ("x^2+x+1", 1), ("x^4-x^2+1", 1)]


def test_unit_carries_rational_content():
    f = parse_poly("x^2-2") * UniPoly.constant("3/2")
    unit, facs = factor_rationals(f)
    assert unit == UniPoly.constant("3/2").lc
    assert [(g.to_string(), m) for g, m in facs] == [("x^2-2", 1)]


def test_factor_count_of_cyclotomic_products():
    # x^n - 1 splits into one irreducible piece per divisor of n
    for n in range(1, 13):
        tau = sum(1 for d in range(1, n + 1) if n % d == 0)
        _, facs = factor_rationals(parse_poly(f"x^{n}-1"))
        assert sum(1 for _ in facs) == tau
        assert all(m == 1 for _, m in facs)


def test_reconstruction_property():
    rng = random.Random(60601)
    for _ in range(30):
        deg = rng.randint(1, 8)
        cs = [rng.randint(-9, 9) for _ in range(deg)]
        cs.append(rng.choice([1, 2, 3, -1]))
        f = UniPoly(cs)
        unit, facs = factor_rationals(f)
        prod = UniPoly.constant(unit)
        for g, m in facs:
            assert g.content() == 1 and g.lc > 0, "factors must be primitive"
            prod = prod * g ** m
        assert prod == f


def test_factors_are_irreducible():
    _, facs = factor_rationals(parse_poly("x^8+x^4+1") * parse_poly("x^4-4"))
    for g, _ in facs:
        assert is_irreducible(g)


def test_is_irreducible_golden():
    assert is_irreducible(parse_poly("x^2-x-1"))
    assert is_irreducible(parse_poly("x^3-x-1"))
    # a degree-10 unit-circle neighbour with tiny logarithmic size
    assert is_irreducible(parse_poly("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"))
    assert not is_irreducible(parse_poly("x^4-4"))
    assert not is_irreducible(UniPoly.constant(5))


def test_degree_cap():
    f = UniPoly.monomial(DEGREE_CAP + 1) - parse_poly("x+1")
    with pytest.raises(DegreeCapExceeded) as ei:
        factor_rationals(f)
    assert ei.value.degree == DEGREE_CAP + 1
    assert ei.value.cap == DEGREE_CAP
    with pytest.raises(DegreeCapExceeded):
        is_irreducible(parse_poly("x^10-x-1"), cap=8)


def test_squarefree_part_certified_on_squarefree_input():
    f = parse_poly("x^2-x-1")
    part, note = squarefree_part_certified(f)
    assert part == f
    assert "squarefree" in note


def test_squarefree_part_certified_strips_multiplicity():
    f = parse_poly("x^2-x-1") ** 2 * parse_poly("x^3-x-1")
    part, note = squarefree_part_certified(f)
    assert is_squarefree(part)
    assert part.monic() == squarefree_part(f)
    assert part.is_integral() and part.content() == 1
    assert note
