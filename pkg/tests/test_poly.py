import random
from fractions import Fraction as Q

import pytest

from polinv.poly import (Poly, VariableLayout, homogeneous_bivariate_gcd,
                         is_scalar_multiple, parse_poly, poly_to_string)

L2 = VariableLayout(1, 2)
X = Poly.variable(L2, 0)
Y = Poly.variable(L2, 1)


def test_product_of_sum_and_difference():
    assert (X + Y) * (X - Y) == X ** 2 - Y ** 2


def test_additive_inverse():
    p = 3 * X * Y + X ** 2
    assert (p + (-1) * p).is_zero()


def test_square_of_sum():
    assert (X + Y) ** 2 == X ** 2 + 2 * X * Y + Y ** 2


def test_layout_mismatch_raises():
    other = Poly.variable(VariableLayout(1, 3), 0)
    with pytest.raises(ValueError):
        X + other
    with pytest.raises(ValueError):
        X * other


def test_ring_axioms_spot_check():
    rng = random.Random(11)

    def rand_poly():
        terms = {}
        for _ in range(rng.randint(1, 4)):
            e = (rng.randint(0, 3), rng.randint(0, 3))
            terms[e] = Q(rng.randint(-4, 4))
        return Poly(L2, terms)

    for _ in range(20):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a


def test_substitute_shift():
    p = X ** 2
    assert p.substitute({0: X + Y}) == X ** 2 + 2 * X * Y + Y ** 2


def test_substitute_to_zero():
    p = X * Y
    assert p.substitute({1: Poly.zero(L2)}).is_zero()


def test_substitute_fresh_variable():
    # x -> u*x with a fresh third variable; y is carried along unchanged
    L3 = VariableLayout(1, 3)
    x3, y3, u3 = (Poly.variable(L3, i) for i in range(3))
    p = X ** 2 + Y ** 2
    assert p.substitute({0: u3 * x3}) == u3 ** 2 * x3 ** 2 + y3 ** 2


def test_substitute_is_ring_homomorphism():
    rng = random.Random(12)
    L3 = VariableLayout(1, 3)
    images = {0: Poly.variable(L3, 0) + Poly.variable(L3, 2),
              1: Poly.variable(L3, 1) * Poly.variable(L3, 2)}

    def rand_poly():
        terms = {(rng.randint(0, 2), rng.randint(0, 2)): Q(rng.randint(-3, 3))
                 for _ in range(3)}
        return Poly(L2, terms)

    for _ in range(15):
        p, q = rand_poly(), rand_poly()
        assert (p * q).substitute(images) == p.substitute(images) * q.substitute(images)
        assert (p + q).substitute(images) == p.substitute(images) + q.substitute(images)


def test_derivative_examples():
    assert (X ** 3).derivative(0) == 3 * X ** 2
    assert (X * Y).derivative(1) == X
    assert (Y ** 2).derivative(0).is_zero()


def test_multidegree_components_two_blocks():
    L = VariableLayout(2, 1)
    x = Poly.variable(L, 0)
    y = Poly.variable(L, 1)
    comps = (x ** 2 + 2 * x * y + y ** 2).multidegree_components()
    assert comps == {(2, 0): x ** 2, (1, 1): 2 * x * y, (0, 2): y ** 2}
    assert Poly.zero(L).multidegree_components() == {}
    assert (x ** 2 * y).multidegree_components() == {(2, 1): x ** 2 * y}


def test_components_sum_to_input():
    rng = random.Random(13)
    L = VariableLayout(2, 2)
    for _ in range(10):
        terms = {tuple(rng.randint(0, 2) for _ in range(4)): Q(rng.randint(-3, 3))
                 for _ in range(5)}
        p = Poly(L, terms)
        total = Poly.zero(L)
        comps = p.multidegree_components()
        assert len(set(comps)) == len(comps)
        for c in comps.values():
            total = total + c
        assert total == p


def test_evaluate():
    assert (X ** 2 + Y).evaluate((2, 3)) == 7
    assert (X * Y + 5).evaluate((0, 0)) == 5
    assert (X * Y).evaluate((Q(1, 2), Q(2, 3))) == Q(1, 3)
    with pytest.raises(ValueError):
        X.evaluate((1,))


def test_multidegree():
    L = VariableLayout(2, 2)
    p = parse_poly("x1*y2 + x2*y1", L)
    assert p.multidegree() == (1, 1)
    q = parse_poly("x1 + y1", L)
    assert q.multidegree() is None


# -- text grammar -----------------------------------------------------------

def test_parse_canonical_names():
    L = VariableLayout(2, 2)
    p = parse_poly("3/2*x1_2^2*x2_1 - x1_1", L)
    assert p.coefficient((0, 2, 1, 0)) == Q(3, 2)
    assert p.coefficient((1, 0, 0, 0)) == -1
    assert poly_to_string(p) == "3/2*x1_2^2*x2_1 - x1_1"


def test_parse_aliases_two_blocks():
    L = VariableLayout(2, 3)
    assert parse_poly("x1*y2", L) == parse_poly("x1_1*x2_2", L)


def test_parse_constant_and_signs():
    p = parse_poly(" - x1 + 2 ", L2)
    assert p == 2 - X


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_poly("x1 $ x2", L2)
    with pytest.raises(ValueError):
        parse_poly("y1", L2)  # alias y needs a second block
    with pytest.raises(ValueError):
        parse_poly("x5", L2)
    with pytest.raises(ValueError):
        parse_poly("", L2)


def test_roundtrip_random():
    rng = random.Random(14)
    L = VariableLayout(2, 2)
    for _ in range(20):
        terms = {tuple(rng.randint(0, 3) for _ in range(4)):
                 Q(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)}
        p = Poly(L, terms)
        assert parse_poly(poly_to_string(p), L) == p


def test_zero_serializes_as_zero():
    assert poly_to_string(Poly.zero(L2)) == "0"
    assert parse_poly("0", L2).is_zero()


# -- homogeneous bivariate gcd ----------------------------------------------

def test_gcd_monomials():
    g = homogeneous_bivariate_gcd([X ** 2 * Y, X * Y ** 2])
    assert g == X * Y


def test_gcd_linear_factor():
    g = homogeneous_bivariate_gcd([X ** 2 - Y ** 2, X ** 2 - 2 * X * Y + Y ** 2])
    assert g == X - Y


def test_gcd_coprime():
    g = homogeneous_bivariate_gcd([X ** 3, Y ** 3])
    assert g == Poly.constant(L2, 1)


def test_gcd_handles_y_powers_and_zero_inputs():
    g = homogeneous_bivariate_gcd([Poly.zero(L2), X * Y ** 3, Y ** 2 * (X + Y)])
    assert g == Y ** 2
    with pytest.raises(ValueError):
        homogeneous_bivariate_gcd([Poly.zero(L2)])


def test_gcd_against_factored_cases():
    rng = random.Random(15)
    for _ in range(20):
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        if a == 0 and b == 0:
            a = 1
        g = (a * X + b * Y) ** rng.randint(1, 2)
        # cofactors with distinct roots, so the gcd is exactly g (made monic)
        f1 = g * X ** 2
        f2 = g * (X + 7 * Y) ** 2
        got = homogeneous_bivariate_gcd([f1, f2])
        assert is_scalar_multiple(got, g)
        # the output divides each input: gcd with either input returns it back
        assert homogeneous_bivariate_gcd([f1, got]) == got
        assert homogeneous_bivariate_gcd([f2, got]) == got
