#!/usr/bin/env python3
"""
Free Poisson toolkit - Multi-index and Polynomial Testing Script

This script tests the scalar layer the algebra is built on:
1. Multi-index arithmetic and orderings
2. Rational polynomials, total derivatives and substitution
3. Rational root search
"""

import os
import sys
import random
import logging
from fractions import Fraction

import pytest
import sympy

# Add the parent directory to the path so we can import our modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.errors import ArityMismatch, ContextMismatch, MissingAssignment, ZeroElementError
from algebra.multiindex import MultiIndex, Ordering, indices_of_degree, indices_up_to_degree
from algebra.polyring import PolyRing, rational_roots, to_scalar

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('algebra_tester')

PLANE = PolyRing(("x", "y"))
LINE = PolyRing(("x",))


# ----- multi-indices -----

def test_multiindex_basics():
    alpha = MultiIndex.parse("(1,0,2)")
    assert alpha.arity == 3
    assert alpha.degree() == 3
    assert alpha.factorial() == 2
    assert str(alpha) == "(1,0,2)"
    assert MultiIndex.unit(3, 1) == MultiIndex((0, 1, 0))


def test_multiindex_orders():
    a, b = MultiIndex((0, 2)), MultiIndex((1, 0))
    assert a < b
    assert a.lex_compare(b) is Ordering.LESS
    assert a.graded_lex_compare(b) is Ordering.GREATER
    assert a.lex_compare(a) is Ordering.EQUAL


def test_multiindex_subtraction():
    assert MultiIndex((2, 1)).sub_checked(MultiIndex((1, 1))) == MultiIndex((1, 0))
    assert MultiIndex((0, 2)).sub_checked(MultiIndex((1, 0))) is None
    assert MultiIndex((1, 1)).dominated_by(MultiIndex((1, 2)))


def test_multiindex_rejects_bad_input():
    with pytest.raises(ArityMismatch):
        MultiIndex((1, 0)) + MultiIndex((1, 0, 0))
    with pytest.raises(ValueError):
        MultiIndex((1, -1))
    with pytest.raises(ValueError):
        MultiIndex.parse("1,2")


def test_index_enumeration():
    assert indices_of_degree(2, 2) == [MultiIndex((0, 2)), MultiIndex((1, 1)), MultiIndex((2, 0))]
    assert len(indices_up_to_degree(2, 1)) == 3
    assert len(indices_up_to_degree(3, 2)) == 10
    assert indices_of_degree(0, 0) == [MultiIndex(())]


# ----- polynomials -----

def test_polynomial_arithmetic_and_printing():
    x, y = PLANE.gen("x"), PLANE.gen("y")
    square = (x + y) ** 2
    assert str(square) == "x^2 + 2*x*y + y^2"
    assert square.total_degree() == 2
    assert str(x * "3/2" - 1) == "3/2*x - 1"
    assert (x - x).is_zero()
    assert str(PLANE.zero()) == "0"


def test_polynomial_ring_mismatch():
    with pytest.raises(ContextMismatch):
        PLANE.gen("x") + LINE.gen("x")


def test_partial_and_total_derivatives():
    x = LINE.gen("x")
    u0, u1 = LINE.jet(MultiIndex((0,))), LINE.jet(MultiIndex((1,)))
    p = x * u0
    assert p.partial_derivative("x") == u0
    assert p.total_derivative(0) == u0 + x * u1
    assert (u1 * u1).total_derivative(0) == LINE.jet(MultiIndex((2,))) * u1 * 2


def test_evaluate_and_substitute():
    x, y = PLANE.gen("x"), PLANE.gen("y")
    p = x * x * y - y + 3
    assert p.evaluate({"x": 2, "y": Fraction(1, 2)}) == Fraction(9, 2)
    assert p.substitute({"y": 1}) == x * x + 2
    with pytest.raises(MissingAssignment):
        p.evaluate({"x": 1})


def test_compose_and_truncate():
    x, y = PLANE.gen("x"), PLANE.gen("y")
    p = x * x + y
    swapped = p.compose({PLANE.variable("x"): y, PLANE.variable("y"): x})
    assert swapped == y * y + x
    assert ((x + 1) ** 3).truncate(1) == x * 3 + 1
    assert ((x + y) ** 3).compose({PLANE.variable("y"): x}, max_degree=2).is_zero()


def test_leading_form_and_components():
    x, y = PLANE.gen("x"), PLANE.gen("y")
    p = x ** 3 + x * y + 5
    assert p.leading_form() == x ** 3
    assert sorted(p.homogeneous_components()) == [0, 2, 3]
    with pytest.raises(ZeroElementError):
        PLANE.zero().leading_form()


def test_rational_roots():
    x = LINE.gen("x")
    assert rational_roots(x * x * 2 - x * 3 + 1) == [Fraction(1, 2), Fraction(1)]
    assert rational_roots(x ** 3 - x) == [Fraction(-1), Fraction(0), Fraction(1)]
    assert rational_roots(x * x + 1) == []
    assert rational_roots(x * "2/3" - "1/3") == [Fraction(1, 2)]
    with pytest.raises(ZeroElementError):
        rational_roots(LINE.zero())


def test_to_scalar():
    assert to_scalar("3/2") == Fraction(3, 2)
    assert to_scalar(4) == Fraction(4)
    with pytest.raises(TypeError):
        to_scalar(0.5)
    with pytest.raises(TypeError):
        to_scalar(True)




# ----- randomized invariants -----

def random_index(rng: random.Random, arity: int = 3) -> MultiIndex:
    return MultiIndex(rng.randint(0, 3) for _ in range(arity))


def test_lex_order_is_a_total_order():
    rng = random.Random(2)
    for _ in range(200):
        a, b, c = (random_index(rng) for _ in range(3))
        assert a.lex_compare(b) is {Ordering.LESS: Ordering.GREATER, Ordering.GREATER: Ordering.LESS,
                                    Ordering.EQUAL: Ordering.EQUAL}[b.lex_compare(a)]
        assert (a.lex_compare(b) is Ordering.EQUAL) == (a == b)
        if a < b and b < c:
            assert a < c


def test_lex_order_is_translation_invariant():
    rng = random.Random(4)
    for _ in range(200):
        a, b, c = (random_index(rng) for _ in range(3))
        assert (a + c).lex_compare(b + c) is a.lex_compare(b)


def random_plane_polynomial(rng: random.Random, with_jets: bool = False):
    """Four random terms of degree <= 3 over x, y and optionally a few jets."""
    factors = [PLANE.gen("x"), PLANE.gen("y")]
    if with_jets:
        factors += [PLANE.jet(MultiIndex(e)) for e in [(0, 0), (1, 0), (0, 1), (1, 1)]]
    result = PLANE.zero()
    for _ in range(4):
        term = PLANE.constant(rng.randint(-3, 3))
        for _ in range(rng.randint(0, 3)):
            term = term * rng.choice(factors)
        result = result + term
    return result


def test_partial_derivatives_commute():
    rng = random.Random(6)
    for _ in range(100):
        p = random_plane_polynomial(rng, with_jets=True)
        assert p.partial_derivative("x").partial_derivative("y") == p.partial_derivative("y").partial_derivative("x")


def test_total_derivatives_commute():
    rng = random.Random(8)
    for _ in range(100):
        p = random_plane_polynomial(rng, with_jets=True)
        assert p.total_derivative(0).total_derivative(1) == p.total_derivative(1).total_derivative(0)


def test_total_derivative_leibniz_rule():
    rng = random.Random(10)
    for _ in range(100):
        p, q = (random_plane_polynomial(rng, with_jets=True) for _ in range(2))
        for j in (0, 1):
            assert (p * q).total_derivative(j) == p.total_derivative(j) * q + p * q.total_derivative(j)


def test_evaluate_is_a_ring_homomorphism():
    rng = random.Random(12)
    for _ in range(100):
        p, q = (random_plane_polynomial(rng) for _ in range(2))
        point = {"x": Fraction(rng.randint(-5, 5), rng.randint(1, 4)), "y": Fraction(rng.randint(-5, 5))}
        assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)
        assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
        assert PLANE.one().evaluate(point) == 1


def test_rational_roots_match_sympy():
    rng = random.Random(14)
    t = sympy.Symbol("t")
    x = LINE.gen("x")
    for _ in range(100):
        # products of random linear factors with a random quadratic tail
        p = LINE.constant(rng.choice([-3, -2, 1, 2, 5]))
        for _ in range(rng.randint(0, 3)):
            p = p * (x * rng.randint(1, 4) - rng.randint(-6, 6))
        p = p * (x * x * rng.randint(0, 2) + x * rng.randint(-3, 3) + rng.choice([-2, -1, 1, 3]))
        _, coeffs = p.as_univariate()
        expression = sum(sympy.Rational(c.numerator, c.denominator) * t ** k for k, c in enumerate(coeffs))
        expected = sorted(Fraction(int(r.p), int(r.q)) for r in sympy.Poly(expression, t, domain="QQ").ground_roots())
        assert rational_roots(p) == expected, str(p)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
