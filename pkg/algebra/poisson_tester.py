#!/usr/bin/env python3
"""
Free Poisson toolkit - Free Poisson Algebra Testing Script

This script tests the free Poisson algebra by:
1. Checking products, brackets and the Poisson axioms
2. Checking degrees and homogeneous components
3. Building and reading customary polynomials
"""

import os
import sys
import random
import logging
from fractions import Fraction

import pytest

# Add the parent directory to the path so we can import our modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.errors import InvalidWord, MissingAssignment, NotCustomary, ZeroElementError
from algebra.freelie import Alphabet, LieElement, lyndon_basis
from algebra.freepoisson import (
    PoissonElement,
    customary_basis,
    customary_monomial,
    customary_pairings,
    customary_terms,
    degrees,
    evaluate_homomorphism,
    from_commutative_polynomial,
    poisson_bracket,
    split_commutative_part,
    standard_customary,
    to_commutative_polynomial,
)
from algebra.polyring import PolyRing

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('poisson_tester')

XY = Alphabet(("x", "y"))
X = PoissonElement.generator(XY, 0)
Y = PoissonElement.generator(XY, 1)
E3 = PoissonElement.word(XY, (0, 1))


def random_element(rng: random.Random, max_degree: int = 5, size: int = 3) -> PoissonElement:
    """Small random combination of products of basis words, of total degree <= max_degree."""
    basis = lyndon_basis(XY, 3)
    result = X.zero()
    for _ in range(size):
        term, degree = X.one(), 0
        for word in rng.sample(basis, rng.randint(1, 3)):
            if degree + len(word) <= max_degree:
                term, degree = term * PoissonElement.word(XY, word), degree + len(word)
        result = result + term * rng.randint(-2, 2)
    return result


def test_product_is_commutative_multiset_union():
    assert X * Y == Y * X
    assert (X * X).terms == {((0,), (0,)): Fraction(1)}
    assert str(X * X * Y + 1) == "x^2*y + 1"
    assert (X + 1) * (X - 1) == X ** 2 - 1


def test_basic_brackets():
    assert X.bracket(Y) == E3
    assert str(E3) == "{x,y}"
    assert Y.bracket(X) == -E3
    assert X.bracket(X).is_zero()
    assert X.bracket(Y * Y) == Y * E3 * 2
    assert (X * Y).bracket(X) == -(X * E3)
    assert X.bracket(PoissonElement.constant(XY, 5)).is_zero()


def test_bracket_of_words_is_lie_bracket():
    xxy = PoissonElement.word(XY, (0, 0, 1))
    assert X.bracket(E3) == xxy
    assert str(xxy) == "{x,{x,y}}"
    lie = LieElement.basis(XY, (0, 1)).bracket(LieElement.basis(XY, (0, 0, 1)))
    assert E3.bracket(xxy) == PoissonElement(XY, {(word,): c for word, c in lie.terms.items()})


def test_poisson_axioms_on_random_elements():
    rng = random.Random(7)
    degrees_seen = set()
    for _ in range(200):
        a, b, c = (random_element(rng) for _ in range(3))
        degrees_seen.update(e.degree() for e in (a, b, c) if not e.is_zero())
        assert (a.bracket(b) + b.bracket(a)).is_zero()
        assert a.bracket(b * c) == a.bracket(b) * c + b * a.bracket(c)
        jacobi = a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))
        assert jacobi.is_zero()
    assert max(degrees_seen) == 5


def test_degrees():
    element = X * E3 + Y
    info = degrees(element)
    assert info.total == 3
    assert info.per_generator == (2, 1)
    assert sorted(info.components) == [1, 3]
    assert element.degree_in(1) == 1
    assert element.depends_on(1)
    with pytest.raises(ZeroElementError):
        X.zero().degree()


def test_components_and_multilinearity():
    z = Alphabet.standard(4)
    q = customary_monomial(2)
    assert q.alphabet == z
    assert q.is_multilinear()
    assert not (X * E3).is_multilinear()
    parts = (X * X * Y + X).components_in(0)
    assert sorted(parts) == [1, 2]
    assert parts[2] == X * X * Y


def test_invalid_words_rejected():
    with pytest.raises(InvalidWord):
        PoissonElement(XY, {((1, 0),): 1})
    with pytest.raises(InvalidWord):
        PoissonElement(XY, {((0, 3),): 1})


def test_customary_pairings():
    assert len(customary_pairings(1)) == 1
    assert len(customary_pairings(2)) == 3
    assert len(customary_pairings(3)) == 15
    assert customary_pairings(2)[0] == ((1, 2), (3, 4))
    assert len(customary_basis(3)) == 15


def test_standard_customary_signs():
    st4 = standard_customary(1)
    z = st4.alphabet
    pair = lambda a, b: PoissonElement.word(z, (a - 1, b - 1))
    expected = pair(1, 2) * pair(3, 4) - pair(1, 3) * pair(2, 4) + pair(1, 4) * pair(2, 3)
    assert st4 == expected
    assert len(standard_customary(2).terms) == 15


def test_customary_terms():
    terms = customary_terms(standard_customary(1))
    assert len(terms) == 3
    assert (((0, 1), (2, 3)), Fraction(1)) in terms
    z = Alphabet.standard(3)
    with pytest.raises(NotCustomary):
        customary_terms(X * E3)
    with pytest.raises(NotCustomary):
        customary_terms(PoissonElement.word(z, (0, 1)) * PoissonElement.word(z, (0, 2)))
    with pytest.raises(NotCustomary):
        customary_terms(PoissonElement(z))


def test_evaluate_homomorphism_into_free_poisson():
    # x -> x + y, y -> y sends {x, y} to {x, y}
    image = evaluate_homomorphism(X * E3, (X + Y, Y), poisson_bracket, X.one())
    assert image == (X + Y) * E3
    with pytest.raises(MissingAssignment):
        evaluate_homomorphism(E3, {0: X}, poisson_bracket, X.one())


def test_commutative_split_and_conversion():
    f1, f2 = split_commutative_part(X * X + E3 * Y + 3)
    assert f1 == X * X + 3
    assert f2 == E3 * Y
    ring = PolyRing(("x", "y"))
    p = to_commutative_polynomial(f1, ring)
    assert str(p) == "x^2 + 3"
    assert from_commutative_polynomial(p, XY) == f1
    with pytest.raises(ValueError):
        to_commutative_polynomial(f2, ring)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
