#!/usr/bin/env python3
"""
Free Poisson toolkit - Free Lie Algebra Testing Script

This script tests the Lyndon-basis free Lie algebra by:
1. Checking Lyndon words and their standard factorizations
2. Counting basis words against brute force and the Witt formula
3. Checking antisymmetry and the Jacobi identity on basis triples
"""

import os
import sys
import logging
from itertools import product

import pytest

# Add the parent directory to the path so we can import our modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.errors import ContextMismatch, InvalidWord, UnknownIdentifier
from algebra.freelie import (
    BRACKET_CACHE_SIZE,
    Alphabet,
    LieElement,
    _bracket_basis,
    bracket_of_words,
    is_lyndon,
    lie_bracket,
    lyndon_basis,
    lyndon_words,
    standard_factorization,
)
from oracles.brute import brute_lyndon_words, witt_count

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('lie_tester')

XY = Alphabet(("x", "y"))


def gen(index: int) -> LieElement:
    return LieElement.generator(XY, index)


def test_alphabet_names():
    assert XY.index("x") == 0
    assert XY.index("z2") == 1
    assert Alphabet.standard(3).name(2) == "z3"
    with pytest.raises(UnknownIdentifier):
        XY.index("w")
    with pytest.raises(ValueError):
        Alphabet(("x", "x"))


def test_is_lyndon():
    assert is_lyndon((0, 0, 1))
    assert is_lyndon((0, 1, 1))
    assert is_lyndon((0, 0, 1, 0, 1))
    assert not is_lyndon((0, 1, 0))
    assert not is_lyndon((1, 0))
    assert not is_lyndon((0, 1, 0, 1))
    with pytest.raises(InvalidWord):
        is_lyndon(())


def test_standard_factorization():
    assert standard_factorization((0, 1)) == ((0,), (1,))
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))
    assert standard_factorization((0, 0, 1, 1)) == ((0,), (0, 1, 1))
    with pytest.raises(InvalidWord):
        standard_factorization((0,))


@pytest.mark.parametrize("length,expected", [(1, 2), (2, 1), (3, 2), (4, 3), (5, 6)])
def test_lyndon_counts_two_letters(length, expected):
    words = [w for w in lyndon_words(2, 5) if len(w) == length]
    assert len(words) == expected
    assert sorted(words) == brute_lyndon_words(2, length)
    assert witt_count(2, length) == expected


@pytest.mark.parametrize("size,length", [(3, 3), (3, 4), (2, 8)])
def test_lyndon_counts_match_witt(size, length):
    words = [w for w in lyndon_words(size, length) if len(w) == length]
    assert len(words) == witt_count(size, length)


def test_basis_order():
    assert lyndon_basis(XY, 3) == [(0,), (1,), (0, 1), (0, 0, 1), (0, 1, 1)]


def test_small_brackets():
    x, y = gen(0), gen(1)
    xy = LieElement.basis(XY, (0, 1))
    assert lie_bracket(x, y) == xy
    assert lie_bracket(y, x) == -xy
    assert lie_bracket(x, x).is_zero()
    assert lie_bracket(x, xy) == LieElement.basis(XY, (0, 0, 1))
    assert lie_bracket(xy, y) == LieElement.basis(XY, (0, 1, 1))
    assert str(lie_bracket(y, xy)) == "-xyy"


def test_degree_five_bracket():
    xy = LieElement.basis(XY, (0, 1))
    xxy = LieElement.basis(XY, (0, 0, 1))
    result = lie_bracket(xy, xxy)
    assert result.is_homogeneous()
    assert all(len(w) == 5 and is_lyndon(w) for w in result.terms)
    assert result == -lie_bracket(xxy, xy)


def test_antisymmetry_and_jacobi_on_basis_triples():
    basis = lyndon_basis(XY, 4)
    for u, v in product(basis, repeat=2):
        if len(u) + len(v) <= 6:
            forward = LieElement(XY, bracket_of_words(u, v))
            backward = LieElement(XY, bracket_of_words(v, u))
            assert (forward + backward).is_zero(), (u, v)
    for u, v, w in product(basis, repeat=3):
        if len(u) + len(v) + len(w) > 6:
            continue
        a, b, c = (LieElement.basis(XY, word) for word in (u, v, w))
        total = a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))
        assert total.is_zero(), (u, v, w)


def test_three_letter_jacobi():
    abc = Alphabet.standard(3)
    a, b, c = (LieElement.generator(abc, i) for i in range(3))
    ab = a.bracket(b)
    total = ab.bracket(c) + b.bracket(c).bracket(a) + c.bracket(a).bracket(b)
    assert total.is_zero()
    assert len(a.bracket(b.bracket(c)).terms) == 1


def test_element_validation():
    with pytest.raises(InvalidWord):
        LieElement(XY, {(1, 0): 1})
    with pytest.raises(InvalidWord):
        LieElement(XY, {(0, 2): 1})
    with pytest.raises(ContextMismatch):
        gen(0) + LieElement.generator(Alphabet.standard(2), 1)
    assert (gen(0) * 3 - gen(0) * 3).is_zero()


def test_bracket_cache_is_bounded():
    assert _bracket_basis.cache_info().maxsize == BRACKET_CACHE_SIZE
    for u, v in product(lyndon_basis(XY, 4), repeat=2):
        bracket_of_words(u, v)
    assert _bracket_basis.cache_info().currsize <= BRACKET_CACHE_SIZE


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
