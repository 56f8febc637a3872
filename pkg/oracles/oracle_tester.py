#!/usr/bin/env python3
"""
Free Poisson toolkit - Oracle Cross-check Testing Script

This script checks production arithmetic against the brute-force oracles:
1. Naive Leibniz brackets against the Lyndon-basis Poisson bracket
2. Exhaustive permutation filters against the customary pairings
3. sympy brackets and series against the exact production values
"""

import os
import sys
import random
import logging
from fractions import Fraction
from itertools import permutations

import pytest

# Add the parent directory to the path so we can import our modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.freepoisson import customary_pairings, permutation_sign as production_sign, standard_customary
from algebra.symplectic import GeneratorAssignment, eval_hom, ps_bracket
from cli.expressions import Target, parse_element
from oracles.brute import (
    OracleReport,
    brute_lyndon_words,
    classical_series,
    enumerate_T2n,
    naive_free_bracket,
    naive_generator,
    naive_product,
    naive_standard_customary,
    naive_text,
    permutation_sign,
    ps_image,
    random_ps_images,
    witt_count,
)

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('oracle_tester')

FP2 = Target("fp", 2)
TREES = ["x", "y", ("x", "y"), ("x", ("x", "y")), (("x", "y"), "y")]


def tree_degree(tree) -> int:
    return 1 if isinstance(tree, str) else tree_degree(tree[0]) + tree_degree(tree[1])


def random_naive(rng: random.Random, max_degree: int = 3):
    """Sum of three products of small bracket trees, each of degree <= max_degree."""
    result = {}
    for _ in range(3):
        factors = []
        degree = 0
        while True:
            tree = rng.choice(TREES)
            if degree + tree_degree(tree) > max_degree:
                break
            factors.append(tree)
            degree += tree_degree(tree)
            if rng.random() < 0.5:
                break
        if not factors:
            factors = ["x"]
        mono = tuple(sorted(factors, key=repr))
        result[mono] = result.get(mono, Fraction(0)) + (rng.randint(-3, 3) or 1)
    return {m: c for m, c in result.items() if c}


def production_images(images, names, n: int = 2):
    """The oracle's sympy images, read back as PS_n polynomials."""
    target = Target("ps", n)
    return {i: parse_element(str(images[name]).replace("**", "^"), target) for i, name in enumerate(names)}


# ----- naive brackets -----

def test_naive_bracket_examples():
    x, y = naive_generator("x"), naive_generator("y")
    assert naive_free_bracket(x, naive_product(y, y)) == {("y", ("x", "y")): Fraction(2)}
    assert naive_free_bracket(naive_product(x, y), x) == {("x", ("x", "y")): Fraction(-1)}
    assert naive_free_bracket(x, x) == {}


def test_naive_bracket_degree_cap():
    x = naive_generator("x")
    big = naive_product(naive_product(x, x), naive_product(x, x))
    with pytest.raises(ValueError):
        naive_free_bracket(big, naive_product(big, x))


def test_random_brackets_match_production():
    rng = random.Random(11)
    reports = []
    for case in range(12):
        a, b = random_naive(rng), random_naive(rng)
        expected = naive_free_bracket(a, b)
        left = parse_element(naive_text(a), FP2)
        right = parse_element(naive_text(b), FP2)
        produced = left.bracket(right)
        assert parse_element(naive_text(expected), FP2) == produced, case
        # PS_3 has no degree-6 identities
        for n in (2, 2, 2, 3):
            images = random_ps_images(["x", "y"], n, 2, rng)
            phi = GeneratorAssignment(FP2.alphabet, n, production_images(images, ["x", "y"], n))
            reports.append(OracleReport.compare(f"bracket {case} in PS_{n}", eval_hom(phi, produced),
                                                ps_image(expected, images, n)))
    assert all(report.equal for report in reports), [r for r in reports if not r.equal]


def test_naive_leibniz_text_is_parsed_exactly():
    x, y = naive_generator("x"), naive_generator("y")
    naive = naive_free_bracket(x, naive_product(y, y))
    assert str(parse_element(naive_text(naive), FP2)) == "2*y*{x,y}"


# ----- customary polynomials -----

@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 15), (4, 105)])
def test_T2n_counts(n, count):
    found = enumerate_T2n(n)
    assert len(found) == count
    flattened = sorted(tuple(i for pair in pairing for i in pair) for pairing in customary_pairings(n))
    assert sorted(found) == flattened


def test_T2n_cap():
    with pytest.raises(ValueError):
        enumerate_T2n(5)


def test_permutation_signs_agree():
    for tau in permutations(range(1, 6)):
        assert permutation_sign(tau) == production_sign(tau)


@pytest.mark.parametrize("n", [1, 2])
def test_standard_customary_matches_oracle(n):
    naive = naive_standard_customary(n)
    assert parse_element(naive_text(naive), Target("fp", 2 * n + 2)) == standard_customary(n)


# ----- symplectic bracket -----

def test_ps_bracket_matches_sympy():
    rng = random.Random(3)
    for case in range(5):
        images = random_ps_images(["a", "b"], 2, 3, rng)
        produced = production_images(images, ["a", "b"])
        oracle = ps_image({(("a", "b"),): Fraction(1)}, images, 2)
        report = OracleReport.compare(f"ps {case}", ps_bracket(produced[0], produced[1]), oracle)
        assert report.equal, report


def test_ps_bracket_example():
    value = parse_element("{x1 + y1, x1*y1}", Target("ps", 1))
    assert str(value) == "x1 - y1"


# ----- series and words -----

@pytest.mark.parametrize("name,k,value", [
    ("exp", 4, Fraction(1, 24)),
    ("exp", 0, Fraction(1)),
    ("sqrt_at(1)", 2, Fraction(-1, 8)),
    ("sqrt_at(1)", 4, Fraction(-5, 128)),
    ("sqrt_at(4)", 1, Fraction(1, 4)),
])
def test_classical_series(name, k, value):
    assert classical_series(name, k) == value


def test_classical_series_refusals():
    with pytest.raises(ValueError):
        classical_series("exp", 17)
    with pytest.raises(ValueError):
        classical_series("sqrt_at(2)", 1)
    with pytest.raises(ValueError):
        classical_series("log", 1)


def test_witt_formula_against_brute_force():
    for size in (2, 3):
        for length in range(1, 6):
            assert witt_count(size, length) == len(brute_lyndon_words(size, length))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
