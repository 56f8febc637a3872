#!/usr/bin/env python3
"""
Free Poisson toolkit - Freiheitssatz Witness Testing Script

This script tests the witness pipeline by:
1. Building witnesses for small relators and checking the series they carry
2. Re-verifying witnesses independently, and catching tampered ones
3. Checking each stage's refusals and budget failures
"""

import os
import sys
import random
import logging
from dataclasses import replace
from fractions import Fraction

import pytest

# Add the parent directory to the path so we can import our modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.errors import (
    BudgetExhausted,
    NoRationalSeed,
    NotDependent,
    PipelineError,
    PreconditionViolation,
    ZeroElementError,
)
from algebra.freelie import Alphabet
from algebra.freepoisson import PoissonElement
from algebra.multiindex import MultiIndex
from algebra.symplectic import GeneratorAssignment, eval_hom, symplectic_ring
from oracles.brute import classical_series
from solvers.freiheitssatz import (
    PdeForm,
    SearchBudget,
    construct_witness,
    extract_pde,
    find_embedding,
    find_seed,
    highest_zm_part,
    verify_witness,
)

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('freiheitssatz_tester')

Z = Alphabet.standard(2)
Z3 = Alphabet.standard(3)
Z1 = PoissonElement.generator(Z, 0)
Z2 = PoissonElement.generator(Z, 1)
PS1 = symplectic_ring(1)
BUDGET = SearchBudget(trials=20, max_rank=2, seed_grid_points=200)


def test_highest_part():
    f = Z2 * Z2 * Z1 + Z2 + 1
    assert highest_zm_part(f) == Z1 * Z2 * Z2
    assert highest_zm_part(f, m=1) == Z1 * Z2 * Z2
    with pytest.raises(ZeroElementError):
        highest_zm_part(PoissonElement(Z))


def test_bracket_relator_witness():
    f = Z1.bracket(Z2) - 1
    witness = construct_witness(f, Z1, order=4, budget=BUDGET)
    assert witness.rank == 1
    assert str(witness.pde.h) == "u(0,1) - 1"
    assert witness.series == PS1.gen("y1")
    assert witness.theta_g == PS1.gen("x1")
    assert witness.residual_ok
    assert witness.certified_order == 3
    assert verify_witness(witness, f, Z1)
    assert witness.to_json()["phi"] == {"z1": "x1"}


def test_embedding_is_not_degenerate():
    f = Z1.bracket(Z2) - 1
    embedding = find_embedding(f, Z1, BUDGET)
    target = Z1 * f * highest_zm_part(f)
    assert not eval_hom(embedding.assignment, target).is_zero()
    assert embedding.trial == 2


def test_square_root_relator_witness():
    f = Z2 * Z2 - Z1
    witness = construct_witness(f, Z1, order=6, budget=BUDGET)
    assert witness.rank == 1
    assert witness.seed.point == (Fraction(1), Fraction(0))
    assert witness.certified_order == 6
    for k in range(7):
        assert witness.coefficients[MultiIndex((k, 0))] == classical_series("sqrt_at(1)", k)
    assert witness.coefficients[MultiIndex((0, 1))] == 0
    assert verify_witness(witness, f, Z1)


def test_random_g_survives():
    rng = random.Random(17)
    f = Z1.bracket(Z2) - 1
    x1 = PS1.gen("x1")
    for _ in range(5):
        coeffs = [rng.randint(-3, 3) for _ in range(4)]
        if not any(coeffs):
            coeffs[0] = 1
        g = sum((Z1 ** k * c for k, c in enumerate(coeffs)), PoissonElement(Z))
        witness = construct_witness(f, g, order=3, budget=BUDGET)
        assert witness.theta_g == sum((x1 ** k * c for k, c in enumerate(coeffs)), PS1.zero())
        assert not witness.theta_g.is_zero()
        assert verify_witness(witness, f, g)


def random_lower_element(rng: random.Random) -> PoissonElement:
    """Nonzero g of degree <= 3 in z1, z2 built from products and brackets."""
    z1, z2 = (PoissonElement.generator(Z3, j) for j in range(2))
    pieces = [(z1, 1), (z2, 1), (z1.bracket(z2), 2), (z1.bracket(z1.bracket(z2)), 3), (z2.bracket(z1.bracket(z2)), 3)]
    while True:
        g = PoissonElement.constant(Z3, rng.randint(-2, 2))
        for _ in range(3):
            term, degree = PoissonElement.constant(Z3, rng.choice([-2, -1, 1, 3])), 0
            for _ in range(rng.randint(1, 3)):
                piece, size = rng.choice(pieces)
                if degree + size <= 3:
                    term, degree = term * piece, degree + size
            g = g + term
        if not g.is_zero():
            return g


def test_random_g_fails_only_at_search_stages():
    rng = random.Random(31)
    z1, z2, z3 = (PoissonElement.generator(Z3, j) for j in range(3))
    f = z1.bracket(z3) - z2
    built = 0
    for _ in range(10):
        g = random_lower_element(rng)
        try:
            witness = construct_witness(f, g, order=3, budget=BUDGET)
        except PipelineError as e:
            assert e.stage in ("embedding", "seed"), (str(g), e.stage)
            continue
        assert witness.residual_ok
        assert not witness.theta_g.is_zero()
        assert verify_witness(witness, f, g)
        built += 1
    assert built > 0


def test_extract_pde_examples():
    x1 = PS1.gen("x1")
    phi = GeneratorAssignment(Z, 1, {0: x1})
    nested = extract_pde(Z1.bracket(Z1.bracket(Z2)), phi)
    assert nested.h == PS1.jet(MultiIndex((0, 2)))
    assert nested.alphas == [MultiIndex((0, 2))]
    square = extract_pde(Z2 * Z2 - Z1, phi)
    assert square.h == PS1.jet(MultiIndex.zero(2)) ** 2 - x1
    assert square.alphas == [MultiIndex.zero(2)]


def test_extract_pde_is_linear_in_lower_terms():
    z1, z2, z3 = (PoissonElement.generator(Z3, j) for j in range(3))
    x1, y1 = PS1.gen("x1"), PS1.gen("y1")
    phi = GeneratorAssignment(Z3, 1, {0: x1 + y1 * y1, 1: y1 * 2 - 1})
    f = z1.bracket(z3) * z2 + z3 * z3
    lower = z1.bracket(z2) + z1 * z2 - 2
    combined = extract_pde(f + lower, phi)
    assert combined.h == extract_pde(f, phi).h + eval_hom(phi, lower)
    assert combined.alphas == extract_pde(f, phi).alphas


def test_tampered_witness_rejected():
    f = Z1.bracket(Z2) - 1
    witness = construct_witness(f, Z1, order=4, budget=BUDGET)
    assert not verify_witness(replace(witness, series=witness.series + PS1.gen("y1")), f, Z1)
    assert not verify_witness(replace(witness, assignment=GeneratorAssignment(Z, 1, {0: PS1.zero()})), f, Z1)


def test_input_checks():
    with pytest.raises(NotDependent):
        construct_witness(Z1 * Z1 - 1, Z1, budget=BUDGET)
    with pytest.raises(PreconditionViolation):
        construct_witness(Z2 - 1, Z2, budget=BUDGET)
    with pytest.raises(ZeroElementError):
        construct_witness(Z2 - 1, PoissonElement(Z), budget=BUDGET)


def test_pde_needs_a_derivative():
    f = Z1.bracket(Z2)
    phi = GeneratorAssignment(Z, 1, {0: PS1.one()})
    with pytest.raises(NotDependent):
        extract_pde(f, phi)


def test_seed_search_gives_up():
    u = PS1.jet(MultiIndex.zero(2))
    pde = PdeForm(u * u - 2, [MultiIndex.zero(2)], GeneratorAssignment(Z, 1, {}))
    with pytest.raises(NoRationalSeed):
        find_seed(pde, SearchBudget(trials=3, max_rank=1, seed_grid_points=10))


def test_embedding_budget_reported_by_stage():
    f = Z1.bracket(Z2) - 1
    with pytest.raises(BudgetExhausted):
        find_embedding(f, Z1, SearchBudget(trials=0, max_rank=1, seed_grid_points=10))
    with pytest.raises(PipelineError) as caught:
        construct_witness(f, Z1, budget=SearchBudget(trials=0, max_rank=1, seed_grid_points=10))
    assert caught.value.stage == "embedding"
    assert isinstance(caught.value.cause, BudgetExhausted)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
