#!/usr/bin/env python3
"""
Free Poisson toolkit - Symplectic Algebra Testing Script

This script tests PS_n and identity detection by:
1. Checking the symplectic bracket on small polynomials
2. Running the randomized identity test and the rank search
3. Deciding standard customary identities exactly
"""

import os
import sys
import random
import logging
from fractions import Fraction

import pytest

# Add the parent directory to the path so we can import our modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.errors import ContextMismatch, NotCustomary, ZeroElementError
from algebra.freelie import Alphabet
from algebra.freepoisson import PoissonElement, customary_basis, customary_monomial, standard_customary
from algebra.symplectic import (
    GeneratorAssignment,
    NonIdentity,
    ProbablyIdentity,
    customary_identity_exact,
    eval_hom,
    find_nonidentity_rank,
    include,
    include_assignment,
    is_identity_randomized,
    ps_bracket,
    random_assignment,
    structured_assignment,
    symplectic_ring,
    trial_rng,
)

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('symplectic_tester')

PS1 = symplectic_ring(1)
PS2 = symplectic_ring(2)
Z2 = Alphabet.standard(2)


def test_ring_layout():
    assert PS2.coords == ("x1", "y1", "x2", "y2")
    assert symplectic_ring(2) is PS2
    with pytest.raises(ValueError):
        symplectic_ring(0)


def test_bracket_examples():
    x1, y1 = PS1.gen("x1"), PS1.gen("y1")
    assert ps_bracket(x1, y1) == 1
    assert ps_bracket(y1, x1) == -1
    assert ps_bracket(x1 + y1, x1 * y1) == x1 - y1
    assert ps_bracket(x1 * x1, y1) == x1 * 2


def test_bracket_is_a_poisson_bracket():
    x1, y1, x2, y2 = (PS2.gen(name) for name in PS2.coords)
    a, b, c = x1 * y2 + y1 ** 2, x2 * x1 - y1, y1 * y2 + x1 ** 3
    jacobi = ps_bracket(a, ps_bracket(b, c)) + ps_bracket(b, ps_bracket(c, a)) + ps_bracket(c, ps_bracket(a, b))
    assert jacobi.is_zero()
    assert ps_bracket(a, b * c) == ps_bracket(a, b) * c + b * ps_bracket(a, c)


def sparse_polynomial(rng: random.Random):
    """Three random monomials of degree <= 4 in PS_2."""
    gens = [PS2.gen(name) for name in PS2.coords]
    result = PS2.zero()
    for _ in range(3):
        term = PS2.constant(rng.randint(-3, 3))
        for _ in range(rng.randint(0, 4)):
            term = term * rng.choice(gens)
        result = result + term
    return result


def test_axioms_on_random_triples():
    rng = random.Random(13)
    for _ in range(200):
        a, b, c = (sparse_polynomial(rng) for _ in range(3))
        assert (ps_bracket(a, b) + ps_bracket(b, a)).is_zero()
        assert ps_bracket(a, b * c) == ps_bracket(a, b) * c + b * ps_bracket(a, c)
        jacobi = ps_bracket(a, ps_bracket(b, c)) + ps_bracket(b, ps_bracket(c, a)) + ps_bracket(c, ps_bracket(a, b))
        assert jacobi.is_zero()


def test_bracket_rank_mismatch():
    with pytest.raises(ContextMismatch):
        ps_bracket(PS1.gen("x1"), PS2.gen("x1"))


def test_eval_hom_on_bracket():
    a = PoissonElement.generator(Z2, 0).bracket(PoissonElement.generator(Z2, 1))
    phi = GeneratorAssignment(Z2, 1, {0: PS1.gen("x1") ** 2, 1: PS1.gen("y1")})
    assert eval_hom(phi, a) == PS1.gen("x1") * 2
    assert phi.to_json() == {"z1": "x1^2", "z2": "y1"}


def test_structured_assignment_cycles_pairs():
    phi = structured_assignment(Alphabet.standard(6), 2)
    assert [str(phi.images[j]) for j in range(6)] == ["x1", "y1", "x2", "y2", "x1", "y1"]


def test_trials_are_reproducible():
    first = random_assignment(Z2, 2, 2, 3, trial_rng(5, 3))
    second = random_assignment(Z2, 2, 2, 3, trial_rng(5, 3))
    assert first.images == second.images


def test_st4_is_not_an_identity_of_ps2():
    verdict = is_identity_randomized(standard_customary(1), 2)
    assert isinstance(verdict, NonIdentity)
    assert verdict.trial == 0
    assert verdict.value == 1
    assert verdict.assignment.to_json() == {"z1": "x1", "z2": "y1", "z3": "x2", "z4": "y2"}


def test_st4_is_an_identity_of_ps1():
    verdict = is_identity_randomized(standard_customary(1), 1, trials=15)
    assert isinstance(verdict, ProbablyIdentity)
    assert verdict.trials == 15


def test_rank_search_finds_rank_two_for_st4():
    verdict = find_nonidentity_rank(standard_customary(1), max_rank=3, trials=5)
    assert isinstance(verdict, NonIdentity)
    assert verdict.rank == 2


def test_zero_element_rejected():
    with pytest.raises(ZeroElementError):
        is_identity_randomized(PoissonElement(Z2), 1)


def test_inclusion_preserves_nonidentity():
    bracket = PoissonElement.generator(Z2, 0).bracket(PoissonElement.generator(Z2, 1))
    verdict = is_identity_randomized(bracket, 1)
    assert isinstance(verdict, NonIdentity)
    lifted = include_assignment(verdict.assignment, 3)
    assert lifted.rank == 3
    assert eval_hom(lifted, bracket) == include(verdict.value, 3)
    assert str(include(PS1.gen("x1"), 2)) == "x1"
    with pytest.raises(ContextMismatch):
        include(PS2.gen("x2"), 1)


def test_exact_standard_identities():
    assert customary_identity_exact(standard_customary(1), 1).is_identity
    assert customary_identity_exact(standard_customary(2), 2).is_identity


def test_exact_witness_for_st4_on_ps2():
    decision = customary_identity_exact(standard_customary(1), 2)
    assert not decision.is_identity
    assert decision.value == Fraction(1)
    assert decision.witness.to_json() == {"z1": "x1", "z2": "y1", "z3": "x2", "z4": "y2"}
    assert eval_hom(decision.witness, standard_customary(1)) == 1


def test_exact_st6_fails_on_ps3():
    decision = customary_identity_exact(standard_customary(2), 3)
    assert not decision.is_identity
    assert decision.value != 0


def test_exact_customary_monomial():
    decision = customary_identity_exact(customary_monomial(1), 1)
    assert not decision.is_identity
    assert decision.to_json()["value"] == "1"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_customary_monomial_evaluates_to_one(n):
    q = customary_monomial(n)
    phi = structured_assignment(q.alphabet, n)
    assert eval_hom(phi, q) == 1


def test_exact_witness_is_rechecked(monkeypatch):
    monkeypatch.setattr("algebra.symplectic.eval_hom", lambda phi, a: phi.ring.zero())
    with pytest.raises(AssertionError, match="disagrees"):
        customary_identity_exact(standard_customary(1), 2)


def test_exact_rejects_non_customary():
    x = PoissonElement.generator(Z2, 0)
    with pytest.raises(NotCustomary):
        customary_identity_exact(x * x, 1)




def test_degree_drops_by_two():
    rng = random.Random(17)
    for _ in range(200):
        a, b = sparse_polynomial(rng), sparse_polynomial(rng)
        if a.total_degree() < 1 or b.total_degree() < 1:
            continue
        assert ps_bracket(a, b).total_degree() <= a.total_degree() + b.total_degree() - 2


def customary_corpus():
    """Customary basis elements for k <= 3, St4, St6 and a few signed combinations."""
    rng = random.Random(19)
    corpus = []
    for k in (1, 2, 3):
        basis = customary_basis(k)
        corpus.extend(basis)
        for _ in range(3):
            combination = PoissonElement(basis[0].alphabet)
            for element in rng.sample(basis, min(3, len(basis))):
                combination = combination + element.scale(rng.choice([-2, -1, 1, 3]))
            if not combination.is_zero():
                corpus.append(combination)
    corpus.extend([standard_customary(1), standard_customary(2)])
    return corpus


@pytest.mark.parametrize("n", [1, 2])
def test_exact_and_randomized_agree_on_customary_corpus(n):
    for q in customary_corpus():
        decision = customary_identity_exact(q, n)
        verdict = is_identity_randomized(q, n, trials=30)
        if decision.is_identity:
            assert isinstance(verdict, ProbablyIdentity), str(q)
        else:
            assert isinstance(verdict, NonIdentity), str(q)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
