#!/usr/bin/env python3
"""
Free Poisson toolkit - Plane Automorphism Testing Script

This script tests plane endomorphisms by:
1. Decomposing tame maps into elementary moves and composing them back
2. Classifying how a Poisson endomorphism scales {x, y}
3. Linking that scaling to the Jacobian of the commutative projection
"""

import os
import sys
import random
import logging
from fractions import Fraction

import pytest

# Add the parent directory to the path so we can import our modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.errors import PreconditionViolation
from algebra.freepoisson import PoissonElement
from automorphisms.commutator import (
    NOT_MULTIPLE,
    POLYNOMIAL,
    SCALAR,
    bracket_scaling_test,
    satisfies_support_condition,
    split_and_project,
    theorem4_bridge,
)
from automorphisms.endomorphisms import PLANE_ALPHABET, PLANE_RING, PoissonEndo, PolyEndo, compose, jacobian
from automorphisms.tame import (
    ElementaryMove,
    JungDecomposition,
    NotAutomorphism,
    compose_moves,
    invert_moves,
    inverse_map,
    jung_decompose,
)
from oracles.brute import OracleReport, compose_plane_maps, plane_jacobian, to_sympy

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('automorphism_tester')

x, y = PLANE_RING.gen("x"), PLANE_RING.gen("y")
PX = PoissonElement.generator(PLANE_ALPHABET, 0)
PY = PoissonElement.generator(PLANE_ALPHABET, 1)


def move_maps(moves):
    return [(str(m.to_endo().F), str(m.to_endo().G)) for m in moves]


def random_move(rng: random.Random) -> ElementaryMove:
    if rng.random() < 0.4:
        while True:
            a, b, c, d = (rng.randint(-2, 2) for _ in range(4))
            if a * d - b * c:
                return ElementaryMove.affine(a, b, c, d, rng.randint(-2, 2), rng.randint(-2, 2))
    target = rng.choice(["x", "y"])
    other = y if target == "x" else x
    degree = rng.randint(1, 3)
    added = other ** degree * rng.choice([-2, -1, 1, 2])
    for k in range(degree):
        added = added + other ** k * rng.randint(-2, 2)
    return ElementaryMove.triangular(target, added)


def random_tame(rng: random.Random, max_moves: int, max_degree: int):
    """Random move lists whose composite has degree at most max_degree."""
    while True:
        moves = [random_move(rng) for _ in range(rng.randint(1, max_moves))]
        bound = 1
        for move in moves:
            bound *= move.added.total_degree() if move.kind == "triangular" else 1
        if bound <= max_degree:
            return moves


def test_compose_order_and_jacobian():
    first = PolyEndo(x + y ** 2, y)
    second = PolyEndo(x, y + x)
    assert compose(first, second) == PolyEndo(x + (y + x) ** 2, y + x)
    assert jacobian(first) == 1
    assert PolyEndo(x * 2, y * 3).jacobian() == 6
    assert PolyEndo.identity().is_identity()


def test_moves():
    swap = ElementaryMove.affine(0, 1, 1, 0)
    assert swap.to_endo() == PolyEndo(y, x)
    shear = ElementaryMove.triangular("y", x ** 3)
    assert shear.to_endo() == PolyEndo(x, y + x ** 3)
    assert compose(shear.to_endo(), shear.inverse().to_endo()).is_identity()
    shifted = ElementaryMove.affine(2, 1, 0, 1, 3, -1)
    assert compose(shifted.to_endo(), shifted.inverse().to_endo()).is_identity()
    with pytest.raises(PreconditionViolation):
        ElementaryMove.affine(1, 2, 2, 4)
    with pytest.raises(PreconditionViolation):
        ElementaryMove.triangular("y", y ** 2)


def test_jung_on_cubic_shear():
    phi = PolyEndo(y, x + y ** 3)
    result = jung_decompose(phi)
    assert isinstance(result, JungDecomposition)
    assert [m.kind for m in result.moves] == ["triangular", "affine"]
    assert str(result.moves[0]) == "triangular(y <- y + x^3)"
    assert compose_moves(result.moves) == phi
    F, G = compose_plane_maps(move_maps(result.moves))
    assert OracleReport.compare("jung cubic F", F, to_sympy(str(phi.F))).equal
    assert OracleReport.compare("jung cubic G", G, to_sympy(str(phi.G))).equal


def test_jung_on_longer_chain():
    moves = [
        ElementaryMove.triangular("y", x ** 2),
        ElementaryMove.triangular("x", y ** 3 * 2),
        ElementaryMove.affine(1, 1, 0, 1, 5, Fraction(1, 2)),
    ]
    phi = compose_moves(moves)
    assert phi.degree() == 6
    result = jung_decompose(phi)
    assert isinstance(result, JungDecomposition)
    assert compose_moves(result.moves) == phi
    assert compose(phi, inverse_map(result.moves)).is_identity()
    assert compose_moves(result.moves + invert_moves(result.moves)).is_identity()
    assert plane_jacobian(*compose_plane_maps(move_maps(moves))) == 1


def test_jung_on_random_tame_maps():
    rng = random.Random(23)
    for _ in range(50):
        phi = compose_moves(random_tame(rng, 4, 27))
        result = jung_decompose(phi)
        assert isinstance(result, JungDecomposition), str(phi)
        assert compose_moves(result.moves) == phi


def random_plane_map(rng: random.Random) -> PolyEndo:
    """Images with three random terms of degree <= 2 each; not necessarily invertible."""
    def image():
        result = PLANE_RING.zero()
        for _ in range(3):
            term = PLANE_RING.constant(rng.choice([-2, -1, 1, 2]))
            for _ in range(rng.randint(0, 2)):
                term = term * rng.choice([x, y])
            result = result + term
        return result
    return PolyEndo(image(), image())


def test_jacobian_chain_rule_on_random_pairs():
    rng = random.Random(29)
    for _ in range(30):
        phi, psi = random_plane_map(rng), random_plane_map(rng)
        assert jacobian(compose(phi, psi)) == jacobian(psi) * psi.apply(jacobian(phi)), (str(phi), str(psi))
    for _ in range(20):
        phi, psi = (compose_moves(random_tame(rng, 2, 9)) for _ in range(2))
        assert jacobian(compose(phi, psi)) == jacobian(psi) * psi.apply(jacobian(phi)), (str(phi), str(psi))


def test_jung_identity_and_affine():
    assert jung_decompose(PolyEndo.identity()).moves == []
    affine = jung_decompose(PolyEndo(x * 2 + 1, y - x))
    assert len(affine.moves) == 1
    assert affine.moves[0].to_json() == {"kind": "affine", "matrix": ["2", "0", "-1", "1"], "shift": ["1", "0"]}


def test_jung_rejects_non_automorphisms():
    stalled = jung_decompose(PolyEndo(x ** 2, y))
    assert isinstance(stalled, NotAutomorphism)
    assert "leading forms" in stalled.reason
    singular = jung_decompose(PolyEndo(x, x))
    assert isinstance(singular, NotAutomorphism)
    assert "singular" in singular.reason
    constant = jung_decompose(PolyEndo(PLANE_RING.constant(1), y ** 2))
    assert isinstance(constant, NotAutomorphism)


def test_scaling_of_lifted_maps():
    scalar = bracket_scaling_test(PolyEndo(x * 2, y * Fraction(1, 2) + x ** 3).lift())
    assert scalar.kind == SCALAR
    assert scalar.alpha == 1
    polynomial = bracket_scaling_test(PolyEndo(x * y, y).lift())
    assert polynomial.kind == POLYNOMIAL
    assert polynomial.multiplier == y
    degenerate = bracket_scaling_test(PolyEndo(x, x).lift())
    assert degenerate.kind == SCALAR
    assert degenerate.degenerate


def test_scaling_not_multiple():
    phi = PoissonEndo(PX + PX.bracket(PY), PY)
    scaling = bracket_scaling_test(phi)
    assert scaling.kind == NOT_MULTIPLE
    assert str(scaling.offending) == "{{x,y},y}"
    assert scaling.to_json()["kind"] == "not_multiple"


def test_poisson_endo_application():
    phi = PoissonEndo(PX + PY ** 2, PY)
    assert phi.apply(PX.bracket(PY)) == PX.bracket(PY)
    assert phi.bracket_image() == PX.bracket(PY)
    assert PoissonEndo.identity().compose(phi) == phi


def test_support_condition():
    assert not satisfies_support_condition(((0, 1),))
    assert not satisfies_support_condition(((0,), (0, 1)))
    assert satisfies_support_condition(((0, 1), (0, 1)))
    assert satisfies_support_condition(((0, 0, 1),))


def test_projection():
    phi = PoissonEndo(PX + PX.bracket(PY) * PX, PY + PX * PX)
    projection = split_and_project(phi)
    assert projection.psi == PolyEndo(x, y + x ** 2)


def test_bridge_on_lifted_automorphism():
    phi = PolyEndo(x * 2, y * Fraction(1, 2) + x ** 3).lift()
    report = theorem4_bridge(phi)
    assert report.alpha == 1
    assert report.jacobian_matches
    assert report.residual_trivial
    assert report.to_json()["residual_trivial"] is True


def test_bridge_on_random_tame_maps():
    rng = random.Random(29)
    for _ in range(20):
        psi = compose_moves(random_tame(rng, 3, 9))
        phi = psi.lift()
        scaling = bracket_scaling_test(phi)
        assert scaling.kind == SCALAR
        assert psi.jacobian() == scaling.alpha
        report = theorem4_bridge(phi)
        assert report.jacobian_matches
        assert report.residual_trivial


def test_bridge_with_bracket_terms():
    # {F, y} picks up 2{x,y}{{x,y},y}
    e3 = PX.bracket(PY)
    phi = PoissonEndo(PX + e3 * e3, PY)
    scaling = bracket_scaling_test(phi)
    assert scaling.kind == NOT_MULTIPLE
    with pytest.raises(PreconditionViolation):
        theorem4_bridge(phi)


def test_bridge_requires_nonzero_scalar():
    with pytest.raises(PreconditionViolation):
        theorem4_bridge(PolyEndo(x, x).lift())
    with pytest.raises(PreconditionViolation):
        theorem4_bridge(PolyEndo(x * y, y).lift())


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
