#!/usr/bin/env python3
"""
Free Poisson toolkit - Power Series Solver Testing Script

This script tests the demand-driven series solver by:
1. Solving T' = T and T^2 = 1 + x against their known Taylor series
2. Checking truncations and residuals
3. Checking that bad problems are refused
"""

import os
import sys
import random
import logging
from fractions import Fraction

import pytest

# Add the parent directory to the path so we can import our modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.errors import HypothesisViolation, PreconditionViolation, ResourceExhausted
from algebra.multiindex import MultiIndex, indices_up_to_degree
from algebra.polyring import PolyRing
from oracles.brute import classical_series
from solvers.series_solver import SeriesProblem, SeriesSession, new_session

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('series_tester')

LINE = PolyRing(("x",))
PLANE = PolyRing(("x", "y"))


def jet(ring: PolyRing, *entries: int):
    return ring.jet(MultiIndex(entries))


def exp_problem() -> SeriesProblem:
    f = jet(LINE, 1) - jet(LINE, 0)
    return SeriesProblem.from_polynomial(f, [0], {"u(0)": 1, "u(1)": 1})


def sqrt_problem() -> SeriesProblem:
    f = jet(LINE, 0) ** 2 - 1 - LINE.gen("x")
    return SeriesProblem.from_polynomial(f, [0], {"u(0)": 1})


def test_exp_coefficients():
    session = new_session(exp_problem())
    for k in range(13):
        assert session.coefficient(MultiIndex((k,))) == classical_series("exp", k)


def test_exp_truncation():
    session = SeriesSession(exp_problem())
    x = LINE.gen("x")
    expected = 1 + x + x ** 2 * Fraction(1, 2) + x ** 3 * Fraction(1, 6)
    assert session.truncate(3) == expected
    assert session.residual_check(8)


def test_sqrt_coefficients():
    session = SeriesSession(sqrt_problem())
    expected = [Fraction(1), Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16), Fraction(-5, 128)]
    assert [session.coefficient(MultiIndex((k,))) for k in range(5)] == expected
    for k in range(9):
        assert session.coefficient(MultiIndex((k,))) == classical_series("sqrt_at(1)", k)
    assert session.residual_check(6)


def test_shifted_base_point():
    # T^2 = x around x = 4 is sqrt(x) = 2 + (x - 4)/4 - ...
    f = jet(LINE, 0) ** 2 - LINE.gen("x")
    session = SeriesSession(SeriesProblem.from_polynomial(f, [4], {"u(0)": 2}))
    assert session.coefficient(MultiIndex((1,))) == Fraction(1, 4)
    assert session.coefficient(MultiIndex((2,))) == Fraction(-1, 64)
    assert session.truncate(1) == LINE.gen("x") * Fraction(1, 4) + 1
    assert session.residual_check(5)


def test_two_variable_problem():
    # T_x = T_yy with T_yy(0) = 1 and T_x(0) = 1
    f = jet(PLANE, 1, 0) - jet(PLANE, 0, 2)
    problem = SeriesProblem.from_polynomial(f, [0, 0], {"u(0,2)": 1, "u(1,0)": 1})
    assert problem.top == MultiIndex((1, 0))
    session = SeriesSession(problem)
    assert str(session.truncate(2)) == "1/2*y^2 + x"
    assert session.residual_check(2)
    assert session.coefficient(MultiIndex((2, 0))) == 0


def random_problem(rng: random.Random) -> SeriesProblem:
    """
    A valid problem with f = u_top * (1 + r) + q, deg f <= 3.

    r is linear and q cubic in the coordinates and the lower jets; the top jet
    value is solved from f = 0 once every other seed value is drawn.
    """
    ring = rng.choice([LINE, PLANE])
    candidates = [MultiIndex(e) for e in ([(0,), (1,), (2,)] if ring.n == 1 else
                                          [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)])]
    alphas = sorted(rng.sample(candidates, rng.randint(1, 3)))
    top, lower = alphas[-1], alphas[:-1]
    factors = [ring.gen(name) for name in ring.coords] + [ring.jet(alpha) for alpha in lower]

    r = ring.zero()
    for factor in factors:
        r = r + factor * rng.randint(-1, 1)
    q = ring.constant(rng.randint(-2, 2))
    for _ in range(3):
        term = ring.constant(rng.choice([-2, -1, 1, 2]))
        for _ in range(rng.randint(1, 3)):
            term = term * rng.choice(factors)
        q = q + term

    while True:
        point = tuple(Fraction(rng.randint(-2, 2)) for _ in ring.coords)
        jets = {alpha: Fraction(rng.randint(-2, 2)) for alpha in lower}
        values = {ring.coordinate(i): c for i, c in enumerate(point)}
        values.update({ring.jet_variable(alpha): c for alpha, c in jets.items()})
        slope = 1 + r.evaluate(values)
        if slope:
            jets[top] = -q.evaluate(values) / slope
            return SeriesProblem(ring.jet(top) * (r + 1) + q, alphas, point, jets)


def test_random_problems_pass_residual_check():
    rng = random.Random(41)
    for _ in range(25):
        problem = random_problem(rng)
        assert SeriesSession(problem).residual_check(8), problem.to_json()


def test_truncations_are_nested():
    rng = random.Random(43)
    for _ in range(10):
        problem = random_problem(rng)
        ring = problem.f.ring
        back = {ring.coordinate(i): ring.x(i) + c for i, c in enumerate(problem.point)}
        session = SeriesSession(problem)
        for order in range(4):
            lower = session.truncate(order).compose(back)
            upper = session.truncate(order + 1).compose(back)
            assert upper.truncate(order) == lower, problem.to_json()


def test_fresh_sessions_agree():
    rng = random.Random(47)
    for _ in range(10):
        problem = random_problem(rng)
        indices = indices_up_to_degree(problem.f.ring.n, 4)
        first = [SeriesSession(problem).coefficient(delta) for delta in indices]
        second_session = SeriesSession(problem)
        second = [second_session.coefficient(delta) for delta in reversed(indices)]
        assert first == list(reversed(second)), problem.to_json()


def test_memo_is_reused():
    session = SeriesSession(exp_problem())
    session.coefficient(MultiIndex((6,)))
    before = len(session.memo)
    session.coefficient(MultiIndex((4,)))
    assert len(session.memo) == before
    assert MultiIndex((5,)) in session.memo


def test_to_json():
    session = SeriesSession(sqrt_problem())
    report = session.to_json(2)
    assert report["coords"] == ["x"]
    assert report["alphas"] == ["(0)"]
    assert report["seed"] == {"point": ["0"], "jets": {"(0)": "1"}}
    assert report["coefficients"] == {"(0)": "1", "(1)": "1/2", "(2)": "-1/8"}


def test_hypotheses_checked():
    u0, u1 = jet(LINE, 0), jet(LINE, 1)
    x = LINE.gen("x")
    with pytest.raises(HypothesisViolation):
        SeriesProblem.from_polynomial(u0 ** 2 - 1 - x, [0], {"u(0)": 2})
    with pytest.raises(HypothesisViolation):
        SeriesProblem.from_polynomial(u0 ** 2 - x, [0], {"u(0)": 0})
    with pytest.raises(HypothesisViolation):
        SeriesProblem.from_polynomial(u1 - u0, [0], {"u(1)": 1})
    with pytest.raises(HypothesisViolation):
        SeriesProblem(u1 - u0, [MultiIndex((1,)), MultiIndex((0,))], (0,), {MultiIndex((0,)): 1, MultiIndex((1,)): 1})
    with pytest.raises(HypothesisViolation):
        SeriesProblem(u0 - 1, [MultiIndex((0,)), MultiIndex((1,))], (0,), {MultiIndex((0,)): 1, MultiIndex((1,)): 0})
    with pytest.raises(HypothesisViolation):
        SeriesProblem(u1 - u0, [MultiIndex((1,))], (0,), {MultiIndex((1,)): 0})
    with pytest.raises(HypothesisViolation):
        SeriesProblem.from_polynomial(u1 - 1, [0, 0], {"u(1)": 1})


def test_bad_requests():
    session = SeriesSession(exp_problem())
    with pytest.raises(PreconditionViolation):
        session.coefficient(MultiIndex((1, 0)))
    with pytest.raises(PreconditionViolation):
        session.truncate(-1)
    with pytest.raises(PreconditionViolation):
        session.residual(0)


def test_slope_is_rechecked():
    session = SeriesSession(exp_problem())
    session.slope = session.slope + 1
    with pytest.raises(AssertionError, match="expected"):
        session.coefficient(MultiIndex((2,)))


def test_memo_limit(monkeypatch):
    monkeypatch.setenv("PF_SERIES_MEMO_LIMIT", "5")
    session = SeriesSession(exp_problem())
    with pytest.raises(ResourceExhausted):
        session.coefficient(MultiIndex((12,)))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
