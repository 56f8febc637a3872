import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from algebra.errors import HypothesisViolation, PreconditionViolation, ResourceExhausted
from algebra.multiindex import MultiIndex, indices_up_to_degree
from algebra.polyring import RationalPolynomial, ScalarLike, Variable, to_scalar
from config import get_settings

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('solvers.series_solver')


@dataclass
class SeriesProblem:
    """
    An implicit differential equation f(X, d^a1 T, ..., d^am T) = 0 with a seed.

    Args:
        f: Polynomial in the ring's coordinates and the jet symbols u_alpha
        alphas: Jet indices a_1 < ... < a_m in lex order
        point: Base point C, one value per coordinate
        jet_values: Prescribed value c^alpha of d^alpha T(C) for every alpha
    """
    f: RationalPolynomial
    alphas: List[MultiIndex]
    point: Tuple[Fraction, ...]
    jet_values: Dict[MultiIndex, Fraction]

    def __post_init__(self):
        self.point = tuple(to_scalar(c) for c in self.point)
        self.jet_values = {alpha: to_scalar(c) for alpha, c in self.jet_values.items()}
        self.alphas = list(self.alphas)
        self._validate()

    @classmethod
    def from_polynomial(cls, f: RationalPolynomial, point: Sequence[ScalarLike],
                        jet_values: Mapping[Union[MultiIndex, str], ScalarLike]) -> "SeriesProblem":
        """Problem whose alphas are exactly the jet symbols of f."""
        values = {}
        for key, value in jet_values.items():
            alpha = key if isinstance(key, MultiIndex) else f.ring.variable(key).alpha
            values[alpha] = to_scalar(value)
        return cls(f, f.jet_symbols(), tuple(point), values)

    @property
    def n(self) -> int:
        return self.f.ring.n

    @property
    def top(self) -> MultiIndex:
        """a_m, the lex-greatest jet index."""
        return self.alphas[-1]

    @property
    def top_variable(self) -> Variable:
        return self.f.ring.jet_variable(self.top)

    def seed_assignment(self) -> Dict[Variable, Fraction]:
        """The point C-bar: coordinates at C and each u_alpha at c^alpha."""
        values = {self.f.ring.coordinate(i): c for i, c in enumerate(self.point)}
        for alpha in self.alphas:
            values[self.f.ring.jet_variable(alpha)] = self.jet_values[alpha]
        return values

    def max_order(self) -> int:
        return max(alpha.degree() for alpha in self.alphas)

    def _validate(self) -> None:
        if not self.alphas:
            raise HypothesisViolation("At least one jet index is required")
        for alpha in self.alphas:
            if alpha.arity != self.n:
                raise HypothesisViolation(f"Jet index {alpha} has arity {alpha.arity}, expected {self.n}")
        for left, right in zip(self.alphas, self.alphas[1:]):
            if not left < right:
                raise HypothesisViolation(f"Jet indices must be strictly lex-increasing: {left} then {right}")
        if len(self.point) != self.n:
            raise HypothesisViolation(f"Base point needs {self.n} coordinates, got {len(self.point)}")
        missing = [str(alpha) for alpha in self.alphas if alpha not in self.jet_values]
        if missing:
            raise HypothesisViolation(f"No seed value for jet indices {', '.join(missing)}")
        stray = [str(alpha) for alpha in self.f.jet_symbols() if alpha not in self.alphas]
        if stray:
            raise HypothesisViolation(f"f involves jet symbols outside the listed indices: {', '.join(stray)}")
        if self.f.degree_in(self.top_variable) == 0:
            raise HypothesisViolation(f"f does not depend on the top jet symbol u{self.top}")

        seed = self.seed_assignment()
        value = self.f.evaluate(seed)
        if value != 0:
            raise HypothesisViolation(f"f does not vanish at the seed point (value {value})")
        slope = self.f.partial_derivative(self.top_variable).evaluate(seed)
        if slope == 0:
            raise HypothesisViolation(f"df/du{self.top} vanishes at the seed point")

    def to_json(self) -> dict:
        return {
            "coords": list(self.f.ring.coords),
            "alphas": [str(alpha) for alpha in self.alphas],
            "seed": {
                "point": [str(c) for c in self.point],
                "jets": {str(alpha): str(self.jet_values[alpha]) for alpha in self.alphas},
            },
            "f": str(self.f),
        }


class SeriesSession:
    """
    Demand-driven solver for the unique formal series solution
    T = sum a_delta (X - C)^delta of a SeriesProblem.

    Coefficients are computed on request and memoized. a_delta for
    delta = a_m + beta is solved from the linear equation obtained by applying
    D^beta to f and evaluating at C; every coefficient it needs has a
    lex-smaller index, so the work stack always drains.
    """

    def __init__(self, problem: SeriesProblem):
        """
        Initialize a session with the initial conditions installed.

        Args:
            problem: A validated SeriesProblem
        """
        settings = get_settings()
        self.problem = problem
        self.memo: Dict[MultiIndex, Fraction] = {}
        self._derivatives: Dict[MultiIndex, RationalPolynomial] = {MultiIndex.zero(problem.n): problem.f}
        self._cached_monomials = len(problem.f.terms)
        self._memo_limit = settings.series_memo_limit
        self._monomial_limit = settings.monomial_limit

        seed = problem.seed_assignment()
        self.slope = problem.f.partial_derivative(problem.top_variable).evaluate(seed)
        for alpha in problem.alphas:
            self.memo[alpha] = problem.jet_values[alpha] / alpha.factorial()
        logger.debug(f"Session started for {problem.f} with slope {self.slope}")

    def derivative(self, beta: MultiIndex) -> RationalPolynomial:
        """D^beta f, built from a cached parent by one total derivative."""
        if beta in self._derivatives:
            return self._derivatives[beta]
        position = next(i for i, e in enumerate(beta) if e)
        parent = beta.sub_checked(MultiIndex.unit(beta.arity, position))
        result = self.derivative(parent).total_derivative(position)
        self._cached_monomials += len(result.terms)
        if self._cached_monomials > self._monomial_limit:
            raise ResourceExhausted(f"Derivative cache exceeded {self._monomial_limit} monomials at D^{beta}")
        self._derivatives[beta] = result
        return result

    def _offset(self, delta: MultiIndex) -> Optional[MultiIndex]:
        """beta with delta = a_m + beta, or None when delta needs no equation."""
        if delta < self.problem.top:
            return None
        return delta.sub_checked(self.problem.top)

    def _dependencies(self, delta: MultiIndex) -> List[MultiIndex]:
        beta = self._offset(delta)
        if beta is None:
            return []
        return [gamma for gamma in self.derivative(beta).jet_symbols() if gamma != delta and gamma not in self.memo]

    def _solve(self, delta: MultiIndex) -> Fraction:
        beta = self._offset(delta)
        if beta is None:
            # Below a_m or off the a_m + Z^n lattice
            return Fraction(0)

        ring = self.problem.f.ring
        unknown = ring.jet_variable(delta)
        values: Dict[Variable, Fraction] = {ring.coordinate(i): c for i, c in enumerate(self.problem.point)}
        equation = self.derivative(beta)
        for gamma in equation.jet_symbols():
            if gamma != delta:
                values[ring.jet_variable(gamma)] = gamma.factorial() * self.memo[gamma]

        parts = equation.coefficients_in(unknown)
        if set(parts) - {0, 1}:
            raise AssertionError(f"D^{beta} f is not linear in u{delta}")
        linear = parts.get(1, ring.zero()).evaluate(values)
        constant = parts.get(0, ring.zero()).evaluate(values)
        if linear != self.slope:
            raise AssertionError(f"coefficient of u{delta} is {linear}, expected {self.slope}")
        return -constant / linear / delta.factorial()

    def coefficient(self, delta: MultiIndex) -> Fraction:
        """
        The coefficient a_delta of (X - C)^delta.

        Args:
            delta: Multi-index of the problem's arity

        Returns:
            The exact coefficient
        """
        if delta.arity != self.problem.n:
            raise PreconditionViolation(f"Index {delta} has arity {delta.arity}, expected {self.problem.n}")
        stack = [delta]
        while stack:
            top = stack[-1]
            if top in self.memo:
                stack.pop()
                continue
            pending = self._dependencies(top)
            if pending:
                stack.extend(pending)
                if len(stack) > self._memo_limit:
                    raise ResourceExhausted(f"Work stack exceeded {self._memo_limit} entries")
                continue
            self.memo[top] = self._solve(top)
            if len(self.memo) > self._memo_limit:
                raise ResourceExhausted(f"Coefficient memo exceeded {self._memo_limit} entries")
            stack.pop()
        return self.memo[delta]

    def coefficients_up_to(self, max_degree: int) -> Dict[MultiIndex, Fraction]:
        """All coefficients with |delta| <= max_degree, by graded-lex index."""
        return {delta: self.coefficient(delta) for delta in indices_up_to_degree(self.problem.n, max_degree)}

    def _shifted_series(self, max_degree: int) -> RationalPolynomial:
        """sum a_delta s^delta with the ring's coordinates read as s = X - C."""
        ring = self.problem.f.ring
        terms = {}
        for delta, coeff in self.coefficients_up_to(max_degree).items():
            if coeff:
                terms[tuple((ring.coordinate(i), e) for i, e in enumerate(delta) if e)] = coeff
        return RationalPolynomial(ring, terms)

    def truncate(self, max_degree: int) -> RationalPolynomial:
        """
        T_N = sum over |delta| <= N of a_delta (X - C)^delta, expanded in X.

        Args:
            max_degree: Truncation order N >= 0

        Returns:
            The truncated solution as a polynomial in the coordinates
        """
        if max_degree < 0:
            raise PreconditionViolation(f"Truncation order must be nonnegative, got {max_degree}")
        shifted = self._shifted_series(max_degree)
        ring = self.problem.f.ring
        images = {ring.coordinate(i): ring.x(i) - c for i, c in enumerate(self.problem.point) if c}
        return shifted.compose(images) if images else shifted

    def residual(self, max_degree: int) -> RationalPolynomial:
        """
        f evaluated on the N-truncation, in shifted coordinates s = X - C,
        with terms above the certified order N - max|alpha| dropped.
        """
        problem = self.problem
        order = max_degree - problem.max_order()
        if order < 0:
            raise PreconditionViolation(f"Truncation order {max_degree} is below the equation order {problem.max_order()}")
        ring = problem.f.ring
        series = self._shifted_series(max_degree)

        images: Dict[Variable, RationalPolynomial] = {}
        for i, c in enumerate(problem.point):
            images[ring.coordinate(i)] = ring.x(i) + c
        for alpha in problem.alphas:
            derived = series
            for i, e in enumerate(alpha):
                for _ in range(e):
                    derived = derived.partial_derivative(ring.coordinate(i))
            images[ring.jet_variable(alpha)] = derived.truncate(order)
        return problem.f.compose(images, max_degree=order).truncate(order)

    def residual_check(self, max_degree: int) -> bool:
        """True iff f(T_N) has no terms of degree <= N - max|alpha| around C."""
        residual = self.residual(max_degree)
        if not residual.is_zero():
            logger.warning(f"Residual through order {max_degree - self.problem.max_order()} is {residual}")
        return residual.is_zero()

    def to_json(self, max_degree: int) -> dict:
        report = self.problem.to_json()
        report["N"] = max_degree
        report["coefficients"] = {str(delta): str(c) for delta, c in self.coefficients_up_to(max_degree).items() if c}
        return report


def new_session(problem: SeriesProblem) -> SeriesSession:
    return SeriesSession(problem)
