import random
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice, product
from typing import Dict, List, Optional, Tuple

from algebra.errors import (
    AlgebraError,
    BudgetExhausted,
    NoRationalSeed,
    NotDependent,
    PipelineError,
    PreconditionViolation,
    ZeroElementError,
)
from algebra.freepoisson import PoissonElement, evaluate_homomorphism
from algebra.multiindex import MultiIndex
from algebra.polyring import RationalPolynomial, Variable, rational_roots
from algebra.symplectic import (
    GeneratorAssignment,
    eval_hom,
    ps_bracket,
    random_polynomial,
    structured_assignment,
    symplectic_ring,
)
from config import get_settings
from solvers.series_solver import SeriesProblem, SeriesSession

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('solvers.freiheitssatz')

# Small rationals tried for every free variable before random draws
SEED_GRID_VALUES = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
                    Fraction(1, 2), Fraction(-1, 2))

DEFAULT_ORDER = 6


@dataclass(frozen=True)
class SearchBudget:
    trials: int
    max_rank: int
    seed_grid_points: int

    @classmethod
    def from_settings(cls) -> "SearchBudget":
        settings = get_settings()
        return cls(settings.search_budget, settings.max_rank, settings.seed_grid_points)


@dataclass
class Embedding:
    rank: int
    assignment: GeneratorAssignment
    trial: int


@dataclass
class PdeForm:
    """h(x, d^a1 Z, ..., d^ar Z) = 0 obtained from f under a partial assignment."""
    h: RationalPolynomial
    alphas: List[MultiIndex]
    assignment: GeneratorAssignment

    @property
    def top(self) -> MultiIndex:
        return self.alphas[-1]

    def to_json(self) -> dict:
        return {"h": str(self.h), "alphas": [str(alpha) for alpha in self.alphas]}


@dataclass
class SeedPoint:
    point: Tuple[Fraction, ...]
    jet_values: Dict[MultiIndex, Fraction]
    attempts: int = 0

    def to_json(self, pde: PdeForm) -> Dict[str, str]:
        ring = pde.h.ring
        values = {name: str(c) for name, c in zip(ring.coords, self.point)}
        for alpha in pde.alphas:
            values[ring.name_of(ring.jet_variable(alpha))] = str(self.jet_values[alpha])
        return values


@dataclass
class FreiheitssatzWitness:
    """
    A homomorphism theta into power series over PS_n with theta(f) = 0 through
    the certified order and theta(g) != 0.
    """
    rank: int
    assignment: GeneratorAssignment
    pde: PdeForm
    seed: SeedPoint
    series: RationalPolynomial
    order: int
    certified_order: int
    residual_ok: bool
    theta_g: RationalPolynomial
    coefficients: Dict[MultiIndex, Fraction] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "phi": self.assignment.to_json(),
            "pde": str(self.pde.h),
            "seed": self.seed.to_json(self.pde),
            "series": str(self.series),
            "order": self.order,
            "certified_order": self.certified_order,
            "residual_ok": self.residual_ok,
            "theta_g": str(self.theta_g),
        }


def _last_generator(f: PoissonElement) -> int:
    return f.alphabet.size - 1


def highest_zm_part(f: PoissonElement, m: Optional[int] = None) -> PoissonElement:
    """
    The top homogeneous component of f with respect to deg_{z_m}.

    Args:
        f: Nonzero element
        m: 1-based generator number (defaults to the last generator)

    Returns:
        f-hat
    """
    if f.is_zero():
        raise ZeroElementError("The zero element has no highest part")
    index = _last_generator(f) if m is None else m - 1
    components = f.components_in(index)
    return components[max(components)]


def _check_inputs(f: PoissonElement, g: PoissonElement) -> int:
    if f.is_zero() or g.is_zero():
        raise ZeroElementError("f and g must be nonzero")
    if f.alphabet != g.alphabet:
        raise PreconditionViolation(f"f and g use different generators: {f.alphabet} vs {g.alphabet}")
    last = _last_generator(f)
    if last < 1:
        raise PreconditionViolation("At least two generators are needed")
    if not f.depends_on(last):
        raise NotDependent(f"f does not involve {f.alphabet.name(last)}")
    if g.depends_on(last):
        raise PreconditionViolation(f"g must not involve {g.alphabet.name(last)}")
    return last


def find_embedding(f: PoissonElement, g: PoissonElement, budget: Optional[SearchBudget] = None,
                   rng_seed: int = 0) -> Embedding:
    """
    Search for phi into some PS_n with phi(g * f * f-hat) != 0.

    For each rank the structured substitution comes first, with z_m sent to its
    structured image, that image plus 1, and its square plus 1; later trials
    draw every image at random.

    Args:
        f: Relator involving the last generator
        g: Nonzero element free of the last generator
        budget: Trials per rank and the largest rank
        rng_seed: Seed for the random trials

    Returns:
        The rank, the full assignment and the successful trial index
    """
    last = _check_inputs(f, g)
    budget = budget or SearchBudget.from_settings()
    target = g * f * highest_zm_part(f)

    for n in range(1, budget.max_rank + 1):
        ring = symplectic_ring(n)
        rng = random.Random(rng_seed * 1000 + n)
        structured = structured_assignment(f.alphabet, n)
        base = structured.images[last]
        for trial in range(budget.trials):
            if trial < 3:
                images = dict(structured.images)
                images[last] = (base, base + 1, base * base + 1)[trial]
            else:
                images = {j: random_polynomial(ring, 2, 2, rng) for j in range(f.alphabet.size)}
            phi = GeneratorAssignment(f.alphabet, n, images)
            if not eval_hom(phi, target).is_zero():
                logger.info(f"Embedding found in PS_{n} at trial {trial}")
                return Embedding(n, phi, trial)
        logger.debug(f"No embedding in PS_{n} after {budget.trials} trials")
    raise BudgetExhausted(f"No embedding found up to rank {budget.max_rank}",
                          trials=budget.trials * budget.max_rank, max_rank=budget.max_rank)


def extract_pde(f: PoissonElement, phi: GeneratorAssignment, n: Optional[int] = None) -> PdeForm:
    """
    Rewrite f(Z_1, ..., Z_(m-1), Z) = 0 as a polynomial PDE in Z.

    The last generator becomes the jet symbol u(0,...,0); brackets with it
    expand through total derivatives.

    Args:
        f: Relator
        phi: Images of the first m-1 generators
        n: Rank (defaults to phi's)

    Returns:
        The PdeForm with its jet indices in lex order
    """
    n = phi.rank if n is None else n
    ring = symplectic_ring(n)
    last = _last_generator(f)
    images = {j: image for j, image in phi.images.items() if j != last}
    images[last] = ring.jet(MultiIndex.zero(ring.n))
    h = evaluate_homomorphism(f, images, ps_bracket, ring.one())
    if not h.has_jets():
        raise NotDependent(f"f becomes {h} under phi; no derivative of the unknown survives")
    return PdeForm(h, h.jet_symbols(), phi)


def _root_order(root: Fraction) -> Tuple[Fraction, bool]:
    return abs(root), root < 0


def _top_roots(univariate: RationalPolynomial) -> List[Fraction]:
    """Rational roots of a polynomial in the top jet only, smallest first."""
    if univariate.is_zero() or univariate.is_constant():
        return []
    _, coeffs = univariate.as_univariate()
    if len(coeffs) == 2:
        return [-coeffs[0] / coeffs[1]]
    return sorted(rational_roots(univariate), key=_root_order)


def find_seed(pde: PdeForm, budget: Optional[SearchBudget] = None, rng_seed: int = 0) -> SeedPoint:
    """
    Find a rational point L with h(L) = 0 and dh/du_top(L) != 0.

    Every variable of h except the top jet gets a small rational, first from a
    fixed grid and then at random; the top jet is a rational root of what
    remains. Coordinates absent from h are set to 0.

    Args:
        pde: The PDE to seed
        budget: Grid size and random draw count
        rng_seed: Seed for the random draws

    Returns:
        The seed point
    """
    budget = budget or SearchBudget.from_settings()
    h = pde.h
    ring = h.ring
    top: Variable = ring.jet_variable(pde.top)
    slope = h.partial_derivative(top)
    free = [v for v in h.variables() if v != top]

    def attempt(values: Tuple[Fraction, ...]) -> Optional[SeedPoint]:
        assignment = dict(zip(free, values))
        for root in _top_roots(h.substitute(assignment)):
            full = dict(assignment)
            full[top] = root
            if slope.evaluate(full) != 0:
                point = tuple(full.get(ring.coordinate(i), Fraction(0)) for i in range(ring.n))
                jets = {alpha: full.get(ring.jet_variable(alpha), Fraction(0)) for alpha in pde.alphas}
                return SeedPoint(point, jets)
        return None

    attempts = 0
    for values in islice(product(SEED_GRID_VALUES, repeat=len(free)), budget.seed_grid_points):
        attempts += 1
        seed = attempt(values)
        if seed:
            seed.attempts = attempts
            logger.info(f"Seed found on the grid after {attempts} points")
            return seed

    rng = random.Random(rng_seed)
    bound = max(budget.trials, 1)
    for _ in range(budget.trials):
        attempts += 1
        values = tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in free)
        seed = attempt(values)
        if seed:
            seed.attempts = attempts
            logger.info(f"Seed found by random draw after {attempts} points")
            return seed
    raise NoRationalSeed(f"No rational seed for {h} in {attempts} points", trials=attempts)


def construct_witness(f: PoissonElement, g: PoissonElement, order: int = DEFAULT_ORDER,
                      budget: Optional[SearchBudget] = None, rng_seed: int = 0) -> FreiheitssatzWitness:
    """
    Build and certify a witness that (f) meets k{z_1..z_(m-1)} trivially at g.

    Args:
        f: Relator involving the last generator
        g: Nonzero element free of the last generator
        order: Truncation order N of the series
        budget: Search budgets for the embedding and seed stages
        rng_seed: Seed for every randomized stage

    Returns:
        The certified witness
    """
    last = _check_inputs(f, g)
    budget = budget or SearchBudget.from_settings()

    stage = "embedding"
    try:
        embedding = find_embedding(f, g, budget, rng_seed)
        n = embedding.rank
        phi = embedding.assignment.restrict(range(last))

        stage = "pde"
        pde = extract_pde(f, phi, n)
        logger.info(f"PDE in PS_{n}: {pde.h} = 0")

        stage = "seed"
        seed = find_seed(pde, budget, rng_seed)

        stage = "series"
        problem = SeriesProblem(pde.h, pde.alphas, seed.point, seed.jet_values)
        session = SeriesSession(problem)
        series = session.truncate(order)

        stage = "residual"
        residual_ok = session.residual_check(order)
        if not residual_ok:
            raise AssertionError("residual does not vanish through the certified order")

        stage = "verification"
        witness = FreiheitssatzWitness(
            rank=n,
            assignment=phi,
            pde=pde,
            seed=seed,
            series=series,
            order=order,
            certified_order=order - problem.max_order(),
            residual_ok=residual_ok,
            theta_g=eval_hom(phi, g),
            coefficients=session.coefficients_up_to(order),
        )
        if not verify_witness(witness, f, g):
            raise AssertionError("independent re-check rejected the witness")
    except (AlgebraError, AssertionError) as e:
        logger.error(f"Error in witness stage '{stage}': {str(e)}")
        raise PipelineError(stage, e) from e

    logger.info(f"Witness certified through order {witness.certified_order}")
    return witness


def verify_witness(witness: FreiheitssatzWitness, f: PoissonElement, g: PoissonElement) -> bool:
    """
    Re-check a witness from scratch.

    theta(f) is recomputed in PS_n with the truncated series as an ordinary
    polynomial, so neither jet symbols nor solver caches are involved.

    Args:
        witness: Witness to check
        f: Relator
        g: The element required to survive

    Returns:
        True iff theta(g) != 0 and theta(f) vanishes through the certified order
    """
    phi = witness.assignment
    ring = symplectic_ring(witness.rank)
    if eval_hom(phi, g).is_zero():
        return False

    images = {j: image for j, image in phi.images.items()}
    images[_last_generator(f)] = witness.series
    value = evaluate_homomorphism(f, images, ps_bracket, ring.one())

    shift = {ring.coordinate(i): ring.x(i) + c for i, c in enumerate(witness.seed.point) if c}
    shifted = value.compose(shift) if shift else value
    return shifted.truncate(witness.certified_order).is_zero()
