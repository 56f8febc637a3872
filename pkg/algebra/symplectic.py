import random
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Union

from algebra.errors import BudgetExhausted, ContextMismatch, ZeroElementError
from algebra.freelie import Alphabet
from algebra.freepoisson import PoissonElement, customary_terms, evaluate_homomorphism
from algebra.multiindex import indices_up_to_degree
from algebra.polyring import PolyRing, RationalPolynomial
from config import get_settings

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('algebra.symplectic')

# Elements of PS_n are plain polynomials over symplectic_ring(n)
SymplecticElement = RationalPolynomial


@lru_cache(maxsize=None)
def symplectic_ring(n: int) -> PolyRing:
    """k[x1, y1, ..., xn, yn]; jets over this ring have arity 2n."""
    if n < 1:
        raise ValueError(f"Rank must be at least 1, got {n}")
    names = []
    for i in range(1, n + 1):
        names.extend([f"x{i}", f"y{i}"])
    return PolyRing(names)


def rank_of(ring: PolyRing) -> int:
    if ring.n % 2:
        raise ContextMismatch(f"{ring} has an odd number of coordinates")
    return ring.n // 2


def ps_bracket(a: SymplecticElement, b: SymplecticElement) -> SymplecticElement:
    """
    Symplectic bracket sum_i (D_xi a * D_yi b - D_yi a * D_xi b).

    Total derivatives stand in for partials, so the same formula brackets
    polynomials that carry jet symbols of an unknown function.

    Args:
        a: Left operand
        b: Right operand of the same rank

    Returns:
        {a, b}
    """
    if a.ring != b.ring:
        raise ContextMismatch(f"Rank mismatch: {a.ring} vs {b.ring}")
    result = a.ring.zero()
    for i in range(rank_of(a.ring)):
        ax, ay = a.total_derivative(2 * i), a.total_derivative(2 * i + 1)
        if ax.is_zero() and ay.is_zero():
            continue
        bx, by = b.total_derivative(2 * i), b.total_derivative(2 * i + 1)
        result = result + ax * by - ay * bx
    return result


@dataclass
class GeneratorAssignment:
    """
    Images of free Poisson generators in PS_n.

    Args:
        alphabet: Generators being assigned
        rank: n of PS_n
        images: Generator index to image
    """
    alphabet: Alphabet
    rank: int
    images: Dict[int, SymplecticElement] = field(default_factory=dict)

    @property
    def ring(self) -> PolyRing:
        return symplectic_ring(self.rank)

    def restrict(self, indices) -> "GeneratorAssignment":
        return GeneratorAssignment(self.alphabet, self.rank, {i: self.images[i] for i in indices if i in self.images})

    def to_json(self) -> Dict[str, str]:
        return {self.alphabet.name(i): str(p) for i, p in sorted(self.images.items())}


def eval_hom(phi: GeneratorAssignment, a: PoissonElement) -> SymplecticElement:
    """
    Image of a free Poisson element under the homomorphism fixed by phi.

    Args:
        phi: Generator images in PS_n
        a: Element over phi's alphabet

    Returns:
        phi(a) in PS_n
    """
    return evaluate_homomorphism(a, phi.images, ps_bracket, phi.ring.one())


def include(p: SymplecticElement, rank: int) -> SymplecticElement:
    """Natural inclusion PS_n into PS_rank for rank >= n."""
    if rank < rank_of(p.ring):
        raise ContextMismatch(f"Cannot include rank {rank_of(p.ring)} into rank {rank}")
    return p.change_ring(symplectic_ring(rank))


def include_assignment(phi: GeneratorAssignment, rank: int) -> GeneratorAssignment:
    return GeneratorAssignment(phi.alphabet, rank, {i: include(p, rank) for i, p in phi.images.items()})


def structured_assignment(alphabet: Alphabet, n: int) -> GeneratorAssignment:
    """z_(2k-1) -> x_k, z_(2k) -> y_k, cycling through the n coordinate pairs."""
    ring = symplectic_ring(n)
    images = {j: ring.x(_structured_coordinate(j, n)) for j in range(alphabet.size)}
    return GeneratorAssignment(alphabet, n, images)


def random_polynomial(ring: PolyRing, degree_bound: int, coefficient_range: int,
                      rng: random.Random) -> RationalPolynomial:
    """Dense random polynomial of degree <= degree_bound with integer coefficients."""
    terms = {}
    for alpha in indices_up_to_degree(ring.n, degree_bound):
        coeff = rng.randint(-coefficient_range, coefficient_range)
        if coeff:
            terms[tuple((ring.coordinate(i), e) for i, e in enumerate(alpha) if e)] = coeff
    return RationalPolynomial(ring, terms)


def random_assignment(alphabet: Alphabet, n: int, degree_bound: int, coefficient_range: int,
                      rng: random.Random) -> GeneratorAssignment:
    ring = symplectic_ring(n)
    images = {j: random_polynomial(ring, degree_bound, coefficient_range, rng) for j in range(alphabet.size)}
    return GeneratorAssignment(alphabet, n, images)


def trial_rng(rng_seed: int, trial: int) -> random.Random:
    """Per-trial generator, so any single trial can be replayed."""
    return random.Random(rng_seed * 1_000_003 + trial)


@dataclass
class NonIdentity:
    rank: int
    assignment: GeneratorAssignment
    value: SymplecticElement
    trial: int
    rng_seed: int

    def to_json(self) -> dict:
        return {"rank": self.rank, "witness": self.assignment.to_json(), "value": str(self.value),
                "trial": self.trial, "rng_seed": self.rng_seed}


@dataclass
class ProbablyIdentity:
    rank: int
    trials: int
    degree_bound: int
    coefficient_range: int
    rng_seed: int

    def to_json(self) -> dict:
        return {"rank": self.rank, "trials": self.trials, "degree_bound": self.degree_bound,
                "coefficient_range": self.coefficient_range, "rng_seed": self.rng_seed}


IdentityVerdict = Union[NonIdentity, ProbablyIdentity]


def is_identity_randomized(a: PoissonElement, n: int, degree_bound: int = 2, trials: Optional[int] = None,
                           rng_seed: int = 0, coefficient_range: int = 3) -> IdentityVerdict:
    """
    Randomized identity test on PS_n.

    Trial 0 is the structured substitution z_(2k-1) -> x_k, z_(2k) -> y_k;
    every later trial draws random polynomial images.

    Args:
        a: Nonzero free Poisson element
        n: Rank of PS_n
        degree_bound: Largest degree of a random image
        trials: Number of substitutions to try (default PF_BUDGET)
        rng_seed: Seed from which each trial's generator is derived
        coefficient_range: Random coefficients lie in -range..range

    Returns:
        NonIdentity on the first nonzero image, otherwise ProbablyIdentity
    """
    if a.is_zero():
        raise ZeroElementError("The zero element is trivially an identity")
    trials = get_settings().search_budget if trials is None else trials
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")

    for trial in range(trials):
        if trial == 0:
            phi = structured_assignment(a.alphabet, n)
        else:
            phi = random_assignment(a.alphabet, n, degree_bound, coefficient_range, trial_rng(rng_seed, trial))
        value = eval_hom(phi, a)
        if not value.is_zero():
            logger.debug(f"Nonzero image on PS_{n} at trial {trial}: {value}")
            return NonIdentity(n, phi, value, trial, rng_seed)
    logger.info(f"No nonzero image on PS_{n} after {trials} trials")
    return ProbablyIdentity(n, trials, degree_bound, coefficient_range, rng_seed)


def find_nonidentity_rank(a: PoissonElement, max_rank: Optional[int] = None, degree_bound: int = 2,
                          trials: Optional[int] = None, rng_seed: int = 0) -> IdentityVerdict:
    """Search PS_1, PS_2, ... up to max_rank for a nonzero image."""
    max_rank = get_settings().max_rank if max_rank is None else max_rank
    verdict: Optional[IdentityVerdict] = None
    for n in range(1, max_rank + 1):
        verdict = is_identity_randomized(a, n, degree_bound, trials, rng_seed)
        if isinstance(verdict, NonIdentity):
            return verdict
    return verdict


@dataclass
class CustomaryDecision:
    is_identity: bool
    rank: int
    gradient_form: RationalPolynomial
    witness: Optional[GeneratorAssignment] = None
    value: Optional[Fraction] = None

    def to_json(self) -> dict:
        return {"identity": self.is_identity, "rank": self.rank,
                "witness": self.witness.to_json() if self.witness else None,
                "value": None if self.value is None else str(self.value)}


def _pairing(grad: Dict[int, List[RationalPolynomial]], a: int, b: int, n: int) -> RationalPolynomial:
    total = None
    for i in range(n):
        term = grad[a][2 * i] * grad[b][2 * i + 1] - grad[a][2 * i + 1] * grad[b][2 * i]
        total = term if total is None else total + term
    return total


def customary_identity_exact(q: PoissonElement, n: int, search_points: Optional[int] = None) -> CustomaryDecision:
    """
    Decide whether a customary polynomial is an identity of PS_n.

    Brackets of arbitrary elements depend only on their gradients, so each
    generator's gradient is replaced by 2n fresh indeterminates and each
    bracket by the symplectic pairing of gradients. q is an identity exactly
    when the resulting polynomial vanishes; otherwise a nonzero point of it
    gives linear-form images with a nonzero constant value.

    Args:
        q: Linear combination of customary monomials
        n: Rank of PS_n
        search_points: Random gradient points tried after the standard basis

    Returns:
        The decision, with a witness when q is not an identity
    """
    terms = customary_terms(q)
    support = sorted({index for pairing, _ in terms for pair in pairing for index in pair})
    names = [f"p{a + 1}_{c + 1}" for a in support for c in range(2 * n)]
    gradient_ring = PolyRing(names, jet_name="g")
    grad = {a: [gradient_ring.gen(f"p{a + 1}_{c + 1}") for c in range(2 * n)] for a in support}

    form = gradient_ring.zero()
    for pairing, coeff in terms:
        product = gradient_ring.constant(coeff)
        for a, b in pairing:
            product = product * _pairing(grad, a, b, n)
        form = form + product

    if form.is_zero():
        logger.info(f"Gradient form vanishes: identity of PS_{n}")
        return CustomaryDecision(True, n, form)

    # Standard symplectic basis vectors first, in the z_(2k-1) -> x_k, z_(2k) -> y_k pattern
    points = [{a: [Fraction(int(c == _structured_coordinate(position, n))) for c in range(2 * n)]
               for position, a in enumerate(support)}]
    search_points = get_settings().search_budget if search_points is None else search_points
    rng = random.Random(0)
    for _ in range(search_points):
        points.append({a: [Fraction(rng.randint(-3, 3)) for _ in range(2 * n)] for a in support})

    for point in points:
        values = {f"p{a + 1}_{c + 1}": point[a][c] for a in support for c in range(2 * n)}
        value = form.evaluate(values)
        if value:
            ring = symplectic_ring(n)
            images = {j: ring.zero() for j in range(q.alphabet.size)}
            for a in support:
                image = ring.zero()
                for c in range(2 * n):
                    image = image + ring.x(c) * point[a][c]
                images[a] = image
            witness = GeneratorAssignment(q.alphabet, n, images)
            confirmed = eval_hom(witness, q)
            if confirmed != value:
                raise AssertionError(f"gradient value {value} disagrees with image {confirmed}")
            return CustomaryDecision(False, n, form, witness, value)

    raise BudgetExhausted(f"Gradient form is nonzero but no nonzero point was found in {len(points)} points",
                          trials=len(points), max_rank=n)


def _structured_coordinate(position: int, n: int) -> int:
    return 2 * ((position // 2) % n) + position % 2
