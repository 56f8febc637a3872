import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Union

from algebra.errors import PreconditionViolation, SupportConditionViolation
from algebra.freepoisson import (
    PoissonElement,
    PoissonMonomial,
    poisson_bracket,
    split_commutative_part,
    to_commutative_polynomial,
)
from algebra.polyring import RationalPolynomial
from automorphisms.endomorphisms import PLANE_ALPHABET, PLANE_RING, PoissonEndo, PolyEndo, jacobian
from automorphisms.tame import JungDecomposition, NotAutomorphism, inverse_map, jung_decompose

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('automorphisms.commutator')

# e_3 = {x, y}
XY_WORD = (0, 1)

SCALAR = "scalar"
POLYNOMIAL = "polynomial"
NOT_MULTIPLE = "not_multiple"


@dataclass
class BracketScaling:
    """
    How phi({x, y}) = {F, G} relates to {x, y}.

    kind is "scalar" (alpha set; degenerate when alpha = 0), "polynomial"
    (multiplier set), or "not_multiple" (offending holds the part of {F, G}
    that is not a commutative multiple of {x, y}).
    """
    kind: str
    alpha: Optional[Fraction] = None
    multiplier: Optional[RationalPolynomial] = None
    offending: Optional[PoissonElement] = None
    degenerate: bool = False

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "alpha": None if self.alpha is None else str(self.alpha),
            "multiplier": None if self.multiplier is None else str(self.multiplier),
            "offending": None if self.offending is None else str(self.offending),
            "degenerate": self.degenerate,
        }


def _strip_xy(mono: PoissonMonomial) -> Optional[PoissonMonomial]:
    """The monomial with one {x, y} removed, if it is commutative after removal."""
    if XY_WORD not in mono:
        return None
    position = mono.index(XY_WORD)
    rest = mono[:position] + mono[position + 1:]
    return rest if all(len(w) == 1 for w in rest) else None


def bracket_scaling_test(phi: PoissonEndo) -> BracketScaling:
    """
    Classify {F, G} as alpha{x, y}, t(x, y){x, y}, or neither.

    Args:
        phi: Endomorphism of k{x, y}

    Returns:
        The classification
    """
    image = phi.bracket_image()
    quotient: Dict[PoissonMonomial, Fraction] = {}
    leftover: Dict[PoissonMonomial, Fraction] = {}
    for mono, coeff in image.terms.items():
        rest = _strip_xy(mono)
        if rest is None:
            leftover[mono] = coeff
        else:
            quotient[rest] = coeff

    if leftover:
        return BracketScaling(NOT_MULTIPLE, offending=PoissonElement(PLANE_ALPHABET, leftover))
    t = PoissonElement(PLANE_ALPHABET, quotient)
    if t.is_zero() or all(not mono for mono in t.terms):
        alpha = t.terms.get((), Fraction(0))
        return BracketScaling(SCALAR, alpha=alpha, degenerate=alpha == 0)
    return BracketScaling(POLYNOMIAL, multiplier=to_commutative_polynomial(t, PLANE_RING))


def satisfies_support_condition(mono: PoissonMonomial) -> bool:
    """Two words of length >= 2, or one word of length >= 3."""
    return sum(1 for w in mono if len(w) >= 2) >= 2 or any(len(w) >= 3 for w in mono)


@dataclass
class Projection:
    psi: PolyEndo
    h: PoissonElement


def split_and_project(phi: PoissonEndo) -> Projection:
    """
    Split F = f1 + f2, G = g1 + g2 with f1, g1 commutative and project phi to
    psi = (f1, g1) on k[x, y].

    Args:
        phi: Endomorphism of k{x, y}

    Returns:
        psi and h = {F, G} - {f1, g1}
    """
    f1, _ = split_commutative_part(phi.F)
    g1, _ = split_commutative_part(phi.G)
    h = phi.bracket_image() - poisson_bracket(f1, g1)
    for mono in h.terms:
        if not satisfies_support_condition(mono):
            raise SupportConditionViolation(f"{h.monomial_text(mono)} in {h} breaks the support condition")
    psi = PolyEndo(to_commutative_polynomial(f1, PLANE_RING), to_commutative_polynomial(g1, PLANE_RING))
    return Projection(psi, h)


@dataclass
class BridgeReport:
    alpha: Fraction
    psi: PolyEndo
    jacobian: RationalPolynomial
    jacobian_matches: bool
    decomposition: Union[JungDecomposition, NotAutomorphism]
    s: Optional[PoissonElement] = None
    t: Optional[PoissonElement] = None

    @property
    def residual_trivial(self) -> bool:
        return self.s is not None and self.s.is_zero() and self.t.is_zero()

    def to_json(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "psi": self.psi.to_json(),
            "jacobian": str(self.jacobian),
            "jacobian_matches": self.jacobian_matches,
            "decomposition": self.decomposition.to_json(),
            "s": None if self.s is None else str(self.s),
            "t": None if self.t is None else str(self.t),
            "residual_trivial": self.residual_trivial,
        }


def theorem4_bridge(phi: PoissonEndo) -> BridgeReport:
    """
    Tie the bracket scaling of phi to the Jacobian of its commutative projection.

    With phi({x, y}) = alpha{x, y}, the projection psi must have J(psi) = alpha.
    When psi decomposes, theta = psi^-1 phi has theta(x) = x + s and
    theta(y) = y + t; s = t = 0 is reported.

    Args:
        phi: Endomorphism of k{x, y} scaling {x, y} by a nonzero constant

    Returns:
        The report
    """
    scaling = bracket_scaling_test(phi)
    if scaling.kind != SCALAR or scaling.degenerate:
        raise PreconditionViolation(f"phi({{x,y}}) is not a nonzero multiple of {{x,y}} ({scaling.kind})")

    projection = split_and_project(phi)
    psi = projection.psi
    j = jacobian(psi)
    decomposition = jung_decompose(psi)
    report = BridgeReport(scaling.alpha, psi, j, j == scaling.alpha, decomposition)
    if isinstance(decomposition, NotAutomorphism):
        logger.info(f"Projection {psi} did not decompose: {decomposition.reason}")
        return report

    psi_inverse = inverse_map(decomposition.moves).lift()
    x = PoissonElement.generator(PLANE_ALPHABET, 0)
    y = PoissonElement.generator(PLANE_ALPHABET, 1)
    report.s = psi_inverse.apply(phi.F) - x
    report.t = psi_inverse.apply(phi.G) - y
    return report
