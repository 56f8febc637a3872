import logging
from dataclasses import dataclass

from algebra.freelie import Alphabet
from algebra.freepoisson import (
    PoissonElement,
    evaluate_homomorphism,
    from_commutative_polynomial,
    poisson_bracket,
)
from algebra.polyring import PolyRing, RationalPolynomial

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('automorphisms.endomorphisms')

PLANE_RING = PolyRing(("x", "y"))
PLANE_ALPHABET = Alphabet(("x", "y"))


@dataclass(frozen=True)
class PolyEndo:
    """
    Endomorphism of k[x, y] given by the images F = phi(x), G = phi(y).

    compose(phi, psi) is the map p -> psi(phi(p)); its images are psi(F), psi(G).
    """
    F: RationalPolynomial
    G: RationalPolynomial

    @classmethod
    def identity(cls) -> "PolyEndo":
        return cls(PLANE_RING.gen("x"), PLANE_RING.gen("y"))

    def apply(self, p: RationalPolynomial) -> RationalPolynomial:
        return p.compose({PLANE_RING.variable("x"): self.F, PLANE_RING.variable("y"): self.G})

    def compose(self, other: "PolyEndo") -> "PolyEndo":
        return PolyEndo(other.apply(self.F), other.apply(self.G))

    def jacobian(self) -> RationalPolynomial:
        return jacobian(self)

    def is_identity(self) -> bool:
        return self == PolyEndo.identity()

    def degree(self) -> int:
        return max(self.F.total_degree(), self.G.total_degree())

    def lift(self) -> "PoissonEndo":
        """The same images read in k{x, y}."""
        return PoissonEndo(from_commutative_polynomial(self.F, PLANE_ALPHABET),
                           from_commutative_polynomial(self.G, PLANE_ALPHABET))

    def to_json(self) -> dict:
        return {"F": str(self.F), "G": str(self.G)}

    def __str__(self) -> str:
        return f"({self.F}; {self.G})"


@dataclass(frozen=True)
class PoissonEndo:
    """Endomorphism of the free Poisson algebra k{x, y}."""
    F: PoissonElement
    G: PoissonElement

    @classmethod
    def identity(cls) -> "PoissonEndo":
        return cls(PoissonElement.generator(PLANE_ALPHABET, 0), PoissonElement.generator(PLANE_ALPHABET, 1))

    def apply(self, a: PoissonElement) -> PoissonElement:
        return evaluate_homomorphism(a, (self.F, self.G), poisson_bracket, PoissonElement.constant(PLANE_ALPHABET, 1))

    def compose(self, other: "PoissonEndo") -> "PoissonEndo":
        return PoissonEndo(other.apply(self.F), other.apply(self.G))

    def bracket_image(self) -> PoissonElement:
        """phi({x, y}) = {F, G}."""
        return poisson_bracket(self.F, self.G)

    def to_json(self) -> dict:
        return {"F": str(self.F), "G": str(self.G)}

    def __str__(self) -> str:
        return f"({self.F}; {self.G})"


def apply(phi, element):
    return phi.apply(element)


def compose(phi, psi):
    """phi then psi: p -> psi(phi(p))."""
    return phi.compose(psi)


def jacobian(phi: PolyEndo) -> RationalPolynomial:
    """J(phi) = F_x G_y - F_y G_x."""
    return (phi.F.partial_derivative("x") * phi.G.partial_derivative("y")
            - phi.F.partial_derivative("y") * phi.G.partial_derivative("x"))
