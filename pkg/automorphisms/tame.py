import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple, Union

from algebra.errors import PreconditionViolation
from algebra.polyring import RationalPolynomial, ScalarLike, to_scalar
from automorphisms.endomorphisms import PLANE_RING, PolyEndo, compose

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('automorphisms.tame')

AFFINE = "affine"
TRIANGULAR = "triangular"
VARIABLES = ("x", "y")


@dataclass(frozen=True)
class ElementaryMove:
    """
    An affine map (a x + b y + e, c x + d y + f) with ad - bc != 0, or a
    triangular map adding a polynomial in the other variable to one variable.
    """
    kind: str
    matrix: Tuple[Fraction, Fraction, Fraction, Fraction] = (Fraction(1), Fraction(0), Fraction(0), Fraction(1))
    shift: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    target: int = 1
    added: Optional[RationalPolynomial] = None

    @classmethod
    def affine(cls, a: ScalarLike, b: ScalarLike, c: ScalarLike, d: ScalarLike,
               e: ScalarLike = 0, f: ScalarLike = 0) -> "ElementaryMove":
        matrix = tuple(to_scalar(v) for v in (a, b, c, d))
        if matrix[0] * matrix[3] - matrix[1] * matrix[2] == 0:
            raise PreconditionViolation(f"Affine part {matrix} is singular")
        return cls(AFFINE, matrix, (to_scalar(e), to_scalar(f)))

    @classmethod
    def triangular(cls, target: Union[int, str], added: RationalPolynomial) -> "ElementaryMove":
        """target -> target + added(other variable)."""
        index = VARIABLES.index(target) if isinstance(target, str) else target
        other = PLANE_RING.variable(VARIABLES[1 - index])
        if any(v != other for v in added.variables()):
            raise PreconditionViolation(f"{added} must be a polynomial in {VARIABLES[1 - index]} only")
        return cls(TRIANGULAR, target=index, added=added)

    def to_endo(self) -> PolyEndo:
        x, y = PLANE_RING.gen("x"), PLANE_RING.gen("y")
        if self.kind == AFFINE:
            a, b, c, d = self.matrix
            e, f = self.shift
            return PolyEndo(x * a + y * b + e, x * c + y * d + f)
        if self.target == 0:
            return PolyEndo(x + self.added, y)
        return PolyEndo(x, y + self.added)

    def inverse(self) -> "ElementaryMove":
        if self.kind == TRIANGULAR:
            return ElementaryMove(TRIANGULAR, target=self.target, added=-self.added)
        a, b, c, d = self.matrix
        e, f = self.shift
        det = a * d - b * c
        ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
        return ElementaryMove.affine(ia, ib, ic, id_, -(ia * e + ib * f), -(ic * e + id_ * f))

    def is_identity(self) -> bool:
        return self.to_endo().is_identity()

    def to_json(self) -> dict:
        if self.kind == AFFINE:
            return {"kind": AFFINE, "matrix": [str(v) for v in self.matrix], "shift": [str(v) for v in self.shift]}
        return {"kind": TRIANGULAR, "target": VARIABLES[self.target], "added": str(self.added)}

    def __str__(self) -> str:
        if self.kind == AFFINE:
            return f"affine{self.to_endo()}"
        name = VARIABLES[self.target]
        return f"triangular({name} <- {name} + {self.added})"


@dataclass
class NotAutomorphism:
    """Peeling stalled; the map is not a (tame) automorphism."""
    stalled: PolyEndo
    reason: str
    moves: List[ElementaryMove] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"stalled": self.stalled.to_json(), "reason": self.reason}


@dataclass
class JungDecomposition:
    moves: List[ElementaryMove]
    original: PolyEndo

    def to_json(self) -> dict:
        return {"moves": [m.to_json() for m in self.moves], "length": len(self.moves)}


def compose_moves(moves: Sequence[ElementaryMove]) -> PolyEndo:
    """compose(m_1, ..., m_k): apply m_1 first."""
    return reduce(compose, (m.to_endo() for m in moves), PolyEndo.identity())


def _linear_coefficient(p: RationalPolynomial, name: str) -> Fraction:
    return p.terms.get(((PLANE_RING.variable(name), 1),), Fraction(0))


def _leading_ratio(target: RationalPolynomial, base: RationalPolynomial) -> Optional[Fraction]:
    """c with target == c * base, or None."""
    mono, coeff = next(iter(base.terms.items()))
    if mono not in target.terms:
        return None
    c = target.terms[mono] / coeff
    return c if target == base * c else None


def jung_decompose(phi: PolyEndo) -> Union[JungDecomposition, NotAutomorphism]:
    """
    Peel a plane endomorphism down to an affine map by triangular moves.

    While the larger degree exceeds 1, the leading form of the higher-degree
    image must be c times a power of the other's leading form; subtracting
    c * other^k lowers the degree. The inverse of each subtraction is recorded,
    so the returned moves compose back to phi.

    Args:
        phi: Endomorphism of k[x, y]

    Returns:
        The decomposition, or NotAutomorphism with the state where peeling stalled
    """
    x, y = PLANE_RING.gen("x"), PLANE_RING.gen("y")
    F, G = phi.F, phi.G
    moves: List[ElementaryMove] = []

    while max(F.total_degree(), G.total_degree()) > 1:
        deg_f, deg_g = F.total_degree(), G.total_degree()
        if deg_f < 1 or deg_g < 1:
            return NotAutomorphism(PolyEndo(F, G), "an image is constant", moves)
        if deg_g >= deg_f and deg_g % deg_f == 0:
            k = deg_g // deg_f
            c = _leading_ratio(G.leading_form(), F.leading_form() ** k)
            if c is not None:
                G = G - (F ** k) * c
                moves.append(ElementaryMove.triangular("y", (x ** k) * c))
                continue
        if deg_f > deg_g and deg_f % deg_g == 0:
            k = deg_f // deg_g
            c = _leading_ratio(F.leading_form(), G.leading_form() ** k)
            if c is not None:
                F = F - (G ** k) * c
                moves.append(ElementaryMove.triangular("x", (y ** k) * c))
                continue
        logger.info(f"Peeling stalled at degrees ({deg_f}, {deg_g})")
        return NotAutomorphism(PolyEndo(F, G), f"leading forms are not related at degrees ({deg_f}, {deg_g})", moves)

    a, b = _linear_coefficient(F, "x"), _linear_coefficient(F, "y")
    c, d = _linear_coefficient(G, "x"), _linear_coefficient(G, "y")
    if a * d - b * c == 0:
        return NotAutomorphism(PolyEndo(F, G), "the affine remainder is singular", moves)
    final = ElementaryMove.affine(a, b, c, d, F.constant_term(), G.constant_term())
    if not final.is_identity():
        moves.append(final)

    # phi = A o t_k^-1 o ... o t_1^-1, which is compose(t_1^-1, ..., t_k^-1, A)
    if compose_moves(moves) != phi:
        raise AssertionError(f"Moves do not recompose to {phi}")
    logger.debug(f"{phi} decomposed into {len(moves)} moves")
    return JungDecomposition(moves, phi)


def invert_moves(moves: Sequence[ElementaryMove]) -> List[ElementaryMove]:
    """Moves whose composition is the inverse map."""
    return [m.inverse() for m in reversed(moves)]


def inverse_map(moves: Sequence[ElementaryMove]) -> PolyEndo:
    return compose_moves(invert_moves(moves))
