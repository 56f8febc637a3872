import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Callable, Dict, List, Mapping, Sequence, Tuple, TypeVar, Union

from algebra.errors import ContextMismatch, InvalidWord, MissingAssignment, NotCustomary, ZeroElementError
from algebra.freelie import (
    BRACKET_CACHE_SIZE,
    Alphabet,
    LyndonWord,
    _bracket_basis,
    is_lyndon,
    standard_factorization,
    word_key,
)
from algebra.polyring import PolyRing, RationalPolynomial, ScalarLike, to_scalar

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('algebra.freepoisson')

# Sorted multiset of Lyndon words e_{i1} <= ... <= e_{ik}; () is the unit
PoissonMonomial = Tuple[LyndonWord, ...]

T = TypeVar("T")


def _merge(a: PoissonMonomial, b: PoissonMonomial) -> PoissonMonomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, key=word_key))


def _monomial_degree(mono: PoissonMonomial) -> int:
    return sum(len(w) for w in mono)


@lru_cache(maxsize=BRACKET_CACHE_SIZE)
def _bracket_monomials(u: PoissonMonomial, v: PoissonMonomial) -> Tuple[Tuple[PoissonMonomial, Fraction], ...]:
    """Leibniz expansion of {u, v} for two monomials."""
    acc: Dict[PoissonMonomial, Fraction] = {}
    for i, p in enumerate(u):
        rest_u = u[:i] + u[i + 1:]
        for j, q in enumerate(v):
            base = _merge(rest_u, v[:j] + v[j + 1:])
            for w, c in _bracket_basis(p, q):
                mono = _merge(base, (w,))
                acc[mono] = acc.get(mono, 0) + c
    return tuple((m, c) for m, c in acc.items() if c)


class PoissonElement:
    """
    An element of the free Poisson algebra k{z_1, ..., z_m}.

    The algebra is the symmetric algebra on the free Lie algebra, so the basis
    is the set of sorted multisets of Lyndon words.
    """

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Sequence[Sequence[int]], ScalarLike] = None):
        """
        Initialize a Poisson element.

        Args:
            alphabet: Generator alphabet
            terms: Map from multisets of Lyndon words to coefficients
        """
        self.alphabet = alphabet
        self.terms: Dict[PoissonMonomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            words = tuple(tuple(w) for w in mono)
            for word in words:
                if not word or not is_lyndon(word) or any(not 0 <= x < alphabet.size for x in word):
                    raise InvalidWord(f"{word} is not a Lyndon word over {alphabet}")
            key = tuple(sorted(words, key=word_key))
            value = self.terms.get(key, Fraction(0)) + to_scalar(coeff)
            if value:
                self.terms[key] = value
            else:
                self.terms.pop(key, None)

    @classmethod
    def _from_clean(cls, alphabet: Alphabet, terms: Dict[PoissonMonomial, Fraction]) -> "PoissonElement":
        element = cls.__new__(cls)
        element.alphabet = alphabet
        element.terms = terms
        return element

    @classmethod
    def generator(cls, alphabet: Alphabet, index: int) -> "PoissonElement":
        return cls._from_clean(alphabet, {((index,),): Fraction(1)})

    @classmethod
    def word(cls, alphabet: Alphabet, word: Sequence[int]) -> "PoissonElement":
        """The basis element e_i given by a Lyndon word."""
        return cls(alphabet, {(tuple(word),): 1})

    @classmethod
    def constant(cls, alphabet: Alphabet, value: ScalarLike) -> "PoissonElement":
        c = to_scalar(value)
        return cls._from_clean(alphabet, {(): c} if c else {})

    def zero(self) -> "PoissonElement":
        return PoissonElement._from_clean(self.alphabet, {})

    def one(self) -> "PoissonElement":
        return PoissonElement.constant(self.alphabet, 1)

    # ----- arithmetic -----

    def _coerce(self, other) -> "PoissonElement":
        if isinstance(other, PoissonElement):
            if other.alphabet != self.alphabet:
                raise ContextMismatch(f"Generator mismatch: {self.alphabet} vs {other.alphabet}")
            return other
        return PoissonElement.constant(self.alphabet, other)

    def __add__(self, other) -> "PoissonElement":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        result = dict(self.terms)
        for mono, coeff in other.terms.items():
            value = result.get(mono, 0) + coeff
            if value:
                result[mono] = value
            else:
                result.pop(mono, None)
        return PoissonElement._from_clean(self.alphabet, result)

    __radd__ = __add__

    def __neg__(self) -> "PoissonElement":
        return PoissonElement._from_clean(self.alphabet, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "PoissonElement":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PoissonElement":
        return (-self) + other

    def scale(self, factor: ScalarLike) -> "PoissonElement":
        c = to_scalar(factor)
        if not c:
            return self.zero()
        return PoissonElement._from_clean(self.alphabet, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> "PoissonElement":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, PoissonElement):
            return NotImplemented
        return poisson_product(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "PoissonElement":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Exponent must be a nonnegative integer, got {exponent!r}")
        result = self.one()
        for _ in range(exponent):
            result = result * self
        return result

    def bracket(self, other: "PoissonElement") -> "PoissonElement":
        return poisson_bracket(self, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, PoissonElement):
            return self.alphabet == other.alphabet and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == PoissonElement.constant(self.alphabet, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # ----- gradings -----

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Standard degree: deg z_i = 1, a monomial weighs the sum of its word lengths."""
        if self.is_zero():
            raise ZeroElementError("The zero element has no degree")
        return max(_monomial_degree(m) for m in self.terms)

    def degree_in(self, index: int) -> int:
        """deg_{z_index}; 0 for the zero element."""
        return max((sum(w.count(index) for w in m) for m in self.terms), default=0)

    def depends_on(self, index: int) -> bool:
        return any(index in w for m in self.terms for w in m)

    def homogeneous_components(self) -> Dict[int, "PoissonElement"]:
        return self._split(_monomial_degree)

    def components_in(self, index: int) -> Dict[int, "PoissonElement"]:
        """Homogeneous components with respect to deg_{z_index}."""
        return self._split(lambda m: sum(w.count(index) for w in m))

    def multihomogeneous_components(self) -> Dict[Tuple[int, ...], "PoissonElement"]:
        size = self.alphabet.size
        return self._split(lambda m: tuple(sum(w.count(i) for w in m) for i in range(size)))

    def _split(self, grading: Callable[[PoissonMonomial], T]) -> Dict[T, "PoissonElement"]:
        parts: Dict = {}
        for mono, coeff in self.terms.items():
            parts.setdefault(grading(mono), {})[mono] = coeff
        return {k: PoissonElement._from_clean(self.alphabet, t) for k, t in sorted(parts.items())}

    def is_multilinear(self) -> bool:
        return all(d <= 1 for key in self.multihomogeneous_components() for d in key)

    # ----- rendering -----

    def word_text(self, word: LyndonWord) -> str:
        """Bracketed form of a basis word, e.g. "{x,{x,y}}"."""
        if len(word) == 1:
            return self.alphabet.name(word[0])
        left, right = standard_factorization(word)
        return "{" + self.word_text(left) + "," + self.word_text(right) + "}"

    def monomial_text(self, mono: PoissonMonomial) -> str:
        parts = []
        position = 0
        while position < len(mono):
            word = mono[position]
            count = 1
            while position + count < len(mono) and mono[position + count] == word:
                count += 1
            text = self.word_text(word)
            parts.append(text if count == 1 else f"{text}^{count}")
            position += count
        return "*".join(parts)

    def ordered_terms(self) -> List[Tuple[PoissonMonomial, Fraction]]:
        return sorted(self.terms.items(),
                      key=lambda item: (-_monomial_degree(item[0]), [word_key(w) for w in item[0]]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for position, (mono, coeff) in enumerate(self.ordered_terms()):
            magnitude = abs(coeff)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = self.monomial_text(mono)
            else:
                body = f"{magnitude}*{self.monomial_text(mono)}"
            if position == 0:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f" {'+' if coeff > 0 else '-'} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"PoissonElement({self})"


def poisson_product(a: PoissonElement, b: PoissonElement) -> PoissonElement:
    """Commutative product: multiset union on monomials, extended bilinearly."""
    b = a._coerce(b)
    result: Dict[PoissonMonomial, Fraction] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            mono = _merge(m1, m2)
            result[mono] = result.get(mono, 0) + c1 * c2
    return PoissonElement._from_clean(a.alphabet, {m: c for m, c in result.items() if c})


def poisson_bracket(a: PoissonElement, b: PoissonElement) -> PoissonElement:
    """
    Poisson bracket of the free Poisson algebra.

    On monomials u = p_1...p_k and v = q_1...q_l the Leibniz identity gives
    sum over i, j of (u without p_i)(v without q_j)[p_i, q_j].

    Args:
        a: Left operand
        b: Right operand over the same generators

    Returns:
        {a, b}
    """
    b = a._coerce(b)
    result: Dict[PoissonMonomial, Fraction] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            for mono, c in _bracket_monomials(m1, m2):
                result[mono] = result.get(mono, 0) + c1 * c2 * c
    return PoissonElement._from_clean(a.alphabet, {m: c for m, c in result.items() if c})


@dataclass(frozen=True)
class Degrees:
    total: int
    per_generator: Tuple[int, ...]
    components: Dict[int, PoissonElement]


def degrees(a: PoissonElement) -> Degrees:
    """Total degree, per-generator degrees and homogeneous components of a nonzero element."""
    return Degrees(
        total=a.degree(),
        per_generator=tuple(a.degree_in(i) for i in range(a.alphabet.size)),
        components=a.homogeneous_components(),
    )


def evaluate_homomorphism(a: PoissonElement, images: Union[Sequence[T], Mapping[int, T]],
                          bracket: Callable[[T, T], T], unit: T) -> T:
    """
    Image of a free Poisson element under the homomorphism fixed by generator images.

    Basis words map through their standard factorization to iterated brackets,
    monomials to products, and the result is extended linearly.

    Args:
        a: Element to evaluate
        images: Image of each generator, by generator index
        bracket: Poisson bracket of the target algebra
        unit: Multiplicative unit of the target algebra

    Returns:
        The image of a
    """
    if isinstance(images, Mapping):
        lookup = dict(images)
    else:
        lookup = dict(enumerate(images))
    cache: Dict[LyndonWord, T] = {}

    def image_of(word: LyndonWord) -> T:
        if word not in cache:
            if len(word) == 1:
                if word[0] not in lookup:
                    raise MissingAssignment(f"No image for generator {a.alphabet.name(word[0])}")
                cache[word] = lookup[word[0]]
            else:
                left, right = standard_factorization(word)
                cache[word] = bracket(image_of(left), image_of(right))
        return cache[word]

    result = unit * 0
    for mono, coeff in a.terms.items():
        term = unit
        for word in mono:
            term = term * image_of(word)
        result = result + term * coeff
    return result


# ----- customary polynomials -----

def customary_pairings(n: int) -> List[Tuple[Tuple[int, int], ...]]:
    """
    Perfect matchings of {1, ..., 2n} written as (i1,i2), (i3,i4), ... with
    i1 < i2, i3 < i4, ... and i1 < i3 < ...; there are (2n - 1)!! of them.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")

    def match(remaining: Tuple[int, ...]) -> List[Tuple[Tuple[int, int], ...]]:
        if not remaining:
            return [()]
        first, rest = remaining[0], remaining[1:]
        result = []
        for position, partner in enumerate(rest):
            others = rest[:position] + rest[position + 1:]
            for tail in match(others):
                result.append(((first, partner),) + tail)
        return result

    return match(tuple(range(1, 2 * n + 1)))


def _customary_product(alphabet: Alphabet, pairing: Sequence[Tuple[int, int]]) -> PoissonElement:
    words = tuple((a - 1, b - 1) for a, b in pairing)
    return PoissonElement(alphabet, {words: 1})


def customary_basis(n: int) -> List[PoissonElement]:
    """Basis {z_i1, z_i2}...{z_i(2n-1), z_i2n} of Q_2n over z_1..z_2n."""
    alphabet = Alphabet.standard(2 * n)
    return [_customary_product(alphabet, pairing) for pairing in customary_pairings(n)]


def customary_monomial(n: int) -> PoissonElement:
    """{z_1, z_2}{z_3, z_4}...{z_(2n-1), z_2n}."""
    return _customary_product(Alphabet.standard(2 * n), [(2 * k - 1, 2 * k) for k in range(1, n + 1)])


def permutation_sign(sequence: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(sequence)) for j in range(i + 1, len(sequence))
                     if sequence[i] > sequence[j])
    return -1 if inversions % 2 else 1


def standard_customary(n: int) -> PoissonElement:
    """
    The alternating customary polynomial over z_1..z_(2n+2).

    Each T_(2n+2) pairing contributes its product of brackets with the sign of
    the permutation (i1, i2, i3, i4, ...); n = 1 gives St_4.
    """
    alphabet = Alphabet.standard(2 * n + 2)
    result = PoissonElement(alphabet)
    for pairing in customary_pairings(n + 1):
        flat = [index for pair in pairing for index in pair]
        result = result + _customary_product(alphabet, pairing).scale(permutation_sign(flat))
    return result


def customary_terms(q: PoissonElement) -> List[Tuple[Tuple[Tuple[int, int], ...], Fraction]]:
    """
    Read a customary polynomial as (pairing, coefficient) terms.

    Every monomial must be a product of brackets {z_a, z_b} of generators,
    multilinear, and all monomials must use the same generators.

    Args:
        q: Candidate customary polynomial

    Returns:
        Pairs of 0-based generator-index pairings and coefficients
    """
    if q.is_zero():
        raise NotCustomary("The zero element is not a customary polynomial")
    support = None
    terms = []
    for mono, coeff in q.terms.items():
        if not mono or any(len(w) != 2 for w in mono):
            raise NotCustomary(f"{q.monomial_text(mono) or '1'} is not a product of generator brackets")
        letters = [x for w in mono for x in w]
        if len(set(letters)) != len(letters):
            raise NotCustomary(f"{q.monomial_text(mono)} is not multilinear")
        if support is None:
            support = set(letters)
        elif set(letters) != support:
            raise NotCustomary("Customary monomials must share one generator set")
        terms.append((tuple((w[0], w[1]) for w in mono), coeff))
    return terms


def split_commutative_part(a: PoissonElement) -> Tuple[PoissonElement, PoissonElement]:
    """
    Split a = f1 + f2 with f1 built only from generators and f2 in the span of
    monomials with some word of length >= 2 (the ideal generated by brackets).
    """
    f1: Dict[PoissonMonomial, Fraction] = {}
    f2: Dict[PoissonMonomial, Fraction] = {}
    for mono, coeff in a.terms.items():
        if all(len(w) == 1 for w in mono):
            f1[mono] = coeff
        else:
            f2[mono] = coeff
    return PoissonElement._from_clean(a.alphabet, f1), PoissonElement._from_clean(a.alphabet, f2)


def from_commutative_polynomial(p: RationalPolynomial, alphabet: Alphabet) -> PoissonElement:
    """Embed k[x_1..x_m] into k{x_1..x_m}; coordinates match generators by name."""
    terms: Dict[PoissonMonomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        words = []
        for var, exponent in mono:
            if var.is_jet:
                raise ContextMismatch("Jet symbols have no free Poisson counterpart")
            index = alphabet.index(p.ring.name_of(var))
            words.extend([(index,)] * exponent)
        terms[tuple(sorted(words, key=word_key))] = coeff
    return PoissonElement._from_clean(alphabet, terms)


def to_commutative_polynomial(a: PoissonElement, ring: PolyRing) -> RationalPolynomial:
    """Inverse of from_commutative_polynomial on the commutative part."""
    result = ring.zero()
    for mono, coeff in a.terms.items():
        if any(len(w) != 1 for w in mono):
            raise ValueError(f"{a.monomial_text(mono)} is not commutative")
        term = ring.constant(coeff)
        for word in mono:
            term = term * ring.gen(a.alphabet.name(word[0]))
        result = result + term
    return result
