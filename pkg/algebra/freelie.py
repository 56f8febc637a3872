import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from algebra.errors import ContextMismatch, InvalidWord, ResourceExhausted, UnknownIdentifier
from algebra.polyring import ScalarLike, to_scalar
from config import get_settings

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('algebra.freelie')

# A word is a tuple of letter indices into an Alphabet
LyndonWord = Tuple[int, ...]


class Alphabet:
    """
    Ordered generator names z_1 < z_2 < ... of a free Lie or Poisson algebra.

    The generic names z1..zm always resolve to the generators by position, and
    a two-letter alphabet also answers to x and y.
    """

    def __init__(self, names: Sequence[str]):
        """
        Initialize an alphabet.

        Args:
            names: Generator names in alphabet order
        """
        names = tuple(names)
        if not names:
            raise ValueError("An alphabet needs at least one generator")
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate generator names: {names}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}
        for i in range(len(names)):
            self._index.setdefault(f"z{i + 1}", i)
        if len(names) == 2:
            self._index.setdefault("x", 0)
            self._index.setdefault("y", 1)

    @classmethod
    def standard(cls, size: int) -> "Alphabet":
        """The alphabet z1, ..., z_size."""
        return cls([f"z{i + 1}" for i in range(size)])

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        if name not in self._index:
            raise UnknownIdentifier(f"'{name}' is not a generator of {{{', '.join(self.names)}}}")
        return self._index[name]

    def name(self, index: int) -> str:
        return self.names[index]

    def render_word(self, word: LyndonWord) -> str:
        """Juxtaposed generator names, e.g. "xxy"."""
        return "".join(self.names[i] for i in word)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({', '.join(self.names)})"


def word_key(word: LyndonWord) -> Tuple[int, LyndonWord]:
    """Basis order e_1, e_2, ...: by length, then lexicographically."""
    return (len(word), word)


def is_lyndon(word: Sequence[int]) -> bool:
    """
    Check the Lyndon property.

    Args:
        word: Nonempty sequence of letter indices

    Returns:
        True iff the word is strictly smaller than each of its proper suffixes
    """
    word = tuple(word)
    if not word:
        raise InvalidWord("The empty word is not a Lyndon word candidate")
    return all(word < word[i:] for i in range(1, len(word)))


def standard_factorization(word: Sequence[int]) -> Tuple[LyndonWord, LyndonWord]:
    """
    Split a Lyndon word w = u v with v its longest proper Lyndon suffix.

    Args:
        word: Lyndon word of length at least 2

    Returns:
        The pair (u, v); both are Lyndon and u < v
    """
    word = tuple(word)
    if len(word) < 2:
        raise InvalidWord(f"Standard factorization needs length >= 2, got {word}")
    for split in range(1, len(word)):
        if is_lyndon(word[split:]):
            return word[:split], word[split:]
    raise InvalidWord(f"{word} has no proper Lyndon suffix")


def lyndon_words(size: int, max_length: int) -> Iterator[LyndonWord]:
    """
    Generate all Lyndon words of length <= max_length (Duval's algorithm).

    Args:
        size: Number of letters
        max_length: Longest word produced

    Yields:
        Lyndon words in lex order
    """
    word = [-1]
    while word:
        word[-1] += 1
        yield tuple(word)
        period = len(word)
        while len(word) < max_length:
            word.append(word[len(word) - period])
        while word and word[-1] == size - 1:
            word.pop()


BRACKET_CACHE_SIZE = 65536


def _support_limit() -> int:
    return get_settings().lie_support_limit


@lru_cache(maxsize=BRACKET_CACHE_SIZE)
def _bracket_basis(u: LyndonWord, v: LyndonWord) -> Tuple[Tuple[LyndonWord, Fraction], ...]:
    """
    Lyndon expansion of [u, v] for basis words u, v.

    For u < v the concatenation uv is Lyndon, and it is the basis element
    [u, v] exactly when u is a letter or the right factor of u is >= v.
    Otherwise u = (u1, u2) is rewritten with
    [[u1, u2], v] = [u1, [u2, v]] - [u2, [u1, v]].
    """
    if u == v:
        return ()
    if u > v:
        return tuple((w, -c) for w, c in _bracket_basis(v, u))
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return ((u + v, Fraction(1)),)

    u1, u2 = standard_factorization(u)
    acc: Dict[LyndonWord, Fraction] = {}
    for w, c in _bracket_basis(u2, v):
        for w2, c2 in _bracket_basis(u1, w):
            acc[w2] = acc.get(w2, 0) + c * c2
    for w, c in _bracket_basis(u1, v):
        for w2, c2 in _bracket_basis(u2, w):
            acc[w2] = acc.get(w2, 0) - c * c2

    if len(acc) > _support_limit():
        raise ResourceExhausted(f"Bracket [{u}, {v}] exceeded the support cap of {_support_limit()}")
    return tuple(sorted(((w, c) for w, c in acc.items() if c), key=lambda item: word_key(item[0])))


class LieElement:
    """
    An element of the free Lie algebra: rational combination of Lyndon words.
    """

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Sequence[int], ScalarLike] = None):
        """
        Initialize a Lie element.

        Args:
            alphabet: Generator alphabet
            terms: Map from Lyndon words to coefficients
        """
        self.alphabet = alphabet
        self.terms: Dict[LyndonWord, Fraction] = {}
        for word, coeff in (terms or {}).items():
            word = tuple(word)
            if not is_lyndon(word):
                raise InvalidWord(f"{alphabet.render_word(word)} is not a Lyndon word")
            if any(not 0 <= letter < alphabet.size for letter in word):
                raise InvalidWord(f"{word} uses letters outside {alphabet}")
            value = self.terms.get(word, Fraction(0)) + to_scalar(coeff)
            if value:
                self.terms[word] = value
            else:
                self.terms.pop(word, None)

    @classmethod
    def _from_clean(cls, alphabet: Alphabet, terms: Dict[LyndonWord, Fraction]) -> "LieElement":
        element = cls.__new__(cls)
        element.alphabet = alphabet
        element.terms = terms
        return element

    @classmethod
    def generator(cls, alphabet: Alphabet, index: int) -> "LieElement":
        return cls._from_clean(alphabet, {(index,): Fraction(1)})

    @classmethod
    def basis(cls, alphabet: Alphabet, word: Sequence[int]) -> "LieElement":
        return cls(alphabet, {tuple(word): 1})

    def _check(self, other: "LieElement") -> None:
        if not isinstance(other, LieElement):
            raise TypeError(f"Expected a LieElement, got {type(other).__name__}")
        if other.alphabet != self.alphabet:
            raise ContextMismatch(f"Alphabet mismatch: {self.alphabet} vs {other.alphabet}")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        result = dict(self.terms)
        for word, coeff in other.terms.items():
            value = result.get(word, 0) + coeff
            if value:
                result[word] = value
            else:
                result.pop(word, None)
        return LieElement._from_clean(self.alphabet, result)

    def __neg__(self) -> "LieElement":
        return LieElement._from_clean(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, factor: ScalarLike) -> "LieElement":
        c = to_scalar(factor)
        if not c:
            return LieElement._from_clean(self.alphabet, {})
        return LieElement._from_clean(self.alphabet, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, factor: ScalarLike) -> "LieElement":
        return self.scale(factor)

    __rmul__ = __mul__

    def bracket(self, other: "LieElement") -> "LieElement":
        return lie_bracket(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous_components(self) -> Dict[int, "LieElement"]:
        parts: Dict[int, Dict[LyndonWord, Fraction]] = {}
        for word, coeff in self.terms.items():
            parts.setdefault(len(word), {})[word] = coeff
        return {d: LieElement._from_clean(self.alphabet, t) for d, t in sorted(parts.items())}

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for position, word in enumerate(sorted(self.terms, key=word_key)):
            coeff = self.terms[word]
            body = self.alphabet.render_word(word)
            magnitude = abs(coeff)
            if magnitude != 1:
                body = f"{magnitude}*{body}"
            if position == 0:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f" {'+' if coeff > 0 else '-'} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"LieElement({self})"


def bracket_of_words(u: Sequence[int], v: Sequence[int]) -> Dict[LyndonWord, Fraction]:
    """Lyndon expansion of the bracket of two basis words."""
    return dict(_bracket_basis(tuple(u), tuple(v)))


def lie_bracket(a: LieElement, b: LieElement) -> LieElement:
    """
    Bilinear Lie bracket in the Lyndon basis.

    Args:
        a: Left operand
        b: Right operand over the same alphabet

    Returns:
        [a, b] in Lyndon normal form
    """
    a._check(b)
    result: Dict[LyndonWord, Fraction] = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            for w, c in _bracket_basis(u, v):
                result[w] = result.get(w, 0) + cu * cv * c
    return LieElement._from_clean(a.alphabet, {w: c for w, c in result.items() if c})


def lyndon_basis(alphabet: Alphabet, max_length: int) -> List[LyndonWord]:
    """Basis words up to a length, in basis order e_1, e_2, ..."""
    return sorted(lyndon_words(alphabet.size, max_length), key=word_key)
