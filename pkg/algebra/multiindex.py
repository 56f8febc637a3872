import math
import logging
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Tuple

from algebra.errors import ArityMismatch

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('algebra.multiindex')


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class MultiIndex:
    """
    An element of Z_+^n: the exponent of a derivative operator or of a monomial.

    Values are immutable and hashable. Arity travels with each value and is
    checked by every binary operation. The builtin comparison operators use the
    lexicographic order, which is a well-order on indices of fixed arity.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[int]):
        """
        Create a multi-index.

        Args:
            entries: Nonnegative integers, one per coordinate
        """
        values = tuple(int(e) for e in entries)
        if any(e < 0 for e in values):
            raise ValueError(f"Multi-index entries must be nonnegative, got {values}")
        object.__setattr__(self, "entries", values)

    def __setattr__(self, name, value):
        raise AttributeError("MultiIndex is immutable")

    @classmethod
    def zero(cls, arity: int) -> "MultiIndex":
        return cls((0,) * arity)

    @classmethod
    def unit(cls, arity: int, position: int) -> "MultiIndex":
        """The index e_j with a single 1 in the given position."""
        return cls(1 if i == position else 0 for i in range(arity))

    @classmethod
    def parse(cls, text: str) -> "MultiIndex":
        """Read the text form "(i1,i2,...,in)"."""
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"Malformed multi-index: {text!r}")
        inner = body[1:-1].strip()
        if not inner:
            raise ValueError(f"Empty multi-index: {text!r}")
        return cls(int(part) for part in inner.split(","))

    @property
    def arity(self) -> int:
        return len(self.entries)

    def degree(self) -> int:
        """Total degree |a| = i1 + ... + in."""
        return sum(self.entries)

    def _check(self, other: "MultiIndex") -> None:
        if self.arity != other.arity:
            raise ArityMismatch(f"Arity mismatch: {self} vs {other}")

    def lex_compare(self, other: "MultiIndex") -> Ordering:
        self._check(other)
        if self.entries < other.entries:
            return Ordering.LESS
        if self.entries > other.entries:
            return Ordering.GREATER
        return Ordering.EQUAL

    def graded_lex_compare(self, other: "MultiIndex") -> Ordering:
        """Total degree first, lexicographic order to break ties."""
        self._check(other)
        left = (self.degree(), self.entries)
        right = (other.degree(), other.entries)
        if left < right:
            return Ordering.LESS
        if left > right:
            return Ordering.GREATER
        return Ordering.EQUAL

    def graded_lex_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.degree(), self.entries)

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        self._check(other)
        return MultiIndex(a + b for a, b in zip(self.entries, other.entries))

    def sub_checked(self, other: "MultiIndex") -> Optional["MultiIndex"]:
        """
        Componentwise difference.

        Args:
            other: Index to subtract

        Returns:
            self - other, or None when other is not componentwise below self
        """
        self._check(other)
        if not other.dominated_by(self):
            return None
        return MultiIndex(a - b for a, b in zip(self.entries, other.entries))

    def dominated_by(self, other: "MultiIndex") -> bool:
        """Componentwise order: self <= other in every coordinate."""
        self._check(other)
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def factorial(self) -> int:
        """a! = i1! i2! ... in!"""
        result = 1
        for e in self.entries:
            result *= math.factorial(e)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiIndex):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(("MultiIndex", self.entries))

    def __lt__(self, other: "MultiIndex") -> bool:
        return self.lex_compare(other) is Ordering.LESS

    def __le__(self, other: "MultiIndex") -> bool:
        return self.lex_compare(other) is not Ordering.GREATER

    def __gt__(self, other: "MultiIndex") -> bool:
        return self.lex_compare(other) is Ordering.GREATER

    def __ge__(self, other: "MultiIndex") -> bool:
        return self.lex_compare(other) is not Ordering.LESS

    def __getitem__(self, position: int) -> int:
        return self.entries[position]

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"

    def __repr__(self) -> str:
        return f"MultiIndex{self}"


def indices_of_degree(arity: int, degree: int) -> List[MultiIndex]:
    """
    All multi-indices of the given arity and exact total degree, in lex order.

    Args:
        arity: Number of coordinates
        degree: Total degree

    Returns:
        Sorted list of indices
    """
    if arity == 0:
        return [MultiIndex(())] if degree == 0 else []
    if arity == 1:
        return [MultiIndex((degree,))]
    result = []
    for first in range(degree + 1):
        for rest in indices_of_degree(arity - 1, degree - first):
            result.append(MultiIndex((first,) + rest.entries))
    return sorted(result)


def indices_up_to_degree(arity: int, max_degree: int) -> List[MultiIndex]:
    """All indices of total degree <= max_degree, enumerated by total degree."""
    result = []
    for degree in range(max_degree + 1):
        result.extend(indices_of_degree(arity, degree))
    return result
