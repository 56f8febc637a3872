import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import divisors

from algebra.errors import ContextMismatch, MissingAssignment, ZeroElementError
from algebra.multiindex import MultiIndex

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('algebra.polyring')

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]


def to_scalar(value: ScalarLike) -> Fraction:
    """
    Coerce an exact number to a Fraction.

    Args:
        value: int, Fraction or a string such as "3/2"

    Returns:
        The value as a Fraction
    """
    if isinstance(value, bool):
        raise TypeError("Booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"Only exact rationals are supported, got {type(value).__name__}")


@dataclass(frozen=True, order=True)
class Variable:
    """
    A polynomial variable: a coordinate x_i or a jet symbol u_alpha.

    The field order makes coordinates sort before jets, coordinates by index
    and jets by the lex order of their index.
    """
    kind_rank: int
    index: int = 0
    alpha: Optional[MultiIndex] = None

    @classmethod
    def coordinate(cls, index: int) -> "Variable":
        return cls(0, index, None)

    @classmethod
    def jet(cls, alpha: MultiIndex) -> "Variable":
        return cls(1, 0, alpha)

    @property
    def is_jet(self) -> bool:
        return self.kind_rank == 1


Monomial = Tuple[Tuple[Variable, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    """Merge two sorted exponent lists."""
    if not a:
        return b
    if not b:
        return a
    i = j = 0
    out = []
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def _mono_drop_one(mono: Monomial, var: Variable) -> Tuple[int, Monomial]:
    """Remove one power of var; returns the old exponent and the new monomial."""
    for position, (v, e) in enumerate(mono):
        if v == var:
            if e == 1:
                return e, mono[:position] + mono[position + 1:]
            return e, mono[:position] + ((v, e - 1),) + mono[position + 1:]
    return 0, mono


class PolyRing:
    """
    A ring context: named coordinates x_1..x_n plus jet symbols u_alpha of arity n.

    Jet symbols are created on demand, so a ring fixes only the coordinate names.
    Two rings with the same coordinate names and jet name are equal.
    """

    def __init__(self, coords: Sequence[str], jet_name: str = "u"):
        """
        Initialize a ring context.

        Args:
            coords: Coordinate names in variable order
            jet_name: Name printed for jet symbols
        """
        names = tuple(coords)
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate coordinate names: {names}")
        self.coords = names
        self.jet_name = jet_name
        self._by_name = {name: Variable.coordinate(i) for i, name in enumerate(names)}

    @property
    def n(self) -> int:
        return len(self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyRing):
            return NotImplemented
        return self.coords == other.coords and self.jet_name == other.jet_name

    def __hash__(self) -> int:
        return hash((self.coords, self.jet_name))

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.coords)}; {self.jet_name})"

    def coordinate(self, index: int) -> Variable:
        if not 0 <= index < self.n:
            raise IndexError(f"Coordinate {index} out of range for {self}")
        return Variable.coordinate(index)

    def jet_variable(self, alpha: MultiIndex) -> Variable:
        if alpha.arity != self.n:
            raise ContextMismatch(f"Jet index {alpha} has arity {alpha.arity}, ring has {self.n} coordinates")
        return Variable.jet(alpha)

    def variable(self, name: str) -> Variable:
        """
        Look up a variable by its printed name.

        Args:
            name: A coordinate name or a jet name such as "u(1,0)"

        Returns:
            The matching Variable
        """
        if name in self._by_name:
            return self._by_name[name]
        if name.startswith(self.jet_name + "("):
            return self.jet_variable(MultiIndex.parse(name[len(self.jet_name):]))
        raise KeyError(f"Unknown variable {name!r} in {self}")

    def name_of(self, var: Variable) -> str:
        if var.is_jet:
            return f"{self.jet_name}{var.alpha}"
        return self.coords[var.index]

    def var(self, var: Variable) -> "RationalPolynomial":
        return RationalPolynomial._from_clean(self, {((var, 1),): Fraction(1)})

    def gen(self, name: str) -> "RationalPolynomial":
        return self.var(self.variable(name))

    def x(self, index: int) -> "RationalPolynomial":
        return self.var(self.coordinate(index))

    def jet(self, alpha: MultiIndex) -> "RationalPolynomial":
        return self.var(self.jet_variable(alpha))

    def constant(self, value: ScalarLike) -> "RationalPolynomial":
        c = to_scalar(value)
        return RationalPolynomial._from_clean(self, {(): c} if c else {})

    def zero(self) -> "RationalPolynomial":
        return RationalPolynomial._from_clean(self, {})

    def one(self) -> "RationalPolynomial":
        return self.constant(1)

    def resolve(self, assignment: Mapping[Union[Variable, str], ScalarLike]) -> Dict[Variable, Fraction]:
        """Turn a name- or variable-keyed assignment into a Variable-keyed one."""
        resolved = {}
        for key, value in assignment.items():
            var = self.variable(key) if isinstance(key, str) else key
            resolved[var] = to_scalar(value)
        return resolved


class RationalPolynomial:
    """
    Sparse polynomial with exact rational coefficients over a PolyRing.

    Monomials are tuples of (Variable, exponent) pairs sorted by variable; no
    zero coefficient is ever stored.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Optional[Mapping[Monomial, ScalarLike]] = None):
        self.ring = ring
        self.terms: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            key = tuple(sorted((v, e) for v, e in mono if e))
            value = self.terms.get(key, Fraction(0)) + to_scalar(coeff)
            if value:
                self.terms[key] = value
            else:
                self.terms.pop(key, None)

    @classmethod
    def _from_clean(cls, ring: PolyRing, terms: Dict[Monomial, Fraction]) -> "RationalPolynomial":
        poly = cls.__new__(cls)
        poly.ring = ring
        poly.terms = terms
        return poly

    # ----- arithmetic -----

    def _coerce(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            if other.ring != self.ring:
                raise ContextMismatch(f"Ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.constant(other)

    def __add__(self, other) -> "RationalPolynomial":
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
        return RationalPolynomial._from_clean(self.ring, result)

    __radd__ = __add__

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial._from_clean(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "RationalPolynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "RationalPolynomial":
        if isinstance(other, (int, Fraction, str)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        other = self._coerce(other)
        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                result[mono] = result.get(mono, 0) + c1 * c2
        return RationalPolynomial._from_clean(self.ring, {m: c for m, c in result.items() if c})

    __rmul__ = __mul__

    def scale(self, factor: ScalarLike) -> "RationalPolynomial":
        c = to_scalar(factor)
        if not c:
            return self.ring.zero()
        return RationalPolynomial._from_clean(self.ring, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, exponent: int) -> "RationalPolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Exponent must be a nonnegative integer, got {exponent!r}")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPolynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # ----- structure -----

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not mono for mono in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def total_degree(self) -> int:
        """Largest total degree of a monomial; -1 for the zero polynomial."""
        return max((_mono_degree(m) for m in self.terms), default=-1)

    def degree_in(self, var: Variable) -> int:
        best = 0
        for mono in self.terms:
            for v, e in mono:
                if v == var and e > best:
                    best = e
        return best

    def variables(self) -> List[Variable]:
        found = set()
        for mono in self.terms:
            for v, _ in mono:
                found.add(v)
        return sorted(found)

    def jet_symbols(self) -> List[MultiIndex]:
        """Indices of the jet symbols present, in lex order."""
        return [v.alpha for v in self.variables() if v.is_jet]

    def has_jets(self) -> bool:
        return any(v.is_jet for mono in self.terms for v, _ in mono)

    def homogeneous_components(self) -> Dict[int, "RationalPolynomial"]:
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for mono, coeff in self.terms.items():
            parts.setdefault(_mono_degree(mono), {})[mono] = coeff
        return {d: RationalPolynomial._from_clean(self.ring, t) for d, t in sorted(parts.items())}

    def homogeneous_component(self, degree: int) -> "RationalPolynomial":
        return RationalPolynomial._from_clean(
            self.ring, {m: c for m, c in self.terms.items() if _mono_degree(m) == degree})

    def leading_form(self) -> "RationalPolynomial":
        """The top-degree homogeneous component."""
        if self.is_zero():
            raise ZeroElementError("The zero polynomial has no leading form")
        return self.homogeneous_component(self.total_degree())

    def truncate(self, max_degree: int) -> "RationalPolynomial":
        """Drop every monomial of total degree above max_degree."""
        return RationalPolynomial._from_clean(
            self.ring, {m: c for m, c in self.terms.items() if _mono_degree(m) <= max_degree})

    def coefficients_in(self, var: Variable) -> Dict[int, "RationalPolynomial"]:
        """Split p = sum_k c_k * var^k; returns {k: c_k}."""
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for mono, coeff in self.terms.items():
            exponent = 0
            rest = []
            for v, e in mono:
                if v == var:
                    exponent = e
                else:
                    rest.append((v, e))
            parts.setdefault(exponent, {})[tuple(rest)] = coeff
        return {k: RationalPolynomial._from_clean(self.ring, t) for k, t in sorted(parts.items())}

    # ----- calculus -----

    def partial_derivative(self, var: Union[Variable, str]) -> "RationalPolynomial":
        """
        Formal partial derivative with respect to one variable.

        Args:
            var: A Variable or a variable name of this ring

        Returns:
            The derivative
        """
        if isinstance(var, str):
            var = self.ring.variable(var)
        result: Dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            exponent, rest = _mono_drop_one(mono, var)
            if exponent:
                result[rest] = result.get(rest, 0) + coeff * exponent
        return RationalPolynomial._from_clean(self.ring, {m: c for m, c in result.items() if c})

    def total_derivative(self, coord: int) -> "RationalPolynomial":
        """
        D_j p = dp/dx_j + sum_alpha dp/du_alpha * u_(alpha + e_j).

        Args:
            coord: Coordinate index j

        Returns:
            The total derivative; new jet symbols appear as needed
        """
        x_j = self.ring.coordinate(coord)
        step = MultiIndex.unit(self.ring.n, coord)
        result: Dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            for v, e in mono:
                _, rest = _mono_drop_one(mono, v)
                if v == x_j:
                    key = rest
                elif v.is_jet:
                    key = _mono_mul(rest, ((Variable.jet(v.alpha + step), 1),))
                else:
                    continue
                result[key] = result.get(key, 0) + coeff * e
        return RationalPolynomial._from_clean(self.ring, {m: c for m, c in result.items() if c})

    # ----- evaluation and substitution -----

    def evaluate(self, assignment: Mapping[Union[Variable, str], ScalarLike]) -> Fraction:
        """
        Evaluate at a point.

        Args:
            assignment: Values for every variable of the polynomial

        Returns:
            The exact value
        """
        values = self.ring.resolve(assignment)
        missing = [self.ring.name_of(v) for v in self.variables() if v not in values]
        if missing:
            raise MissingAssignment(f"No value for {', '.join(missing)}")
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            term = coeff
            for v, e in mono:
                term *= values[v] ** e
            total += term
        return total

    def substitute(self, assignment: Mapping[Union[Variable, str], ScalarLike]) -> "RationalPolynomial":
        """Partial evaluation: assigned variables become numbers, the rest stay."""
        values = self.ring.resolve(assignment)
        result: Dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            rest = []
            for v, e in mono:
                if v in values:
                    coeff = coeff * values[v] ** e
                else:
                    rest.append((v, e))
            if coeff:
                key = tuple(rest)
                result[key] = result.get(key, 0) + coeff
        return RationalPolynomial._from_clean(self.ring, {m: c for m, c in result.items() if c})

    def compose(self, images: Mapping[Variable, "RationalPolynomial"],
                target: Optional[PolyRing] = None,
                max_degree: Optional[int] = None) -> "RationalPolynomial":
        """
        Substitute polynomials for variables.

        Args:
            images: Replacement for each substituted variable
            target: Ring of the result (defaults to this ring); variables
                without an image are carried over by name
            max_degree: If given, terms above this total degree are dropped
                along the way

        Returns:
            The composed polynomial in the target ring
        """
        target = target or self.ring
        powers: Dict[Tuple[Variable, int], RationalPolynomial] = {}

        def power_of(v: Variable, e: int) -> RationalPolynomial:
            key = (v, e)
            if key not in powers:
                if v in images:
                    base = images[v]
                    if base.ring != target:
                        raise ContextMismatch(f"Image ring {base.ring} differs from target {target}")
                elif v.is_jet:
                    base = target.jet(v.alpha)
                else:
                    base = target.gen(self.ring.name_of(v))
                if e == 1:
                    value = base
                else:
                    value = power_of(v, e - 1) * base
                if max_degree is not None:
                    value = value.truncate(max_degree)
                powers[key] = value
            return powers[key]

        result = target.zero()
        for mono, coeff in self.terms.items():
            term = target.constant(coeff)
            for v, e in mono:
                term = term * power_of(v, e)
                if max_degree is not None:
                    term = term.truncate(max_degree)
            result = result + term
        return result

    def change_ring(self, ring: PolyRing) -> "RationalPolynomial":
        """Move into another ring that has (at least) the same coordinate names."""
        if ring == self.ring:
            return self
        result: Dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            key = []
            for v, e in mono:
                if v.is_jet:
                    key.append((ring.jet_variable(v.alpha), e))
                else:
                    key.append((ring.variable(self.ring.name_of(v)), e))
            result[tuple(sorted(key))] = coeff
        return RationalPolynomial._from_clean(ring, result)

    def as_univariate(self) -> Tuple[Optional[Variable], List[Fraction]]:
        """
        Coefficient list of a polynomial in at most one variable.

        Returns:
            (variable or None for constants, coefficients from degree 0 upward)
        """
        present = self.variables()
        if len(present) > 1:
            raise ValueError(f"Not univariate: {self}")
        var = present[0] if present else None
        degree = self.total_degree()
        coeffs = [Fraction(0)] * (max(degree, 0) + 1)
        for mono, coeff in self.terms.items():
            coeffs[_mono_degree(mono)] = coeff
        return var, coeffs

    # ----- rendering -----

    def ordered_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in graded-lex order, highest first."""
        order = self.variables()

        def key(item):
            exponents = dict(item[0])
            dense = tuple(-exponents.get(v, 0) for v in order)
            return (-_mono_degree(item[0]), dense)

        return sorted(self.terms.items(), key=key)

    def monomial_text(self, mono: Monomial) -> str:
        parts = []
        for v, e in mono:
            name = self.ring.name_of(v)
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for position, (mono, coeff) in enumerate(self.ordered_terms()):
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = self.monomial_text(mono)
            else:
                body = f"{magnitude}*{self.monomial_text(mono)}"
            if position == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"RationalPolynomial({self})"

    def to_json(self) -> List[Dict[str, str]]:
        """List of {monomial, coefficient} pairs in canonical order."""
        return [{"monomial": self.monomial_text(mono) or "1", "coefficient": str(coeff)}
                for mono, coeff in self.ordered_terms()]


def _primitive_integer_coefficients(coeffs: Sequence[Fraction]) -> List[int]:
    """Scale a rational coefficient list to coprime integers."""
    common = 1
    for c in coeffs:
        common = lcm(common, c.denominator)
    integers = [int(c * common) for c in coeffs]
    content = 0
    for value in integers:
        content = gcd(content, value)
    return [value // content for value in integers]


def rational_roots(p: RationalPolynomial) -> List[Fraction]:
    """
    All distinct rational roots of a univariate polynomial.

    Candidates come from the rational root theorem applied to the primitive
    integer form; each is confirmed by exact evaluation.

    Args:
        p: Nonzero polynomial in at most one variable

    Returns:
        Sorted list of roots
    """
    if p.is_zero():
        raise ZeroElementError("The zero polynomial has every number as a root")
    _, coeffs = p.as_univariate()
    integers = _primitive_integer_coefficients(coeffs)

    roots = set()
    # Factor out powers of t first so the constant term is nonzero
    low = 0
    while integers[low] == 0:
        low += 1
    if low > 0:
        roots.add(Fraction(0))
    integers = integers[low:]
    if len(integers) == 1:
        return sorted(roots)

    def value_at(candidate: Fraction) -> Fraction:
        total = Fraction(0)
        for c in reversed(integers):
            total = total * candidate + c
        return total

    for numerator in divisors(abs(integers[0])):
        for denominator in divisors(abs(integers[-1])):
            for sign in (1, -1):
                candidate = Fraction(sign * numerator, denominator)
                if candidate not in roots and value_at(candidate) == 0:
                    roots.add(candidate)
    logger.debug(f"Rational roots of {p}: {sorted(roots)}")
    return sorted(roots)
