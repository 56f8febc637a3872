"""
Brute-force reference computations for the test suite.

Nothing here imports the production packages. Arithmetic is done with sympy
and with a deliberately naive representation of free Poisson elements:
products of bracket trees, reduced only by antisymmetry. Everything is
exponential and capped by small hard limits.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, List, Sequence, Tuple, Union

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('oracles.brute')

MAX_BRACKET_DEGREE = 6
MAX_T2N = 4
MAX_SERIES_ORDER = 16
MAX_WORD_LENGTH = 10

# A tree is a generator name or a pair (left, right) meaning {left, right}
Tree = Union[str, Tuple["Tree", "Tree"]]
NaiveMonomial = Tuple[Tree, ...]
NaiveElement = Dict[NaiveMonomial, Fraction]

TRANSFORMATIONS = standard_transformations + (convert_xor,)


# ----- naive free Poisson arithmetic -----

def _tree_degree(tree: Tree) -> int:
    if isinstance(tree, str):
        return 1
    return _tree_degree(tree[0]) + _tree_degree(tree[1])


def _tree_key(tree: Tree) -> str:
    return repr(tree)


def _monomial(factors: Sequence[Tree]) -> NaiveMonomial:
    return tuple(sorted(factors, key=_tree_key))


def _add(result: NaiveElement, mono: NaiveMonomial, coeff: Fraction) -> None:
    value = result.get(mono, Fraction(0)) + coeff
    if value:
        result[mono] = value
    else:
        result.pop(mono, None)


def naive_generator(name: str) -> NaiveElement:
    return {(name,): Fraction(1)}


def naive_constant(value) -> NaiveElement:
    value = Fraction(value)
    return {(): value} if value else {}


def naive_add(a: NaiveElement, b: NaiveElement) -> NaiveElement:
    result = dict(a)
    for mono, coeff in b.items():
        _add(result, mono, coeff)
    return result


def naive_scale(a: NaiveElement, factor) -> NaiveElement:
    factor = Fraction(factor)
    return {m: c * factor for m, c in a.items()} if factor else {}


def naive_product(a: NaiveElement, b: NaiveElement) -> NaiveElement:
    result: NaiveElement = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            _add(result, _monomial(m1 + m2), c1 * c2)
    return result


def _tree_bracket(p: Tree, q: Tree) -> Tuple[int, Tree]:
    """{p, q} as (sign, tree) with the smaller tree on the left; sign 0 when p == q."""
    if p == q:
        return 0, p
    if _tree_key(p) < _tree_key(q):
        return 1, (p, q)
    return -1, (q, p)


def naive_free_bracket(a: NaiveElement, b: NaiveElement) -> NaiveElement:
    """
    {a, b} by the Leibniz rule applied factor by factor.

    Args:
        a: Left operand
        b: Right operand

    Returns:
        The bracket, written with unreduced bracket trees
    """
    result: NaiveElement = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            degree = sum(_tree_degree(t) for t in m1 + m2)
            if degree > MAX_BRACKET_DEGREE:
                raise ValueError(f"Naive bracket is capped at total degree {MAX_BRACKET_DEGREE}, got {degree}")
            for i, p in enumerate(m1):
                for j, q in enumerate(m2):
                    sign, tree = _tree_bracket(p, q)
                    if sign:
                        rest = m1[:i] + m1[i + 1:] + m2[:j] + m2[j + 1:]
                        _add(result, _monomial(rest + (tree,)), c1 * c2 * sign)
    return result


def expand_bracketing(tree: Tree) -> NaiveElement:
    """A single bracket tree as a naive element."""
    if isinstance(tree, str):
        return naive_generator(tree)
    return naive_free_bracket(expand_bracketing(tree[0]), expand_bracketing(tree[1]))


def tree_text(tree: Tree) -> str:
    if isinstance(tree, str):
        return tree
    return "{" + tree_text(tree[0]) + ", " + tree_text(tree[1]) + "}"


def naive_text(a: NaiveElement) -> str:
    """Expression text accepted by the pf expression parser."""
    if not a:
        return "0"
    pieces = []
    for mono, coeff in sorted(a.items(), key=lambda item: repr(item[0])):
        factors = [f"({coeff})"] + [tree_text(t) for t in mono]
        pieces.append("*".join(factors))
    return " + ".join(pieces)


# ----- symplectic images with sympy -----

def symplectic_symbols(n: int) -> List[sympy.Symbol]:
    names = []
    for i in range(1, n + 1):
        names.extend([f"x{i}", f"y{i}"])
    return list(sympy.symbols(names))


def naive_ps_bracket(a: sympy.Expr, b: sympy.Expr, n: int) -> sympy.Expr:
    """sum_i (da/dx_i db/dy_i - da/dy_i db/dx_i), expanded."""
    coords = symplectic_symbols(n)
    total = sympy.Integer(0)
    for i in range(n):
        x, y = coords[2 * i], coords[2 * i + 1]
        total += sympy.diff(a, x) * sympy.diff(b, y) - sympy.diff(a, y) * sympy.diff(b, x)
    return sympy.expand(total)


def ps_image(a: NaiveElement, images: Dict[str, sympy.Expr], n: int) -> sympy.Expr:
    """Image of a naive element in PS_n under generator images."""

    def tree_image(tree: Tree) -> sympy.Expr:
        if isinstance(tree, str):
            return images[tree]
        return naive_ps_bracket(tree_image(tree[0]), tree_image(tree[1]), n)

    total = sympy.Integer(0)
    for mono, coeff in a.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for tree in mono:
            term *= tree_image(tree)
        total += term
    return sympy.expand(total)


def random_ps_images(names: Sequence[str], n: int, degree: int, rng) -> Dict[str, sympy.Expr]:
    """Dense random integer polynomials of the given degree, one per generator."""
    coords = symplectic_symbols(n)
    monomials = sorted(sympy.itermonomials(coords, degree), key=sympy.default_sort_key)
    return {name: sympy.expand(sum(rng.randint(-3, 3) * m for m in monomials)) for name in names}


def to_sympy(text: str) -> sympy.Expr:
    """Read polynomial text printed with ^ powers."""
    return sympy.expand(parse_expr(text, transformations=TRANSFORMATIONS))


# ----- customary polynomials -----

def enumerate_T2n(n: int) -> List[Tuple[int, ...]]:
    """
    Permutations tau of 1..2n with tau(1) < tau(2), tau(3) < tau(4), ...
    and tau(1) < tau(3) < ... < tau(2n - 1), by filtering all of S_2n.
    """
    if not 1 <= n <= MAX_T2N:
        raise ValueError(f"enumerate_T2n is capped at n <= {MAX_T2N}, got {n}")
    found = []
    for tau in permutations(range(1, 2 * n + 1)):
        pairs_ok = all(tau[2 * k] < tau[2 * k + 1] for k in range(n))
        firsts_ok = all(tau[2 * k] < tau[2 * k + 2] for k in range(n - 1))
        if pairs_ok and firsts_ok:
            found.append(tau)
    return found


def permutation_sign(tau: Sequence[int]) -> int:
    """Sign by counting cycles."""
    seen = set()
    sign = 1
    values = sorted(tau)
    position = {v: i for i, v in enumerate(values)}
    for start in range(len(tau)):
        if start in seen:
            continue
        length = 0
        current = start
        while current not in seen:
            seen.add(current)
            current = position[tau[current]]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def naive_standard_customary(n: int) -> NaiveElement:
    """sum over T_(2n+2) of sign(tau) {z_tau1, z_tau2}...{z_tau(2n+1), z_tau(2n+2)}."""
    result: NaiveElement = {}
    for tau in enumerate_T2n(n + 1):
        trees = [(f"z{tau[2 * k]}", f"z{tau[2 * k + 1]}") for k in range(n + 1)]
        _add(result, _monomial(trees), Fraction(permutation_sign(tau)))
    return result


# ----- Lie words -----

def brute_lyndon_words(size: int, length: int) -> List[Tuple[int, ...]]:
    """Words strictly smaller than every proper rotation, by exhaustive search."""
    if length > MAX_WORD_LENGTH:
        raise ValueError(f"Brute-force enumeration is capped at length {MAX_WORD_LENGTH}")
    found = []
    for word in product(range(size), repeat=length):
        if all(word < word[i:] + word[:i] for i in range(1, length)):
            found.append(word)
    return found


def witt_count(size: int, length: int) -> int:
    """Number of Lyndon words of a length: (1/d) sum over e | d of mu(e) q^(d/e)."""
    total = sum(sympy.mobius(e) * size ** (length // e) for e in sympy.divisors(length))
    return int(total) // length


# ----- series -----

def classical_series(name: str, k: int) -> Fraction:
    """
    Taylor coefficient of a known function.

    Args:
        name: "exp" (around 0) or "sqrt_at(c)" (sqrt(x) around x = c, c a
            rational square)
        k: Coefficient index, at most 16

    Returns:
        The k-th coefficient
    """
    if not 0 <= k <= MAX_SERIES_ORDER:
        raise ValueError(f"Series oracle is capped at k <= {MAX_SERIES_ORDER}, got {k}")
    s = sympy.Symbol("s")
    if name == "exp":
        function = sympy.exp(s)
    elif name.startswith("sqrt_at(") and name.endswith(")"):
        center = sympy.Rational(name[len("sqrt_at("):-1])
        if not sympy.sqrt(center).is_Rational:
            raise ValueError(f"sqrt_at needs a rational square, got {center}")
        function = sympy.sqrt(center + s)
    else:
        raise ValueError(f"Unsupported series {name!r}")
    coefficient = sympy.series(function, s, 0, k + 1).removeO().coeff(s, k)
    coefficient = sympy.Rational(coefficient)
    return Fraction(int(coefficient.p), int(coefficient.q))


# ----- plane maps -----

def plane_symbols() -> Tuple[sympy.Symbol, sympy.Symbol]:
    return sympy.symbols("x y")


def compose_plane_maps(maps: Sequence[Tuple[str, str]]) -> Tuple[sympy.Expr, sympy.Expr]:
    """
    Compose plane maps given as (F, G) text, the first map applied first.

    The composite of (F1, G1) then (F2, G2) has images F1(F2, G2), G1(F2, G2).
    """
    x, y = plane_symbols()
    F, G = x, y
    for f_text, g_text in maps:
        f, g = to_sympy(f_text), to_sympy(g_text)
        F = sympy.expand(F.subs({x: f, y: g}, simultaneous=True))
        G = sympy.expand(G.subs({x: f, y: g}, simultaneous=True))
    return F, G


def plane_jacobian(F: sympy.Expr, G: sympy.Expr) -> sympy.Expr:
    x, y = plane_symbols()
    return sympy.expand(sympy.diff(F, x) * sympy.diff(G, y) - sympy.diff(F, y) * sympy.diff(G, x))


# ----- reports -----

@dataclass
class OracleReport:
    case: str
    production: str
    oracle: str
    equal: bool

    @classmethod
    def compare(cls, case: str, production, oracle) -> "OracleReport":
        """Exact comparison after reading both sides as sympy expressions."""
        left = production if isinstance(production, sympy.Basic) else to_sympy(str(production))
        right = oracle if isinstance(oracle, sympy.Basic) else to_sympy(str(oracle))
        equal = sympy.expand(left - right) == 0
        if not equal:
            logger.warning(f"Oracle mismatch in {case}: production {left}, oracle {right}")
        return cls(case, str(left), str(right), equal)
