"""
Expression text for free Poisson, symplectic and jet polynomials.

Grammar:
    expr    := term (('+' | '-') term)*
    term    := '-' term | product
    product := power (('*')? power)*
    power   := primary ('^' nat)*
    primary := rational | ident | jet | builtin | '(' expr ')' | '{' expr ',' expr '}'

Identifiers are x, y, z1.., x1.., y1..; jets are written u(i1,...,in).
Built-in names: St4, St6 and CustomaryMonomial(n).
"""

import re
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from algebra.errors import ContextMismatch, ExpressionSyntaxError, UnknownIdentifier
from algebra.freelie import Alphabet
from algebra.freepoisson import PoissonElement, customary_monomial, standard_customary
from algebra.multiindex import MultiIndex
from algebra.polyring import PolyRing, RationalPolynomial
from algebra.symplectic import ps_bracket, symplectic_ring

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('cli.expressions')

TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)"
    r"|(?P<jet>u\(\s*\d+(?:\s*,\s*\d+)*\s*\))"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*^(){},]))"
)

BUILTINS = {"St4": 1, "St6": 2}
CUSTOMARY_MONOMIAL = "CustomaryMonomial"


# ----- syntax tree -----

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Jet:
    alpha: MultiIndex


@dataclass(frozen=True)
class Builtin:
    name: str
    argument: Optional[int] = None


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Bracket:
    left: "Node"
    right: "Node"


Node = Union[Num, Var, Jet, Builtin, Add, Sub, Mul, Neg, Pow, Bracket]


# ----- parsing -----

@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = TOKEN_PATTERN.match(text, position)
        if not match:
            start = position + len(text[position:]) - len(text[position:].lstrip())
            raise ExpressionSyntaxError(f"Unexpected character {text[start]!r}", start)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class Parser:
    """Recursive-descent parser over a token list."""

    PRIMARY_START = ("number", "jet", "ident")

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _at(self, text: str) -> bool:
        return self.current.kind == "op" and self.current.text == text

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            found = self.current.text or "end of input"
            raise ExpressionSyntaxError(f"Expected {text!r} but found {found!r}", self.current.position)
        return self._advance()

    def _starts_primary(self) -> bool:
        return self.current.kind in self.PRIMARY_START or self._at("(") or self._at("{")

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(f"Unexpected {self.current.text!r}", self.current.position)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self._at("+") or self._at("-"):
            op = self._advance().text
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Node:
        if self._at("-"):
            self._advance()
            return Neg(self.term())
        return self.product()

    def product(self) -> Node:
        node = self.power()
        while True:
            if self._at("*"):
                self._advance()
                node = Mul(node, self.power())
            elif self._starts_primary():
                node = Mul(node, self.power())
            else:
                return node

    def power(self) -> Node:
        node = self.primary()
        while self._at("^"):
            self._advance()
            token = self.current
            if token.kind != "number" or "/" in token.text:
                raise ExpressionSyntaxError("Exponent must be a nonnegative integer", token.position)
            self._advance()
            node = Pow(node, int(token.text))
        return node

    def primary(self) -> Node:
        token = self.current
        if token.kind == "number":
            if re.fullmatch(r"\d+/0+", token.text):
                raise ExpressionSyntaxError("Zero denominator", token.position)
            self._advance()
            return Num(Fraction(token.text))
        if token.kind == "jet":
            self._advance()
            return Jet(MultiIndex.parse(token.text[1:].replace(" ", "")))
        if token.kind == "ident":
            self._advance()
            if token.text in BUILTINS:
                return Builtin(token.text)
            if token.text == CUSTOMARY_MONOMIAL:
                self._expect("(")
                argument = self.current
                if argument.kind != "number" or "/" in argument.text or int(argument.text) < 1:
                    raise ExpressionSyntaxError("CustomaryMonomial takes a positive integer", argument.position)
                self._advance()
                self._expect(")")
                return Builtin(CUSTOMARY_MONOMIAL, int(argument.text))
            return Var(token.text)
        if self._at("("):
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        if self._at("{"):
            self._advance()
            left = self.expr()
            self._expect(",")
            right = self.expr()
            self._expect("}")
            return Bracket(left, right)
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"Unexpected {found!r}", token.position)


def parse(text: str) -> Node:
    """
    Parse expression text.

    Args:
        text: Source text

    Returns:
        The syntax tree
    """
    return Parser(text).parse()


# ----- printing -----

def _precedence(node: Node) -> int:
    if isinstance(node, (Add, Sub)):
        return 1
    if isinstance(node, Neg):
        return 2
    if isinstance(node, Mul):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def _wrapped(node: Node, minimum: int) -> str:
    text = to_text(node)
    return f"({text})" if _precedence(node) < minimum else text


def to_text(node: Node) -> str:
    """Canonical text of a syntax tree; parse(to_text(t)) == t."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Jet):
        return f"u{node.alpha}"
    if isinstance(node, Builtin):
        return node.name if node.argument is None else f"{node.name}({node.argument})"
    if isinstance(node, Add):
        return f"{_wrapped(node.left, 1)} + {_wrapped(node.right, 2)}"
    if isinstance(node, Sub):
        return f"{_wrapped(node.left, 1)} - {_wrapped(node.right, 2)}"
    if isinstance(node, Neg):
        return f"-{_wrapped(node.operand, 2)}"
    if isinstance(node, Mul):
        return f"{_wrapped(node.left, 3)}*{_wrapped(node.right, 4)}"
    if isinstance(node, Pow):
        return f"{_wrapped(node.base, 4)}^{node.exponent}"
    if isinstance(node, Bracket):
        return f"{{{to_text(node.left)}, {to_text(node.right)}}}"
    raise TypeError(f"Not a syntax tree node: {node!r}")


# ----- targets and elaboration -----

def free_poisson_alphabet(m: int) -> Alphabet:
    """x, y for two generators, z1..zm otherwise."""
    return Alphabet(("x", "y")) if m == 2 else Alphabet.standard(m)


@dataclass(frozen=True)
class Target:
    """
    Where an expression is elaborated: "fp" (free Poisson on m generators),
    "ps" (PS_n) or "jet" (polynomials with jet symbols over named coordinates).
    """
    kind: str
    size: int
    coords: Tuple[str, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "Target":
        kind, _, rest = text.partition(":")
        if kind in ("fp", "ps") and rest.isdigit() and int(rest) >= 1:
            return cls(kind, int(rest))
        if kind == "jet" and rest:
            coords = tuple(name.strip() for name in rest.split(","))
            return cls(kind, len(coords), coords)
        raise ValueError(f"Unknown target {text!r}; use fp:m, ps:n or jet:x,y,...")

    @property
    def alphabet(self) -> Alphabet:
        return free_poisson_alphabet(self.size)

    @property
    def ring(self) -> PolyRing:
        if self.kind == "ps":
            return symplectic_ring(self.size)
        if self.kind == "jet":
            return PolyRing(self.coords)
        raise ContextMismatch("A free Poisson target has no polynomial ring")

    def __str__(self) -> str:
        if self.kind == "jet":
            return f"jet:{','.join(self.coords)}"
        return f"{self.kind}:{self.size}"


def _builtin_value(node: Builtin) -> PoissonElement:
    if node.name == CUSTOMARY_MONOMIAL:
        return customary_monomial(node.argument)
    return standard_customary(BUILTINS[node.name])


def builtin_size(node: Builtin) -> int:
    if node.name == CUSTOMARY_MONOMIAL:
        return 2 * node.argument
    return 2 * BUILTINS[node.name] + 2


def generator_count(node: Node) -> int:
    """Smallest m such that every identifier names a generator of k{z_1..z_m}."""
    if isinstance(node, Var):
        if node.name in ("x", "y"):
            return 2
        match = re.fullmatch(r"z(\d+)", node.name)
        if not match:
            raise UnknownIdentifier(f"'{node.name}' is not a free Poisson generator")
        return int(match.group(1))
    if isinstance(node, Builtin):
        return builtin_size(node)
    if isinstance(node, (Add, Sub, Mul, Bracket)):
        return max(generator_count(node.left), generator_count(node.right))
    if isinstance(node, Neg):
        return generator_count(node.operand)
    if isinstance(node, Pow):
        return generator_count(node.base)
    return 1


def _rehome(element: PoissonElement, alphabet: Alphabet) -> PoissonElement:
    if element.alphabet == alphabet:
        return element
    if element.alphabet.size > alphabet.size:
        raise ContextMismatch(f"Built-in needs {element.alphabet.size} generators, target has {alphabet.size}")
    return PoissonElement(alphabet, element.terms)


def elaborate(node: Node, target: Target, alphabet: Optional[Alphabet] = None):
    """
    Turn a syntax tree into an element of the target algebra.

    Args:
        node: Parsed expression
        target: Target algebra
        alphabet: Overrides the free Poisson generator names

    Returns:
        A PoissonElement for "fp" targets, a RationalPolynomial otherwise
    """
    if target.kind == "fp":
        return _elaborate_poisson(node, alphabet or target.alphabet)
    return _elaborate_polynomial(node, target.ring, target.kind == "ps")


def _elaborate_poisson(node: Node, alphabet: Alphabet) -> PoissonElement:
    if isinstance(node, Num):
        return PoissonElement.constant(alphabet, node.value)
    if isinstance(node, Var):
        return PoissonElement.generator(alphabet, alphabet.index(node.name))
    if isinstance(node, Jet):
        raise UnknownIdentifier(f"Jet symbol u{node.alpha} has no meaning in a free Poisson algebra")
    if isinstance(node, Builtin):
        return _rehome(_builtin_value(node), alphabet)
    if isinstance(node, Add):
        return _elaborate_poisson(node.left, alphabet) + _elaborate_poisson(node.right, alphabet)
    if isinstance(node, Sub):
        return _elaborate_poisson(node.left, alphabet) - _elaborate_poisson(node.right, alphabet)
    if isinstance(node, Mul):
        return _elaborate_poisson(node.left, alphabet) * _elaborate_poisson(node.right, alphabet)
    if isinstance(node, Neg):
        return -_elaborate_poisson(node.operand, alphabet)
    if isinstance(node, Pow):
        return _elaborate_poisson(node.base, alphabet) ** node.exponent
    if isinstance(node, Bracket):
        return _elaborate_poisson(node.left, alphabet).bracket(_elaborate_poisson(node.right, alphabet))
    raise TypeError(f"Not a syntax tree node: {node!r}")


def _elaborate_polynomial(node: Node, ring: PolyRing, symplectic: bool) -> RationalPolynomial:
    if isinstance(node, Num):
        return ring.constant(node.value)
    if isinstance(node, Var):
        try:
            return ring.gen(node.name)
        except KeyError:
            raise UnknownIdentifier(f"'{node.name}' is not a coordinate of {ring}") from None
    if isinstance(node, Jet):
        return ring.jet(node.alpha)
    if isinstance(node, Builtin):
        raise UnknownIdentifier(f"{to_text(node)} is a free Poisson element")
    if isinstance(node, Add):
        return _elaborate_polynomial(node.left, ring, symplectic) + _elaborate_polynomial(node.right, ring, symplectic)
    if isinstance(node, Sub):
        return _elaborate_polynomial(node.left, ring, symplectic) - _elaborate_polynomial(node.right, ring, symplectic)
    if isinstance(node, Mul):
        return _elaborate_polynomial(node.left, ring, symplectic) * _elaborate_polynomial(node.right, ring, symplectic)
    if isinstance(node, Neg):
        return -_elaborate_polynomial(node.operand, ring, symplectic)
    if isinstance(node, Pow):
        return _elaborate_polynomial(node.base, ring, symplectic) ** node.exponent
    if isinstance(node, Bracket):
        if not symplectic:
            raise ContextMismatch("Brackets need a Poisson target (fp:m or ps:n)")
        return ps_bracket(_elaborate_polynomial(node.left, ring, symplectic),
                          _elaborate_polynomial(node.right, ring, symplectic))
    raise TypeError(f"Not a syntax tree node: {node!r}")


def parse_element(text: str, target: Target, alphabet: Optional[Alphabet] = None):
    return elaborate(parse(text), target, alphabet)
