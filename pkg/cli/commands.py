import json
import logging
from argparse import Namespace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from prettytable import PrettyTable
from pydantic import BaseModel

from algebra.errors import NotCustomary, PreconditionViolation, UnknownIdentifier
from algebra.freepoisson import PoissonElement, customary_terms
from algebra.polyring import RationalPolynomial, to_scalar
from algebra.symplectic import (
    NonIdentity,
    customary_identity_exact,
    find_nonidentity_rank,
    is_identity_randomized,
    ps_bracket,
)
from automorphisms.commutator import SCALAR, bracket_scaling_test, theorem4_bridge
from automorphisms.endomorphisms import PLANE_ALPHABET, PoissonEndo, PolyEndo, jacobian
from automorphisms.tame import NotAutomorphism, jung_decompose
from cli.expressions import Bracket, Target, generator_count, parse, parse_element, to_text
from cli.reports import (
    REPORT_MODELS,
    BracketReport,
    CommtestReport,
    EvalReport,
    FreiheitReport,
    IdentityReport,
    JungReport,
    MoveModel,
    ScalingModel,
    SeedModel,
    SeriesReport,
    Term,
)
from config import get_settings
from data.schemas import load_schemas
from solvers.freiheitssatz import SearchBudget, construct_witness
from solvers.series_solver import SeriesProblem, SeriesSession

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('cli.commands')

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

PLANE_TARGET = Target("jet", 2, ("x", "y"))


# ----- input helpers -----

def read_source(args: Namespace, attribute: str = "expression") -> str:
    """The expression text from a flag or positional, or from --file."""
    path = getattr(args, "file", None)
    if path:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read().strip()
    text = getattr(args, attribute, None)
    if not text:
        raise PreconditionViolation(f"No input given for {attribute}; pass it or use --file")
    return text


def resolve_target(text: Optional[str], *sources: str) -> Target:
    """The explicit target, or fp:m with m covering every generator used."""
    if text:
        return Target.parse(text)
    m = max(generator_count(parse(source)) for source in sources)
    return Target("fp", max(m, 1))


def parse_assignment(text: str) -> Dict[str, Fraction]:
    """Read "name=value,name=value"; jet names such as u(1,0) may contain commas."""
    values = {}
    depth = 0
    piece = ""
    pieces = []
    for char in text:
        depth += char == "("
        depth -= char == ")"
        if char == "," and depth == 0:
            pieces.append(piece)
            piece = ""
        else:
            piece += char
    pieces.append(piece)
    for item in pieces:
        if not item.strip():
            continue
        name, _, value = item.partition("=")
        if not value:
            raise PreconditionViolation(f"Malformed assignment {item!r}; expected name=value")
        values[name.strip().replace(" ", "")] = to_scalar(value.strip())
    return values


def split_map(text: str) -> Tuple[str, str]:
    parts = text.split(";")
    if len(parts) != 2:
        raise PreconditionViolation(f"A map is written \"F;G\", got {text!r}")
    return parts[0].strip(), parts[1].strip()


def _terms(value) -> List[Term]:
    if isinstance(value, RationalPolynomial):
        return [Term(**term) for term in value.to_json()]
    return [Term(monomial=value.monomial_text(mono) or "1", coefficient=str(coeff))
            for mono, coeff in value.ordered_terms()]


# ----- subcommands -----

def run_eval(args: Namespace) -> Tuple[BaseModel, int]:
    source = read_source(args)
    target = resolve_target(args.target, source)
    value = parse_element(source, target)
    report = EvalReport(target=str(target), expression=to_text(parse(source)), value=str(value), terms=_terms(value))
    if args.at:
        if target.kind == "fp":
            raise PreconditionViolation("--at needs a polynomial target (ps:n or jet:...)")
        point = parse_assignment(args.at)
        report.point = {name: str(v) for name, v in point.items()}
        report.point_value = str(value.evaluate(point))
    return report, EXIT_OK


def run_bracket(args: Namespace) -> Tuple[BaseModel, int]:
    if args.right:
        left_text, right_text = read_source(args), args.right
    else:
        node = parse(read_source(args))
        if not isinstance(node, Bracket):
            raise PreconditionViolation("Give two operands, or one expression of the form {a, b}")
        left_text, right_text = to_text(node.left), to_text(node.right)
    target = resolve_target(args.target, left_text, right_text)
    left = parse_element(left_text, target)
    right = parse_element(right_text, target)
    if target.kind == "jet":
        raise PreconditionViolation("Brackets need a Poisson target (fp:m or ps:n)")
    value = left.bracket(right) if isinstance(left, PoissonElement) else ps_bracket(left, right)
    return BracketReport(target=str(target), left=str(left), right=str(right), value=str(value)), EXIT_OK


def _is_customary(element: PoissonElement) -> bool:
    try:
        customary_terms(element)
    except NotCustomary:
        return False
    return True


def run_identity(args: Namespace) -> Tuple[BaseModel, int]:
    source = read_source(args)
    target = resolve_target(None, source)
    element = parse_element(source, target)
    expression = to_text(parse(source))

    method = args.method
    if method == "auto":
        method = "exact" if _is_customary(element) else "randomized"

    if method == "exact":
        n = args.n or 1
        decision = customary_identity_exact(element, n)
        verdict = f"identity: {'true' if decision.is_identity else 'false'} (exact customary check)"
        report = IdentityReport(
            expression=expression, rank=n, method="exact", identity=decision.is_identity, verdict=verdict,
            witness=decision.witness.to_json() if decision.witness else None,
            value=None if decision.value is None else str(decision.value),
        )
        return report, EXIT_OK if decision.is_identity else EXIT_NEGATIVE

    trials = args.trials or get_settings().search_budget
    if args.n:
        outcome = is_identity_randomized(element, args.n, args.degree_bound, trials, args.seed)
    else:
        outcome = find_nonidentity_rank(element, degree_bound=args.degree_bound, trials=trials, rng_seed=args.seed)
    if isinstance(outcome, NonIdentity):
        report = IdentityReport(
            expression=expression, rank=outcome.rank, method="randomized", identity=False,
            verdict=f"identity: false (nonzero image on PS_{outcome.rank} at trial {outcome.trial})",
            witness=outcome.assignment.to_json(), value=str(outcome.value), trials=trials, rng_seed=args.seed,
        )
        return report, EXIT_NEGATIVE
    report = IdentityReport(
        expression=expression, rank=outcome.rank, method="randomized", identity=None,
        verdict=f"identity: probably (no nonzero image in {outcome.trials} trials on PS_{outcome.rank})",
        trials=outcome.trials, rng_seed=args.seed,
    )
    return report, EXIT_OK


def run_series(args: Namespace) -> Tuple[BaseModel, int]:
    source = read_source(args, "f")
    target = Target("jet", len(args.coords.split(",")), tuple(c.strip() for c in args.coords.split(",")))
    f = parse_element(source, target)
    ring = f.ring
    if args.point:
        point = [to_scalar(c.strip()) for c in args.point.split(",")]
    else:
        point = [Fraction(0)] * ring.n
    jets = {ring.variable(name).alpha: value for name, value in parse_assignment(args.jets).items()}
    problem = SeriesProblem.from_polynomial(f, point, jets)
    session = SeriesSession(problem)
    truncation = session.truncate(args.order)
    residual_ok = session.residual_check(args.order)
    payload = session.to_json(args.order)
    report = SeriesReport(
        coords=payload["coords"], alphas=payload["alphas"], seed=SeedModel(**payload["seed"]), f=payload["f"],
        N=args.order, coefficients=payload["coefficients"], truncation=str(truncation), residual_ok=residual_ok,
    )
    return report, EXIT_OK if residual_ok else EXIT_NEGATIVE


def run_freiheit(args: Namespace) -> Tuple[BaseModel, int]:
    f_text = read_source(args, "f")
    g_text = args.g
    m = args.m or max(generator_count(parse(f_text)), generator_count(parse(g_text)), 2)
    target = Target("fp", m)
    f = parse_element(f_text, target)
    g = parse_element(g_text, target)
    budget = SearchBudget.from_settings()
    if args.budget:
        budget = SearchBudget(args.budget, budget.max_rank, budget.seed_grid_points)
    witness = construct_witness(f, g, args.order, budget, args.seed)
    payload = witness.to_json()
    return FreiheitReport(f=str(f), g=str(g), **payload), EXIT_OK


def _plane_map(text: str) -> PolyEndo:
    F, G = split_map(text)
    return PolyEndo(parse_element(F, PLANE_TARGET), parse_element(G, PLANE_TARGET))


def run_jung(args: Namespace) -> Tuple[BaseModel, int]:
    phi = _plane_map(read_source(args, "map"))
    result = jung_decompose(phi)
    report = JungReport(map=phi.to_json(), jacobian=str(jacobian(phi)), automorphism=not isinstance(result, NotAutomorphism))
    if isinstance(result, NotAutomorphism):
        report.reason = result.reason
        report.stalled = result.stalled.to_json()
        return report, EXIT_NEGATIVE
    report.moves = [MoveModel(**move.to_json()) for move in result.moves]
    return report, EXIT_OK


def run_commtest(args: Namespace) -> Tuple[BaseModel, int]:
    text = read_source(args, "map")
    if args.poisson:
        F, G = split_map(text)
        phi = PoissonEndo(parse_element(F, Target("fp", 2), PLANE_ALPHABET),
                          parse_element(G, Target("fp", 2), PLANE_ALPHABET))
    else:
        phi = _plane_map(text).lift()

    scaling = bracket_scaling_test(phi)
    report = CommtestReport(map=phi.to_json(), poisson=bool(args.poisson), scaling=ScalingModel(**scaling.to_json()))
    if scaling.kind != SCALAR or scaling.degenerate:
        return report, EXIT_NEGATIVE

    bridge = theorem4_bridge(phi)
    report.jacobian = str(bridge.jacobian)
    report.jacobian_matches = bridge.jacobian_matches
    if not isinstance(bridge.decomposition, NotAutomorphism):
        report.decomposition_length = len(bridge.decomposition.moves)
        report.s = str(bridge.s)
        report.t = str(bridge.t)
    report.residual_trivial = bridge.residual_trivial
    ok = bridge.jacobian_matches and bridge.residual_trivial
    return report, EXIT_OK if ok else EXIT_NEGATIVE


def run_schema(args: Namespace) -> Tuple[dict, int]:
    schemas = load_schemas()
    if args.kind:
        if args.kind not in REPORT_MODELS:
            raise UnknownIdentifier(f"No report kind {args.kind!r}")
        return schemas["definitions"][args.kind], EXIT_OK
    return schemas, EXIT_OK


COMMANDS = {
    "eval": run_eval,
    "bracket": run_bracket,
    "identity": run_identity,
    "series": run_series,
    "freiheit": run_freiheit,
    "jung": run_jung,
    "commtest": run_commtest,
    "schema": run_schema,
}


# ----- rendering -----

HEADLINE_FIELDS = {"eval": "value", "bracket": "value", "identity": "verdict"}


def render_text(report: BaseModel) -> str:
    """Headline plus a field/value table."""
    payload = report.model_dump(mode="json")
    kind = payload.pop("kind")
    headline_field = HEADLINE_FIELDS.get(kind)
    lines = []
    if headline_field:
        lines.append(str(payload.pop(headline_field)))
        if kind in ("eval", "bracket"):
            payload.pop("terms", None)
            if payload.get("point_value") is None:
                return lines[0]

    table = PrettyTable()
    table.field_names = ["Field", "Value"]
    table.align = "l"
    for name, value in payload.items():
        if value is None or value == [] or value == {}:
            continue
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        table.add_row([name, value])
    lines.append(table.get_string())
    return "\n".join(lines)


def render_json(report) -> str:
    if isinstance(report, BaseModel):
        return report.model_dump_json(indent=2)
    return json.dumps(report, indent=2, sort_keys=True)
