#!/usr/bin/env python3
"""
Free Poisson toolkit - Command Line Testing Script

This script tests the pf command surface by:
1. Round-tripping expression text through the parser and printer
2. Checking syntax error positions
3. Running every subcommand and validating its JSON report against the published schema
"""

import os
import sys
import json
import logging

import jsonschema
import pytest

# Add the parent directory to the path so we can import our modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.errors import ExpressionSyntaxError, UnknownIdentifier
from cli.expressions import Bracket, Mul, Num, Pow, Target, Var, parse, parse_element, to_text
from cli.reports import REPORT_MODELS, BracketReport
from data.schemas import load_schemas, validate_report
from main import main

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('cli_tester')

CORPUS = [
    "x", "y", "0", "3/2", "x + y", "x - y", "-x", "--x", "x*y", "2x",
    "2 x y", "x^2", "x^2^3", "(x + y)^3", "-(x + y)", "(-x)^2", "x*(y*x)", "x - (y - x)", "x - (-y)", "x + -y",
    "-x*y", "(-x)*y", "x*(-y)", "1 - 2 - 3", "1 - (2 - 3)", "x^0", "x(y + 1)", "((x))", "{x, y}", "{x, {x, y}}",
    "{{x, y}, y}", "{x^2, y} - 2*x*{x, y}", "{x + y, x*y}", "-{x, y}", "{x, y}^2", "3/4*{x, y}*x", "2{x, y}",
    "{(x + y), (x - y)}", "z1*z2 + z3", "{z1, z2}*{z3, z4}", "St4", "St6", "CustomaryMonomial(2)",
    "St4 - {z1, z2}*{z3, z4}", "x1*y1 + x2*y2", "{x1^2, y1^3}", "u(0)^2 - 1 - x", "u(1,0) - u(0,2)",
    "x*u(1) + u( 0 , 1 )", "(u(2))^2 + 1/2*y^2",
]


def run(capsys, *argv):
    """Run pf with --json and return (exit code, validated payload)."""
    code = main(list(argv) + ["--json"])
    payload = json.loads(capsys.readouterr().out)
    if argv[0] != "schema":
        validate_report(payload)
    return code, payload


# ----- expressions -----

@pytest.mark.parametrize("text", CORPUS)
def test_round_trip(text):
    tree = parse(text)
    assert parse(to_text(tree)) == tree


def test_corpus_size():
    assert len(CORPUS) == 50


def test_parse_shapes():
    assert parse("2x^2") == Mul(Num(2), Pow(Var("x"), 2))
    assert parse("{x, y}") == Bracket(Var("x"), Var("y"))
    assert to_text(parse("2 x y")) == "2*x*y"
    assert to_text(parse("x*(y*x)")) == "x*(y*x)"


@pytest.mark.parametrize("text,position", [
    ("x + * y", 4),
    ("x $ y", 2),
    ("1/0", 0),
    ("{x, y", 5),
    ("x^y", 2),
    ("(x + y", 6),
    ("CustomaryMonomial(0)", 18),
])
def test_syntax_error_positions(text, position):
    with pytest.raises(ExpressionSyntaxError) as caught:
        parse(text)
    assert caught.value.position == position


def test_zero_denominator_message():
    with pytest.raises(ExpressionSyntaxError, match="Zero denominator"):
        parse("1/0")


def test_missing_brace_message():
    with pytest.raises(ExpressionSyntaxError, match="'}'"):
        parse("{x, y")


def test_elaboration_targets():
    assert str(parse_element("{x, y^2}", Target("fp", 2))) == "2*y*{x,y}"
    assert str(parse_element("{x1, x1*y1}", Target("ps", 1))) == "x1"
    assert Target.parse("jet:x,y") == Target("jet", 2, ("x", "y"))
    with pytest.raises(UnknownIdentifier):
        parse_element("w", Target("fp", 2))
    with pytest.raises(ValueError):
        Target.parse("fp:zero")


# ----- eval and bracket -----

def test_eval_text(capsys):
    assert main(["eval", "{x, y^2}"]) == 0
    assert capsys.readouterr().out.strip() == "2*y*{x,y}"


def test_eval_json(capsys):
    code, payload = run(capsys, "eval", "{x, y^2}")
    assert code == 0
    assert payload["target"] == "fp:2"
    assert payload["value"] == "2*y*{x,y}"


def test_eval_at_point(capsys):
    code, payload = run(capsys, "eval", "x1^2 + y1", "--target", "ps:1", "--at", "x1=2,y1=1/2")
    assert code == 0
    assert payload["point_value"] == "9/2"


def test_eval_from_file(capsys, tmp_path):
    source = tmp_path / "expression.txt"
    source.write_text("{x, y^2}\n")
    code, payload = run(capsys, "eval", "--file", str(source))
    assert code == 0
    assert payload["value"] == "2*y*{x,y}"


def test_bracket_on_ps1(capsys):
    code, payload = run(capsys, "bracket", "--target", "ps:1", "{x1, x1*y1}")
    assert code == 0
    assert payload["value"] == "x1"


def test_bracket_two_operands(capsys):
    code, payload = run(capsys, "bracket", "x", "y^2")
    assert code == 0
    assert payload["value"] == "2*y*{x,y}"


# ----- identities -----

def test_identity_exact_true(capsys):
    assert main(["identity", "St4", "--n", "1"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "identity: true (exact customary check)"


def test_identity_exact_false(capsys):
    code, payload = run(capsys, "identity", "St4", "--n", "2")
    assert code == 1
    assert payload["identity"] is False
    assert payload["method"] == "exact"
    assert payload["witness"] == {"z1": "x1", "z2": "y1", "z3": "x2", "z4": "y2"}


def test_identity_randomized(capsys):
    code, payload = run(capsys, "identity", "{x,{x,y}}", "--trials", "5")
    assert code == 1
    assert payload["method"] == "randomized"
    assert payload["identity"] is False
    assert payload["witness"]


def test_identity_seed_is_reproducible(capsys):
    _, first = run(capsys, "identity", "{x,{x,y}}", "--trials", "5", "--seed", "3")
    _, second = run(capsys, "identity", "{x,{x,y}}", "--trials", "5", "--seed", "3")
    assert first == second
    assert first["rng_seed"] == 3


# ----- series and witnesses -----

def test_series_exp(capsys):
    code, payload = run(capsys, "series", "--f", "u(1) - u(0)", "--coords", "x", "--jets", "u(0)=1,u(1)=1",
                        "--order", "3")
    assert code == 0
    assert payload["truncation"] == "1/6*x^3 + 1/2*x^2 + x + 1"
    assert payload["residual_ok"] is True
    assert payload["N"] == 3


def test_series_bad_seed(capsys):
    code, payload = run(capsys, "series", "--f", "u(0)^2 - 1 - x", "--jets", "u(0)=2")
    assert code == 2
    assert payload["error"] == "HypothesisViolation"


def test_freiheit(capsys):
    code, payload = run(capsys, "freiheit", "--f", "{x, y} - 1", "--g", "x", "--order", "4")
    assert code == 0
    assert payload["rank"] == 1
    assert payload["series"] == "y1"
    assert payload["certified_order"] == 3


@pytest.mark.parametrize("argv", [
    ["identity", "{x,{x,y}}", "--trials", "5", "--seed", "9"],
    ["freiheit", "--f", "{x, y} - 1", "--g", "x^2 + x", "--order", "3", "--seed", "5"],
])
def test_seeded_runs_are_byte_identical(capsys, argv):
    outputs = []
    for _ in range(2):
        main(argv + ["--json"])
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_freiheit_not_dependent(capsys):
    code, payload = run(capsys, "freiheit", "--f", "x^2 - 1", "--g", "x")
    assert code == 2
    assert payload["kind"] == "error"


# ----- plane maps -----

def test_jung_automorphism(capsys):
    code, payload = run(capsys, "jung", "--map", "y; x + y^3")
    assert code == 0
    assert payload["automorphism"] is True
    assert [move["kind"] for move in payload["moves"]] == ["triangular", "affine"]


def test_jung_non_automorphism(capsys):
    code, payload = run(capsys, "jung", "--map", "x^2; y")
    assert code == 1
    assert payload["automorphism"] is False
    assert payload["reason"]


def test_commtest_bridge(capsys):
    code, payload = run(capsys, "commtest", "--map", "2*x; 1/2*y + x^3")
    assert code == 0
    assert payload["scaling"]["kind"] == "scalar"
    assert payload["jacobian_matches"] is True
    assert payload["residual_trivial"] is True


def test_commtest_poisson_not_multiple(capsys):
    code, payload = run(capsys, "commtest", "--poisson", "--map", "x + {x,y}; y")
    assert code == 1
    assert payload["scaling"]["kind"] == "not_multiple"


def test_malformed_map(capsys):
    code, payload = run(capsys, "jung", "--map", "x, y")
    assert code == 2
    assert payload["error"] == "PreconditionViolation"


# ----- schema and errors -----

def test_schema_kind(capsys):
    code, payload = run(capsys, "schema", "--kind", "series")
    assert code == 0
    assert payload == load_schemas()["definitions"]["series"]


def test_schema_text_is_json(capsys):
    assert main(["schema"]) == 0
    assert "definitions" in json.loads(capsys.readouterr().out)


def test_schema_follows_report_models():
    definitions = load_schemas()["definitions"]
    for kind, model in REPORT_MODELS.items():
        assert definitions[kind]["additionalProperties"] is False
        assert set(definitions[kind]["required"]) == set(model.model_fields)


def test_schema_rejects_unknown_fields():
    payload = BracketReport(target="fp:2", left="x", right="y", value="{x,y}").model_dump(mode="json")
    validate_report(payload)
    payload["extra"] = "1"
    with pytest.raises(jsonschema.ValidationError):
        validate_report(payload)


def test_syntax_error_report(capsys):
    code, payload = run(capsys, "eval", "x +")
    assert code == 2
    assert payload["error"] == "ExpressionSyntaxError"
    assert "position 3" in payload["message"]


def test_unknown_subcommand():
    assert main(["nonsense"]) == 2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
