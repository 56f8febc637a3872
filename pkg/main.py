import sys
import logging
import argparse
from typing import List, Optional

from algebra.errors import AlgebraError, PipelineError
from cli.commands import COMMANDS, EXIT_ERROR, render_json, render_text
from cli.reports import ErrorReport
from config import get_settings

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('main')


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for the pf command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit a single JSON document")
    common.add_argument("--seed", type=int, default=0, help="Seed for every randomized search")
    common.add_argument("--file", help="Read the main input expression from a file")

    parser = argparse.ArgumentParser(prog="pf", description="Exact free Poisson algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="Evaluate an expression in a target algebra")
    p.add_argument("expression", nargs="?")
    p.add_argument("--target", help="fp:m, ps:n or jet:x,y,... (default fp:m inferred)")
    p.add_argument("--at", help="Point for polynomial targets, e.g. x1=1,y1=2")

    p = sub.add_parser("bracket", parents=[common], help="Bracket two expressions")
    p.add_argument("expression", nargs="?")
    p.add_argument("right", nargs="?")
    p.add_argument("--target", help="fp:m or ps:n (default fp:m inferred)")

    p = sub.add_parser("identity", parents=[common], help="Test whether a free Poisson element is an identity of PS_n")
    p.add_argument("expression", nargs="?")
    p.add_argument("--n", type=int, help="Rank; randomized tests search ranks when omitted")
    p.add_argument("--method", choices=["auto", "exact", "randomized"], default="auto")
    p.add_argument("--trials", type=int, help="Random substitutions per rank (default PF_BUDGET)")
    p.add_argument("--degree-bound", type=int, default=2, dest="degree_bound")

    p = sub.add_parser("series", parents=[common], help="Solve an implicit PDE by formal power series")
    p.add_argument("--f", help="Polynomial in the coordinates and jets u(...)")
    p.add_argument("--coords", default="x", help="Comma-separated coordinate names")
    p.add_argument("--point", help="Base point, comma-separated (default origin)")
    p.add_argument("--jets", required=True, help="Seed jet values, e.g. u(0)=1,u(1)=1")
    p.add_argument("--order", type=int, default=6)

    p = sub.add_parser("freiheit", parents=[common], help="Construct a Freiheitssatz witness for f and g")
    p.add_argument("--f", help="Relator involving the last generator")
    p.add_argument("--g", required=True, help="Element free of the last generator")
    p.add_argument("--m", type=int, help="Number of generators (default inferred)")
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--budget", type=int, help="Trials per rank and random seed draws (default PF_BUDGET)")

    p = sub.add_parser("jung", parents=[common], help="Tame decomposition of a plane polynomial map")
    p.add_argument("--map", help="Images \"F;G\" of x and y")

    p = sub.add_parser("commtest", parents=[common], help="Bracket scaling test and the Jacobian bridge")
    p.add_argument("--map", help="Images \"F;G\" of x and y")
    p.add_argument("--poisson", action="store_true", help="Read F and G as free Poisson elements")

    p = sub.add_parser("schema", parents=[common], help="Print the published report schema")
    p.add_argument("--kind", help="Only this report kind")
    return parser


def _fail(args: argparse.Namespace, error: Exception) -> int:
    stage = error.stage if isinstance(error, PipelineError) else None
    logger.error(f"Error running {args.command}: {str(error)}")
    report = ErrorReport(error=type(error).__name__, message=str(error), stage=stage)
    if args.json:
        print(render_json(report))
    else:
        print(f"error: {error}")
    return EXIT_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one pf subcommand.

    Args:
        argv: Arguments without the program name (default sys.argv[1:])

    Returns:
        0 on success, 1 on a mathematical negative, 2 on budget or contract errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else 0

    logging.getLogger().setLevel(get_settings().log_level)
    try:
        report, code = COMMANDS[args.command](args)
    except (AlgebraError, ValueError, KeyError, OSError) as e:
        return _fail(args, e)
    except Exception as e:
        logger.error(f"Unexpected error running {args.command}: {str(e)}")
        return _fail(args, e)

    if args.json or args.command == "schema":
        print(render_json(report))
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
