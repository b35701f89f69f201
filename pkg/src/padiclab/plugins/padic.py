# In src/padiclab/plugins/padic.py
"""`padiclab padic`: expansions, norms, distances, arithmetic and square roots."""

import argparse
import math
import sys

from padiclab.config import TARGET_DIGITS
from padiclab.lib.constants import EXIT_FAILURE, EXIT_OK, EXIT_USAGE
from padiclab.lib.exceptions import BaseMismatchError
from padiclab.lib.logging_config import get_logger
from padiclab.lib.padic_core import (
    PAdicApprox,
    PrimeBase,
    as_base,
    distance,
    format_literal,
    hensel_sqrt,
    norm,
    parse_literal,
    parse_rational,
    render,
    to_digits,
    valuation,
)
from padiclab.lib.utils import positive_int

logger = get_logger(__name__)

ACTIONS = ("expand", "norm", "valuation", "distance", "arith", "sqrt")
OPERATIONS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def parse_value(text: str, base: PrimeBase, precision: int) -> PAdicApprox:
    """A `p:.. v:.. d:..` literal as written, or a rational expanded to `precision` digits."""
    if text.lstrip().startswith("p:"):
        value = parse_literal(text)
        if value.base != base:
            raise BaseMismatchError(f"Literal uses p = {value.p} but -p {base.p} was given")
        return value
    return to_digits(parse_rational(text), base, precision)


def _require(args: argparse.Namespace, name: str) -> str:
    value = getattr(args, name)
    if value is None:
        raise argparse.ArgumentTypeError(f"padic {args.action} needs --{name}")
    return value


def _show(value: PAdicApprox, as_literal: bool) -> str:
    return format_literal(value) if as_literal else render(value)


def run(args: argparse.Namespace) -> int:
    base = as_base(args.prime)
    value = parse_value(_require(args, "value"), base, args.digits)
    logger.info("padic %s at p=%d, %d digits", args.action, base.p, args.digits)

    if args.action == "expand":
        print(_show(value, args.literal))
    elif args.action == "norm":
        print(norm(value.to_rational(), base))
    elif args.action == "valuation":
        v = valuation(value.to_rational(), base)
        print("inf" if v == math.inf else v)
    elif args.action == "distance":
        other = parse_value(_require(args, "other"), base, args.digits)
        print(distance(value.to_rational(), other.to_rational(), base))
    elif args.action == "arith":
        other = parse_value(_require(args, "other"), base, args.digits)
        print(_show(OPERATIONS[args.op](value, other), args.literal))
    else:
        root = hensel_sqrt(value.to_rational(), base, args.digits)
        if root is None:
            print(f"no square root in Q_{base.p}")
            return EXIT_FAILURE
        print(_show(root, args.literal))
    return EXIT_OK


def _run_checked(args: argparse.Namespace) -> int:
    try:
        return run(args)
    except argparse.ArgumentTypeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def setup(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "padic",
        help="p-adic expansions, norms, distances, arithmetic and square roots",
        description="Values are rationals (-1, 5/3) or literals 'p:2 v:0 d:1,1,1,1'.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("action", choices=ACTIONS)
    parser.add_argument("-p", "--prime", type=int, required=True, help="The prime p")
    parser.add_argument("-q", "--value", help="First operand")
    parser.add_argument("-r", "--other", help="Second operand (distance, arith)")
    parser.add_argument(
        "-k", "--digits", type=positive_int, default=TARGET_DIGITS, help="Digits to expand rationals to"
    )
    parser.add_argument("--op", choices=sorted(OPERATIONS), default="add", help="arith operation")
    parser.add_argument(
        "--literal", action="store_true", help="Print results as p:/v:/d: literals"
    )
    parser.set_defaults(handler=_run_checked)
