# In src/padiclab/plugins/realize.py
"""`padiclab realize`: build, write and verify a p-adic frequency realization."""

import argparse
import math

import numpy as np

from padiclab.config import FILL_MODE, GROWTH_FACTOR
from padiclab.lib.artifact_writer import resolve_output, write_json_atomic
from padiclab.lib.constants import EXIT_FAILURE, EXIT_OK
from padiclab.lib.logging_config import get_logger
from padiclab.lib.models import Provenance
from padiclab.lib.padic_core import (
    PAdicApprox,
    PrimeBase,
    as_base,
    format_literal,
    imaginary_unit,
    parse_rational,
    render,
    to_digits,
    valuation,
)
from padiclab.lib.realization import (
    FillMode,
    FillPolicy,
    VerificationReport,
    generate,
    plan,
    verify,
)
from padiclab.lib.sequence_io import read_plan_rows, read_sequence, write_plan_csv, write_sequence
from padiclab.lib.utils import Stopwatch, positive_int
from padiclab.plugins.padic import parse_value

logger = get_logger(__name__)


def parse_target(text: str, base: PrimeBase, depth: int, precision: int | None) -> PAdicApprox:
    """Rationals get exactly the digits the plan needs; `i` is sqrt(-1) for p = 1 mod 4."""
    if text.strip() == "i":
        return imaginary_unit(base, precision or depth)
    if text.lstrip().startswith("p:"):
        return parse_value(text, base, depth)
    q = parse_rational(text)
    v = valuation(q, base)
    shift = 0 if v == math.inf else max(0, -int(v))
    return to_digits(q, base, precision or depth + shift)


def report_document(report: VerificationReport) -> dict:
    return {
        "prime": report.prime,
        "target": format_literal(report.target),
        "passed": report.passed,
        "rows": [
            {
                "k": row.k,
                "N_k": row.N,
                "n_k": row.n,
                "distance": str(row.distance),
                "bound": str(row.bound),
                "passed": row.passed,
            }
            for row in report.rows
        ],
    }


def _print_report(report: VerificationReport) -> None:
    print("k,N_k,n_k,distance,bound,pass")
    for row in report.rows:
        print(f"{row.k},{row.N},{row.n},{row.distance},{row.bound},{'yes' if row.passed else 'NO'}")
    print(f"verification: {'pass' if report.passed else 'FAIL'}")


def _verify_existing(args: argparse.Namespace, base: PrimeBase) -> int:
    rows = read_plan_rows(args.plan)
    target = parse_target(args.target, base, len(rows), args.precision)
    report = verify(read_sequence(args.verify), target, len(rows), rows)
    _print_report(report)
    return EXIT_OK if report.passed else EXIT_FAILURE


def run(args: argparse.Namespace) -> int:
    base = as_base(args.prime)
    if args.verify:
        if not args.plan:
            raise ValueError("--verify needs --plan with the checkpoint CSV")
        return _verify_existing(args, base)

    target = parse_target(args.target, base, args.depth, args.precision)
    seed = args.seed
    if args.fill == FillMode.SHUFFLE and seed is None:
        seed = int(np.random.SeedSequence().entropy % 2**63)
        logger.info("No seed given for shuffle fill, using %d", seed)
    fill = FillPolicy(FillMode(args.fill), seed)

    logger.info("Realizing %s in Q_%d to depth %d", render(target), base.p, args.depth)
    checkpoint_plan = plan(target, args.depth, args.growth)
    with Stopwatch("generate", checkpoint_plan.length):
        sequence = generate(checkpoint_plan, fill)
    report = verify(sequence, target, args.depth, checkpoint_plan.rows)

    provenance = Provenance(
        command="realize",
        seed=seed,
        parameters={
            "prime": base.p,
            "target": format_literal(target),
            "depth": args.depth,
            "fill": str(fill.mode),
            "growth": args.growth,
        },
    )
    prefix = args.output or f"realize-p{base.p}-K{args.depth}"
    suffix = ".bits" if args.bits else ".seq"
    write_sequence(resolve_output(prefix + suffix, args.output_dir), sequence, provenance)
    write_plan_csv(resolve_output(prefix + ".plan.csv", args.output_dir), checkpoint_plan, provenance)
    write_json_atomic(
        resolve_output(prefix + ".verify.json", args.output_dir),
        {"provenance": provenance.model_dump(mode="json"), **report_document(report)},
    )
    _print_report(report)
    return EXIT_OK if report.passed else EXIT_FAILURE


def setup(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "realize",
        help="Realize a p-adic number as a frequency probability",
        description="Writes <prefix>.seq, <prefix>.plan.csv and <prefix>.verify.json. "
        "With --verify SEQ --plan CSV, re-checks an existing sequence instead.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("-p", "--prime", type=int, required=True, help="The prime p")
    parser.add_argument(
        "-t", "--target", required=True, help="Rational (e.g. -1, 5/3), p-adic literal, or i"
    )
    parser.add_argument("-k", "--depth", type=positive_int, default=8, help="Number of plan rows K")
    parser.add_argument("--precision", type=positive_int, help="Digits of the target expansion")
    parser.add_argument("--fill", choices=[str(m) for m in FillMode], default=FILL_MODE)
    parser.add_argument("--seed", type=int, help="Seed for shuffle fill (recorded in provenance)")
    parser.add_argument("--growth", type=float, default=GROWTH_FACTOR, help="Window growth factor")
    parser.add_argument("-o", "--output", help="Output file prefix")
    parser.add_argument("--bits", action="store_true", help="Write the packed .bits format")
    parser.add_argument("--verify", help="Existing sequence file to verify")
    parser.add_argument("--plan", help="Plan CSV for --verify")
    parser.set_defaults(handler=run)
