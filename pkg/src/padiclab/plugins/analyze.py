# In src/padiclab/plugins/analyze.py
"""`padiclab analyze`: stabilization verdicts and complexity growth of a sequence file."""

import argparse
import json
from pathlib import Path

from padiclab.config import (
    COMPRESSOR,
    PADIC_TAIL,
    REAL_SCHEDULE_RATIO,
    REAL_TAIL,
    REAL_TOLERANCE,
    SCHEDULE_BASE,
    TARGET_DIGITS,
)
from padiclab.lib.artifact_writer import resolve_output, write_json_atomic
from padiclab.lib.complexity import COMPRESSORS, fit_growth, profile
from padiclab.lib.constants import EXIT_OK
from padiclab.lib.exceptions import ProfileTooShortError
from padiclab.lib.frequency import (
    CollectiveParams,
    StabilizationVerdict,
    classify_collective,
)
from padiclab.lib.logging_config import get_logger
from padiclab.lib.models import Provenance, StabilizationSummary, VerdictReport
from padiclab.lib.padic_core import PAdicApprox, as_base, render
from padiclab.lib.sequence_io import (
    read_plan_rows,
    read_sequence,
    write_profile_csv,
    write_trace_csv,
)
from padiclab.lib.utils import positive_int

logger = get_logger(__name__)


def _show(value: object) -> str | None:
    if value is None:
        return None
    return render(value) if isinstance(value, PAdicApprox) else str(value)


def summarize(verdict: StabilizationVerdict) -> StabilizationSummary:
    return StabilizationSummary(
        topology=str(verdict.topology),
        status=str(verdict.status),
        limit=_show(verdict.limit_estimate),
        complement_limit=_show(verdict.complement_limit),
        evidence=_show(verdict.evidence),
    )


def run(args: argparse.Namespace) -> int:
    base = as_base(args.prime)
    sequence = read_sequence(args.sequence)
    padic_checkpoints = None
    digits = args.digits
    if args.plan:
        padic_checkpoints = tuple(row.N for row in read_plan_rows(args.plan) if row.N <= len(sequence))
        if digits is None:
            # The last two plan rows agree to one digit less than the plan depth
            digits = max(1, len(padic_checkpoints) - 1)
    if digits is None:
        digits = TARGET_DIGITS
    params = CollectiveParams(
        padic_checkpoints=padic_checkpoints,
        tolerance=args.tolerance,
        real_tail=args.real_tail,
        padic_tail=args.padic_tail,
        target_digits=digits,
        schedule_ratio=args.schedule_ratio,
    )
    collective = classify_collective(sequence, base, params)

    growth = None
    complexity_profile = None
    try:
        complexity_profile = profile(sequence, args.schedule_base, args.proxy)
        growth = fit_growth(complexity_profile)
    except ProfileTooShortError as e:
        logger.warning("Skipping complexity growth: %s", e)

    provenance = Provenance(
        command="analyze",
        parameters={
            "sequence": Path(args.sequence).name,
            "prime": base.p,
            "tolerance": args.tolerance,
            "real_tail": args.real_tail,
            "padic_tail": args.padic_tail,
            "digits": digits,
            "proxy": args.proxy,
            "schedule_base": args.schedule_base,
        },
    )
    report = VerdictReport(
        provenance=provenance,
        length=len(sequence),
        prime=base.p,
        collective=str(collective.kind),
        real=summarize(collective.real),
        padic=summarize(collective.padic),
        growth=growth.to_dict() if growth else None,
    )

    prefix = args.output or Path(args.sequence).stem
    document = report.model_dump(mode="json")
    write_json_atomic(resolve_output(prefix + ".verdict.json", args.output_dir), document)
    write_trace_csv(resolve_output(prefix + ".real-trace.csv", args.output_dir), collective.real_trace, provenance)
    write_trace_csv(resolve_output(prefix + ".padic-trace.csv", args.output_dir), collective.padic_trace, provenance)
    if complexity_profile is not None:
        write_profile_csv(
            resolve_output(prefix + ".profile.csv", args.output_dir), complexity_profile.points, provenance
        )
    print(json.dumps(document, indent=2, sort_keys=True))
    return EXIT_OK


def setup(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "analyze",
        help="Classify a sequence as a Mises / p-adic collective and fit its complexity growth",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("sequence", help="Sequence file (text or .bits)")
    parser.add_argument("-p", "--prime", type=int, required=True, help="The prime p")
    parser.add_argument("--plan", help="Plan CSV whose checkpoints drive the p-adic test")
    parser.add_argument("--tolerance", type=float, default=REAL_TOLERANCE)
    parser.add_argument("--real-tail", type=positive_int, default=REAL_TAIL)
    parser.add_argument("--padic-tail", type=positive_int, default=PADIC_TAIL)
    parser.add_argument(
        "--digits",
        type=positive_int,
        help=f"Target p-adic digits; defaults to one less than the plan depth with --plan, else {TARGET_DIGITS}",
    )
    parser.add_argument("--schedule-ratio", type=float, default=REAL_SCHEDULE_RATIO)
    parser.add_argument("--schedule-base", type=float, default=SCHEDULE_BASE)
    parser.add_argument(
        "--proxy", choices=["lz76", *sorted(COMPRESSORS)], default="lz76", help=f"Complexity proxy (config compressor: {COMPRESSOR})"
    )
    parser.add_argument("-o", "--output", help="Output file prefix")
    parser.set_defaults(handler=run)
