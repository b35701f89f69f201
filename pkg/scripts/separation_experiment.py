#!/usr/bin/env python3
"""Complexity-growth separation experiment for PadicLab.

Classifies fair-coin sequences and p-adic realization sequences side by side
over seeded replicas and reports the confusion matrix.

Usage:
    python scripts/separation_experiment.py                   # 30 trials, seed 0
    python scripts/separation_experiment.py --trials 100      # More replicas
    python scripts/separation_experiment.py --workers 4       # Process pool
"""

import argparse
import sys
from pathlib import Path

# Add the src directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from padiclab.config import OUTPUT_DIR  # pylint: disable=wrong-import-position
from padiclab.lib.artifact_writer import resolve_output, write_json_atomic  # pylint: disable=wrong-import-position
from padiclab.lib.complexity import GrowthClass, run_separation, separation_depth  # pylint: disable=wrong-import-position
from padiclab.lib.logging_config import setup_script_logging  # pylint: disable=wrong-import-position
from padiclab.lib.models import Provenance  # pylint: disable=wrong-import-position
from padiclab.lib.utils import Stopwatch, positive_int  # pylint: disable=wrong-import-position

logger = setup_script_logging("separation_experiment", "INFO")

REQUIRED_ACCURACY = 0.95


def format_confusion(confusion: dict[str, dict[str, int]]) -> list[str]:
    classes = [str(growth) for growth in GrowthClass]
    lines = ["source".ljust(12) + "".join(name.rjust(14) for name in classes)]
    for source, row in confusion.items():
        lines.append(source.ljust(12) + "".join(str(row[name]).rjust(14) for name in classes))
    return lines


def main() -> int:
    parser = argparse.ArgumentParser(description="Linear vs logarithmic complexity separation")
    parser.add_argument("--trials", type=positive_int, default=30)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--length", type=positive_int, default=2**16, help="Fair-coin sequence length")
    parser.add_argument(
        "--depth", type=positive_int, help="Realization depth; defaults to the shallowest reaching --length"
    )
    parser.add_argument("--prime", type=int, default=2)
    parser.add_argument("--workers", type=positive_int, default=1)
    parser.add_argument("--output-dir", default=OUTPUT_DIR)
    args = parser.parse_args()
    args.depth = args.depth or separation_depth(args.length, args.prime)

    with Stopwatch("separation experiment", args.trials) as watch:
        result = run_separation(args.trials, args.seed, args.length, args.depth, args.prime, args.workers)

    for line in format_confusion(result.confusion):
        logger.info(line)
    accuracies = {source: result.accuracy(source) for source in result.confusion}
    logger.info(
        "Accuracy: iid %.1f%%, realization %.1f%% (%.1fs)",
        100 * accuracies["iid"],
        100 * accuracies["realization"],
        watch.elapsed,
    )

    provenance = Provenance(command="separation_experiment", seed=args.seed, parameters=vars(args))
    path = write_json_atomic(
        resolve_output("separation.json", args.output_dir),
        {
            "provenance": provenance.model_dump(mode="json"),
            "confusion": result.confusion,
            "accuracy": accuracies,
        },
    )
    logger.info("Wrote %s", path)
    if min(accuracies.values()) < REQUIRED_ACCURACY:
        logger.warning("Separation below %.0f%% accuracy", 100 * REQUIRED_ACCURACY)
        return 1
    return 0


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        sys.exit(130)
