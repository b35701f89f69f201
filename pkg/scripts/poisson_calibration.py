#!/usr/bin/env python3
"""Calibration of the Poisson index-of-dispersion test.

Measures the acceptance rate on true Poisson window counts and the power
against burst-duplication contamination.

Usage:
    python scripts/poisson_calibration.py                        # Defaults
    python scripts/poisson_calibration.py --replicas 500         # Tighter estimate
    python scripts/poisson_calibration.py --contamination 0.05   # Stronger bursts
"""

import argparse
import sys
from pathlib import Path

import numpy as np

# Add the src directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from padiclab.config import ALPHA, OUTPUT_DIR  # pylint: disable=wrong-import-position
from padiclab.lib.artifact_writer import resolve_output, write_json_atomic  # pylint: disable=wrong-import-position
from padiclab.lib.counting_stats import inject_bursts, poisson_dispersion_test  # pylint: disable=wrong-import-position
from padiclab.lib.logging_config import setup_script_logging  # pylint: disable=wrong-import-position
from padiclab.lib.models import Provenance  # pylint: disable=wrong-import-position
from padiclab.lib.utils import positive_int, run_replicas  # pylint: disable=wrong-import-position

logger = setup_script_logging("poisson_calibration", "INFO")

ACCEPTANCE_BAND = 0.015
REQUIRED_POWER = 0.5


def null_replica(seed: int, windows: int, mean: float, alpha: float) -> bool:
    counts = np.random.default_rng(seed).poisson(mean, size=windows)
    return poisson_dispersion_test(counts, alpha).accepted


def burst_replica(seed: int, windows: int, mean: float, alpha: float, contamination: float) -> bool:
    rng = np.random.default_rng(seed)
    counts = inject_bursts(rng.poisson(mean, size=windows), contamination, rng)
    return not poisson_dispersion_test(counts, alpha).accepted


def main() -> int:
    parser = argparse.ArgumentParser(description="Poisson dispersion test calibration")
    parser.add_argument("--replicas", type=positive_int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--mean", type=float, default=10.0, help="Poisson mean per window")
    parser.add_argument("--windows", type=positive_int, default=1000, help="Windows per null replica")
    parser.add_argument("--power-windows", type=positive_int, default=10_000)
    parser.add_argument("--contamination", type=float, default=0.02, help="Share of duplicated windows")
    parser.add_argument("--alpha", type=float, default=ALPHA)
    parser.add_argument("--workers", type=positive_int, default=1)
    parser.add_argument("--output-dir", default=OUTPUT_DIR)
    args = parser.parse_args()

    logger.info("Null calibration: %d replicas of %d windows", args.replicas, args.windows)
    accepted = run_replicas(
        null_replica,
        args.seed,
        args.replicas,
        workers=args.workers,
        description="null",
        progress=True,
        windows=args.windows,
        mean=args.mean,
        alpha=args.alpha,
    )
    detected = run_replicas(
        burst_replica,
        args.seed + 1,
        args.replicas,
        workers=args.workers,
        description="bursts",
        progress=True,
        windows=args.power_windows,
        mean=args.mean,
        alpha=args.alpha,
        contamination=args.contamination,
    )
    acceptance = float(np.mean(accepted))
    power = float(np.mean(detected))
    logger.info("Acceptance rate %.1f%% (target %.1f%%)", 100 * acceptance, 100 * (1 - args.alpha))
    logger.info("Power at %.0f%% bursts: %.1f%%", 100 * args.contamination, 100 * power)

    provenance = Provenance(command="poisson_calibration", seed=args.seed, parameters=vars(args))
    path = write_json_atomic(
        resolve_output("poisson-calibration.json", args.output_dir),
        {"provenance": provenance.model_dump(mode="json"), "acceptance": acceptance, "power": power},
    )
    logger.info("Wrote %s", path)
    calibrated = abs(acceptance - (1 - args.alpha)) <= ACCEPTANCE_BAND and power >= REQUIRED_POWER
    return 0 if calibrated else 1


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        sys.exit(130)
