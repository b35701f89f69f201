#!/usr/bin/env python3
"""Random two-slit coherence trend for PadicLab.

Runs the random-two-slit scenario on N-slit shields with memory on and
checks that the measured coherence weakens as N grows.

Usage:
    python scripts/visibility_trend.py                       # N = 4, 16, 64
    python scripts/visibility_trend.py --slits 4 8 16 32     # Custom shields
    python scripts/visibility_trend.py --seeds 20 --workers 4
"""

import argparse
import sys
from pathlib import Path

import numpy as np

# Add the src directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from padiclab.config import OUTPUT_DIR  # pylint: disable=wrong-import-position
from padiclab.lib.artifact_writer import resolve_output, write_json_atomic  # pylint: disable=wrong-import-position
from padiclab.lib.interference_simulator import pooled_coherence, run_scenario  # pylint: disable=wrong-import-position
from padiclab.lib.logging_config import setup_script_logging  # pylint: disable=wrong-import-position
from padiclab.lib.models import (  # pylint: disable=wrong-import-position
    ApparatusConfig,
    MemoryKernel,
    Provenance,
    ScenarioName,
    ScenarioSpec,
)
from padiclab.lib.utils import positive_int, run_replicas  # pylint: disable=wrong-import-position

logger = setup_script_logging("visibility_trend", "INFO")

NOISE_FLOOR = 0.02
SLIT_SPACING = 2e-5  # Keeps the widest pair's fringes resolvable on 401 bins
SCREEN_BINS = 401


def trend_spec(slit_count: int, trials: int, seed: int, strength: float, window: int) -> ScenarioSpec:
    return ScenarioSpec(
        scenario=ScenarioName.RANDOM_TWO_SLIT,
        trials=trials,
        seed=seed,
        apparatus=ApparatusConfig.uniform(slit_count, spacing=SLIT_SPACING, screen_bins=SCREEN_BINS),
        kernel=MemoryKernel(strength=strength, recency_window=window),
    )


def coherence_replica(seed: int, slit_count: int, trials: int, strength: float, window: int) -> float:
    spec = trend_spec(slit_count, trials, seed, strength, window)
    value = pooled_coherence(run_scenario(spec), spec)
    return float("nan") if value is None else value


def is_nonincreasing(values: list[float], floor: float = NOISE_FLOOR) -> bool:
    return all(later <= earlier + floor for earlier, later in zip(values, values[1:], strict=False))


def main() -> int:
    parser = argparse.ArgumentParser(description="Coherence vs number of slits N")
    parser.add_argument("--slits", type=positive_int, nargs="+", default=[4, 16, 64])
    parser.add_argument("--seeds", type=positive_int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=positive_int, default=20_000)
    parser.add_argument("--strength", type=float, default=0.5, help="Memory kernel strength")
    parser.add_argument("--window", type=positive_int, default=100, help="Recency window W")
    parser.add_argument("--workers", type=positive_int, default=1)
    parser.add_argument("--output-dir", default=OUTPUT_DIR)
    args = parser.parse_args()

    means = []
    for slit_count in args.slits:
        values = run_replicas(
            coherence_replica,
            args.seed,
            args.seeds,
            workers=args.workers,
            description=f"N={slit_count}",
            progress=True,
            slit_count=slit_count,
            trials=args.trials,
            strength=args.strength,
            window=args.window,
        )
        mean = float(np.nanmean(values))
        means.append(mean)
        logger.info("N=%d: mean coherence %.4f (sd %.4f)", slit_count, mean, float(np.nanstd(values)))

    trend_holds = is_nonincreasing(means)
    logger.info("Nonincreasing within %.2f: %s", NOISE_FLOOR, trend_holds)
    provenance = Provenance(command="visibility_trend", seed=args.seed, parameters=vars(args))
    path = write_json_atomic(
        resolve_output("visibility-trend.json", args.output_dir),
        {
            "provenance": provenance.model_dump(mode="json"),
            "coherence": dict(zip((str(n) for n in args.slits), means, strict=True)),
            "nonincreasing": trend_holds,
        },
    )
    logger.info("Wrote %s", path)
    return 0 if trend_holds else 1


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        sys.exit(130)
