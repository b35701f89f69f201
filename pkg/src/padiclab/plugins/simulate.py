# In src/padiclab/plugins/simulate.py
"""`padiclab simulate`: run an interference scenario and summarize its fringes."""

import argparse

import numpy as np

from padiclab.config import ALPHA, CENTRAL_FRACTION, REPLICAS, SMOOTHING_WINDOW
from padiclab.lib.artifact_writer import resolve_output, write_json_atomic
from padiclab.lib.constants import EXIT_FAILURE, EXIT_OK, MIN_DISPERSION_WINDOWS
from padiclab.lib.counting_stats import chi_square_gof, stratified_dispersion_test
from padiclab.lib.exceptions import StatisticsError
from padiclab.lib.interference_model import coherence_estimate, quantum_distribution, visibility
from padiclab.lib.interference_simulator import (
    TrialRecord,
    aggregate,
    bright_bins,
    pooled_coherence,
    rate_segments,
    run_scenario,
    window_counts,
)
from padiclab.lib.logging_config import get_logger
from padiclab.lib.models import (
    DispersionSummary,
    Provenance,
    ScenarioName,
    ScenarioSpec,
    SimulationSummary,
    load_scenario,
)
from padiclab.lib.sequence_io import write_histogram_csv, write_records_ndjson
from padiclab.lib.utils import positive_int, replica_seeds, run_replicas

logger = get_logger(__name__)

MIN_PAIR_DETECTIONS = 50
TARGET_WINDOW_COUNT = 10.0  # Mean bright-bin detections per counting window


def _poisson_summary(
    records: list[TrialRecord], spec: ScenarioSpec, alpha: float
) -> DispersionSummary | None:
    """Dispersion of bright-bin counts, with windows sized per constant-rate segment."""
    if spec.scenario is ScenarioName.EXPONENTIAL_SCHEDULE or not records:
        return None
    bright = bright_bins(spec)
    share = sum(r.bin in bright for r in records) / len(records)
    if share == 0:
        return None
    groups = []
    for members, rate, start in rate_segments(records, spec):
        window = spec.window or TARGET_WINDOW_COUNT / (rate * share)
        groups.append(window_counts(members, window, bright, start))
    windows = sum(counts.size for counts in groups)
    if windows < MIN_DISPERSION_WINDOWS or not any(counts.sum() for counts in groups):
        logger.info("Only %d counting windows, skipping the Poisson test", windows)
        return None
    try:
        report = stratified_dispersion_test(groups, alpha)
    except StatisticsError as e:
        logger.info("Skipping the Poisson test: %s", e)
        return None
    return DispersionSummary(**report.to_dict())


def summarize(
    records: list[TrialRecord],
    spec: ScenarioSpec,
    smoothing_window: int = SMOOTHING_WINDOW,
    central_fraction: float = CENTRAL_FRACTION,
    alpha: float = ALPHA,
) -> SimulationSummary:
    """Fringe metrics and counting statistics of one run."""
    cfg = spec.apparatus
    (overall,) = aggregate(records, cfg.screen_bins, "none")
    summary = SimulationSummary(
        provenance=Provenance(command="simulate", seed=spec.seed, spec_hash=spec.spec_hash()),
        scenario=spec.scenario,
        trials=len(records),
        visibility=visibility(overall, smoothing_window, central_fraction) if overall.total else 0.0,
        poisson=_poisson_summary(records, spec, alpha),
    )
    if spec.scenario is ScenarioName.RANDOM_TWO_SLIT:
        group_coherence = {}
        for h in aggregate(records, cfg.screen_bins, "slit-pair"):
            xi, eta = (int(j) for j in h.key.split("-"))
            if xi != eta and h.total >= MIN_PAIR_DETECTIONS:
                estimate = coherence_estimate(h, cfg, (xi, eta))
                if estimate is not None:
                    group_coherence[h.key] = estimate
        return summary.model_copy(
            update={
                "group_coherence": dict(sorted(group_coherence.items())),
                "pooled_coherence": pooled_coherence(records, spec),
            }
        )
    open_slits = spec.open_slits or tuple(range(cfg.slit_count))
    return summary.model_copy(
        update={"chi_square_p_value": chi_square_gof(overall.counts, quantum_distribution(cfg, open_slits))}
    )


def _replica(seed: int, spec_json: str) -> list[TrialRecord]:
    spec = ScenarioSpec.model_validate_json(spec_json)
    return run_scenario(spec.model_copy(update={"seed": seed}))


def _write_run(
    args: argparse.Namespace, spec: ScenarioSpec, records: list[TrialRecord], prefix: str
) -> SimulationSummary:
    summary = summarize(records, spec, args.smoothing, args.central_fraction, args.alpha)
    provenance = summary.provenance
    (overall,) = aggregate(records, spec.apparatus.screen_bins, "none")
    artifacts = {"histogram": prefix + ".hist.csv"}
    write_histogram_csv(resolve_output(artifacts["histogram"], args.output_dir), overall, spec.apparatus, provenance)
    if not args.no_records:
        artifacts["records"] = prefix + ".ndjson"
        write_records_ndjson(resolve_output(artifacts["records"], args.output_dir), records, provenance)
    summary = summary.model_copy(update={"artifacts": artifacts})
    write_json_atomic(resolve_output(prefix + ".summary.json", args.output_dir), summary.model_dump(mode="json"))
    return summary


def run(args: argparse.Namespace) -> int:
    spec = load_scenario(args.spec)
    prefix = args.output or f"{spec.scenario}-{spec.seed}"
    logger.info("Scenario %s, spec hash %s", spec.scenario, spec.spec_hash())

    if args.replicas == 1:
        runs = [(spec, run_scenario(spec), prefix)]
    else:
        seeds = replica_seeds(spec.seed, args.replicas)
        results = run_replicas(
            _replica,
            spec.seed,
            args.replicas,
            workers=args.workers,
            description="simulate",
            progress=args.verbose,
            spec_json=spec.model_dump_json(),
        )
        runs = [
            (spec.model_copy(update={"seed": seed}), records, f"{prefix}-r{i}")
            for i, (seed, records) in enumerate(zip(seeds, results, strict=True))
        ]

    rejected = False
    visibilities = []
    for run_spec, records, run_prefix in runs:
        summary = _write_run(args, run_spec, records, run_prefix)
        visibilities.append(summary.visibility)
        rejected |= summary.poisson is not None and summary.poisson.verdict != "accept"
        line = f"{run_prefix}: visibility={summary.visibility:.4f}"
        if summary.pooled_coherence is not None:
            line += f" pooled_coherence={summary.pooled_coherence:.4f}"
        if summary.chi_square_p_value is not None:
            line += f" chi2_p={summary.chi_square_p_value:.4g}"
        if summary.poisson is not None:
            line += f" poisson={summary.poisson.verdict} D={summary.poisson.dispersion:.4f}"
        print(line)

    if len(runs) > 1:
        print(f"mean visibility over {len(runs)} replicas: {float(np.mean(visibilities)):.4f}")
    return EXIT_FAILURE if args.fail_on_reject and rejected else EXIT_OK


def setup(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "simulate",
        help="Run an interference scenario from a JSON ScenarioSpec",
        description="Writes <prefix>.ndjson, <prefix>.hist.csv and <prefix>.summary.json.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("spec", help="ScenarioSpec JSON file")
    parser.add_argument("-o", "--output", help="Output file prefix")
    parser.add_argument("--replicas", type=positive_int, default=REPLICAS, help="Seeded replica runs")
    parser.add_argument("--workers", type=positive_int, default=1, help="Processes for replicas")
    parser.add_argument("--smoothing", type=positive_int, default=SMOOTHING_WINDOW, help="Odd smoothing window")
    parser.add_argument("--central-fraction", type=float, default=CENTRAL_FRACTION)
    parser.add_argument("--alpha", type=float, default=ALPHA, help="Poisson test level")
    parser.add_argument("--no-records", action="store_true", help="Skip the ndjson trial records")
    parser.add_argument(
        "--fail-on-reject", action="store_true", help="Exit 1 when the Poisson test rejects"
    )
    parser.set_defaults(handler=run)
