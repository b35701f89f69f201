# In src/padiclab/lib/utils.py

import argparse
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any, TypeVar

import numpy as np
from tqdm import tqdm

from padiclab.lib.logging_config import get_logger, log_performance_metric

logger = get_logger(__name__)

T = TypeVar("T")


def replica_seeds(master_seed: int, count: int) -> list[int]:
    """
    Derive independent per-replica seeds from one master seed.

    Args:
        master_seed: Seed recorded in the run provenance
        count: Number of replicas
    Returns:
        A list of 63-bit integer seeds, stable for a given master seed.
    """
    if count < 1:
        raise ValueError("count must be positive")
    children = np.random.SeedSequence(master_seed).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1)) for child in children]


def run_replicas(
    task: Callable[..., T],
    master_seed: int,
    count: int,
    workers: int = 1,
    description: str = "replicas",
    progress: bool = False,
    **kwargs: Any,
) -> list[T]:
    """
    Run `task(seed, **kwargs)` once per replica seed, in seed order.

    Replicas share no state, so with workers > 1 they run in a process pool;
    `task` must then be a module-level function.
    """
    seeds = replica_seeds(master_seed, count)
    bound = partial(task, **kwargs)
    start = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(
                tqdm(
                    pool.map(bound, seeds),
                    total=count,
                    desc=description,
                    unit="replica",
                    leave=False,
                    disable=not progress,
                )
            )
    else:
        results = [
            bound(seed)
            for seed in tqdm(seeds, desc=description, unit="replica", leave=False, disable=not progress)
        ]
    log_performance_metric(logger, description, time.perf_counter() - start, count)
    return results


class Stopwatch:
    """Context manager that logs the duration of a block as a performance metric."""

    def __init__(self, operation: str, count: int = 1) -> None:
        self.operation = operation
        self.count = count
        self.elapsed = 0.0

    def __enter__(self) -> "Stopwatch":
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.elapsed = time.perf_counter() - self._start
        log_performance_metric(logger, self.operation, self.elapsed, self.count)


def positive_int(text: str) -> int:
    """argparse type for counts, digits and depths."""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value
