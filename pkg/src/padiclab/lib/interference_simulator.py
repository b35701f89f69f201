# In src/padiclab/lib/interference_simulator.py
"""
Monte-Carlo runs of slit experiments with inter-trial memory.

Each detection is drawn from (1 - c_t) * classical + c_t * quantum. The
coherence c_t grows with the number m of recent trials that went through the
same apparatus part (the kernel site) in the same slit configuration:

    c_t = gamma_eff * (1 - (1 - gamma)^m) * exp(-dt / tau)

gamma = 0 switches memory off and every trial is sampled from the quantum
pattern. A run is a sequential state machine driven by three independent
seeded streams (arrivals, slit choice, detection).
"""

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from padiclab.lib.constants import MAX_EXPONENTIAL_TIME
from padiclab.lib.exceptions import ScenarioError
from padiclab.lib.interference_model import (
    Histogram,
    classical_distribution,
    cross_term,
    quantum_distribution,
)
from padiclab.lib.logging_config import get_logger
from padiclab.lib.models import KernelSite, ScenarioName, ScenarioSpec
from padiclab.lib.utils import Stopwatch

logger = get_logger(__name__)

_SITE_PART = {
    KernelSite.SOURCE: "source",
    KernelSite.APERTURE: "shield",
    KernelSite.SCREEN: "screen",
}
_BUFFER_SIZE = 4096

GroupBy = Literal["slit-pair", "apparatus", "none"]


@dataclass(frozen=True)
class TrialRecord:
    t: int
    time: float
    open_slits: tuple[int, ...]
    bin: int
    apparatus_id: str
    coherence: float = field(default=0.0, compare=False)

    @property
    def xi(self) -> int:
        return self.open_slits[0]

    @property
    def eta(self) -> int:
        return self.open_slits[-1]

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "time": self.time,
            "xi": self.xi,
            "eta": self.eta,
            "bin": self.bin,
            "apparatus": self.apparatus_id,
        }


class _UniformBuffer:
    """Draws uniforms from a generator in blocks; the sequence is the same as one-by-one draws."""

    def __init__(self, rng: np.random.Generator):
        self._rng = rng
        self._block = np.empty(0)
        self._next = 0

    def __call__(self) -> float:
        if self._next == self._block.size:
            self._block = self._rng.random(_BUFFER_SIZE)
            self._next = 0
        value = float(self._block[self._next])
        self._next += 1
        return value


@dataclass
class TrialStreams:
    arrivals: np.random.Generator
    slits: np.random.Generator
    detection: np.random.Generator

    @classmethod
    def from_seed(cls, seed: int) -> "TrialStreams":
        arrivals, slits, detection = np.random.SeedSequence(seed).spawn(3)
        return cls(
            np.random.default_rng(arrivals),
            np.random.default_rng(slits),
            np.random.default_rng(detection),
        )


@dataclass
class SimulatorState:
    """Everything a trial depends on besides the random streams."""

    spec: ScenarioSpec
    t: int = 0
    time: float = 0.0
    parts: dict[str, int] = field(default_factory=lambda: {"source": 0, "shield": 0, "screen": 0})
    next_part_id: int = 1
    history: deque = field(default_factory=deque)
    recent: Counter = field(default_factory=Counter)
    last_seen: dict = field(default_factory=dict)
    _cdfs: dict = field(default_factory=dict, repr=False)
    _uniform: _UniformBuffer | None = field(default=None, repr=False)

    @property
    def apparatus_id(self) -> str:
        return f"{self.parts['source']}.{self.parts['shield']}.{self.parts['screen']}"

    def renew(self, source: bool, shield: bool, screen: bool) -> None:
        for part, replace in (("source", source), ("shield", shield), ("screen", screen)):
            if replace:
                self.parts[part] = self.next_part_id
                self.next_part_id += 1

    def cdfs(self, slits: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
        if slits not in self._cdfs:
            cfg = self.spec.apparatus
            self._cdfs[slits] = (
                np.cumsum(classical_distribution(cfg, slits)),
                np.cumsum(quantum_distribution(cfg, slits)),
            )
        return self._cdfs[slits]

    def memory_count(self, key: tuple) -> int:
        return self.recent[key]

    def remember(self, key: tuple) -> None:
        self.history.append(key)
        self.recent[key] += 1
        self.last_seen[key] = self.time
        if len(self.history) > self.spec.kernel.recency_window:
            expired = self.history.popleft()
            self.recent[expired] -= 1
            if not self.recent[expired]:
                del self.recent[expired]
                self.last_seen.pop(expired, None)


def coherence(spec: ScenarioSpec, m: int, gap: float) -> float:
    """Quantum mixture weight after m recent trials through the same key."""
    kernel = spec.kernel
    if kernel.strength == 0:
        return 1.0
    value = kernel.effective_strength * (1 - (1 - kernel.strength) ** m)
    if kernel.time_constant is not None and m > 0:
        value *= math.exp(-gap / kernel.time_constant)
    return value


def _segment_index(t: int, trials: int, segments: int) -> int:
    return min(t * segments // trials, segments - 1)


def _next_time(state: SimulatorState, streams: TrialStreams) -> float:
    spec = state.spec
    if spec.scenario is ScenarioName.EXPONENTIAL_SCHEDULE:
        if spec.prime is None:
            raise ScenarioError("The exponential schedule needs a prime")
        exponent = state.t * math.log(spec.prime)
        if exponent >= math.log(MAX_EXPONENTIAL_TIME / spec.time_unit):
            return MAX_EXPONENTIAL_TIME
        return spec.time_unit * float(spec.prime) ** state.t
    rate = spec.rate
    if spec.scenario is ScenarioName.RATE_SWEEP:
        if not spec.rates:
            raise ScenarioError("The rate sweep needs at least one rate")
        rate = spec.rates[_segment_index(state.t, spec.trials, len(spec.rates))]
    return state.time + float(streams.arrivals.exponential(1 / rate))


def _choose_slits(state: SimulatorState, streams: TrialStreams) -> tuple[int, ...]:
    spec = state.spec
    if spec.scenario is ScenarioName.RANDOM_TWO_SLIT:
        xi, eta = (int(j) for j in streams.slits.integers(0, spec.apparatus.slit_count, size=2))
        return (xi, eta)
    if spec.open_slits is not None:
        return tuple(spec.open_slits)
    return tuple(range(spec.apparatus.slit_count))


def sample_trial(state: SimulatorState, streams: TrialStreams) -> TrialRecord:
    """Advance the state by one particle and return its detection record."""
    spec = state.spec
    if (
        spec.scenario is ScenarioName.CYCLE_RESET
        and spec.cycle_length is not None
        and state.t > 0
        and state.t % spec.cycle_length == 0
    ):
        state.renew(True, True, True)

    state.time = _next_time(state, streams)
    chosen = _choose_slits(state, streams)
    configuration = tuple(sorted(set(chosen)))
    key = (state.parts[_SITE_PART[spec.kernel.site]], configuration)
    m = state.memory_count(key)
    gap = state.time - state.last_seen.get(key, state.time)
    c = coherence(spec, m, gap)

    if state._uniform is None:
        state._uniform = _UniformBuffer(streams.detection)
    component, position = state._uniform(), state._uniform()
    classical_cdf, quantum_cdf = state.cdfs(configuration)
    cdf = quantum_cdf if component < c else classical_cdf
    detected = min(int(np.searchsorted(cdf, position * cdf[-1], side="right")), cdf.size - 1)

    record = TrialRecord(state.t, state.time, chosen, detected, state.apparatus_id, c)
    state.remember(key)
    policy = spec.renewal_policy
    state.renew(policy.source, policy.shield, policy.screen)
    state.t += 1
    return record


def run_scenario(spec: ScenarioSpec) -> list[TrialRecord]:
    """Run every trial of a scenario; identical specs give identical records."""
    if not isinstance(spec, ScenarioSpec):
        raise ScenarioError(f"Expected a ScenarioSpec, got {type(spec).__name__}")
    state = SimulatorState(spec)
    streams = TrialStreams.from_seed(spec.seed)
    logger.info("Running %s scenario: %d trials, seed %d", spec.scenario, spec.trials, spec.seed)
    with Stopwatch(f"scenario {spec.scenario}", spec.trials):
        records = [sample_trial(state, streams) for _ in range(spec.trials)]
    return records


# -------------Aggregation---------------


def _group_key(record: TrialRecord, group_by: GroupBy) -> str:
    if group_by == "slit-pair":
        return f"{record.xi}-{record.eta}"
    if group_by == "apparatus":
        return record.apparatus_id
    return "all"


def aggregate(records: list[TrialRecord], bins: int, group_by: GroupBy = "none") -> list[Histogram]:
    """Partition detections into per-group histograms, in first-seen group order."""
    if group_by not in ("slit-pair", "apparatus", "none"):
        raise ValueError(f"Unknown grouping {group_by!r}")
    groups: dict[str, list[int]] = {}
    for record in records:
        groups.setdefault(_group_key(record, group_by), []).append(record.bin)
    if not groups and group_by == "none":
        return [Histogram(np.zeros(bins, dtype=np.int64))]
    return [
        Histogram(np.bincount(np.asarray(detected), minlength=bins), key=key)
        for key, detected in groups.items()
    ]


def pooled_coherence(records: list[TrialRecord], spec: ScenarioSpec) -> float | None:
    """
    Coherence estimate pooled over all slit configurations of a run.

    Sum of (g(bin) - E_classical[g]) over detections divided by the sum of
    (E_quantum[g] - E_classical[g]); configurations without a cross term
    contribute nothing to either sum.
    """
    cfg = spec.apparatus
    cache: dict[tuple[int, ...], tuple[np.ndarray, float, float]] = {}
    numerator = denominator = 0.0
    for record in records:
        configuration = tuple(sorted(set(record.open_slits)))
        if len(configuration) < 2:
            continue
        if configuration not in cache:
            g = cross_term(cfg, configuration)
            cache[configuration] = (
                g,
                float(classical_distribution(cfg, configuration) @ g),
                float(quantum_distribution(cfg, configuration) @ g),
            )
        g, expected_classical, expected_quantum = cache[configuration]
        numerator += g[record.bin] - expected_classical
        denominator += expected_quantum - expected_classical
    if denominator <= 1e-9:
        return None
    return numerator / denominator


def window_counts(
    records: list[TrialRecord], window: float, bins: set[int] | None = None, start: float = 0.0
) -> np.ndarray:
    """Detections per consecutive time window from `start`, optionally restricted to some screen bins."""
    if window <= 0:
        raise ValueError(f"window must be positive, got {window}")
    if not records:
        return np.zeros(0, dtype=np.int64)
    # Only complete windows; the run end usually cuts the last one short.
    complete = int((max(r.time for r in records) - start) // window)
    if complete <= 0:
        return np.zeros(0, dtype=np.int64)
    times = np.asarray([r.time for r in records if bins is None or r.bin in bins], dtype=float)
    counts, _ = np.histogram(times, bins=start + np.arange(complete + 1) * window)
    return counts.astype(np.int64)


def rate_segments(
    records: list[TrialRecord], spec: ScenarioSpec
) -> list[tuple[list[TrialRecord], float, float]]:
    """
    Split records into stretches of constant arrival rate as (records, rate, start time).

    A segment starts at the last arrival of the previous one, so its counts
    from `start` on are those of a Poisson process at the segment's rate.
    """
    if spec.scenario is not ScenarioName.RATE_SWEEP or not spec.rates:
        return [(records, spec.rate, 0.0)] if records else []
    grouped: list[list[TrialRecord]] = [[] for _ in spec.rates]
    for record in records:
        grouped[_segment_index(record.t, spec.trials, len(spec.rates))].append(record)
    segments = []
    start = 0.0
    for rate, members in zip(spec.rates, grouped, strict=True):
        if members:
            segments.append((members, rate, start))
            start = members[-1].time
    return segments


def bright_bins(spec: ScenarioSpec) -> set[int]:
    """Bins where the quantum pattern exceeds its mean."""
    open_slits = spec.open_slits or tuple(range(spec.apparatus.slit_count))
    distribution = quantum_distribution(spec.apparatus, open_slits)
    return set(np.flatnonzero(distribution > distribution.mean()).tolist())
