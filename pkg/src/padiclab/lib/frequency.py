# In src/padiclab/lib/frequency.py
"""
Relative frequencies of binary trial records and their stabilization.

A sequence is a collective for a topology when its relative frequencies
nu_N(1) = n(1)/N settle in that topology. Finite data can only be
Cauchy-tested, so every decision here is a three-valued verdict over a
tail window of checkpoints.
"""

import math
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

import numpy as np

from padiclab.config import (
    GEOMETRIC_SCALE,
    PADIC_TAIL,
    REAL_SCHEDULE_RATIO,
    REAL_TAIL,
    REAL_TOLERANCE,
    TARGET_DIGITS,
)
from padiclab.lib.exceptions import SequenceFormatError
from padiclab.lib.logging_config import get_logger, log_verdict
from padiclab.lib.padic_core import (
    INFINITE_VALUATION,
    PAdicApprox,
    PrimeBase,
    approximate,
    as_base,
    distance,
    valuation,
)

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class EventSequence:
    """A finite binary trial record x_1, x_2, ..., x_N over the alphabet {0, 1}."""

    labels: np.ndarray

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels)
        if labels.ndim != 1:
            raise SequenceFormatError("Event sequence must be one-dimensional")
        if labels.size and not np.isin(labels, (0, 1)).all():
            bad = int(np.flatnonzero(~np.isin(labels, (0, 1)))[0])
            raise SequenceFormatError(f"Label at index {bad} is outside the alphabet {{0, 1}}")
        labels = labels.astype(np.uint8, copy=True)
        labels.flags.writeable = False
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_string(cls, text: str) -> "EventSequence":
        bad = next((i for i, char in enumerate(text) if char not in "01"), None)
        if bad is not None:
            raise SequenceFormatError(f"Invalid label {text[bad]!r} at position {bad}")
        return cls(np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0"))

    def to_string(self) -> str:
        return (self.labels + ord("0")).tobytes().decode("ascii")

    def prefix(self, n: int) -> "EventSequence":
        return EventSequence(self.labels[:n])

    @property
    def ones(self) -> int:
        return int(self.labels.sum(dtype=np.int64))

    def __len__(self) -> int:
        return int(self.labels.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EventSequence):
            return NotImplemented
        return bool(np.array_equal(self.labels, other.labels))

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class FrequencyTrace:
    """Exact counts n(1) at strictly increasing checkpoints N."""

    checkpoints: tuple[int, ...]
    ones: tuple[int, ...]

    @property
    def freq1(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, N) for N, n in zip(self.checkpoints, self.ones, strict=True))

    @property
    def freq0(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(N - n, N) for N, n in zip(self.checkpoints, self.ones, strict=True))

    def restrict(self, checkpoints: list[int] | tuple[int, ...]) -> "FrequencyTrace":
        index = {N: i for i, N in enumerate(self.checkpoints)}
        return FrequencyTrace(
            tuple(checkpoints), tuple(self.ones[index[N]] for N in checkpoints)
        )

    def __len__(self) -> int:
        return len(self.checkpoints)


class Topology(StrEnum):
    REAL = "real"
    PADIC = "p-adic"


class StabilizationStatus(StrEnum):
    STABILIZED = "stabilized"
    NOT_STABILIZED = "not-stabilized"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class StabilizationVerdict:
    topology: Topology
    status: StabilizationStatus
    limit_estimate: Fraction | PAdicApprox | None = None
    evidence: Fraction | float | None = None
    prime: int | None = None
    complement_limit: Fraction | PAdicApprox | None = None

    def __post_init__(self) -> None:
        if (self.limit_estimate is not None) != (self.status is StabilizationStatus.STABILIZED):
            raise ValueError("limit_estimate must be present exactly when stabilized")

    @property
    def stabilized(self) -> bool:
        return self.status is StabilizationStatus.STABILIZED


class CollectiveKind(StrEnum):
    MISES = "mises"
    PADIC = "p-adic"
    NEITHER = "neither"
    BOTH = "both"


@dataclass(frozen=True)
class CollectiveParams:
    """Checkpoint schedules and thresholds for classify_collective."""

    real_checkpoints: tuple[int, ...] | None = None
    padic_checkpoints: tuple[int, ...] | None = None
    tolerance: float = REAL_TOLERANCE
    real_tail: int = REAL_TAIL
    padic_tail: int = PADIC_TAIL
    target_digits: int = TARGET_DIGITS
    schedule_ratio: float = REAL_SCHEDULE_RATIO
    geometric_scale: float = GEOMETRIC_SCALE


@dataclass(frozen=True)
class CollectiveVerdict:
    kind: CollectiveKind
    real: StabilizationVerdict
    padic: StabilizationVerdict
    real_trace: FrequencyTrace = field(repr=False)
    padic_trace: FrequencyTrace = field(repr=False)


# -------------Checkpoint schedules---------------


def geometric_checkpoints(length: int, base: PrimeBase | int, scale: float = 1.0) -> tuple[int, ...]:
    """N_k = ceil(scale * p^k) for k = 0, 1, ... up to `length`, deduplicated."""
    p = as_base(base).p
    checkpoints: list[int] = []
    k = 0
    while True:
        n = max(1, math.ceil(scale * p**k))
        if n > length:
            break
        if not checkpoints or n > checkpoints[-1]:
            checkpoints.append(n)
        k += 1
    return tuple(checkpoints)


def dense_checkpoints(length: int, ratio: float) -> tuple[int, ...]:
    """Geometric schedule with a small ratio, always ending at `length`."""
    if ratio <= 1:
        raise ValueError(f"ratio must exceed 1, got {ratio}")
    checkpoints: list[int] = []
    i = 0
    while True:
        n = math.ceil(ratio**i)
        if n >= length:
            break
        if not checkpoints or n > checkpoints[-1]:
            checkpoints.append(n)
        i += 1
    if length >= 1:
        checkpoints.append(length)
    return tuple(checkpoints)


# -------------Operations---------------


def trace(seq: EventSequence, checkpoints: list[int] | tuple[int, ...]) -> FrequencyTrace:
    """Exact counts of label 1 in the prefixes of length N for each checkpoint."""
    if len(checkpoints) == 0:
        raise ValueError("Checkpoint list is empty")
    previous = 0
    for N in checkpoints:
        if N <= previous:
            raise ValueError(f"Checkpoints must be strictly increasing positive integers, got {N}")
        previous = N
    if checkpoints[-1] > len(seq):
        raise ValueError(f"Checkpoint {checkpoints[-1]} exceeds sequence length {len(seq)}")
    cumulative = np.cumsum(seq.labels, dtype=np.int64)
    ones = tuple(int(cumulative[N - 1]) for N in checkpoints)
    return FrequencyTrace(tuple(int(N) for N in checkpoints), ones)


def real_stabilization(tr: FrequencyTrace, tolerance: float, tail: int) -> StabilizationVerdict:
    """Cauchy test of nu_N(1) in the real metric over the last `tail` checkpoints."""
    if tolerance <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    if not 1 <= tail <= len(tr):
        raise ValueError(f"tail must be between 1 and {len(tr)}, got {tail}")
    if tail < 2:
        return StabilizationVerdict(Topology.REAL, StabilizationStatus.UNDECIDED)

    window = tr.freq1[-tail:]
    spread = max(window) - min(window)
    if spread <= Fraction(tolerance):
        final = window[-1]
        verdict = StabilizationVerdict(
            Topology.REAL,
            StabilizationStatus.STABILIZED,
            limit_estimate=final,
            evidence=float(spread),
            complement_limit=1 - final,
        )
    else:
        verdict = StabilizationVerdict(
            Topology.REAL, StabilizationStatus.NOT_STABILIZED, evidence=float(spread)
        )
    log_verdict(logger, "real stabilization", verdict.status, f"spread={float(spread):.3g}")
    return verdict


def padic_stabilization(
    tr: FrequencyTrace,
    base: PrimeBase | int,
    target_digits: int,
    tail: int = PADIC_TAIL,
) -> StabilizationVerdict:
    """
    Digit-stabilization test of nu_N(1) in the p-adic metric.

    Digits are counted from e = min(0, lowest valuation in the tail). The
    tail is stabilized when all its frequencies agree below position
    e + target_digits, i.e. pairwise distances are <= p^-(e + target_digits).
    """
    base = as_base(base)
    if target_digits < 1:
        raise ValueError(f"target_digits must be positive, got {target_digits}")
    tail = min(tail, len(tr))
    if tail < 2:
        return StabilizationVerdict(Topology.PADIC, StabilizationStatus.UNDECIDED, prime=base.p)

    window = tr.freq1[-tail:]
    finite = [int(v) for v in (valuation(f, base) for f in window) if v != INFINITE_VALUATION]
    floor = min([0, *finite])
    absolute = floor + target_digits
    bound = Fraction(base.p) ** -absolute
    final = window[-1]
    # Ultrametric: the largest pairwise distance is attained against any fixed member.
    spread = max(distance(f, final, base) for f in window)

    if spread <= bound:
        limit = approximate(final, base, absolute)
        evidence = max(distance(f, limit.to_rational(), base) for f in window)
        verdict = StabilizationVerdict(
            Topology.PADIC,
            StabilizationStatus.STABILIZED,
            limit_estimate=limit,
            evidence=evidence,
            prime=base.p,
            complement_limit=approximate(1 - final, base, absolute),
        )
    else:
        verdict = StabilizationVerdict(
            Topology.PADIC, StabilizationStatus.NOT_STABILIZED, evidence=spread, prime=base.p
        )
    log_verdict(logger, f"{base.p}-adic stabilization", verdict.status, f"spread={spread}")
    return verdict


def classify_collective(
    seq: EventSequence, base: PrimeBase | int, params: CollectiveParams | None = None
) -> CollectiveVerdict:
    """Decide whether seq is a Mises collective, a p-adic collective, both or neither."""
    base = as_base(base)
    params = params or CollectiveParams()
    if len(seq) == 0:
        raise SequenceFormatError("Cannot classify an empty sequence")

    real_checkpoints = params.real_checkpoints or dense_checkpoints(len(seq), params.schedule_ratio)
    padic_checkpoints = params.padic_checkpoints or geometric_checkpoints(
        len(seq), base, params.geometric_scale
    )
    real_trace = trace(seq, real_checkpoints)
    padic_trace = trace(seq, padic_checkpoints)

    real = real_stabilization(real_trace, params.tolerance, min(params.real_tail, len(real_trace)))
    padic = padic_stabilization(padic_trace, base, params.target_digits, params.padic_tail)

    kind = {
        (True, True): CollectiveKind.BOTH,
        (True, False): CollectiveKind.MISES,
        (False, True): CollectiveKind.PADIC,
        (False, False): CollectiveKind.NEITHER,
    }[(real.stabilized, padic.stabilized)]
    log_verdict(logger, "collective", kind)
    return CollectiveVerdict(kind, real, padic, real_trace, padic_trace)
