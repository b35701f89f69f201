# In src/padiclab/lib/realization.py
"""
Constructive realization of a p-adic number as a frequency probability.

For a target x with v = max(0, -ord_p(x)) the plan picks checkpoints
N_k = p^v * M_k (M_k coprime to p) whose windows N_k - N_{k-1} hold at least
p^(k+v) trials, and counts n_k = x * N_k (mod p^(k+v)) taken from the window
(n_{k-1}, n_{k-1} + p^(k+v)]. Then |n_k/N_k - x|_p <= p^-k on every row.
"""

import math
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

import numpy as np

from padiclab.config import GROWTH_FACTOR
from padiclab.lib.constants import MAX_REALIZATION_DEPTH
from padiclab.lib.exceptions import PrecisionInsufficientError
from padiclab.lib.frequency import EventSequence, trace
from padiclab.lib.logging_config import get_logger, log_verdict
from padiclab.lib.padic_core import PAdicApprox, PrimeBase, distance

logger = get_logger(__name__)


class FillMode(StrEnum):
    BLOCK = "block"
    SPREAD = "spread"
    SHUFFLE = "shuffle"


@dataclass(frozen=True)
class FillPolicy:
    """Order of labels inside each plan window; never changes the counts."""

    mode: FillMode = FillMode.BLOCK
    seed: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", FillMode(self.mode))
        if self.mode is FillMode.SHUFFLE and self.seed is None:
            raise ValueError("Seeded-shuffle fill requires a seed")


@dataclass(frozen=True)
class PlanRow:
    k: int
    N: int
    n: int
    bound: Fraction


@dataclass(frozen=True)
class CheckpointPlan:
    base: PrimeBase
    target: PAdicApprox
    depth: int
    rows: tuple[PlanRow, ...]

    def __post_init__(self) -> None:
        previous_N = previous_n = 0
        for row in self.rows:
            if row.N <= previous_N:
                raise ValueError(f"Row {row.k}: checkpoints must strictly increase")
            if row.n < previous_n or row.n > row.N:
                raise ValueError(f"Row {row.k}: count {row.n} out of range")
            if row.n - previous_n > row.N - previous_N:
                raise ValueError(f"Row {row.k}: window cannot hold {row.n - previous_n} ones")
            previous_N, previous_n = row.N, row.n

    @property
    def checkpoints(self) -> tuple[int, ...]:
        return tuple(row.N for row in self.rows)

    @property
    def length(self) -> int:
        return self.rows[-1].N if self.rows else 0


@dataclass(frozen=True)
class VerificationRow:
    k: int
    N: int
    n: int
    distance: Fraction
    bound: Fraction

    @property
    def passed(self) -> bool:
        return self.distance <= self.bound


@dataclass(frozen=True)
class VerificationReport:
    prime: int
    target: PAdicApprox
    rows: tuple[VerificationRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def failures(self) -> list[int]:
        return [row.k for row in self.rows if not row.passed]


@dataclass(frozen=True)
class RealizationResult:
    plan: CheckpointPlan
    sequence: EventSequence
    report: VerificationReport


def plan(
    target: PAdicApprox, depth: int, growth_factor: float = GROWTH_FACTOR
) -> CheckpointPlan:
    """Build the checkpoint plan realizing `target` to `depth` p-adic digits."""
    if not 1 <= depth <= MAX_REALIZATION_DEPTH:
        raise ValueError(f"depth must be between 1 and {MAX_REALIZATION_DEPTH}, got {depth}")
    if growth_factor < 1:
        raise ValueError(f"growth_factor must be >= 1, got {growth_factor}")
    p = target.p
    shift = max(0, -target.valuation)
    required = depth + shift
    if target.precision < required:
        raise PrecisionInsufficientError(
            f"Target has {target.precision} digits, realization to depth {depth} needs {required}"
        )

    # target * N_k = p^max(v, 0) * U * M_k, with U the unit digits
    scale = p ** max(target.valuation, 0)
    unit = target.unit_integer()
    period = p**shift
    rows: list[PlanRow] = []
    previous_N = previous_n = 0
    for k in range(1, depth + 1):
        modulus = p ** (k + shift)
        minimum = previous_N + math.ceil(growth_factor * modulus)
        multiplier = -(-minimum // period)
        while multiplier % p == 0:
            multiplier += 1
        N = period * multiplier
        residue = scale * unit * multiplier % modulus
        n = previous_n + 1 + (residue - previous_n - 1) % modulus
        rows.append(PlanRow(k, N, n, Fraction(1, p**k)))
        previous_N, previous_n = N, n

    logger.info(
        "Planned realization of %s-adic target to depth %d: N_K=%d", p, depth, previous_N
    )
    return CheckpointPlan(target.base, target, depth, tuple(rows))


def generate(plan: CheckpointPlan, fill: FillPolicy | None = None) -> EventSequence:
    """Emit a sequence whose prefix of length N_k holds exactly n_k ones."""
    fill = fill or FillPolicy()
    labels = np.zeros(plan.length, dtype=np.uint8)
    rng = np.random.default_rng(fill.seed)
    previous_N = previous_n = 0
    for row in plan.rows:
        width = row.N - previous_N
        ones = row.n - previous_n
        window = labels[previous_N : row.N]
        if fill.mode is FillMode.BLOCK:
            window[:ones] = 1
        elif fill.mode is FillMode.SPREAD:
            index = np.arange(width, dtype=np.int64)
            window[((index + 1) * ones) // width > (index * ones) // width] = 1
        else:
            window[rng.permutation(width)[:ones]] = 1
        previous_N, previous_n = row.N, row.n
    return EventSequence(labels)


def _report(target: PAdicApprox, counted: list[tuple[int, int]]) -> VerificationReport:
    value = target.to_rational()
    p = target.p
    rows = tuple(
        VerificationRow(k, N, n, distance(Fraction(n, N), value, p), Fraction(1, p**k))
        for k, (N, n) in enumerate(counted, start=1)
    )
    report = VerificationReport(p, target, rows)
    log_verdict(
        logger,
        f"realization of {p}-adic target",
        "pass" if report.passed else "fail",
        f"failed rows {report.failures}" if report.failures else f"{len(rows)} rows",
    )
    return report


def verify(
    seq: EventSequence,
    target: PAdicApprox,
    depth: int,
    rows: tuple[PlanRow, ...] | list[tuple[int, int]],
) -> VerificationReport:
    """Recount the sequence at the plan checkpoints and check each row bound exactly."""
    checkpoints = [row.N if isinstance(row, PlanRow) else int(row[0]) for row in rows][:depth]
    if len(checkpoints) < depth:
        raise ValueError(f"Plan has {len(checkpoints)} rows, depth {depth} requested")
    if len(seq) < checkpoints[-1]:
        raise ValueError(f"Sequence length {len(seq)} is shorter than N_K = {checkpoints[-1]}")
    observed = trace(seq, checkpoints)
    return _report(target, list(zip(observed.checkpoints, observed.ones, strict=True)))


def verify_plan(plan: CheckpointPlan) -> VerificationReport:
    """Check the row guarantees from the planned counts alone."""
    return _report(plan.target, [(row.N, row.n) for row in plan.rows])


def realize(
    target: PAdicApprox,
    depth: int,
    fill: FillPolicy | None = None,
    growth_factor: float = GROWTH_FACTOR,
) -> RealizationResult:
    """Plan, generate and verify in one call."""
    checkpoint_plan = plan(target, depth, growth_factor)
    sequence = generate(checkpoint_plan, fill)
    report = verify(sequence, target, depth, checkpoint_plan.rows)
    return RealizationResult(checkpoint_plan, sequence, report)
