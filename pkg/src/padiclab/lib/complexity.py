# In src/padiclab/lib/complexity.py
"""
Computable proxies for the algorithmic complexity of prefixes of a sequence,
and the linear-vs-logarithmic growth classification built on them.
"""

import bz2
import lzma
import math
import zlib
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from scipy.optimize import lsq_linear

from padiclab.config import COMPRESSOR, DEAD_ZONE_RATIO, FIT_CEILING, SCHEDULE_BASE
from padiclab.lib.constants import (
    COMPRESSOR_PROBE,
    MAX_REALIZATION_DEPTH,
    MIN_PROFILE_POINTS,
    MIN_SEPARATION_DEPTH,
)
from padiclab.lib.exceptions import (
    InvalidCompressorError,
    ProfileTooShortError,
    SequenceFormatError,
)
from padiclab.lib.frequency import EventSequence
from padiclab.lib.logging_config import get_logger, log_verdict
from padiclab.lib.padic_core import to_digits
from padiclab.lib.realization import generate, plan
from padiclab.lib.utils import run_replicas

logger = get_logger(__name__)


# -------------LZ76---------------


class _SuffixAutomaton:
    """Suffix automaton over {0, 1} recording the first end position of every state."""

    def __init__(self, symbols: list[int]):
        self.link = [-1]
        self.length = [0]
        self.first_end = [-1]
        self.next: list[list[int]] = [[-1, -1]]
        last = 0
        for position, symbol in enumerate(symbols):
            current = self._new_state(self.length[last] + 1, position, [-1, -1])
            state = last
            while state != -1 and self.next[state][symbol] == -1:
                self.next[state][symbol] = current
                state = self.link[state]
            if state == -1:
                self.link[current] = 0
            else:
                target = self.next[state][symbol]
                if self.length[state] + 1 == self.length[target]:
                    self.link[current] = target
                else:
                    clone = self._new_state(
                        self.length[state] + 1, self.first_end[target], self.next[target][:]
                    )
                    self.link[clone] = self.link[target]
                    while state != -1 and self.next[state][symbol] == target:
                        self.next[state][symbol] = clone
                        state = self.link[state]
                    self.link[target] = clone
                    self.link[current] = clone
            last = current

    def _new_state(self, length: int, first_end: int, transitions: list[int]) -> int:
        self.link.append(-1)
        self.length.append(length)
        self.first_end.append(first_end)
        self.next.append(transitions)
        return len(self.length) - 1


def lz76_phrase_starts(seq: EventSequence) -> list[int]:
    """
    Start positions of the phrases of the exhaustive-history parsing.

    A phrase starting at l copies the longest s[l:l+k] that already occurs
    inside s[0:l+k-1] and appends one innovation symbol. The parsing of a
    prefix is the parsing of the whole sequence cut at the prefix end.
    """
    if len(seq) == 0:
        raise SequenceFormatError("LZ76 complexity is undefined for an empty sequence")
    symbols = seq.labels.tolist()
    n = len(symbols)
    automaton = _SuffixAutomaton(symbols)
    starts: list[int] = []
    start = 0
    while start < n:
        starts.append(start)
        state, copied = 0, 0
        while start + copied < n:
            following = automaton.next[state][symbols[start + copied]]
            if automaton.first_end[following] > start + copied - 1:
                break
            state = following
            copied += 1
        start += copied + 1
    return starts


def lz76(seq: EventSequence) -> int:
    """Number of phrases in the Lempel-Ziv 1976 parsing."""
    return len(lz76_phrase_starts(seq))


def normalized_lz76(seq: EventSequence) -> float:
    """C * log2(n) / n, close to 1 for long fair-coin sequences."""
    n = len(seq)
    if n < 2:
        return float(lz76(seq))
    return lz76(seq) * math.log2(n) / n


# -------------External compressors---------------


@dataclass(frozen=True)
class Compressor:
    name: str
    compress: Callable[[bytes], bytes]
    decompress: Callable[[bytes], bytes]


COMPRESSORS: dict[str, Compressor] = {
    "zlib": Compressor("zlib", lambda data: zlib.compress(data, 9), zlib.decompress),
    "bz2": Compressor("bz2", lambda data: bz2.compress(data, 9), bz2.decompress),
    "lzma": Compressor("lzma", lzma.compress, lzma.decompress),
}

_probed: set[str] = set()


def get_compressor(name: str = COMPRESSOR) -> Compressor:
    try:
        return COMPRESSORS[name]
    except KeyError:
        raise InvalidCompressorError(
            f"Unknown compressor {name!r}, expected one of {sorted(COMPRESSORS)}"
        ) from None


def _probe(compressor: Compressor) -> None:
    if compressor.name in _probed:
        return
    try:
        restored = compressor.decompress(compressor.compress(COMPRESSOR_PROBE))
    except Exception as e:
        raise InvalidCompressorError(f"Compressor {compressor.name!r} failed its probe: {e}") from e
    if restored != COMPRESSOR_PROBE:
        raise InvalidCompressorError(f"Compressor {compressor.name!r} is not lossless")
    _probed.add(compressor.name)


def compressor_size(seq: EventSequence, compressor: Compressor | str = COMPRESSOR) -> int:
    """Compressed size in bits of the bit-packed sequence."""
    if isinstance(compressor, str):
        compressor = get_compressor(compressor)
    _probe(compressor)
    packed = np.packbits(seq.labels).tobytes()
    return 8 * len(compressor.compress(packed))


# -------------Profiles and growth fits---------------


class GrowthClass(StrEnum):
    LINEAR = "Linear"
    LOGARITHMIC = "Logarithmic"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ComplexityProfile:
    proxy: str
    points: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        lengths = [n for n, _ in self.points]
        if any(b <= a for a, b in zip(lengths, lengths[1:], strict=False)):
            raise ValueError("Profile prefix lengths must be strictly increasing")

    @property
    def lengths(self) -> np.ndarray:
        return np.array([n for n, _ in self.points], dtype=float)

    @property
    def values(self) -> np.ndarray:
        return np.array([c for _, c in self.points], dtype=float)


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    residual: float


@dataclass(frozen=True)
class GrowthVerdict:
    growth_class: GrowthClass
    linear_fit: FitResult
    log_fit: FitResult
    ratio: float
    flat: bool = False
    power_exponent: float | None = None
    log_base_estimate: float | None = None
    decision: str = field(default="")

    def to_dict(self) -> dict:
        return {
            "class": str(self.growth_class),
            "linear_fit": vars(self.linear_fit),
            "log_fit": vars(self.log_fit),
            "ratio": self.ratio,
            "flat": self.flat,
            "power_exponent": self.power_exponent,
            "log_base_estimate": self.log_base_estimate,
            "decision": self.decision,
        }


def schedule_lengths(length: int, base: float = SCHEDULE_BASE) -> list[int]:
    """n_i = ceil(g^i) for i >= 1 up to `length`, deduplicated."""
    if base <= 1:
        raise ValueError(f"schedule base must exceed 1, got {base}")
    lengths: list[int] = []
    i = 1
    while (n := math.ceil(base**i)) <= length:
        if not lengths or n > lengths[-1]:
            lengths.append(n)
        i += 1
    return lengths


def profile(
    seq: EventSequence,
    base: float = SCHEDULE_BASE,
    proxy: str = "lz76",
) -> ComplexityProfile:
    """Evaluate a complexity proxy on geometrically spaced prefixes."""
    lengths = schedule_lengths(len(seq), base)
    if len(lengths) < MIN_PROFILE_POINTS:
        raise ProfileTooShortError(
            f"Sequence of length {len(seq)} gives {len(lengths)} prefix points at base {base}, "
            f"need at least {MIN_PROFILE_POINTS}"
        )
    if proxy == "lz76":
        starts = np.asarray(lz76_phrase_starts(seq))
        values = np.searchsorted(starts, lengths, side="left").tolist()
    else:
        compressor = get_compressor(proxy)
        values = [compressor_size(seq.prefix(n), compressor) for n in lengths]
    return ComplexityProfile(proxy, tuple(zip(lengths, values, strict=True)))


def _bounded_fit(x: np.ndarray, y: np.ndarray, span: float) -> FitResult:
    design = np.column_stack([x, np.ones_like(x)])
    result = lsq_linear(design, y, bounds=([0.0, -np.inf], [np.inf, np.inf]))
    slope, intercept = (float(value) for value in result.x)
    rms = float(np.sqrt(np.mean((design @ result.x - y) ** 2)))
    return FitResult(slope, intercept, rms / span)


def fit_growth(
    pr: ComplexityProfile,
    dead_zone_ratio: float = DEAD_ZONE_RATIO,
    fit_ceiling: float = FIT_CEILING,
) -> GrowthVerdict:
    """
    Fit C = a*n + b and C = a*ln(n) + b with a >= 0 and classify the growth.

    Residuals are RMS errors divided by the range of C, so they are
    comparable across proxies. A flat profile is reported as logarithmic
    with the flat flag set.
    """
    if len(pr.points) < MIN_PROFILE_POINTS:
        raise ProfileTooShortError(
            f"Profile has {len(pr.points)} points, need at least {MIN_PROFILE_POINTS}"
        )
    n, c = pr.lengths, pr.values
    span = float(c.max() - c.min())
    if span == 0:
        level = float(c[0])
        flat_fit = FitResult(0.0, level, 0.0)
        verdict = GrowthVerdict(
            GrowthClass.LOGARITHMIC, flat_fit, flat_fit, 1.0, flat=True, decision="flat profile"
        )
        log_verdict(logger, f"{pr.proxy} growth", verdict.growth_class, "flat")
        return verdict

    linear = _bounded_fit(n, c, span)
    logarithmic = _bounded_fit(np.log(n), c, span)
    if logarithmic.residual == 0:
        ratio = math.inf if linear.residual > 0 else 1.0
    else:
        ratio = linear.residual / logarithmic.residual

    if linear.residual > fit_ceiling and logarithmic.residual > fit_ceiling:
        growth_class = GrowthClass.INCONCLUSIVE
        decision = f"both residuals exceed ceiling {fit_ceiling}"
    elif linear.residual < dead_zone_ratio * logarithmic.residual:
        growth_class = GrowthClass.LINEAR
        decision = f"linear residual < {dead_zone_ratio} x log residual"
    elif logarithmic.residual < dead_zone_ratio * linear.residual:
        growth_class = GrowthClass.LOGARITHMIC
        decision = f"log residual < {dead_zone_ratio} x linear residual"
    else:
        growth_class = GrowthClass.INCONCLUSIVE
        decision = "residual ratio inside dead zone"

    positive = c > 0
    power_exponent = None
    if positive.sum() >= 2:
        power_exponent = float(np.polyfit(np.log(n[positive]), np.log(c[positive]), 1)[0])
    log_base_estimate = math.exp(1 / logarithmic.slope) if logarithmic.slope > 1e-9 else None

    logger.debug(
        "Growth fits for %s: linear=%s log=%s gamma=%s", pr.proxy, linear, logarithmic, power_exponent
    )
    log_verdict(logger, f"{pr.proxy} growth", growth_class, f"ratio={ratio:.3g}")
    return GrowthVerdict(
        growth_class,
        linear,
        logarithmic,
        ratio,
        power_exponent=power_exponent,
        log_base_estimate=log_base_estimate,
        decision=decision,
    )


# -------------Separation experiment---------------


@dataclass(frozen=True)
class SeparationResult:
    confusion: dict[str, dict[str, int]]
    trials: int

    def accuracy(self, source: str) -> float:
        expected = GrowthClass.LINEAR if source == "iid" else GrowthClass.LOGARITHMIC
        return self.confusion[source][expected] / self.trials


def separation_depth(length: int, base: int = 2) -> int:
    """
    Shallowest realization depth whose sequences are at least `length` long.

    Minimal plan windows give N_K >= p + p^2 + ... + p^K, so the realization
    profile spans at least the range of a `length`-symbol fair-coin profile.
    """
    depth = MIN_SEPARATION_DEPTH
    while (base ** (depth + 1) - base) // (base - 1) < length:
        depth += 1
    if depth > MAX_REALIZATION_DEPTH:
        raise ValueError(f"No realization depth up to {MAX_REALIZATION_DEPTH} reaches length {length}")
    return depth


def _separation_replica(seed: int, length: int, depth: int, base: int) -> tuple[str, str]:
    rng = np.random.default_rng(seed)
    coin = EventSequence(rng.integers(0, 2, size=length, dtype=np.uint8))
    target = to_digits(int(rng.integers(1, base**depth)), base, depth)
    realized = generate(plan(target, depth))
    return (
        fit_growth(profile(coin)).growth_class,
        fit_growth(profile(realized)).growth_class,
    )


def run_separation(
    trials: int,
    seed: int,
    length: int = 2**16,
    depth: int | None = None,
    base: int = 2,
    workers: int = 1,
) -> SeparationResult:
    """
    Classify fair-coin and realization sequences side by side over seeded replicas.

    Without an explicit depth the realizations are made at least as long as
    the fair-coin sequences.
    """
    depth = depth or separation_depth(length, base)
    logger.info("Separation over %d trials: fair-coin length %d, realization depth %d", trials, length, depth)
    results = run_replicas(
        _separation_replica,
        seed,
        trials,
        workers=workers,
        description="separation",
        length=length,
        depth=depth,
        base=base,
    )
    confusion = {
        source: {str(growth): 0 for growth in GrowthClass} for source in ("iid", "realization")
    }
    for iid_class, realized_class in results:
        confusion["iid"][str(iid_class)] += 1
        confusion["realization"][str(realized_class)] += 1
    result = SeparationResult(confusion, trials)
    log_verdict(
        logger,
        "separation",
        f"iid={result.accuracy('iid'):.0%} realization={result.accuracy('realization'):.0%}",
    )
    return result
