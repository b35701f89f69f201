# In src/padiclab/lib/interference_model.py
"""
Far-field point-slit intensities on a binned screen, and fringe metrics.

The phasor of slit j at screen position Y is exp(i 2 pi y_j Y / (lambda L)).
The quantum pattern is |sum of phasors|^2, the classical pattern drops the
cross terms and is flat for point slits.
"""

from collections.abc import Iterable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from padiclab.config import CENTRAL_FRACTION, SMOOTHING_WINDOW
from padiclab.lib.constants import NORMALIZATION_TOLERANCE
from padiclab.lib.exceptions import EmptyHistogramError
from padiclab.lib.models import ApparatusConfig


@dataclass(frozen=True, eq=False)
class Histogram:
    """Detection counts per screen bin for one group of trials."""

    counts: np.ndarray
    key: str = "all"

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64).copy()
        if counts.ndim != 1 or (counts < 0).any():
            raise ValueError("Histogram counts must be a 1-D array of nonnegative integers")
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def bins(self) -> int:
        return int(self.counts.size)


def bin_centers(cfg: ApparatusConfig) -> np.ndarray:
    width = 2 * cfg.screen_half_width / cfg.screen_bins
    return -cfg.screen_half_width + (np.arange(cfg.screen_bins) + 0.5) * width


def _open_tuple(cfg: ApparatusConfig, open_slits: Iterable[int]) -> tuple[int, ...]:
    slits = tuple(sorted(set(open_slits)))
    if not slits:
        raise ValueError("At least one slit must be open")
    if slits[0] < 0 or slits[-1] >= cfg.slit_count:
        raise ValueError(f"Slit indices {slits} outside 0..{cfg.slit_count - 1}")
    return slits


def phasors(cfg: ApparatusConfig, open_slits: Iterable[int]) -> np.ndarray:
    """Complex amplitudes, one row per open slit, one column per bin."""
    slits = _open_tuple(cfg, open_slits)
    y = np.asarray([cfg.slit_positions[j] for j in slits])[:, None]
    phase = 2 * np.pi * y * bin_centers(cfg)[None, :] / (cfg.wavelength * cfg.screen_distance)
    return np.exp(1j * phase)


@lru_cache(maxsize=4096)
def _raw_patterns(cfg: ApparatusConfig, slits: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    amplitudes = phasors(cfg, slits)
    quantum = np.abs(amplitudes.sum(axis=0)) ** 2
    classical = (np.abs(amplitudes) ** 2).sum(axis=0)
    quantum.flags.writeable = False
    classical.flags.writeable = False
    return quantum, classical


def _normalize(values: np.ndarray) -> np.ndarray:
    total = float(values.sum())
    if not total > 0:
        raise ValueError("Cannot normalize a pattern with no intensity")
    distribution = values / total
    if abs(distribution.sum() - 1) >= NORMALIZATION_TOLERANCE * distribution.size:
        raise ValueError(f"Pattern sums to {distribution.sum()} after normalization")
    return distribution


def intensity(
    cfg: ApparatusConfig, open_slits: Iterable[int], bin_index: int, normalized: bool = False
) -> float:
    """|sum_j phasor_j|^2 at the center of `bin_index`."""
    quantum = quantum_distribution(cfg, open_slits) if normalized else _raw_patterns(
        cfg, _open_tuple(cfg, open_slits)
    )[0]
    return float(quantum[bin_index])


def classical_intensity(
    cfg: ApparatusConfig, open_slits: Iterable[int], bin_index: int, normalized: bool = False
) -> float:
    """sum_j |phasor_j|^2 at the center of `bin_index` (no cross terms)."""
    classical = classical_distribution(cfg, open_slits) if normalized else _raw_patterns(
        cfg, _open_tuple(cfg, open_slits)
    )[1]
    return float(classical[bin_index])


def quantum_distribution(cfg: ApparatusConfig, open_slits: Iterable[int]) -> np.ndarray:
    return _normalize(_raw_patterns(cfg, _open_tuple(cfg, open_slits))[0])


def classical_distribution(cfg: ApparatusConfig, open_slits: Iterable[int]) -> np.ndarray:
    return _normalize(_raw_patterns(cfg, _open_tuple(cfg, open_slits))[1])


def mixture_distribution(
    cfg: ApparatusConfig, open_slits: Iterable[int], coherence: float
) -> np.ndarray:
    """(1 - c) * classical + c * quantum, both normalized."""
    if not 0 <= coherence <= 1:
        raise ValueError(f"coherence must be in [0, 1], got {coherence}")
    slits = _open_tuple(cfg, open_slits)
    return (1 - coherence) * classical_distribution(cfg, slits) + coherence * quantum_distribution(
        cfg, slits
    )


def interference_term(cfg: ApparatusConfig, open_slits: Iterable[int]) -> np.ndarray:
    """Signed per-bin difference quantum - classical of the normalized patterns."""
    slits = _open_tuple(cfg, open_slits)
    return quantum_distribution(cfg, slits) - classical_distribution(cfg, slits)


def cross_term(cfg: ApparatusConfig, open_slits: Iterable[int]) -> np.ndarray:
    """Unnormalized cross term |sum|^2 - sum |.|^2 per bin."""
    quantum, classical = _raw_patterns(cfg, _open_tuple(cfg, open_slits))
    return quantum - classical


# -------------Fringe metrics---------------


def _central_slice(bins: int, central_fraction: float) -> slice:
    width = min(bins, max(3, round(bins * central_fraction)))
    start = (bins - width) // 2
    return slice(start, start + width)


def visibility(
    h: Histogram,
    smoothing_window: int = SMOOTHING_WINDOW,
    central_fraction: float = CENTRAL_FRACTION,
) -> float:
    """(I_max - I_min) / (I_max + I_min) over the smoothed central bins."""
    if smoothing_window < 1 or smoothing_window % 2 == 0:
        raise ValueError(f"smoothing_window must be an odd positive integer, got {smoothing_window}")
    if h.total == 0:
        raise EmptyHistogramError(f"Histogram {h.key!r} has no counts")
    counts = h.counts.astype(float)
    if smoothing_window > 1:
        counts = np.convolve(counts, np.ones(smoothing_window) / smoothing_window, mode="same")
    central = counts[_central_slice(h.bins, central_fraction)]
    high, low = central.max(), central.min()
    if high + low == 0:
        return 0.0
    return float((high - low) / (high + low))


def analytic_histogram(cfg: ApparatusConfig, open_slits: Iterable[int], total: int) -> Histogram:
    """Expected counts of `total` detections from the quantum pattern, rounded."""
    return Histogram(np.rint(quantum_distribution(cfg, open_slits) * total), key="analytic")


def coherence_estimate(h: Histogram, cfg: ApparatusConfig, open_slits: Iterable[int]) -> float | None:
    """
    Unbiased estimate of the quantum mixture weight c from detections.

    With g the cross term per bin, E[g] = (1 - c) E_classical[g] + c E_quantum[g],
    so c = (mean g - E_classical[g]) / (E_quantum[g] - E_classical[g]). Returns
    None when the configuration has no cross term to measure against.
    """
    if h.total == 0:
        raise EmptyHistogramError(f"Histogram {h.key!r} has no counts")
    slits = _open_tuple(cfg, open_slits)
    g = cross_term(cfg, slits)
    expected_quantum = float(quantum_distribution(cfg, slits) @ g)
    expected_classical = float(classical_distribution(cfg, slits) @ g)
    contrast = expected_quantum - expected_classical
    if abs(contrast) < 1e-9:
        return None
    observed = float(h.counts @ g) / h.total
    return (observed - expected_classical) / contrast
