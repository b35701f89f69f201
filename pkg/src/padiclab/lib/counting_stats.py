# In src/padiclab/lib/counting_stats.py
"""Counting statistics: Poisson dispersion test and chi-square comparisons."""

from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from scipy import stats

from padiclab.config import ALPHA
from padiclab.lib.constants import MIN_DISPERSION_WINDOWS
from padiclab.lib.exceptions import StatisticsError
from padiclab.lib.logging_config import get_logger, log_verdict

logger = get_logger(__name__)


class DispersionVerdict(StrEnum):
    ACCEPT = "accept"
    REJECT_OVER = "reject-over-dispersed"
    REJECT_UNDER = "reject-under-dispersed"


@dataclass(frozen=True)
class TestReport:
    __test__ = False

    windows: int
    mean: float
    dispersion: float
    statistic: float
    p_value: float
    verdict: DispersionVerdict

    @property
    def accepted(self) -> bool:
        return self.verdict is DispersionVerdict.ACCEPT

    def to_dict(self) -> dict:
        return {
            "windows": self.windows,
            "mean": self.mean,
            "dispersion": self.dispersion,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "verdict": str(self.verdict),
        }


def poisson_dispersion_test(counts: list[int] | np.ndarray, alpha: float = ALPHA) -> TestReport:
    """
    Index-of-dispersion test of window counts against a Poisson process.

    D = sample variance / sample mean; (n - 1) * D is chi-square with n - 1
    degrees of freedom under the null, tested two-sided at level alpha.
    """
    return stratified_dispersion_test([counts], alpha)


def stratified_dispersion_test(
    groups: list[list[int] | np.ndarray], alpha: float = ALPHA
) -> TestReport:
    """
    Dispersion test over groups of windows with possibly different Poisson rates.

    Each group contributes (n_i - 1) * D_i on n_i - 1 degrees of freedom, and
    the sums are tested two-sided at level alpha. Groups with fewer than two
    windows or no counts carry no dispersion information and are skipped.
    """
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    arrays = [np.asarray(group, dtype=float) for group in groups]
    windows = sum(values.size for values in arrays)
    if windows < MIN_DISPERSION_WINDOWS:
        raise StatisticsError(
            f"Dispersion test needs at least {MIN_DISPERSION_WINDOWS} windows, got {windows}"
        )
    if any((values < 0).any() for values in arrays):
        raise StatisticsError("Counts must be nonnegative")
    total = float(sum(values.sum() for values in arrays))
    if total == 0:
        raise StatisticsError("Dispersion is undefined for all-zero counts")

    statistic = 0.0
    dof = 0
    for index, values in enumerate(arrays):
        if values.size < 2 or values.sum() == 0:
            logger.debug("Skipping window group %d (%d windows)", index, values.size)
            continue
        statistic += (values.size - 1) * float(values.var(ddof=1)) / float(values.mean())
        dof += values.size - 1
    if dof == 0:
        raise StatisticsError("No window group has two or more windows with counts")
    dispersion = statistic / dof
    lower = float(stats.chi2.cdf(statistic, dof))
    upper = float(stats.chi2.sf(statistic, dof))
    p_value = min(1.0, 2 * min(lower, upper))
    if p_value >= alpha:
        verdict = DispersionVerdict.ACCEPT
    elif upper < lower:
        verdict = DispersionVerdict.REJECT_OVER
    else:
        verdict = DispersionVerdict.REJECT_UNDER

    log_verdict(
        logger, "Poisson dispersion", verdict, f"D={dispersion:.4f}, p={p_value:.3g}, groups={len(arrays)}"
    )
    return TestReport(windows, total / windows, dispersion, statistic, p_value, verdict)


def inject_bursts(
    counts: list[int] | np.ndarray, fraction: float, rng: np.random.Generator
) -> np.ndarray:
    """Duplicate the counts of a random `fraction` of windows (burst contamination)."""
    if not 0 <= fraction <= 1:
        raise ValueError(f"fraction must be in [0, 1], got {fraction}")
    contaminated = np.asarray(counts, dtype=np.int64).copy()
    chosen = rng.random(contaminated.size) < fraction
    contaminated[chosen] *= 2
    return contaminated


def _expected_counts(observed: np.ndarray, probabilities: np.ndarray) -> np.ndarray:
    if observed.shape != probabilities.shape:
        raise ValueError("Observed counts and probabilities must have the same shape")
    return probabilities / probabilities.sum() * observed.sum()


def chi_square_gof(counts: np.ndarray, probabilities: np.ndarray) -> float:
    """
    p-value of observed bin counts against a distribution.

    Bins with vanishing expectation are dropped (any count there gives p = 0);
    bins expecting fewer than 5 detections are pooled into one cell.
    """
    observed = np.asarray(counts, dtype=float)
    expected = _expected_counts(observed, np.asarray(probabilities, dtype=float))
    empty = expected < 1e-9 * max(observed.sum(), 1)
    if observed[empty].sum() > 0:
        return 0.0
    observed, expected = observed[~empty], expected[~empty]
    expected *= observed.sum() / expected.sum()
    sparse = expected < 5
    if sparse.any():
        observed = np.append(observed[~sparse], observed[sparse].sum())
        expected = np.append(expected[~sparse], expected[sparse].sum())
    if observed.size < 2:
        return 1.0
    return float(stats.chisquare(observed, expected).pvalue)


def two_sample_chi_square(first: np.ndarray, second: np.ndarray) -> float:
    """p-value that two histograms come from the same distribution."""
    table = np.vstack([np.asarray(first), np.asarray(second)])
    table = table[:, table.sum(axis=0) > 0]
    if table.shape[1] < 2:
        return 1.0
    return float(stats.chi2_contingency(table).pvalue)
