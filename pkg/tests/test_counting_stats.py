# In tests/test_counting_stats.py

import numpy as np
import pytest

from padiclab.lib.counting_stats import (
    DispersionVerdict,
    chi_square_gof,
    inject_bursts,
    poisson_dispersion_test,
    stratified_dispersion_test,
    two_sample_chi_square,
)
from padiclab.lib.exceptions import StatisticsError


def test_poisson_like_counts_are_accepted():
    report = poisson_dispersion_test([7, 13] * 10)
    assert report.windows == 20
    assert report.mean == pytest.approx(10.0)
    assert report.dispersion == pytest.approx(180 / 19 / 10)
    assert report.statistic == pytest.approx(18.0)
    assert report.verdict is DispersionVerdict.ACCEPT
    assert report.accepted


def test_constant_counts_are_under_dispersed():
    report = poisson_dispersion_test([10] * 30)
    assert report.dispersion == 0.0
    assert report.verdict is DispersionVerdict.REJECT_UNDER


def test_bursty_counts_are_over_dispersed():
    report = poisson_dispersion_test([0, 20] * 15)
    assert report.dispersion > 10
    assert report.verdict is DispersionVerdict.REJECT_OVER
    assert report.to_dict()["verdict"] == "reject-over-dispersed"


@pytest.mark.parametrize(
    "counts, error",
    [
        ([1] * 19, StatisticsError),
        ([0] * 40, StatisticsError),
        ([-1] + [3] * 30, StatisticsError),
    ],
)
def test_dispersion_test_rejects_degenerate_data(counts, error):
    with pytest.raises(error):
        poisson_dispersion_test(counts)


def test_dispersion_test_checks_alpha():
    with pytest.raises(ValueError):
        poisson_dispersion_test([7, 13] * 10, alpha=1.5)


def test_stratified_test_separates_rate_changes():
    slow, fast = [7, 13] * 10, [90, 110] * 10
    report = stratified_dispersion_test([slow, fast])
    assert report.windows == 40
    assert report.mean == pytest.approx(55.0)
    assert report.statistic == pytest.approx(38.0)
    assert report.dispersion == pytest.approx(1.0)
    assert report.accepted
    assert poisson_dispersion_test(slow + fast).verdict is DispersionVerdict.REJECT_OVER


def test_stratified_test_matches_single_group():
    counts = [3, 9, 4, 6, 5, 8, 2, 7, 6, 5] * 3
    assert stratified_dispersion_test([counts]) == poisson_dispersion_test(counts)


def test_stratified_test_skips_uninformative_groups():
    report = stratified_dispersion_test([[7, 13] * 10, [5], [0, 0, 0]])
    assert report.windows == 24
    assert report.statistic == pytest.approx(18.0)
    assert report.dispersion == pytest.approx(18 / 19)
    with pytest.raises(StatisticsError):
        stratified_dispersion_test([[4]] * 25)


def test_inject_bursts():
    rng = np.random.default_rng(0)
    counts = np.arange(1, 101)
    assert (inject_bursts(counts, 0.0, rng) == counts).all()
    assert (inject_bursts(counts, 1.0, rng) == 2 * counts).all()
    contaminated = inject_bursts(counts, 0.5, rng)
    assert ((contaminated == counts) | (contaminated == 2 * counts)).all()
    with pytest.raises(ValueError):
        inject_bursts(counts, 1.2, rng)


def test_chi_square_gof():
    assert chi_square_gof(np.array([25, 25, 25, 25]), np.full(4, 0.25)) == pytest.approx(1.0)
    assert chi_square_gof(np.array([100, 0, 0, 0]), np.full(4, 0.25)) < 1e-10
    assert chi_square_gof(np.array([10, 10, 1]), np.array([0.5, 0.5, 0.0])) == 0.0
    # Bins expecting fewer than five detections are pooled
    assert chi_square_gof(np.array([50, 50, 1, 1]), np.array([0.49, 0.49, 0.01, 0.01])) > 0.5
    with pytest.raises(ValueError):
        chi_square_gof(np.array([1, 2]), np.array([0.5, 0.25, 0.25]))


def test_two_sample_chi_square():
    assert two_sample_chi_square(np.array([10, 20, 30, 0]), np.array([10, 20, 30, 0])) == pytest.approx(1.0)
    assert two_sample_chi_square(np.array([100, 0, 50]), np.array([0, 100, 50])) < 1e-10


@pytest.mark.slow
def test_acceptance_rate_on_true_poisson_counts():
    rng = np.random.default_rng(2024)
    accepted = [poisson_dispersion_test(rng.poisson(10, size=1000), 0.01).accepted for _ in range(200)]
    assert abs(np.mean(accepted) - 0.99) <= 0.015


@pytest.mark.slow
def test_burst_contamination_is_detected():
    rng = np.random.default_rng(7)
    detected = [
        not poisson_dispersion_test(inject_bursts(rng.poisson(10, size=10_000), 0.02, rng), 0.01).accepted
        for _ in range(50)
    ]
    assert np.mean(detected) >= 0.5
