# In tests/test_interference_model.py

import numpy as np
import pytest

from padiclab.lib.exceptions import EmptyHistogramError
from padiclab.lib.interference_model import (
    Histogram,
    _normalize,
    analytic_histogram,
    bin_centers,
    classical_distribution,
    classical_intensity,
    coherence_estimate,
    interference_term,
    intensity,
    mixture_distribution,
    phasors,
    quantum_distribution,
    visibility,
)
from padiclab.lib.models import ApparatusConfig

CENTER = 20  # Middle bin of the default 41-bin screen
FIRST_DARK = 25  # Y = lambda L / (2 d): first interference minimum


def test_bin_centers_are_symmetric(two_slit):
    centers = bin_centers(two_slit)
    assert centers.size == 41
    assert centers[CENTER] == pytest.approx(0.0, abs=1e-15)
    np.testing.assert_allclose(centers, -centers[::-1], atol=1e-15)


def test_phasors_have_unit_modulus(two_slit):
    amplitudes = phasors(two_slit, (0, 1))
    assert amplitudes.shape == (2, 41)
    np.testing.assert_allclose(np.abs(amplitudes), 1.0)


def test_raw_intensities(two_slit):
    assert intensity(two_slit, (0, 1), CENTER) == pytest.approx(4.0)
    assert intensity(two_slit, (0, 1), FIRST_DARK) == pytest.approx(0.0, abs=1e-12)
    assert classical_intensity(two_slit, (0, 1), FIRST_DARK) == pytest.approx(2.0)
    assert classical_intensity(two_slit, (0, 1), CENTER, normalized=True) == pytest.approx(1 / 41)


def test_distributions_are_normalized(two_slit):
    for distribution in (quantum_distribution(two_slit, (0, 1)), classical_distribution(two_slit, (0, 1))):
        assert distribution.sum() == pytest.approx(1.0)
        assert (distribution >= 0).all()
    np.testing.assert_allclose(classical_distribution(two_slit, (0, 1)), 1 / 41)


def test_single_slit_has_no_interference(two_slit):
    np.testing.assert_allclose(quantum_distribution(two_slit, (1,)), classical_distribution(two_slit, (1,)))
    np.testing.assert_allclose(interference_term(two_slit, (0,)), 0.0, atol=1e-15)


def test_interference_term_redistributes(two_slit):
    term = interference_term(two_slit, (0, 1))
    assert term.sum() == pytest.approx(0.0, abs=1e-12)
    assert term[CENTER] > 0 > term[FIRST_DARK]


def test_mixture_endpoints(two_slit):
    np.testing.assert_allclose(mixture_distribution(two_slit, (0, 1), 0.0), classical_distribution(two_slit, (0, 1)))
    np.testing.assert_allclose(mixture_distribution(two_slit, (0, 1), 1.0), quantum_distribution(two_slit, (0, 1)))
    assert mixture_distribution(two_slit, (0, 1), 0.3).sum() == pytest.approx(1.0)
    with pytest.raises(ValueError):
        mixture_distribution(two_slit, (0, 1), 1.5)


@pytest.mark.parametrize("open_slits", [(), (2,), (-1, 0)])
def test_open_slits_are_checked(two_slit, open_slits):
    with pytest.raises(ValueError):
        quantum_distribution(two_slit, open_slits)


def test_uniform_apparatus():
    cfg = ApparatusConfig.uniform(4)
    np.testing.assert_allclose(cfg.slit_positions, (-1.5e-4, -0.5e-4, 0.5e-4, 1.5e-4))
    assert quantum_distribution(cfg, range(4)).sum() == pytest.approx(1.0)


def test_visibility_of_simple_fringes():
    h = Histogram(np.array([1, 3] * 4))
    assert visibility(h) == pytest.approx(0.5)
    assert visibility(h, smoothing_window=3) < 0.5


def test_visibility_of_analytic_patterns(two_slit):
    assert visibility(analytic_histogram(two_slit, (0, 1), 100_000)) == pytest.approx(1.0)
    flat = Histogram(np.rint(classical_distribution(two_slit, (0, 1)) * 41_000))
    assert visibility(flat) == pytest.approx(0.0)


def test_visibility_rejects_bad_input():
    with pytest.raises(EmptyHistogramError):
        visibility(Histogram(np.zeros(10, dtype=int)))
    with pytest.raises(ValueError):
        visibility(Histogram(np.ones(10, dtype=int)), smoothing_window=2)


def test_histogram_validation():
    with pytest.raises(ValueError):
        Histogram(np.array([1, -1, 2]))
    h = Histogram(np.array([1, 2, 3]), key="0-1")
    assert (h.total, h.bins, h.key) == (6, 3, "0-1")


def test_coherence_estimate_recovers_mixture_weight(two_slit):
    quantum = analytic_histogram(two_slit, (0, 1), 100_000)
    assert coherence_estimate(quantum, two_slit, (0, 1)) == pytest.approx(1.0, abs=0.01)
    flat = Histogram(np.rint(classical_distribution(two_slit, (0, 1)) * 41_000))
    assert coherence_estimate(flat, two_slit, (0, 1)) == pytest.approx(0.0, abs=1e-9)
    half = Histogram(np.rint(mixture_distribution(two_slit, (0, 1), 0.5) * 100_000))
    assert coherence_estimate(half, two_slit, (0, 1)) == pytest.approx(0.5, abs=0.01)


def test_coherence_estimate_without_cross_term(two_slit):
    h = Histogram(np.ones(41, dtype=int))
    assert coherence_estimate(h, two_slit, (0,)) is None


def test_normalize_rejects_patterns_without_intensity():
    assert _normalize(np.array([1.0, 3.0])).tolist() == [0.25, 0.75]
    with pytest.raises(ValueError, match="no intensity"):
        _normalize(np.zeros(5))
