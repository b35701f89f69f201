# In tests/test_complexity.py

import numpy as np
import pytest

from padiclab.lib.complexity import (
    Compressor,
    ComplexityProfile,
    GrowthClass,
    compressor_size,
    fit_growth,
    get_compressor,
    lz76,
    lz76_phrase_starts,
    normalized_lz76,
    profile,
    run_separation,
    schedule_lengths,
    separation_depth,
)
from padiclab.lib.exceptions import (
    InvalidCompressorError,
    ProfileTooShortError,
    SequenceFormatError,
)
from padiclab.lib.frequency import EventSequence
from padiclab.lib.padic_core import to_digits
from padiclab.lib.realization import generate, plan


@pytest.fixture
def realization_sequence() -> EventSequence:
    return generate(plan(to_digits(-1, 2, 12), 12))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0", 1),
        ("01", 2),
        ("0000000000", 2),
        ("0101010101", 3),
        ("0001101001000101", 6),
    ],
)
def test_lz76_known_values(text, expected):
    assert lz76(EventSequence.from_string(text)) == expected


def test_lz76_phrase_starts():
    assert lz76_phrase_starts(EventSequence.from_string("0001101001000101")) == [0, 1, 4, 6, 9, 13]


def test_lz76_rejects_empty_sequence():
    with pytest.raises(SequenceFormatError):
        lz76(EventSequence(np.zeros(0, dtype=np.uint8)))


def test_prefix_complexity_matches_phrase_starts(fair_coin):
    starts = lz76_phrase_starts(fair_coin)
    for n in (100, 1000, 5000):
        assert lz76(fair_coin.prefix(n)) == sum(1 for s in starts if s < n)


def test_normalized_lz76_of_fair_coin(fair_coin):
    assert 0.7 < normalized_lz76(fair_coin) < 1.3
    assert normalized_lz76(EventSequence.from_string("0" * 4096)) < 0.01


def test_compressor_size_orders_sequences(fair_coin):
    constant = EventSequence(np.zeros(len(fair_coin), dtype=np.uint8))
    for name in ("zlib", "bz2", "lzma"):
        assert compressor_size(constant, name) < compressor_size(fair_coin, name)


def test_unknown_and_lossy_compressors():
    with pytest.raises(InvalidCompressorError):
        get_compressor("snappy")
    lossy = Compressor("lossy-test", lambda data: data, lambda data: data[:-1])
    with pytest.raises(InvalidCompressorError):
        compressor_size(EventSequence.from_string("0101"), lossy)


def test_schedule_lengths():
    assert schedule_lengths(100, 2) == [2, 4, 8, 16, 32, 64]
    assert schedule_lengths(10, 1.5) == [2, 3, 4, 6, 8]
    with pytest.raises(ValueError):
        schedule_lengths(100, 1)


def test_profile_needs_enough_points():
    with pytest.raises(ProfileTooShortError):
        profile(EventSequence.from_string("01" * 10))


def test_profile_points(realization_sequence):
    pr = profile(realization_sequence)
    assert pr.proxy == "lz76"
    assert [n for n, _ in pr.points] == [2**i for i in range(1, 13)]
    values = [c for _, c in pr.points]
    assert values == sorted(values)


def test_compressor_profile(fair_coin):
    pr = profile(fair_coin, proxy="zlib")
    assert pr.proxy == "zlib"
    assert len(pr.points) == 14


def test_fair_coin_grows_linearly(fair_coin):
    verdict = fit_growth(profile(fair_coin))
    assert verdict.growth_class is GrowthClass.LINEAR
    assert verdict.power_exponent is not None and verdict.power_exponent > 0.7


def test_realization_grows_logarithmically(realization_sequence):
    verdict = fit_growth(profile(realization_sequence))
    assert verdict.growth_class is GrowthClass.LOGARITHMIC
    assert verdict.log_fit.residual < verdict.linear_fit.residual


def test_exact_linear_profile():
    pr = ComplexityProfile("test", tuple((2**i, 2**i) for i in range(1, 9)))
    verdict = fit_growth(pr)
    assert verdict.growth_class is GrowthClass.LINEAR
    assert verdict.linear_fit.slope == pytest.approx(1.0)


def test_exact_logarithmic_profile_reports_base():
    pr = ComplexityProfile("test", tuple((2**i, 3 * i) for i in range(1, 9)))
    verdict = fit_growth(pr)
    assert verdict.growth_class is GrowthClass.LOGARITHMIC
    assert verdict.log_base_estimate == pytest.approx(2 ** (1 / 3))


def test_flat_profile_is_logarithmic_and_flagged():
    pr = ComplexityProfile("test", tuple((2**i, 4) for i in range(1, 7)))
    verdict = fit_growth(pr)
    assert verdict.growth_class is GrowthClass.LOGARITHMIC
    assert verdict.flat
    assert verdict.to_dict()["class"] == "Logarithmic"


def test_noisy_profile_is_inconclusive():
    values = [5, 1, 9, 2, 8, 1, 7, 3]
    pr = ComplexityProfile("test", tuple((2**i, c) for i, c in enumerate(values, start=1)))
    assert fit_growth(pr).growth_class is GrowthClass.INCONCLUSIVE


def test_fit_growth_needs_five_points():
    pr = ComplexityProfile("test", ((2, 1), (4, 2), (8, 3), (16, 4)))
    with pytest.raises(ProfileTooShortError):
        fit_growth(pr)


def test_profile_lengths_must_increase():
    with pytest.raises(ValueError):
        ComplexityProfile("test", ((4, 1), (2, 2)))


def test_separation_confusion_matrix_shape():
    result = run_separation(trials=2, seed=5, length=2**12, depth=10)
    assert set(result.confusion) == {"iid", "realization"}
    for row in result.confusion.values():
        assert sum(row.values()) == 2
        assert set(row) == {str(growth) for growth in GrowthClass}


@pytest.mark.parametrize(
    "length, base, depth",
    [(2**12, 2, 12), (2**16, 2, 16), (2**17 - 2, 2, 16), (2**17 - 1, 2, 17), (3**14, 3, 14)],
)
def test_separation_depth_reaches_fair_coin_length(length, base, depth):
    assert separation_depth(length, base) == depth
    assert plan(to_digits(-1, base, depth), depth).length >= length


@pytest.mark.slow
def test_separation_accuracy():
    result = run_separation(trials=30, seed=0)
    assert result.accuracy("iid") >= 0.95
    assert result.accuracy("realization") >= 0.95
    assert sum(result.confusion["iid"].values()) == 30
