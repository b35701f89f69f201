# In tests/test_realization.py

from fractions import Fraction

import numpy as np
import pytest

from padiclab.lib.exceptions import PrecisionInsufficientError
from padiclab.lib.frequency import EventSequence, trace
from padiclab.lib.padic_core import distance, imaginary_unit, to_digits
from padiclab.lib.realization import (
    CheckpointPlan,
    FillMode,
    FillPolicy,
    PlanRow,
    generate,
    plan,
    realize,
    verify,
    verify_plan,
)

TARGETS = [
    (2, Fraction(-1)),
    (2, Fraction(1, 3)),
    (3, Fraction(5, 3)),
    (5, Fraction(2, 7)),
    (7, Fraction(-3, 49)),
    (3, Fraction(9, 4)),
]


def test_plan_rows_for_minus_one():
    checkpoint_plan = plan(to_digits(-1, 2, 3), 3)
    assert [(row.k, row.N, row.n) for row in checkpoint_plan.rows] == [(1, 3, 1), (2, 7, 5), (3, 15, 9)]
    assert [row.bound for row in checkpoint_plan.rows] == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]
    assert checkpoint_plan.length == 15


def test_minus_one_follows_closed_form():
    checkpoint_plan = plan(to_digits(-1, 2, 12), 12)
    for row in checkpoint_plan.rows[1:]:
        assert row.N == 2 ** (row.k + 1) - 1
        assert row.n == 2**row.k + 1


@pytest.mark.parametrize("p, q", TARGETS)
def test_plan_meets_every_row_bound(p, q):
    depth = 6
    checkpoint_plan = plan(to_digits(q, p, depth + 2), depth)
    report = verify_plan(checkpoint_plan)
    assert report.passed
    for row in checkpoint_plan.rows:
        assert distance(Fraction(row.n, row.N), q, p) <= Fraction(1, p**row.k)


@pytest.mark.parametrize("p, q", TARGETS)
def test_plan_windows_are_large_enough(p, q):
    target = to_digits(q, p, 8)
    shift = max(0, -target.valuation)
    checkpoint_plan = plan(target, 6)
    previous_N = 0
    for row in checkpoint_plan.rows:
        assert row.N - previous_N >= p ** (row.k + shift)
        assert row.N % p**shift == 0
        assert (row.N // p**shift) % p != 0
        previous_N = row.N


@pytest.mark.parametrize("mode", list(FillMode))
def test_generate_hits_planned_counts(mode):
    checkpoint_plan = plan(to_digits(Fraction(2, 7), 5, 5), 4)
    seq = generate(checkpoint_plan, FillPolicy(mode, seed=11))
    assert len(seq) == checkpoint_plan.length
    tr = trace(seq, checkpoint_plan.checkpoints)
    assert tr.ones == tuple(row.n for row in checkpoint_plan.rows)


def test_fill_modes_only_reorder_windows():
    checkpoint_plan = plan(to_digits(-1, 3, 5), 4)
    block = generate(checkpoint_plan, FillPolicy(FillMode.BLOCK))
    spread = generate(checkpoint_plan, FillPolicy(FillMode.SPREAD))
    assert block != spread
    assert block.ones == spread.ones


def test_shuffle_needs_seed_and_is_reproducible():
    with pytest.raises(ValueError):
        FillPolicy(FillMode.SHUFFLE)
    checkpoint_plan = plan(to_digits(Fraction(1, 3), 2, 8), 8)
    first = generate(checkpoint_plan, FillPolicy(FillMode.SHUFFLE, seed=3))
    second = generate(checkpoint_plan, FillPolicy(FillMode.SHUFFLE, seed=3))
    other = generate(checkpoint_plan, FillPolicy(FillMode.SHUFFLE, seed=4))
    assert first == second
    assert first != other


def test_spread_fill_is_balanced():
    checkpoint_plan = plan(to_digits(-1, 2, 6), 6)
    seq = generate(checkpoint_plan, FillPolicy(FillMode.SPREAD))
    last = checkpoint_plan.rows[-1]
    previous = checkpoint_plan.rows[-2]
    window = seq.labels[previous.N : last.N]
    # Ones land on evenly spaced positions, so no run of ones longer than one
    assert not np.any(window[1:] & window[:-1])


def test_imaginary_unit_realization():
    result = realize(imaginary_unit(5, 4), 4)
    assert result.report.passed
    assert len(result.sequence) == result.plan.length


def test_growth_factor_lengthens_windows():
    target = to_digits(-1, 2, 6)
    minimal = plan(target, 6)
    grown = plan(target, 6, growth_factor=2.0)
    assert grown.length > minimal.length
    assert verify_plan(grown).passed


def test_plan_rejects_short_targets():
    with pytest.raises(PrecisionInsufficientError):
        plan(to_digits(-1, 2, 4), 6)
    # 5/3 in Q_3 needs one extra digit for the negative valuation
    with pytest.raises(PrecisionInsufficientError):
        plan(to_digits(Fraction(5, 3), 3, 4), 4)


@pytest.mark.parametrize("depth", [0, 65])
def test_plan_rejects_depth_out_of_range(depth):
    with pytest.raises(ValueError):
        plan(to_digits(-1, 2, 70), depth)


def test_verify_detects_tampering():
    checkpoint_plan = plan(to_digits(-1, 2, 4), 4)
    labels = generate(checkpoint_plan).labels.copy()
    assert labels[0] == 1
    labels[0] = 0
    report = verify(EventSequence(labels), checkpoint_plan.target, 4, checkpoint_plan.rows)
    assert not report.passed
    assert report.failures == [1, 2, 3, 4]


def test_verify_accepts_checkpoint_tuples():
    checkpoint_plan = plan(to_digits(-1, 2, 4), 4)
    seq = generate(checkpoint_plan)
    rows = [(row.N, row.n) for row in checkpoint_plan.rows]
    assert verify(seq, checkpoint_plan.target, 4, rows).passed
    with pytest.raises(ValueError):
        verify(seq.prefix(10), checkpoint_plan.target, 4, rows)
    with pytest.raises(ValueError):
        verify(seq, checkpoint_plan.target, 5, rows)


def test_plan_rows_reject_impossible_windows():
    target = to_digits(-1, 2, 4)
    with pytest.raises(ValueError):
        CheckpointPlan(target.base, target, 2, (PlanRow(1, 3, 1, Fraction(1, 2)), PlanRow(2, 4, 4, Fraction(1, 4))))


SWEEP_TARGETS = [Fraction(-1), Fraction(2), Fraction(100), Fraction(5, 3)]
SWEEP_DEPTHS = range(1, 13)
GENERATED_LENGTH_LIMIT = 2**20


def _check_sweep_plan(checkpoint_plan: CheckpointPlan) -> None:
    assert verify_plan(checkpoint_plan).passed
    target = checkpoint_plan.target
    for row in checkpoint_plan.rows:
        assert distance(Fraction(row.n, row.N), target.to_rational(), target.p) <= Fraction(1, target.p**row.k)
    if checkpoint_plan.length <= GENERATED_LENGTH_LIMIT:
        report = verify(generate(checkpoint_plan), target, checkpoint_plan.depth, checkpoint_plan.rows)
        assert report.passed, report.failures


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("q", SWEEP_TARGETS, ids=str)
def test_realization_sweep(p, q):
    shift = max(0, -to_digits(q, p, 1).valuation)
    for depth in SWEEP_DEPTHS:
        _check_sweep_plan(plan(to_digits(q, p, depth + shift), depth))


@pytest.mark.parametrize("p", [5, 13])
def test_realization_sweep_square_root_of_minus_one(p):
    for depth in SWEEP_DEPTHS:
        unit = imaginary_unit(p, depth)
        assert (unit * unit + to_digits(1, p, depth)).is_zero
        _check_sweep_plan(plan(unit, depth))
