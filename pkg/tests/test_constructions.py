from fractions import Fraction

import pytest

from caplab.cantor import clopen_from_strings, is_subset
from caplab.capacity import capacity_bruteforce, capacity_clopen
from caplab.constructions import (
    build_measure_zero_positive_capacity,
    build_usc_capacity,
    capacity_sparse,
    sparse_to_clopen,
    thm6_targets,
)
from caplab.errors import (
    DegenerateWeightsError,
    InvalidSpecError,
    NonMonotoneTargetsError,
)
from caplab.measure import MeasureSpec, lebesgue

U13 = MeasureSpec.uniform(Fraction(1, 3), Fraction(1, 3))
b = Fraction(1, 3)


def test_sparse_to_clopen():
    q = sparse_to_clopen((0,))
    assert q.leaves == ("0",)
    q = sparse_to_clopen((1,))
    assert sorted(q.leaves) == ["00", "10"]
    assert sparse_to_clopen(()).is_full
    with pytest.raises(ValueError):
        sparse_to_clopen((2, 1))


def test_capacity_sparse_prefix_run():
    # constraints at 0..k force a single depth-(k+1) branch through zeros
    for k in range(4):
        assert capacity_sparse(b, tuple(range(k + 1))) == (1 - b) ** (k + 1)


def test_capacity_sparse_matches_bruteforce():
    for indices in ((0,), (1,), (2,), (0, 2), (1, 3), (0, 1, 3)):
        q = sparse_to_clopen(indices)
        assert capacity_sparse(b, indices) == capacity_bruteforce(U13, q, q.depth)


def test_capacity_sparse_frozen_value():
    assert capacity_sparse(b, (2,)) == Fraction(1760, 2187)


def test_capacity_sparse_domain():
    with pytest.raises(InvalidSpecError):
        capacity_sparse(Fraction(1, 2), (0,))


def test_thm6_targets():
    assert thm6_targets(0) == Fraction(3, 4)
    assert thm6_targets(1) == Fraction(5, 8)
    assert [thm6_targets(k) for k in range(3)] == sorted(
        (thm6_targets(k) for k in range(3)), reverse=True
    )


def test_build_measure_zero_positive_capacity():
    result = build_measure_zero_positive_capacity(b, 3)
    assert result.indices[0] == 2
    assert len(result.indices) == 4
    assert all(x < y for x, y in zip(result.indices, result.indices[1:]))
    for k, cap in enumerate(result.capacities):
        assert cap >= thm6_targets(k)
    assert result.lebesgue == Fraction(1, 16)
    assert lebesgue(sparse_to_clopen(result.indices)) == result.lebesgue


def test_usc_two_stage():
    trace = build_usc_capacity(b, b, [Fraction(1), Fraction(1, 2)])
    assert trace.stages[0].clopen.is_full
    stage = trace.stages[1]
    assert Fraction(1, 2) <= stage.capacity <= 1
    assert capacity_clopen(U13, stage.clopen) == stage.capacity
    assert stage.max_step <= stage.step_bound


def test_usc_nested_and_sandwiched():
    targets = [Fraction(1), Fraction(3, 4), Fraction(5, 8), Fraction(9, 16)]
    trace = build_usc_capacity(b, b, targets)
    for n in range(1, len(targets)):
        stage = trace.stages[n]
        assert targets[n] <= stage.capacity <= targets[n - 1]
        assert is_subset(stage.clopen, trace.stages[n - 1].clopen)


def test_usc_repeated_target_passes_through():
    # a repeated target removes nothing; the capacity stays put (so the
    # strict sandwich is only guaranteed between distinct targets)
    targets = [Fraction(1), Fraction(3, 4), Fraction(3, 4)]
    trace = build_usc_capacity(b, b, targets)
    assert trace.stages[2].clopen == trace.stages[1].clopen
    assert trace.stages[2].capacity == trace.stages[1].capacity
    assert trace.stages[2].capacity >= Fraction(3, 4)


def test_usc_rejects_bad_inputs():
    one = Fraction(1)
    with pytest.raises(NonMonotoneTargetsError):
        build_usc_capacity(b, b, [Fraction(1, 2)])
    with pytest.raises(NonMonotoneTargetsError):
        build_usc_capacity(b, b, [one, Fraction(1, 2), Fraction(3, 4)])
    with pytest.raises(NonMonotoneTargetsError):
        build_usc_capacity(b, b, [one, Fraction(-1, 2)])
    with pytest.raises(DegenerateWeightsError):
        build_usc_capacity(Fraction(1, 5), Fraction(2, 5), [one, Fraction(1, 2)])


def test_usc_csv_shape():
    trace = build_usc_capacity(b, b, [Fraction(1), Fraction(1, 2)])
    lines = trace.to_csv().strip().splitlines()
    assert lines[0] == "stage,s,leaves,capacity,approx"
    assert len(lines) == 3
