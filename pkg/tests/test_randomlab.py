from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from caplab.cantor import clopen_from_strings
from caplab.errors import NonUniformSpecError, WrongRegimeError
from caplab.measure import MeasureSpec
from caplab.randomlab import (
    POSITIVE_CAPACITY,
    ZERO_CAPACITY,
    claim1_check,
    classify_regime,
    mc_capacity,
    mc_intersection,
    ml_test_indices,
    pn_bounds,
    pn_exact,
    sample_tree,
    symmetric_map,
)

U13 = MeasureSpec.uniform(Fraction(1, 3), Fraction(1, 3))
U14 = MeasureSpec.uniform(Fraction(1, 4), Fraction(1, 4))

rationals_01 = st.fractions(min_value=0, max_value=1)


def test_pn_frozen_values():
    seq = pn_exact(Fraction(1, 3), Fraction(1, 3), 2)
    assert seq.values[0] == 1
    assert seq.values[1] == Fraction(7, 9)
    assert seq.values[2] == Fraction(455, 729)


def test_pn_nonincreasing():
    seq = pn_exact(Fraction(2, 5), Fraction(1, 5), 8)
    assert all(a >= b for a, b in zip(seq.values, seq.values[1:]))


def test_pn_matches_symmetric_map():
    b = Fraction(1, 3)
    seq = pn_exact(b, b, 5)
    p = Fraction(1)
    for n in range(1, 6):
        p = symmetric_map(b, p)
        assert seq.values[n] == p


@given(rationals_01)
def test_general_recursion_reduces_to_symmetric(p):
    b = Fraction(1, 3)
    seq = pn_exact(b, b, 1)
    # one step of the four-case recursion on p, via its coefficients
    c1 = seq.values[1]  # p_1 = C1 * 1 - C2, with C2 = b2^2
    c2 = (1 - 2 * b) ** 2
    assert (c1 + c2) * p - c2 * p * p == symmetric_map(b, p)


def test_pn_bounds_enclose_exact():
    for b0, b1 in ((Fraction(1, 3), Fraction(1, 3)), (Fraction(1, 4), Fraction(1, 2))):
        seq = pn_exact(b0, b1, 8)
        for n in range(9):
            lo, hi = pn_bounds(b0, b1, n)
            assert lo <= seq.values[n] <= hi
            assert hi - lo <= Fraction(1, 1 << 100)


def test_classify_regimes():
    assert classify_regime(Fraction(1, 3), Fraction(1, 3)).regime == ZERO_CAPACITY
    r = classify_regime(Fraction(1, 4), Fraction(1, 4))
    assert r.regime == POSITIVE_CAPACITY
    assert r.fixed_point == Fraction(1, 2)
    boundary = classify_regime(Fraction(2, 5), Fraction(1, 5))
    assert boundary.discriminant == 0
    assert boundary.regime == ZERO_CAPACITY


def test_fixed_point_is_fixed():
    r = classify_regime(Fraction(1, 4), Fraction(1, 4))
    assert symmetric_map(Fraction(1, 4), r.fixed_point) == r.fixed_point


def test_map_decreasing_in_b():
    # for fixed p, heavier single-child weight b shrinks the survival map
    grid = [Fraction(k, 64) for k in range(65)]
    bs = [Fraction(k, 16) for k in range(1, 8)]  # 1/16 .. 7/16
    for p in grid:
        values = [symmetric_map(b, p) for b in bs]
        assert all(x >= y for x, y in zip(values, values[1:]))


def test_ml_test_indices():
    ms = ml_test_indices(Fraction(1, 3), Fraction(1, 3), 3)
    assert ms[0] == 4
    assert all(a <= b for a, b in zip(ms, ms[1:]))
    with pytest.raises(WrongRegimeError):
        ml_test_indices(Fraction(1, 4), Fraction(1, 4), 1)


def test_sample_tree_deterministic():
    a = sample_tree(U13, 6, seed=42)
    b = sample_tree(U13, 6, seed=42)
    c = sample_tree(U13, 6, seed=43)
    assert a == b
    assert a != c  # overwhelmingly likely and fixed by the seeds


def test_sample_tree_depth1_frequencies():
    counts = {"0": 0, "1": 0, "2": 0}
    n = 3000
    for seed in range(n):
        tree = sample_tree(U13, 1, seed)
        left = "0" in tree.nodes
        right = "1" in tree.nodes
        counts["2" if left and right else "0" if left else "1"] += 1
    for digit in "012":
        assert abs(counts[digit] / n - 1 / 3) < 0.05


def test_sample_tree_table_spec():
    table = MeasureSpec.table(
        {"": Fraction(1), "0": Fraction(1), "1": Fraction(0), "2": Fraction(0)}
    )
    tree = sample_tree(table, 1, seed=5)
    assert tree.nodes == frozenset(["", "0"])


def test_mc_intersection_agrees():
    rec = mc_intersection(U13, 5, 20000, seed=11)
    assert rec.exact == pn_exact(Fraction(1, 3), Fraction(1, 3), 5).values[5]
    assert abs(rec.z_score) < 4
    with pytest.raises(NonUniformSpecError):
        mc_intersection(
            MeasureSpec.table({"": Fraction(1)}), 2, 10, seed=0
        )


def test_mc_capacity_agrees():
    q = clopen_from_strings(["00", "11"], 2)
    rec = mc_capacity(U13, q, 20000, seed=12)
    assert rec.exact == Fraction(20, 27)
    assert abs(rec.z_score) < 4


def test_mc_capacity_table_spec():
    table = MeasureSpec.table(
        {
            "": Fraction(1),
            "0": Fraction(1, 3),
            "1": Fraction(1, 3),
            "2": Fraction(1, 3),
        }
    )
    q = clopen_from_strings(["0"], 1)
    rec = mc_capacity(table, q, 4000, seed=13)
    assert rec.exact == Fraction(2, 3)
    assert abs(rec.z_score) < 4


def test_claim1_small():
    for m in range(3):
        for n in range(4):
            assert claim1_check(U13, m, n).holds
    report = claim1_check(U14, 2, 2)
    assert report.holds
