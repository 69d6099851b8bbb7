import random
from fractions import Fraction

import pytest

from caplab.cantor import ClopenSet, clopen_from_strings, full_space, prefix, union
from caplab.capacity import (
    CapacityTable,
    capacity_bruteforce,
    capacity_clopen,
    capacity_table,
    check_alternating,
    choquet_invert,
    prefix_capacities,
    recover_mu_star,
    spec_oracle,
)
from caplab.errors import (
    DepthExceededError,
    EnumerationBoundError,
    InconsistentCapacityError,
)
from caplab.measure import MeasureSpec, _table_map, mu_star_tree

U13 = MeasureSpec.uniform(Fraction(1, 3), Fraction(1, 3))
U2515 = MeasureSpec.uniform(Fraction(2, 5), Fraction(1, 5))


def test_capacity_frozen_values():
    assert capacity_clopen(U13, clopen_from_strings(["0"], 1)) == Fraction(2, 3)
    assert capacity_clopen(U13, clopen_from_strings(["00", "11"], 2)) == Fraction(
        20, 27
    )
    assert capacity_clopen(U13, full_space()) == 1
    assert capacity_clopen(U13, clopen_from_strings([], 1)) == 0


def test_bruteforce_matches_recursion():
    q = clopen_from_strings(["00", "11"], 2)
    assert capacity_bruteforce(U13, q, 2) == Fraction(20, 27)
    assert capacity_bruteforce(U13, q, 3) == Fraction(20, 27)
    assert capacity_bruteforce(U2515, q, 2) == capacity_clopen(U2515, q)


def test_bruteforce_guards():
    q = clopen_from_strings(["00", "11"], 2)
    with pytest.raises(DepthExceededError):
        capacity_bruteforce(U13, q, 1)
    with pytest.raises(EnumerationBoundError):
        capacity_bruteforce(U13, q, 99)


def test_monotone_and_scaling():
    rng = random.Random(7)
    atoms = ["{:03b}".format(i) for i in range(8)]
    for _ in range(50):
        mask = rng.getrandbits(8)
        q = clopen_from_strings([a for i, a in enumerate(atoms) if mask >> i & 1], 3)
        bigger = union(q, clopen_from_strings([atoms[rng.randrange(8)]], 3))
        assert capacity_clopen(U13, q) <= capacity_clopen(U13, bigger)
        assert capacity_clopen(U13, prefix("0", q)) == Fraction(2, 3) * capacity_clopen(
            U13, q
        )
        assert capacity_clopen(U13, prefix("1", q)) == Fraction(2, 3) * capacity_clopen(
            U13, q
        )


def test_alternating_example():
    a = clopen_from_strings(["0"], 1)
    b = clopen_from_strings(["1"], 1)
    report = check_alternating(U13, [a, b])
    assert report.lhs == 0
    assert report.rhs == Fraction(1, 3)
    assert report.holds
    with pytest.raises(ValueError):
        check_alternating(U13, [a])


def test_prefix_capacities_incremental():
    leaves = sorted(full_space().expand(3))
    caps = prefix_capacities(U13, leaves)
    assert caps[0] == 0 and caps[-1] == 1
    for k in range(len(leaves) + 1):
        assert caps[k] == capacity_clopen(U13, clopen_from_strings(leaves[:k], 3))


def test_capacity_table_oracle():
    table = capacity_table(U13, 1)
    oracle = table.as_oracle()
    assert oracle(clopen_from_strings(["0"], 1)) == Fraction(2, 3)
    assert CapacityTable.from_json(table.to_json()).values == table.values
    with pytest.raises(InconsistentCapacityError):
        oracle(clopen_from_strings(["00"], 2))


@pytest.mark.parametrize("spec", [U13, U2515])
def test_choquet_inversion_recovers_weights(spec):
    recovered = choquet_invert(spec_oracle(spec), 2, cross_check=True)
    entries = _table_map(recovered)
    weights = {"0": spec.b0, "1": spec.b1, "2": spec.b2}
    for code, value in entries.items():
        if code:
            assert value == entries[code[:-1]] * weights[code[-1]]


def test_choquet_inversion_degenerate_root():
    # a capacity that charges both halves almost surely inverts to a
    # branching table putting all weight on the both-children digit
    def cap(q: ClopenSet) -> Fraction:
        return Fraction(0) if q.is_empty else Fraction(1)

    spec = choquet_invert(cap, 1)
    table = _table_map(spec)
    assert table["2"] == 1 and table["0"] == 0 and table["1"] == 0


def test_choquet_inversion_rejects_bad_capacities():
    with pytest.raises(InconsistentCapacityError):
        choquet_invert(lambda q: Fraction(1, 2), 1)

    def subadditive(q: ClopenSet) -> Fraction:
        if q.is_empty:
            return Fraction(0)
        if q.is_full:
            return Fraction(1)
        return Fraction(1, 4)

    with pytest.raises(InconsistentCapacityError):
        choquet_invert(subadditive, 1)


def test_recover_mu_star():
    for height in (1, 2):
        recovered = recover_mu_star(spec_oracle(U13), height)
        for tree, mass in recovered.items():
            assert mass == mu_star_tree(U13, tree)
    with pytest.raises(InconsistentCapacityError):
        recover_mu_star(lambda q: Fraction(1, 2), 1)
