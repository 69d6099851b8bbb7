from fractions import Fraction

import pytest

from caplab.cantor import clopen_from_strings, decode_code, enumerate_trees
from caplab.errors import InvalidSpecError, NonUniformSpecError, UncoveredPrefixError
from caplab.measure import (
    MeasureSpec,
    lebesgue,
    mu_code,
    mu_star_tree,
    require_uniform,
    validate_spec,
)

U13 = MeasureSpec.uniform(Fraction(1, 3), Fraction(1, 3))


def test_mu_code_uniform():
    assert mu_code(U13, "") == 1
    assert mu_code(U13, "0") == Fraction(1, 3)
    assert mu_code(U13, "2") == Fraction(1, 3)
    assert mu_code(U13, "21") == Fraction(1, 9)
    spec = MeasureSpec.uniform(Fraction(2, 5), Fraction(1, 5))
    assert mu_code(spec, "2") == Fraction(2, 5)
    assert mu_code(spec, "01") == Fraction(2, 25)


def test_mu_additivity_over_digits():
    spec = MeasureSpec.uniform(Fraction(1, 4), Fraction(1, 2))
    for code in ("", "0", "12", "201"):
        assert sum(mu_code(spec, code + d) for d in "012") == mu_code(spec, code)


def test_mu_star_normalizes():
    for height in range(4):
        total = sum(mu_star_tree(U13, t) for t in enumerate_trees(height))
        assert total == 1


def test_mu_star_example():
    tree = decode_code("2", 1)
    assert mu_star_tree(U13, tree) == Fraction(1, 3)


def test_lebesgue():
    assert lebesgue(clopen_from_strings(["00", "11"], 2)) == Fraction(1, 2)
    assert lebesgue(clopen_from_strings([], 2)) == 0
    assert lebesgue(clopen_from_strings([""], 2)) == 1


def test_validate_uniform():
    assert validate_spec(U13).valid
    assert validate_spec(U13).section4_ready
    bad = MeasureSpec.uniform(Fraction(1, 2), Fraction(1, 2))
    report = validate_spec(bad)
    assert not report.valid and report.issues
    with pytest.raises(InvalidSpecError):
        mu_code(bad, "0")
    # b1 > b0 is valid but not construction-ready
    flipped = MeasureSpec.uniform(Fraction(1, 5), Fraction(2, 5))
    report = validate_spec(flipped)
    assert report.valid and not report.section4_ready


def test_validate_table():
    entries = {
        "": Fraction(1),
        "0": Fraction(1, 2),
        "1": Fraction(1, 4),
        "2": Fraction(1, 4),
    }
    spec = MeasureSpec.table(entries)
    assert validate_spec(spec).valid
    assert mu_code(spec, "1") == Fraction(1, 4)
    with pytest.raises(UncoveredPrefixError):
        mu_code(spec, "00")
    broken = MeasureSpec.table({**entries, "2": Fraction(1, 2)})
    assert not validate_spec(broken).valid
    with pytest.raises(NonUniformSpecError):
        require_uniform(spec)


def test_spec_json_round_trip():
    assert MeasureSpec.from_json(U13.to_json()) == U13
    table = MeasureSpec.table(
        {"": Fraction(1), "0": Fraction(1, 3), "1": Fraction(1, 3), "2": Fraction(1, 3)},
        bounds=(Fraction(1, 4), Fraction(1, 2)),
    )
    assert MeasureSpec.from_json(table.to_json()) == table
    with pytest.raises(InvalidSpecError):
        MeasureSpec.from_json({"kind": "mystery"})
