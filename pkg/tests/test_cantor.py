import itertools

import pytest
from hypothesis import given, strategies as st

from caplab.cantor import (
    ClopenSet,
    PrunedTree,
    bfs_nodes,
    clopen_from_strings,
    complement,
    decode_code,
    difference,
    empty_set,
    encode_tree,
    enumerate_trees,
    full_space,
    intersection,
    is_subset,
    prefix,
    split,
    tree_from_nodes,
    truncate,
    union,
)
from caplab.errors import (
    DepthExceededError,
    EnumerationBoundError,
    MalformedCodeError,
)

bit_strings = st.text(alphabet="01", min_size=0, max_size=5)


def test_encode_example():
    # the two-level tree keeping 00, 01 and 11
    tree = tree_from_nodes(["", "0", "1", "00", "01", "11"])
    assert encode_tree(tree) == "221"


def test_decode_inverts_encode_small_heights():
    for height in range(4):
        for tree in enumerate_trees(height):
            assert decode_code(encode_tree(tree), height) == tree


def test_decode_errors():
    with pytest.raises(MalformedCodeError):
        decode_code("3", 1)
    with pytest.raises(MalformedCodeError):
        decode_code("2", 2)  # too short
    with pytest.raises(MalformedCodeError):
        decode_code("22", 1)  # extra digit


def test_enumeration_counts():
    # N(0)=1, N(h+1) = 2N(h) + N(h)^2
    assert sum(1 for _ in enumerate_trees(0)) == 1
    assert sum(1 for _ in enumerate_trees(1)) == 3
    assert sum(1 for _ in enumerate_trees(2)) == 15
    assert sum(1 for _ in enumerate_trees(3)) == 255


def test_enumeration_bound(monkeypatch):
    monkeypatch.setenv("CAPLAB_MAX_ENUM_DEPTH", "2")
    with pytest.raises(EnumerationBoundError):
        enumerate_trees(3)


def test_pruned_tree_validation():
    with pytest.raises(ValueError):
        PrunedTree(1, frozenset(["0"]))  # missing root
    with pytest.raises(ValueError):
        PrunedTree(2, frozenset(["", "0"]))  # dead end at "0"
    with pytest.raises(ValueError):
        PrunedTree(1, frozenset(["", "00"]))  # too long / not prefix-closed


def test_tree_json_round_trip():
    tree = decode_code("221", 2)
    assert PrunedTree.from_json(tree.to_json()) == tree
    assert bfs_nodes(tree) == ["", "0", "1", "00", "01", "11"]


@given(st.sets(bit_strings, max_size=12))
def test_canonicalization_idempotent(strings):
    q = clopen_from_strings(strings)
    again = clopen_from_strings(q.leaves, q.depth)
    assert again.leaves == q.leaves
    # antichain: no leaf is a prefix of another
    for a, b in itertools.permutations(q.leaves, 2):
        assert not b.startswith(a)


@given(st.sets(bit_strings, max_size=10))
def test_canonicalization_preserves_expansion(strings):
    depth = max((len(s) for s in strings), default=0)
    q = clopen_from_strings(strings, depth)
    direct = set()
    for s in strings:
        for tail in itertools.product("01", repeat=depth - len(s)):
            direct.add(s + "".join(tail))
    assert q.expand(depth) == frozenset(direct)


def test_sibling_merge_and_absorption():
    assert clopen_from_strings(["00", "01"], 2).leaves == ("0",)
    assert clopen_from_strings(["0", "01"], 2).leaves == ("0",)
    assert clopen_from_strings(["0", "10", "11"], 2).leaves == ("",)


def test_full_and_empty():
    assert full_space().is_full
    assert empty_set().is_empty
    assert union(clopen_from_strings(["0"], 1), clopen_from_strings(["1"], 1)).is_full


def test_boolean_operations():
    a = clopen_from_strings(["00", "11"], 2)
    b = clopen_from_strings(["0"], 1)
    assert intersection(a, b).leaves == ("00",)
    assert union(a, b).leaves == ("0", "11")
    assert complement(b).leaves == ("1",)
    assert difference(b, a).leaves == ("01",)
    assert is_subset(a, union(a, b))
    assert not is_subset(b, a)


def test_split_and_prefix():
    a = clopen_from_strings(["00", "11"], 2)
    left, right = split(a)
    assert left.leaves == ("0",) and right.leaves == ("1",)
    assert prefix("0", left).leaves == ("00",)
    assert split(full_space(1))[0].is_full


def test_truncate_decreasing():
    tree = decode_code("20120", 3)
    t2 = truncate(tree, 2)
    t3 = truncate(tree, 3)
    assert is_subset(t3, t2)
    with pytest.raises(DepthExceededError):
        truncate(tree, 4)


def test_clopen_json_round_trip():
    q = clopen_from_strings(["00", "11"], 2)
    assert ClopenSet.from_json(q.to_json()) == q
