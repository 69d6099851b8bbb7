"""Finite combinatorics of Cantor space.

Bit strings are plain ``str`` over ``{'0','1'}`` (the empty string is the
root).  A closed set is approximated to finite depth by a pruned tree (a
prefix-closed node set with no dead ends), coded as a word over
``{'0','1','2'}`` with one digit per internal node in breadth-first order:
0 = only the left child, 1 = only the right child, 2 = both.  Clopen sets
are canonical antichains of bit strings.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DepthExceededError, EnumerationBoundError, MalformedCodeError

DEFAULT_ENUM_DEPTH = 4


def max_enum_depth() -> int:
    """Depth bound for exhaustive tree enumeration (env-overridable)."""
    return int(os.environ.get("CAPLAB_MAX_ENUM_DEPTH", DEFAULT_ENUM_DEPTH))


def _bfs_key(s: str) -> tuple[int, str]:
    return (len(s), s)


def _check_bits(s: str) -> str:
    if any(c not in "01" for c in s):
        raise ValueError("bit string must be over {0,1}: %r" % s)
    return s


@dataclass(frozen=True)
class PrunedTree:
    """A finite tree without dead ends, explicit height.

    The same node set at a different height is a different value:
    truncation semantics depend on the height.
    """

    height: int
    nodes: frozenset[str]

    def __post_init__(self):
        if self.height < 0:
            raise ValueError("height must be >= 0")
        if "" not in self.nodes:
            raise ValueError("tree must contain the root")
        for node in self.nodes:
            _check_bits(node)
            if len(node) > self.height:
                raise ValueError("node %r longer than height %d" % (node, self.height))
            if node and node[:-1] not in self.nodes:
                raise ValueError("not prefix-closed at %r" % node)
            if len(node) < self.height:
                if node + "0" not in self.nodes and node + "1" not in self.nodes:
                    raise ValueError("dead end at %r" % node)

    def level(self, n: int) -> tuple[str, ...]:
        return tuple(sorted(s for s in self.nodes if len(s) == n))

    def to_json(self) -> dict:
        return {"height": self.height, "nodes": bfs_nodes(self)}

    @classmethod
    def from_json(cls, doc: dict) -> "PrunedTree":
        return cls(int(doc["height"]), frozenset(doc["nodes"]))


def tree_from_nodes(nodes: Iterable[str], height: int | None = None) -> PrunedTree:
    node_set = frozenset(nodes)
    if height is None:
        height = max((len(s) for s in node_set), default=0)
    return PrunedTree(height, node_set)


def bfs_nodes(t: PrunedTree) -> list[str]:
    """All nodes of ``t``, first by length and then lexicographically."""
    return sorted(t.nodes, key=_bfs_key)


def encode_tree(t: PrunedTree) -> str:
    """Ternary code of ``t``: one digit per internal node in bfs order."""
    digits = []
    for node in bfs_nodes(t):
        if len(node) == t.height:
            continue
        left = node + "0" in t.nodes
        right = node + "1" in t.nodes
        digits.append("2" if left and right else "1" if right else "0")
    return "".join(digits)


def decode_code(code: str, height: int) -> PrunedTree:
    """Inverse of :func:`encode_tree`; raises on digit-count mismatch."""
    if any(c not in "012" for c in code):
        raise MalformedCodeError("code must be over {0,1,2}: %r" % code)
    nodes = [""]
    frontier = [""]
    pos = 0
    for _level in range(height):
        nxt = []
        for node in frontier:
            if pos >= len(code):
                raise MalformedCodeError(
                    "code %r too short for height %d" % (code, height)
                )
            digit = code[pos]
            pos += 1
            if digit in "02":
                nxt.append(node + "0")
            if digit in "12":
                nxt.append(node + "1")
        nodes.extend(nxt)
        frontier = nxt
    if pos != len(code):
        raise MalformedCodeError(
            "code %r has %d extra digit(s) for height %d"
            % (code, len(code) - pos, height)
        )
    return PrunedTree(height, frozenset(nodes))


def _canonical_leaves(strings: Iterable[str]) -> frozenset[str]:
    """Antichain covering the same union: prefix absorption + sibling merge."""
    strings = set(strings)
    if not strings:
        return frozenset()

    def merge(leaves: set[str]) -> set[str]:
        if not leaves:
            return set()
        if "" in leaves:
            return {""}
        left = merge({s[1:] for s in leaves if s[0] == "0"})
        right = merge({s[1:] for s in leaves if s[0] == "1"})
        if left == {""} and right == {""}:
            return {""}
        return {"0" + s for s in left} | {"1" + s for s in right}

    return frozenset(merge(strings))


@dataclass(frozen=True)
class ClopenSet:
    """A finite union of intervals as a canonical antichain of bit strings.

    The empty antichain is the empty set; the single empty string is the
    full space.  Construction canonicalizes, so equality is structural.
    """

    depth: int
    leaves: tuple[str, ...]

    def __post_init__(self):
        canon = _canonical_leaves(self.leaves)
        object.__setattr__(self, "leaves", tuple(sorted(canon, key=_bfs_key)))
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        for leaf in self.leaves:
            _check_bits(leaf)
            if len(leaf) > self.depth:
                raise ValueError("leaf %r longer than depth %d" % (leaf, self.depth))

    @property
    def is_empty(self) -> bool:
        return not self.leaves

    @property
    def is_full(self) -> bool:
        return self.leaves == ("",)

    def expand(self, depth: int | None = None) -> frozenset[str]:
        """All length-``depth`` strings whose interval lies inside the set."""
        if depth is None:
            depth = self.depth
        if depth < self.depth and any(len(s) > depth for s in self.leaves):
            raise DepthExceededError("cannot expand to depth %d" % depth)
        out = set()
        for leaf in self.leaves:
            for tail in itertools.product("01", repeat=depth - len(leaf)):
                out.add(leaf + "".join(tail))
        return frozenset(out)

    def to_json(self) -> dict:
        return {"depth": self.depth, "leaves": list(self.leaves)}

    @classmethod
    def from_json(cls, doc: dict) -> "ClopenSet":
        return cls(int(doc["depth"]), tuple(doc["leaves"]))


def full_space(depth: int = 0) -> ClopenSet:
    return ClopenSet(depth, ("",))


def empty_set(depth: int = 0) -> ClopenSet:
    return ClopenSet(depth, ())


def clopen_from_strings(strings: Iterable[str], depth: int | None = None) -> ClopenSet:
    strings = set(strings)
    if depth is None:
        depth = max((len(s) for s in strings), default=0)
    return ClopenSet(depth, tuple(strings))


def union(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    return ClopenSet(max(a.depth, b.depth), a.leaves + b.leaves)


def intersection(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    depth = max(a.depth, b.depth)
    return ClopenSet(depth, tuple(a.expand(depth) & b.expand(depth)))


def complement(a: ClopenSet) -> ClopenSet:
    every = ("".join(bits) for bits in itertools.product("01", repeat=a.depth))
    inside = a.expand()
    return ClopenSet(a.depth, tuple(s for s in every if s not in inside))


def difference(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    depth = max(a.depth, b.depth)
    return ClopenSet(depth, tuple(a.expand(depth) - b.expand(depth)))


def is_subset(a: ClopenSet, b: ClopenSet) -> bool:
    depth = max(a.depth, b.depth)
    return a.expand(depth) <= b.expand(depth)


def split(q: ClopenSet) -> tuple[ClopenSet, ClopenSet]:
    """Q = 0^Q0 u 1^Q1: strip the leading bit of each leaf."""
    depth = max(q.depth - 1, 0)
    if q.is_full:
        return full_space(depth), full_space(depth)
    left = tuple(s[1:] for s in q.leaves if s.startswith("0"))
    right = tuple(s[1:] for s in q.leaves if s.startswith("1"))
    return ClopenSet(depth, left), ClopenSet(depth, right)


def prefix(bit: str, q: ClopenSet) -> ClopenSet:
    """The set bit^Q, one level deeper."""
    _check_bits(bit)
    if q.is_empty:
        return empty_set(q.depth + 1)
    return ClopenSet(q.depth + 1, tuple(bit + s for s in q.leaves))


def truncate(t: PrunedTree, n: int) -> ClopenSet:
    """Clopen set covered by the length-``n`` nodes of ``t``."""
    if n > t.height:
        raise DepthExceededError(
            "truncation depth %d exceeds tree height %d" % (n, t.height)
        )
    return ClopenSet(n, t.level(n))


def enumerate_trees(height: int, bound: int | None = None) -> Iterator[PrunedTree]:
    """All pruned trees of the given height, lazily, in code order.

    The count N satisfies N(0)=1, N(h+1) = 2 N(h) + N(h)^2.
    """
    if bound is None:
        bound = max_enum_depth()
    if height > bound:
        raise EnumerationBoundError(
            "height %d exceeds enumeration bound %d" % (height, bound)
        )

    def rec(nodes: list[str], frontier: list[str], level: int) -> Iterator[PrunedTree]:
        if level == height:
            yield PrunedTree(height, frozenset(nodes))
            return
        for digits in itertools.product("012", repeat=len(frontier)):
            children = []
            for node, digit in zip(frontier, digits):
                if digit in "02":
                    children.append(node + "0")
                if digit in "12":
                    children.append(node + "1")
            yield from rec(nodes + children, children, level + 1)

    return rec([""], [""], 0)
