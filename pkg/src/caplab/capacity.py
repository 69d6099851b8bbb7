"""Exact capacity of clopen sets and the Choquet inversion.

The production path is the splitting recursion
T(Q) = (1-b1) T(Q0) + (1-b0) T(Q1) - b2 T(Q0) T(Q1), valid for uniform
(self-similar) specs.  The brute-force sum over all trees of a given
height is the independent oracle and works for any covered spec, but is
capped by the enumeration depth bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .cantor import (
    ClopenSet,
    PrunedTree,
    clopen_from_strings,
    complement,
    enumerate_trees,
    full_space,
    max_enum_depth,
)
from .errors import (
    DepthExceededError,
    EnumerationBoundError,
    InconsistentCapacityError,
)
from .measure import MeasureSpec, mu_star_tree, require_uniform, require_valid

CapacityOracle = Callable[[ClopenSet], Fraction]


def capacity_clopen(spec: MeasureSpec, q: ClopenSet) -> Fraction:
    """Probability that a random closed set meets ``q``, exactly."""
    require_uniform(spec)
    one_m_b0 = 1 - spec.b0
    one_m_b1 = 1 - spec.b1
    b2 = spec.b2
    memo: dict[frozenset, Fraction] = {}

    def walk(leaves: frozenset[str]) -> Fraction:
        if not leaves:
            return Fraction(0)
        if "" in leaves:
            return Fraction(1)
        key = leaves
        got = memo.get(key)
        if got is not None:
            return got
        t0 = walk(frozenset(s[1:] for s in leaves if s[0] == "0"))
        t1 = walk(frozenset(s[1:] for s in leaves if s[0] == "1"))
        value = one_m_b1 * t0 + one_m_b0 * t1 - b2 * t0 * t1
        memo[key] = value
        return value

    return walk(frozenset(q.leaves))


def prefix_capacities(spec: MeasureSpec, leaves: Iterable[str]) -> list[Fraction]:
    """T of the union of the first k intervals, for k = 0..len(leaves).

    Incremental: adding a leaf only touches capacities along its path, so
    the whole monotone sequence costs O(len * depth) exact operations.
    """
    require_uniform(spec)
    one_m_b0 = 1 - spec.b0
    one_m_b1 = 1 - spec.b1
    b2 = spec.b2
    zero = Fraction(0)
    cap: dict[str, Fraction] = {}
    out = [zero]
    for leaf in leaves:
        cap[leaf] = Fraction(1)
        for cut in range(len(leaf) - 1, -1, -1):
            node = leaf[:cut]
            t0 = cap.get(node + "0", zero)
            t1 = cap.get(node + "1", zero)
            cap[node] = one_m_b1 * t0 + one_m_b0 * t1 - b2 * t0 * t1
        out.append(cap[""])
    return out


@lru_cache(maxsize=8)
def _tree_distribution(
    spec: MeasureSpec, depth: int
) -> tuple[tuple[frozenset[str], Fraction], ...]:
    """(level-depth node set, mu* weight) for every pruned tree of the depth."""
    out = []
    for tree in enumerate_trees(depth):
        out.append((frozenset(tree.level(depth)), mu_star_tree(spec, tree)))
    return tuple(out)


def capacity_bruteforce(spec: MeasureSpec, q: ClopenSet, depth: int) -> Fraction:
    """Oracle: sum mu* over all trees whose truncation meets ``q``."""
    require_valid(spec)
    if depth < q.depth:
        raise DepthExceededError("depth %d below clopen depth %d" % (depth, q.depth))
    if depth > max_enum_depth():
        raise EnumerationBoundError(
            "depth %d exceeds enumeration bound %d" % (depth, max_enum_depth())
        )
    target = q.expand(depth)
    total = Fraction(0)
    for level_nodes, weight in _tree_distribution(spec, depth):
        if level_nodes & target:
            total += weight
    return total


@dataclass(frozen=True)
class AlternatingReport:
    lhs: Fraction
    rhs: Fraction
    holds: bool

    def to_json(self) -> dict:
        return {
            "lhs": str(self.lhs),
            "lhs_approx": float(self.lhs),
            "rhs": str(self.rhs),
            "rhs_approx": float(self.rhs),
            "holds": self.holds,
        }


def check_alternating(spec: MeasureSpec, sets: list[ClopenSet]) -> AlternatingReport:
    """Alternating-of-infinite-order inequality for 2..4 clopen sets:
    T(intersection) <= sum over nonempty I of (-1)^(|I|+1) T(union over I)."""
    from .cantor import intersection as inter, union

    if not 2 <= len(sets) <= 4:
        raise ValueError("need between 2 and 4 clopen sets")
    require_uniform(spec)
    meet = sets[0]
    for q in sets[1:]:
        meet = inter(meet, q)
    lhs = capacity_clopen(spec, meet)
    rhs = Fraction(0)
    for r in range(1, len(sets) + 1):
        for combo in itertools.combinations(sets, r):
            join = combo[0]
            for q in combo[1:]:
                join = union(join, q)
            rhs += (-1) ** (r + 1) * capacity_clopen(spec, join)
    return AlternatingReport(lhs, rhs, lhs <= rhs)


@dataclass(frozen=True)
class CapacityTable:
    """Exact capacities of every canonical clopen set up to a depth."""

    depth: int
    values: tuple[tuple[tuple[str, ...], Fraction], ...]

    def as_oracle(self) -> CapacityOracle:
        table = dict(self.values)

        def oracle(q: ClopenSet) -> Fraction:
            try:
                return table[q.leaves]
            except KeyError:
                raise InconsistentCapacityError(
                    "capacity table does not cover %r" % (q.leaves,)
                ) from None

        return oracle

    def to_json(self) -> list:
        return [
            {
                "clopen": {"depth": self.depth, "leaves": list(leaves)},
                "value": str(value),
                "approx": float(value),
            }
            for leaves, value in self.values
        ]

    @classmethod
    def from_json(cls, doc: list) -> "CapacityTable":
        depth = max((int(e["clopen"]["depth"]) for e in doc), default=0)
        values = tuple(
            (tuple(e["clopen"]["leaves"]), Fraction(e["value"])) for e in doc
        )
        return cls(depth, values)


def capacity_table(spec: MeasureSpec, depth: int) -> CapacityTable:
    """Tabulate T on all clopen sets of depth <= depth (2^(2^depth) sets)."""
    require_uniform(spec)
    atoms = ["".join(bits) for bits in itertools.product("01", repeat=depth)]
    seen: dict[tuple[str, ...], Fraction] = {}
    for r in range(len(atoms) + 1):
        for combo in itertools.combinations(atoms, r):
            q = clopen_from_strings(combo, depth)
            if q.leaves not in seen:
                seen[q.leaves] = capacity_clopen(spec, q)
    return CapacityTable(depth, tuple(sorted(seen.items())))


def spec_oracle(spec: MeasureSpec) -> CapacityOracle:
    """Capacity oracle backed by the splitting recursion."""
    require_uniform(spec)
    return lambda q: capacity_clopen(spec, q)


def _interval(sigma: str) -> ClopenSet:
    return ClopenSet(len(sigma), (sigma,)) if sigma else full_space()


def choquet_invert(
    cap: CapacityOracle, depth: int, cross_check: bool = False
) -> MeasureSpec:
    """Recover the finite-depth branching table whose capacity is ``cap``.

    Walks all valid tree-code prefixes; at a prefix whose next bfs node is
    sigma, the child weights are d.(1-a1), d.(1-a0), d.(a0+a1-1) for digits
    0, 1, 2 with a_i = cap(I(sigma^i)) / cap(I(sigma)).  Zero-capacity
    intervals get weight-zero subtrees.  Valid for self-similar capacities;
    ``cross_check`` compares against the inclusion-exclusion recovery.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if cap(full_space()) != 1:
        raise InconsistentCapacityError("capacity of the full space must be 1")

    icap: dict[str, Fraction] = {}

    def interval_cap(sigma: str) -> Fraction:
        if sigma not in icap:
            icap[sigma] = cap(_interval(sigma))
        return icap[sigma]

    entries: dict[str, Fraction] = {"": Fraction(1)}

    def walk(code: str, weight: Fraction, queue: tuple[str, ...]) -> None:
        if not queue:
            return
        sigma = queue[0]
        cs = interval_cap(sigma)
        if cs == 0:
            ratios = {"0": Fraction(0), "1": Fraction(0), "2": Fraction(0)}
        else:
            a0 = interval_cap(sigma + "0") / cs
            a1 = interval_cap(sigma + "1") / cs
            ratios = {"0": 1 - a1, "1": 1 - a0, "2": a0 + a1 - 1}
        for digit in "012":
            child_weight = weight * ratios[digit]
            if child_weight < 0 or child_weight > 1:
                raise InconsistentCapacityError(
                    "weight %s for code %r outside [0,1]"
                    % (child_weight, code + digit)
                )
            prev = entries.get(code + digit)
            if prev is not None and prev != child_weight:
                raise InconsistentCapacityError("conflicting weights at %r" % code)
            entries[code + digit] = child_weight
            children = []
            if digit in "02":
                children.append(sigma + "0")
            if digit in "12":
                children.append(sigma + "1")
            walk(
                code + digit,
                child_weight,
                queue[1:] + tuple(c for c in children if len(c) < depth),
            )

    walk("", Fraction(1), ("",))
    spec = MeasureSpec.table(entries)
    if cross_check:
        from .cantor import encode_tree
        from .measure import mu_code

        recovered = recover_mu_star(cap, depth)
        for tree, mass in recovered.items():
            if mu_code(spec, encode_tree(tree)) != mass:
                raise InconsistentCapacityError(
                    "node-ratio inversion disagrees with inclusion-exclusion "
                    "recovery at tree %r" % sorted(tree.nodes)
                )
    return spec


def recover_mu_star(cap: CapacityOracle, height: int) -> dict[PrunedTree, Fraction]:
    """Inclusion-exclusion recovery of mu* from the hitting functional:
    mu*(U_A) = sum over S subset of leaves(A) of
    (-1)^|S| (1 - cap(complement of [leaves(A) minus S]))."""
    if height > max_enum_depth():
        raise EnumerationBoundError(
            "height %d exceeds enumeration bound %d" % (height, max_enum_depth())
        )
    if cap(full_space()) != 1:
        raise InconsistentCapacityError("capacity of the full space must be 1")
    out: dict[PrunedTree, Fraction] = {}
    total = Fraction(0)
    for tree in enumerate_trees(height):
        leaves = tree.level(height)
        mass = Fraction(0)
        for r in range(len(leaves) + 1):
            for dropped in itertools.combinations(leaves, r):
                kept = tuple(s for s in leaves if s not in dropped)
                comp = complement(ClopenSet(height, kept))
                mass += (-1) ** r * (1 - cap(comp))
        if mass < 0:
            raise InconsistentCapacityError(
                "negative recovered mass %s at tree %r" % (mass, sorted(tree.nodes))
            )
        out[tree] = mass
        total += mass
    if total != 1:
        raise InconsistentCapacityError("recovered masses sum to %s, not 1" % total)
    return out
