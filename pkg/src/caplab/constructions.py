"""Effective constructions: a nested clopen sequence realizing a
decreasing capacity target list, and the measure-zero positive-capacity
class built from sparse zero-constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cantor import ClopenSet, clopen_from_strings, full_space
from .capacity import prefix_capacities
from .errors import (
    CutoffExceededError,
    DegenerateWeightsError,
    InvalidSpecError,
    LeafBudgetError,
    NonMonotoneTargetsError,
)
from .measure import MeasureSpec, lebesgue, validate_spec


def _check_symmetric_weight(b: Fraction) -> Fraction:
    b = Fraction(b)
    if not 0 < b < Fraction(1, 2):
        raise InvalidSpecError("need 0 < b < 1/2, got %s" % b)
    return b


def sparse_to_clopen(indices: Sequence[int]) -> ClopenSet:
    """The clopen set {x : x(n_i) = 0 for all i} at depth max(n)+1."""
    indices = _check_indices(indices)
    if not indices:
        return full_space()
    depth = indices[-1] + 1
    forced = set(indices)
    leaves = []

    def build(prefix: str) -> None:
        if len(prefix) == depth:
            leaves.append(prefix)
            return
        if len(prefix) in forced:
            build(prefix + "0")
        else:
            build(prefix + "0")
            build(prefix + "1")

    build("")
    return clopen_from_strings(leaves, depth)


def _check_indices(indices: Sequence[int]) -> tuple[int, ...]:
    indices = tuple(int(i) for i in indices)
    if any(i < 0 for i in indices):
        raise ValueError("indices must be nonnegative")
    if any(a >= b for a, b in zip(indices, indices[1:])):
        raise ValueError("indices must be strictly increasing")
    return indices


def capacity_sparse(b, indices: Sequence[int]) -> Fraction:
    """Exact capacity of {x : x(n_i) = 0 for all i} under symmetric
    uniform weights b.  Recursion: a leading index 0 contributes a factor
    (1-b); otherwise shift all indices down and apply
    f(p) = (2-2b) p - (1-2b) p^2."""
    b = _check_symmetric_weight(b)
    indices = _check_indices(indices)

    def f(p: Fraction) -> Fraction:
        return (2 - 2 * b) * p - (1 - 2 * b) * p * p

    def walk(idx: tuple[int, ...]) -> Fraction:
        if not idx:
            return Fraction(1)
        if idx[0] == 0:
            return (1 - b) * walk(tuple(i - 1 for i in idx[1:]))
        return f(walk(tuple(i - 1 for i in idx)))

    return walk(indices)


@dataclass(frozen=True)
class UscStage:
    refinement_depth: int
    clopen: ClopenSet
    capacity: Fraction
    # largest exact capacity increment over the leaf-by-leaf sweep, and the
    # Lemma bound (1-b1)^s it must respect
    max_step: Fraction
    step_bound: Fraction

    def to_json(self) -> dict:
        return {
            "s": self.refinement_depth,
            "clopen": self.clopen.to_json(),
            "capacity": str(self.capacity),
            "approx": float(self.capacity),
            "max_step": str(self.max_step),
            "step_bound": str(self.step_bound),
        }


@dataclass(frozen=True)
class UscTrace:
    b0: Fraction
    b1: Fraction
    targets: tuple[Fraction, ...]
    stages: tuple[UscStage, ...]

    def to_json(self) -> dict:
        return {
            "b0": str(self.b0),
            "b1": str(self.b1),
            "targets": [str(t) for t in self.targets],
            "stages": [s.to_json() for s in self.stages],
        }

    def to_csv(self) -> str:
        lines = ["stage,s,leaves,capacity,approx"]
        for n, st in enumerate(self.stages):
            lines.append(
                "%d,%d,%d,%s,%r"
                % (
                    n,
                    st.refinement_depth,
                    len(st.clopen.leaves),
                    st.capacity,
                    float(st.capacity),
                )
            )
        return "\n".join(lines) + "\n"


def build_usc_capacity(
    b0, b1, targets: Sequence[Fraction], max_leaves: int = 1 << 16
) -> UscTrace:
    """Nested clopen sets Q_0 >= Q_1 >= ... with q_{n+1} <= T(Q_n) <= q_n
    for a nonincreasing target list starting at 1.

    Each stage refines to depth s with (1-b1)^s < q_{n-1} - q_n, sweeps the
    depth-s leaves in lexicographic order, and keeps the shortest prefix
    whose capacity still exceeds the new target.
    """
    spec = MeasureSpec.uniform(b0, b1)
    report = validate_spec(spec)
    if not report.valid or not report.section4_ready:
        raise DegenerateWeightsError(
            "need 0 < b1 <= b0 and b0 + b1 < 1: %s" % "; ".join(report.issues)
        )
    targets = tuple(Fraction(t) for t in targets)
    if not targets or targets[0] != 1:
        raise NonMonotoneTargetsError("targets must start at 1")
    if any(t < 0 or t > 1 for t in targets):
        raise NonMonotoneTargetsError("targets must lie in [0,1]")
    if any(a < b for a, b in zip(targets, targets[1:])):
        raise NonMonotoneTargetsError("targets must be nonincreasing")

    shrink = 1 - spec.b1
    current = full_space()
    zero = Fraction(0)
    stages = [UscStage(0, current, Fraction(1), zero, Fraction(1))]
    for n in range(1, len(targets)):
        q_prev, q_new = targets[n - 1], targets[n]
        delta = q_prev - q_new
        if delta == 0:
            prev = stages[-1]
            stages.append(
                UscStage(prev.refinement_depth, current, prev.capacity, zero, zero)
            )
            continue
        s = max(len(leaf) for leaf in current.leaves)
        while shrink**s >= delta:
            s += 1
        leaves = sorted(current.expand(s))
        if len(leaves) > max_leaves:
            raise LeafBudgetError(
                "stage %d needs %d leaves (> budget %d)" % (n, len(leaves), max_leaves)
            )
        caps = prefix_capacities(spec, leaves)
        max_step = max(
            (caps[k + 1] - caps[k] for k in range(len(leaves))), default=zero
        )
        # greatest k with T(first k) <= q_new; keep k+1 intervals (capped)
        lo, hi = 0, len(leaves)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if caps[mid] <= q_new:
                lo = mid
            else:
                hi = mid - 1
        keep = min(lo + 1, len(leaves))
        current = clopen_from_strings(leaves[:keep], s)
        stages.append(UscStage(s, current, caps[keep], max_step, shrink**s))
    return UscTrace(spec.b0, spec.b1, targets, tuple(stages))


@dataclass(frozen=True)
class SparseBuildResult:
    b: Fraction
    indices: tuple[int, ...]
    capacities: tuple[Fraction, ...]
    lebesgue: Fraction

    def to_json(self) -> dict:
        return {
            "b": str(self.b),
            "indices": list(self.indices),
            "capacities": [str(c) for c in self.capacities],
            "capacities_approx": [float(c) for c in self.capacities],
            "lebesgue": str(self.lebesgue),
        }


def thm6_targets(k: int) -> Fraction:
    """Stage-k capacity target (2^(k+1)+1) / 2^(k+2), decreasing to 1/2."""
    return Fraction(2 ** (k + 1) + 1, 2 ** (k + 2))


def build_measure_zero_positive_capacity(
    b, stages: int, cutoff: int = 256
) -> SparseBuildResult:
    """Greedily pick n_0 < n_1 < ... so every sparse constraint set keeps
    capacity >= its stage target while its Lebesgue measure halves."""
    b = _check_symmetric_weight(b)
    indices: list[int] = []
    capacities: list[Fraction] = []
    for k in range(stages + 1):
        target = thm6_targets(k)
        start = indices[-1] + 1 if indices else 0
        for n in range(start, cutoff + 1):
            value = capacity_sparse(b, tuple(indices) + (n,))
            if value >= target:
                indices.append(n)
                capacities.append(value)
                break
        else:
            raise CutoffExceededError(
                "no index below %d reaches stage-%d target %s" % (cutoff, k, target)
            )
    final = sparse_to_clopen(indices)
    return SparseBuildResult(b, tuple(indices), tuple(capacities), lebesgue(final))
