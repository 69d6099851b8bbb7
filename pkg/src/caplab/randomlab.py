"""Random closed sets: intersection-probability recursion, regime
classification, seeded sampling and Monte Carlo cross-checks.

The recursion for the probability p_n that two independent random closed
sets still meet at depth n is assembled from the four branching cases:

    p_{n+1} = (b0^2 + b1^2) p_n + 2 (b0+b1) b2 p_n + b2^2 (2 p_n - p_n^2)

All regime decisions are rational sign tests; the irrational threshold
1 - sqrt(2)/2 never appears explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .cantor import ClopenSet, PrunedTree, max_enum_depth, truncate
from .capacity import _tree_distribution, capacity_bruteforce, capacity_clopen
from .errors import (
    CaplabError,
    CutoffExceededError,
    EnumerationBoundError,
    WrongRegimeError,
)
from .measure import MeasureSpec, mu_code, require_uniform, require_valid

ZERO_CAPACITY = "zero-capacity"
POSITIVE_CAPACITY = "positive-capacity"

_TWO64 = 1 << 64


def _recursion_coeffs(b0: Fraction, b1: Fraction) -> tuple[Fraction, Fraction]:
    """p -> C1 p - C2 p^2 from the four-case sum."""
    b2 = 1 - b0 - b1
    c1 = b0 * b0 + b1 * b1 + 2 * (b0 + b1) * b2 + 2 * b2 * b2
    return c1, b2 * b2


def symmetric_map(b: Fraction, p: Fraction) -> Fraction:
    """The symmetric-weights recursion map (2b^2-4b+2)p - (1-2b)^2 p^2."""
    b = Fraction(b)
    p = Fraction(p)
    return (2 * b * b - 4 * b + 2) * p - (1 - 2 * b) ** 2 * p * p


@dataclass(frozen=True)
class PnSequence:
    b0: Fraction
    b1: Fraction
    values: tuple[Fraction, ...]

    def to_csv(self) -> str:
        lines = ["n,p_n,approx"]
        for n, p in enumerate(self.values):
            lines.append("%d,%s,%r" % (n, p, float(p)))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "b0": str(self.b0),
            "b1": str(self.b1),
            "values": [{"value": str(p), "approx": float(p)} for p in self.values],
        }


def pn_exact(b0, b1, n: int) -> PnSequence:
    """Exact p_0 .. p_n.  Denominator size doubles per step, so keep n
    moderate (n <= 16 or so); use pn_bounds for tail behaviour."""
    spec = require_uniform(MeasureSpec.uniform(b0, b1))
    c1, c2 = _recursion_coeffs(spec.b0, spec.b1)
    values = [Fraction(1)]
    for _ in range(n):
        p = values[-1]
        values.append(c1 * p - c2 * p * p)
    return PnSequence(spec.b0, spec.b1, tuple(values))


def _floor_to(x: Fraction, bits: int) -> Fraction:
    q = 1 << bits
    return Fraction(x.numerator * q // x.denominator, q)


def _ceil_to(x: Fraction, bits: int) -> Fraction:
    q = 1 << bits
    return Fraction(-((-x.numerator * q) // x.denominator), q)


def pn_bound_sequences(
    b0, b1, n: int, bits: int = 128
) -> tuple[list[Fraction], list[Fraction]]:
    """Certified enclosures lo_k <= p_k <= hi_k with directed rounding to a
    2^-bits grid each step (the recursion map is increasing on [0,1])."""
    spec = require_uniform(MeasureSpec.uniform(b0, b1))
    c1, c2 = _recursion_coeffs(spec.b0, spec.b1)
    one = Fraction(1)
    los, his = [one], [one]
    for _ in range(n):
        lo, hi = los[-1], his[-1]
        nlo = _floor_to(c1 * lo - c2 * lo * lo, bits)
        nhi = _ceil_to(c1 * hi - c2 * hi * hi, bits)
        los.append(max(nlo, Fraction(0)))
        his.append(min(nhi, one))
    return los, his


def pn_bounds(b0, b1, n: int, bits: int = 128) -> tuple[Fraction, Fraction]:
    los, his = pn_bound_sequences(b0, b1, n, bits)
    return los[n], his[n]


@dataclass(frozen=True)
class RegimeReport:
    b0: Fraction
    b1: Fraction
    b: Fraction
    discriminant: Fraction
    regime: str
    fixed_point: Fraction

    def to_json(self) -> dict:
        return {
            "b0": str(self.b0),
            "b1": str(self.b1),
            "b": str(self.b),
            "discriminant": str(self.discriminant),
            "discriminant_approx": float(self.discriminant),
            "regime": self.regime,
            "fixed_point": str(self.fixed_point),
            "fixed_point_approx": float(self.fixed_point),
        }


def classify_regime(b0, b1) -> RegimeReport:
    """Zero-capacity iff (b0-b1)^2 + 4b^2 - 8b + 2 <= 0 with b=(b0+b1)/2;
    boundary cases count as zero-capacity (p=0 is then the only fixed
    point).  In the positive regime the limit of p_n is the positive fixed
    point of the recursion."""
    spec = require_uniform(MeasureSpec.uniform(b0, b1))
    b = (spec.b0 + spec.b1) / 2
    delta = (spec.b0 - spec.b1) / 2
    disc = (spec.b0 - spec.b1) ** 2 + 4 * b * b - 8 * b + 2
    if disc <= 0:
        return RegimeReport(spec.b0, spec.b1, b, disc, ZERO_CAPACITY, Fraction(0))
    fp = (2 * b * b + 2 * delta * delta - 4 * b + 1) / (1 - 2 * b) ** 2
    return RegimeReport(spec.b0, spec.b1, b, disc, POSITIVE_CAPACITY, fp)


def ml_test_indices(b0, b1, r_max: int, cutoff: int = 512) -> list[int]:
    """m_r = least index with p_{m_r} < 2^(-2r-1), decided by certified
    bounds at increasing precision (p_n is nonincreasing, so checking the
    previous index suffices for minimality)."""
    report = classify_regime(b0, b1)
    if report.regime != ZERO_CAPACITY:
        raise WrongRegimeError("p_n does not converge to 0 for these weights")
    bits = 64
    while True:
        los, his = pn_bound_sequences(b0, b1, cutoff, bits)
        out: list[int] = []
        ambiguous = False
        for r in range(r_max + 1):
            thr = Fraction(1, 2 ** (2 * r + 1))
            m = next((i for i, h in enumerate(his) if h < thr), None)
            if m is None:
                if los[cutoff] >= thr:
                    raise CutoffExceededError(
                        "p_n stays >= 2^-%d within cutoff %d" % (2 * r + 1, cutoff)
                    )
                ambiguous = True
                break
            if m > 0 and los[m - 1] < thr:
                ambiguous = True
                break
            out.append(m)
        if not ambiguous:
            return out
        bits *= 2
        if bits > 1 << 14:
            raise CaplabError("precision limit reached deciding ML-test indices")


def _thresholds(b0: Fraction, b1: Fraction) -> tuple[int, int]:
    """Inclusive uint64 thresholds: word <= u0 -> digit 0, <= u1 -> 1.

    P(digit 0) = ceil(b0 * 2^64) / 2^64, so the sampling bias is < 2^-64.
    """

    def ceil64(x: Fraction) -> int:
        return -((-x.numerator * _TWO64) // x.denominator)

    return ceil64(b0) - 1, ceil64(b0 + b1) - 1


def sample_tree(spec: MeasureSpec, depth: int, seed: int) -> PrunedTree:
    """Grow a tree in bfs order, one ternary digit per internal node, with
    exact rational thresholds on a seeded 64-bit stream."""
    require_valid(spec)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    state = _kernels._pure.stream_seed(seed & _kernels.MASK, 0)
    nodes = [""]
    frontier = [""]
    code = ""
    for _level in range(depth):
        nxt = []
        for node in frontier:
            if spec.kind == "uniform":
                r0, r1 = spec.b0, spec.b1
            else:
                d = mu_code(spec, code)
                if d == 0:
                    # unreachable subtree; thresholds of an exhausted mass
                    r0, r1 = Fraction(0), Fraction(0)
                else:
                    r0 = mu_code(spec, code + "0") / d
                    r1 = mu_code(spec, code + "1") / d
            state, word = _kernels._pure.next_word(state)
            if word * r0.denominator < r0.numerator * _TWO64:
                digit = "0"
            elif word * (r0 + r1).denominator < (r0 + r1).numerator * _TWO64:
                digit = "1"
            else:
                digit = "2"
            code += digit
            if digit in "02":
                nxt.append(node + "0")
            if digit in "12":
                nxt.append(node + "1")
        frontier = nxt
        nodes.extend(nxt)
    return PrunedTree(depth, frozenset(nodes))


@dataclass(frozen=True)
class EstimateRecord:
    trials: int
    hits: int
    frequency: Fraction
    exact: Fraction
    z_score: float

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "hits": self.hits,
            "frequency": str(self.frequency),
            "frequency_approx": float(self.frequency),
            "exact": str(self.exact),
            "exact_approx": float(self.exact),
            "z_score": self.z_score,
        }


def _estimate(hits: int, trials: int, exact: Fraction) -> EstimateRecord:
    freq = Fraction(hits, trials)
    if 0 < exact < 1:
        sigma = math.sqrt(float(exact * (1 - exact)) / trials)
        z = float(freq - exact) / sigma
    else:
        z = 0.0 if freq == exact else math.inf
    return EstimateRecord(trials, hits, freq, exact, z)


def mc_intersection(
    spec: MeasureSpec, depth: int, trials: int, seed: int
) -> EstimateRecord:
    """Hit frequency of Q_depth meeting K_depth over independent sampled
    pairs, against the exact p_depth."""
    require_uniform(spec)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    u0, u1 = _thresholds(spec.b0, spec.b1)
    hits = _kernels.mc_pair_hits(seed, trials, depth, u0, u1)
    exact = pn_exact(spec.b0, spec.b1, depth).values[depth]
    return _estimate(hits, trials, exact)


def mc_capacity(
    spec: MeasureSpec, q: ClopenSet, trials: int, seed: int
) -> EstimateRecord:
    """Hit frequency of a sampled closed set meeting ``q``, against the
    exact capacity."""
    require_valid(spec)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if spec.kind == "uniform":
        exact = capacity_clopen(spec, q)
        u0, u1 = _thresholds(spec.b0, spec.b1)
        leaf_lens = [len(s) for s in q.leaves]
        leaf_vals = [int(s, 2) if s else 0 for s in q.leaves]
        hits = _kernels.mc_clopen_hits(
            seed, trials, q.depth, u0, u1, leaf_lens, leaf_vals
        )
    else:
        exact = capacity_bruteforce(spec, q, q.depth)
        target = q.expand(q.depth)
        hits = 0
        for t in range(trials):
            tree = sample_tree(spec, q.depth, _kernels._pure.mix64(seed + t))
            if frozenset(tree.level(q.depth)) & target:
                hits += 1
    return _estimate(hits, trials, exact)


@dataclass(frozen=True)
class Claim1Report:
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


def claim1_check(spec: MeasureSpec, m: int, n: int) -> Claim1Report:
    """Finite analogue of the mass bound: the mu* mass of depth-m patterns
    whose hit probability is >= 2^-n is at most 2^n p_m.  Both sides by
    exhaustive enumeration of depth-m patterns."""
    require_uniform(spec)
    if m > max_enum_depth():
        raise EnumerationBoundError(
            "m = %d exceeds enumeration bound %d" % (m, max_enum_depth())
        )
    threshold = Fraction(1, 2**n)
    distribution = _tree_distribution(spec, m)
    lhs = Fraction(0)
    for q_nodes, q_weight in distribution:
        hit_prob = Fraction(0)
        for k_nodes, k_weight in distribution:
            if q_nodes & k_nodes:
                hit_prob += k_weight
        if hit_prob >= threshold:
            lhs += q_weight
    p_m = pn_exact(spec.b0, spec.b1, m).values[m]
    rhs = Fraction(2**n) * p_m
    return Claim1Report(lhs, rhs, lhs <= rhs)
