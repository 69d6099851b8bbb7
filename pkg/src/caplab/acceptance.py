"""The acceptance suite: exact finite-depth oracle equivalences and the
headline closed-form values, each with its stated tolerance and runtime
budget.  Used by the CLI ``selftest`` command and by the test suite.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cantor import ClopenSet, clopen_from_strings, is_subset, prefix
from .capacity import (
    _tree_distribution,
    capacity_bruteforce,
    capacity_clopen,
    check_alternating,
    choquet_invert,
    prefix_capacities,
    recover_mu_star,
    spec_oracle,
)
from .constructions import (
    build_measure_zero_positive_capacity,
    build_usc_capacity,
    capacity_sparse,
    sparse_to_clopen,
    thm6_targets,
)
from .measure import MeasureSpec, _table_map, mu_star_tree
from .randomlab import (
    POSITIVE_CAPACITY,
    ZERO_CAPACITY,
    classify_regime,
    claim1_check,
    mc_capacity,
    mc_intersection,
    ml_test_indices,
    pn_bounds,
    pn_exact,
)

U13 = MeasureSpec.uniform(Fraction(1, 3), Fraction(1, 3))
U14 = MeasureSpec.uniform(Fraction(1, 4), Fraction(1, 4))
U2515 = MeasureSpec.uniform(Fraction(2, 5), Fraction(1, 5))
THREE_SPECS = (U13, U14, U2515)
MC_SEED = 20240824


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return "%s  criterion %2d  %s  (%.2fs)  %s" % (
            status,
            self.number,
            self.name,
            self.seconds,
            self.detail,
        )


def _random_depth3_clopen(rng: random.Random) -> ClopenSet:
    atoms = ["{:03b}".format(i) for i in range(8)]
    mask = rng.getrandbits(8)
    return clopen_from_strings(
        [a for i, a in enumerate(atoms) if mask >> i & 1], depth=3
    )


def _c1_capacity_oracle_equivalence() -> tuple[bool, str]:
    rng = random.Random(1001)
    sets = [_random_depth3_clopen(rng) for _ in range(200)]
    checked = 0
    for spec in THREE_SPECS:
        for q in sets:
            if capacity_clopen(spec, q) != capacity_bruteforce(spec, q, 3):
                return False, "mismatch at %r under %s" % (q.leaves, spec.to_json())
            checked += 1
    return True, "%d exact equalities" % checked


def _pair_sum_oracle(spec: MeasureSpec, n: int) -> Fraction:
    """Independent oracle for p_n: exhaustive sum over tree pairs whose
    depth-n truncations intersect."""
    dist = _tree_distribution(spec, n)
    total = Fraction(0)
    for q_nodes, q_w in dist:
        for k_nodes, k_w in dist:
            if q_nodes & k_nodes:
                total += q_w * k_w
    return total


def _c2_pn_oracle_equivalence() -> tuple[bool, str]:
    for spec in THREE_SPECS:
        seq = pn_exact(spec.b0, spec.b1, 3)
        for n in range(4):
            if seq.values[n] != _pair_sum_oracle(spec, n):
                return False, "p_%d mismatch under %s" % (n, spec.to_json())
    seq = pn_exact(Fraction(1, 3), Fraction(1, 3), 2)
    if seq.values[1] != Fraction(7, 9):
        return False, "p_1(1/3,1/3) != 7/9"
    if seq.values[2] != Fraction(455, 729):
        return False, "p_2(1/3,1/3) != 455/729"
    return True, "pair-sum oracle matches for n <= 3, three specs"


def _c3_regimes() -> tuple[bool, str]:
    r13 = classify_regime(Fraction(1, 3), Fraction(1, 3))
    if r13.regime != ZERO_CAPACITY:
        return False, "(1/3,1/3) not classified zero-capacity"
    r14 = classify_regime(Fraction(1, 4), Fraction(1, 4))
    if r14.regime != POSITIVE_CAPACITY or r14.fixed_point != Fraction(1, 2):
        return False, "(1/4,1/4) fixed point %s != 1/2" % r14.fixed_point
    r25 = classify_regime(Fraction(2, 5), Fraction(1, 5))
    if r25.regime != ZERO_CAPACITY or r25.discriminant != 0:
        return False, "(2/5,1/5) not at the exact zero-capacity boundary"
    lo, hi = pn_bounds(Fraction(1, 4), Fraction(1, 4), 200)
    half = Fraction(1, 2)
    eps = Fraction(1, 10**6)
    if not (half - eps < lo and hi < half + eps):
        return False, "p_200(1/4,1/4) enclosure [%s, %s] misses 1/2" % (lo, hi)
    _, hi13 = pn_bounds(Fraction(1, 3), Fraction(1, 3), 200)
    if not hi13 < Fraction(1, 10**3):
        return False, "p_200(1/3,1/3) upper bound %s >= 1e-3" % hi13
    return True, "regimes, fixed point 1/2, certified p_200 enclosures"


def _c4_monte_carlo() -> tuple[bool, str]:
    trials = 10**5
    rec = mc_intersection(U13, 8, trials, MC_SEED)
    if abs(rec.z_score) > 3:
        return False, "intersection z-score %.3f > 3" % rec.z_score
    q0 = clopen_from_strings(["0"], 1)
    rec2 = mc_capacity(U13, q0, trials, MC_SEED)
    if rec2.exact != Fraction(2, 3):
        return False, "exact capacity of I(0) is %s, not 2/3" % rec2.exact
    if abs(rec2.z_score) > 3:
        return False, "capacity z-score %.3f > 3" % rec2.z_score
    return True, "z-scores %.3f and %.3f within 3 sigma" % (
        rec.z_score,
        rec2.z_score,
    )


def _c5_choquet_round_trip() -> tuple[bool, str]:
    for spec in (U13, U2515):
        table = choquet_invert(spec_oracle(spec), 3)
        weights = {"0": spec.b0, "1": spec.b1, "2": spec.b2}
        entries = _table_map(table)
        for code, value in entries.items():
            if code and value != entries[code[:-1]] * weights[code[-1]]:
                return False, "weight mismatch at code %r under %s" % (
                    code,
                    spec.to_json(),
                )
        for height in (1, 2, 3):
            recovered = recover_mu_star(spec_oracle(spec), height)
            for tree, mass in recovered.items():
                if mass != mu_star_tree(spec, tree):
                    return False, "mu* mismatch at height %d" % height
    return True, "code-prefix weights and mu* recovered exactly at depth 3"


def _c6_capacity_axioms() -> tuple[bool, str]:
    rng = random.Random(1006)
    from .cantor import union

    for _ in range(200):
        q = _random_depth3_clopen(rng)
        bigger = union(q, _random_depth3_clopen(rng))
        spec = THREE_SPECS[rng.randrange(3)]
        if capacity_clopen(spec, q) > capacity_clopen(spec, bigger):
            return False, "monotonicity fails at %r" % (q.leaves,)
    for _ in range(200):
        size = rng.choice([2, 3])
        sets = [_random_depth3_clopen(rng) for _ in range(size)]
        spec = THREE_SPECS[rng.randrange(3)]
        report = check_alternating(spec, sets)
        if not report.holds:
            return False, "alternating inequality fails for %d sets" % size
    b = Fraction(1, 3)
    for _ in range(50):
        q = _random_depth3_clopen(rng)
        if capacity_clopen(U13, prefix("0", q)) != (1 - b) * capacity_clopen(U13, q):
            return False, "scaling fails at %r" % (q.leaves,)
    return True, "monotonicity, alternating (n<=3) and scaling exact"


def _c7_claim1() -> tuple[bool, str]:
    for m in range(4):
        for n in range(5):
            report = claim1_check(U13, m, n)
            if not report.holds:
                return False, "fails at m=%d n=%d: %s > %s" % (
                    m,
                    n,
                    report.lhs,
                    report.rhs,
                )
    return True, "mass bound holds exactly for m <= 3, n <= 4"


def _c8_ml_indices() -> tuple[bool, str]:
    ms = ml_test_indices(Fraction(1, 3), Fraction(1, 3), 5)
    if ms[0] != 4:
        return False, "m_0 = %d != 4" % ms[0]
    if any(a > b for a, b in zip(ms, ms[1:])):
        return False, "index sequence %r not nondecreasing" % ms
    return True, "indices %r" % ms


def _c9_usc_construction() -> tuple[bool, str]:
    targets = [
        Fraction(1),
        Fraction(3, 4),
        Fraction(5, 8),
        Fraction(9, 16),
        Fraction(17, 32),
        Fraction(33, 64),
    ]
    trace = build_usc_capacity(Fraction(1, 3), Fraction(1, 3), targets)
    for n in range(1, len(targets)):
        stage = trace.stages[n]
        cap = capacity_clopen(U13, stage.clopen)
        if cap != stage.capacity:
            return False, "stage %d capacity record mismatch" % n
        if not targets[n] <= cap <= targets[n - 1]:
            return False, "stage %d sandwich %s <= %s <= %s fails" % (
                n,
                targets[n],
                cap,
                targets[n - 1],
            )
        if not is_subset(stage.clopen, trace.stages[n - 1].clopen):
            return False, "stage %d not nested" % n
        if stage.max_step > stage.step_bound:
            return False, "stage %d removal step %s exceeds bound %s" % (
                n,
                stage.max_step,
                stage.step_bound,
            )
    # cross-check the incremental sweep against the splitting recursion
    stage1 = trace.stages[1]
    leaves = sorted(trace.stages[0].clopen.expand(stage1.refinement_depth))
    caps = prefix_capacities(U13, leaves)
    for k in range(len(leaves) + 1):
        direct = capacity_clopen(
            U13, clopen_from_strings(leaves[:k], stage1.refinement_depth)
        )
        if caps[k] != direct:
            return False, "prefix capacity sweep disagrees at k=%d" % k
    return True, "sandwich, nesting and removal bounds exact at every stage"


def _c10_thm6_construction() -> tuple[bool, str]:
    b = Fraction(1, 3)
    result = build_measure_zero_positive_capacity(b, 3)
    if result.indices[0] != 2:
        return False, "n_0 = %d != 2" % result.indices[0]
    want = Fraction(1760, 2187)
    if result.capacities[0] != want:
        return False, "T(X_(2)) = %s != 1760/2187" % result.capacities[0]
    if capacity_sparse(b, (2,)) != capacity_bruteforce(U13, sparse_to_clopen((2,)), 3):
        return False, "sparse capacity disagrees with brute force"
    for k, cap in enumerate(result.capacities):
        if cap < thm6_targets(k):
            return False, "stage %d capacity %s below target" % (k, cap)
    if result.lebesgue != Fraction(1, 16):
        return False, "final Lebesgue measure %s != 1/16" % result.lebesgue
    return True, "indices %r, capacities above targets, measure 1/16" % (
        list(result.indices),
    )


_CRITERIA: list[tuple[str, Callable[[], tuple[bool, str]], float]] = [
    ("capacity oracle equivalence", _c1_capacity_oracle_equivalence, 60.0),
    ("p_n oracle equivalence", _c2_pn_oracle_equivalence, None),
    ("regime classification", _c3_regimes, None),
    ("Monte Carlo consistency", _c4_monte_carlo, 30.0),
    ("Choquet round trip", _c5_choquet_round_trip, None),
    ("capacity axioms", _c6_capacity_axioms, None),
    ("claim-1 finite analogue", _c7_claim1, None),
    ("ML-test indices", _c8_ml_indices, None),
    ("usc capacity construction", _c9_usc_construction, 60.0),
    ("measure-zero positive-capacity construction", _c10_thm6_construction, None),
]


def criterion_count() -> int:
    return len(_CRITERIA)


def run_criterion(number: int) -> CriterionResult:
    name, fn, budget = _CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, not an abort
        ok, detail = False, "%s: %s" % (type(exc).__name__, exc)
    seconds = time.perf_counter() - start
    if ok and budget is not None and seconds > budget:
        ok, detail = False, "runtime %.1fs exceeds budget %.0fs" % (seconds, budget)
    return CriterionResult(number, name, ok, detail, seconds)


def run_all(numbers=None) -> list[CriterionResult]:
    if numbers is None:
        numbers = range(1, len(_CRITERIA) + 1)
    return [run_criterion(n) for n in numbers]
