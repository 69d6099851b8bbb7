"""Computable measures on {0,1,2}^N and the induced mass on closed sets.

A measure is given by branching weights: either a uniform pair (b0, b1)
with b2 = 1 - b0 - b1, or a finite-depth table mapping ternary code
prefixes to exact rationals.  Table specs never extrapolate: asking for an
uncovered prefix is an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .cantor import ClopenSet, PrunedTree, encode_tree
from .errors import InvalidSpecError, UncoveredPrefixError


@dataclass(frozen=True)
class MeasureSpec:
    kind: str  # "uniform" | "table"
    b0: Fraction | None = None
    b1: Fraction | None = None
    entries: tuple[tuple[str, Fraction], ...] | None = None
    # optional boundedness certificate: lo*d(s) < d(s^i) < hi*d(s)
    bound_lo: Fraction | None = None
    bound_hi: Fraction | None = None

    @classmethod
    def uniform(cls, b0, b1) -> "MeasureSpec":
        return cls(kind="uniform", b0=Fraction(b0), b1=Fraction(b1))

    @classmethod
    def table(cls, entries: Mapping[str, Fraction], bounds=None) -> "MeasureSpec":
        items = tuple(sorted((k, Fraction(v)) for k, v in entries.items()))
        lo, hi = (Fraction(bounds[0]), Fraction(bounds[1])) if bounds else (None, None)
        return cls(kind="table", entries=items, bound_lo=lo, bound_hi=hi)

    @property
    def b2(self) -> Fraction:
        return 1 - self.b0 - self.b1

    def to_json(self) -> dict:
        if self.kind == "uniform":
            return {"kind": "uniform", "b0": str(self.b0), "b1": str(self.b1)}
        doc = {"kind": "table", "entries": {k: str(v) for k, v in self.entries}}
        if self.bound_lo is not None:
            doc["bounds"] = [str(self.bound_lo), str(self.bound_hi)]
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "MeasureSpec":
        if doc.get("kind") == "uniform":
            return cls.uniform(Fraction(doc["b0"]), Fraction(doc["b1"]))
        if doc.get("kind") == "table":
            entries = {k: Fraction(v) for k, v in doc["entries"].items()}
            bounds = doc.get("bounds")
            return cls.table(entries, bounds)
        raise InvalidSpecError("unknown measure kind %r" % doc.get("kind"))


@lru_cache(maxsize=None)
def _table_map(spec: MeasureSpec) -> dict[str, Fraction]:
    return dict(spec.entries)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    section4_ready: bool
    issues: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "section4_ready": self.section4_ready,
            "issues": list(self.issues),
        }


def validate_spec(spec: MeasureSpec) -> ValidationReport:
    """Check the branching-weight invariants; never raises."""
    issues: list[str] = []
    s4 = True
    if spec.kind == "uniform":
        if spec.b0 is None or spec.b1 is None:
            issues.append("uniform spec must carry b0 and b1")
        else:
            if not (spec.b0 > 0 and spec.b1 > 0):
                issues.append("need b0 > 0 and b1 > 0")
            if not (spec.b0 + spec.b1 < 1):
                issues.append("need b0 + b1 < 1 (b2 > 0)")
            if not (spec.b1 <= spec.b0):
                s4 = False
    elif spec.kind == "table":
        table = _table_map(spec)
        if table.get("") != 1:
            issues.append("table must have d('') = 1")
        for code, value in table.items():
            if value < 0 or value > 1:
                issues.append("d(%r) = %s outside [0,1]" % (code, value))
            kids = [code + i for i in "012"]
            listed = [k for k in kids if k in table]
            if listed and len(listed) < 3:
                issues.append("children of %r only partially listed" % code)
            elif len(listed) == 3 and sum(table[k] for k in kids) != value:
                issues.append("additivity fails at %r" % code)
            if spec.bound_lo is not None and len(listed) == 3:
                for k in kids:
                    if not (spec.bound_lo * value < table[k] < spec.bound_hi * value):
                        issues.append("boundedness certificate fails at %r" % k)
        s4 = False  # the section-4 convention is about uniform weights
    else:
        issues.append("unknown kind %r" % spec.kind)
        s4 = False
    valid = not issues
    return ValidationReport(valid, valid and s4, tuple(issues))


def require_valid(spec: MeasureSpec) -> MeasureSpec:
    report = validate_spec(spec)
    if not report.valid:
        raise InvalidSpecError("; ".join(report.issues))
    return spec


def require_uniform(spec: MeasureSpec) -> MeasureSpec:
    from .errors import NonUniformSpecError

    require_valid(spec)
    if spec.kind != "uniform":
        raise NonUniformSpecError("operation requires a uniform measure spec")
    return spec


def mu_code(spec: MeasureSpec, code: str) -> Fraction:
    """Measure of the interval of ternary sequences extending ``code``."""
    require_valid(spec)
    if spec.kind == "uniform":
        weights = {"0": spec.b0, "1": spec.b1, "2": spec.b2}
        value = Fraction(1)
        for digit in code:
            value *= weights[digit]
        return value
    table = _table_map(spec)
    try:
        return table[code]
    except KeyError:
        raise UncoveredPrefixError("table does not cover code %r" % code) from None


def mu_star_tree(spec: MeasureSpec, tree: PrunedTree) -> Fraction:
    """Probability that a random closed set's tree agrees with ``tree``
    up to its height; equals the measure of the code interval."""
    return mu_code(spec, encode_tree(tree))


def lebesgue(q: ClopenSet) -> Fraction:
    """Fair-coin measure of a clopen set: sum of 2^-|leaf|."""
    return sum((Fraction(1, 2 ** len(leaf)) for leaf in q.leaves), Fraction(0))
