"""Exception hierarchy. Every domain error carries a stable ``kind`` tag
that the CLI serializes and maps to exit code 1."""


class CaplabError(Exception):
    kind = "error"


class MalformedCodeError(CaplabError):
    kind = "malformed-code"


class DepthExceededError(CaplabError):
    kind = "depth-exceeded"


class EnumerationBoundError(CaplabError):
    kind = "bound-exceeded"


class UncoveredPrefixError(CaplabError):
    kind = "uncovered-prefix"


class InvalidSpecError(CaplabError):
    kind = "invalid-spec"


class NonUniformSpecError(CaplabError):
    kind = "non-uniform-spec"


class InconsistentCapacityError(CaplabError):
    kind = "inconsistent-capacity"


class WrongRegimeError(CaplabError):
    kind = "wrong-regime"


class CutoffExceededError(CaplabError):
    kind = "cutoff-exceeded"


class NonMonotoneTargetsError(CaplabError):
    kind = "non-monotone-targets"


class DegenerateWeightsError(CaplabError):
    kind = "degenerate-weights"


class LeafBudgetError(CaplabError):
    kind = "leaf-budget-exceeded"
