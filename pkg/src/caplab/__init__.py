"""caplab: exact measure, capacity and randomness experiments on closed
subsets of Cantor space."""

from ._kernels import BACKEND
from .cantor import (
    ClopenSet,
    PrunedTree,
    clopen_from_strings,
    decode_code,
    empty_set,
    encode_tree,
    enumerate_trees,
    full_space,
    truncate,
)
from .capacity import (
    capacity_bruteforce,
    capacity_clopen,
    capacity_table,
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
)
from .errors import CaplabError
from .measure import MeasureSpec, lebesgue, mu_code, mu_star_tree, validate_spec
from .randomlab import (
    classify_regime,
    claim1_check,
    mc_capacity,
    mc_intersection,
    ml_test_indices,
    pn_bounds,
    pn_exact,
    sample_tree,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CaplabError",
    "ClopenSet",
    "MeasureSpec",
    "PrunedTree",
    "build_measure_zero_positive_capacity",
    "build_usc_capacity",
    "capacity_bruteforce",
    "capacity_clopen",
    "capacity_sparse",
    "capacity_table",
    "check_alternating",
    "choquet_invert",
    "claim1_check",
    "classify_regime",
    "clopen_from_strings",
    "decode_code",
    "empty_set",
    "encode_tree",
    "enumerate_trees",
    "full_space",
    "lebesgue",
    "mc_capacity",
    "mc_intersection",
    "ml_test_indices",
    "mu_code",
    "mu_star_tree",
    "pn_bounds",
    "pn_exact",
    "prefix_capacities",
    "recover_mu_star",
    "sample_tree",
    "sparse_to_clopen",
    "spec_oracle",
    "truncate",
    "validate_spec",
]
