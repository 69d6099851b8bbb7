"""Monte Carlo kernels with a compiled fast path.

``BACKEND`` reports which implementation serves the common case; inputs
outside the compiled kernel's range (very deep trees) always take the
pure path, in both builds, so results never depend on the backend.
"""

from . import _pure

try:
    from . import _fast as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    _impl = _pure
    BACKEND = "python"

MASK = _pure.MASK

_PAIR_DEPTH_LIMIT = 120
_CLOPEN_DEPTH_LIMIT = 62


def mc_pair_hits(seed: int, trials: int, depth: int, u0: int, u1: int) -> int:
    seed &= MASK
    if _impl is not _pure and depth <= _PAIR_DEPTH_LIMIT:
        return _impl.mc_pair_hits(seed, trials, depth, u0, u1)
    return _pure.mc_pair_hits(seed, trials, depth, u0, u1)


def mc_clopen_hits(
    seed: int, trials: int, depth: int, u0: int, u1: int, leaf_lens, leaf_vals
) -> int:
    seed &= MASK
    if _impl is not _pure and depth <= _CLOPEN_DEPTH_LIMIT:
        return _impl.mc_clopen_hits(seed, trials, depth, u0, u1, leaf_lens, leaf_vals)
    return _pure.mc_clopen_hits(seed, trials, depth, u0, u1, leaf_lens, leaf_vals)
