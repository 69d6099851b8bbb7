"""Pure-Python Monte Carlo kernels.

Reference implementation; the optional Cython module ``_fast`` implements
the same algorithms bit-for-bit (splitmix64 streams, identical traversal
order), so hit counts are independent of the backend.
"""

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def stream_seed(master: int, idx: int) -> int:
    """Deterministic per-trial stream state from the master seed."""
    return mix64((master + (idx + 1) * GOLDEN) & MASK)


def next_word(state: int) -> tuple[int, int]:
    state = (state + GOLDEN) & MASK
    return state, mix64(state)


def mc_pair_hits(seed: int, trials: int, depth: int, u0: int, u1: int) -> int:
    """Count trials where two sampled closed sets meet down to ``depth``.

    Only nodes shared by both trees are expanded (digits elsewhere cannot
    affect the intersection event).  Digit = 0 if word <= u0, 1 if <= u1,
    else 2; u0/u1 are the inclusive uint64 images of b0 and b0+b1.
    """
    hits = 0
    for t in range(trials):
        if depth == 0:
            hits += 1
            continue
        qs = stream_seed(seed, 2 * t)
        ks = stream_seed(seed, 2 * t + 1)
        stack = [0]
        hit = 0
        while stack:
            level = stack.pop()
            if level == depth:
                hit = 1
                break
            qs, uq = next_word(qs)
            ks, uk = next_word(ks)
            dq = 0 if uq <= u0 else 1 if uq <= u1 else 2
            dk = 0 if uk <= u0 else 1 if uk <= u1 else 2
            if dq != 0 and dk != 0:
                stack.append(level + 1)
            if dq != 1 and dk != 1:
                stack.append(level + 1)
        hits += hit
    return hits


def _useful(level: int, node: int, leaf_lens, leaf_vals) -> bool:
    for ll, lv in zip(leaf_lens, leaf_vals):
        if level <= ll:
            if lv >> (ll - level) == node:
                return True
        elif node >> (level - ll) == lv:
            return True
    return False


def mc_clopen_hits(
    seed: int, trials: int, depth: int, u0: int, u1: int, leaf_lens, leaf_vals
) -> int:
    """Count trials where a sampled closed set meets the clopen set given
    by the antichain (leaf_lens[i], leaf_vals[i]).  Only nodes whose
    interval meets the clopen set are expanded."""
    hits = 0
    n = len(leaf_lens)
    for t in range(trials):
        if n == 0:
            break
        if depth == 0:
            hits += 1
            continue
        st = stream_seed(seed, t)
        stack = [(0, 0)]
        hit = 0
        while stack:
            level, node = stack.pop()
            if level == depth:
                hit = 1
                break
            st, u = next_word(st)
            d = 0 if u <= u0 else 1 if u <= u1 else 2
            if d != 0:
                child = node << 1 | 1
                if _useful(level + 1, child, leaf_lens, leaf_vals):
                    stack.append((level + 1, child))
            if d != 1:
                child = node << 1
                if _useful(level + 1, child, leaf_lens, leaf_vals):
                    stack.append((level + 1, child))
        hits += hit
    return hits
