# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Cython Monte Carlo kernels; bit-identical twin of ``_pure``."""

from libc.stdlib cimport free, malloc

ctypedef unsigned long long u64

cdef u64 GOLDEN = 0x9E3779B97F4A7C15ULL


cdef inline u64 _mix(u64 z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline u64 _stream_seed(u64 master, u64 idx) noexcept nogil:
    return _mix(master + (idx + 1) * GOLDEN)


cdef inline u64 _next(u64* state) noexcept nogil:
    state[0] = state[0] + GOLDEN
    return _mix(state[0])


def mc_pair_hits(object seed, long trials, int depth, object u0o, object u1o):
    cdef u64 master = <u64> (seed & ((1 << 64) - 1))
    cdef u64 u0 = <u64> u0o
    cdef u64 u1 = <u64> u1o
    cdef long hits = 0
    cdef long t
    cdef int top, level, hit, dq, dk
    cdef u64 qs, ks, uq, uk
    cdef int stack[130]
    if depth < 0 or depth > 120:
        raise ValueError("depth out of range for compiled kernel")
    with nogil:
        for t in range(trials):
            if depth == 0:
                hits += 1
                continue
            qs = _stream_seed(master, 2 * t)
            ks = _stream_seed(master, 2 * t + 1)
            top = 0
            stack[0] = 0
            hit = 0
            while top >= 0:
                level = stack[top]
                top -= 1
                if level == depth:
                    hit = 1
                    break
                uq = _next(&qs)
                uk = _next(&ks)
                dq = 0 if uq <= u0 else (1 if uq <= u1 else 2)
                dk = 0 if uk <= u0 else (1 if uk <= u1 else 2)
                if dq != 0 and dk != 0:
                    top += 1
                    stack[top] = level + 1
                if dq != 1 and dk != 1:
                    top += 1
                    stack[top] = level + 1
            hits += hit
    return hits


cdef inline int _useful(int level, u64 node, int n, int* lens, u64* vals) noexcept nogil:
    cdef int j
    for j in range(n):
        if level <= lens[j]:
            if vals[j] >> (lens[j] - level) == node:
                return 1
        elif node >> (level - lens[j]) == vals[j]:
            return 1
    return 0


def mc_clopen_hits(object seed, long trials, int depth, object u0o, object u1o,
                   object leaf_lens, object leaf_vals):
    cdef u64 master = <u64> (seed & ((1 << 64) - 1))
    cdef u64 u0 = <u64> u0o
    cdef u64 u1 = <u64> u1o
    cdef int n = len(leaf_lens)
    cdef long hits = 0
    cdef long t
    cdef int top, level, hit, d, j
    cdef u64 st, u, node, child
    cdef int slev[130]
    cdef u64 snode[130]
    cdef int* lens
    cdef u64* vals
    if depth < 0 or depth > 62:
        raise ValueError("depth out of range for compiled kernel")
    if n == 0:
        return 0
    lens = <int*> malloc(n * sizeof(int))
    vals = <u64*> malloc(n * sizeof(u64))
    if lens == NULL or vals == NULL:
        free(lens)
        free(vals)
        raise MemoryError()
    for j in range(n):
        lens[j] = leaf_lens[j]
        vals[j] = leaf_vals[j]
    with nogil:
        for t in range(trials):
            if depth == 0:
                hits += 1
                continue
            st = _stream_seed(master, t)
            top = 0
            slev[0] = 0
            snode[0] = 0
            hit = 0
            while top >= 0:
                level = slev[top]
                node = snode[top]
                top -= 1
                if level == depth:
                    hit = 1
                    break
                u = _next(&st)
                d = 0 if u <= u0 else (1 if u <= u1 else 2)
                if d != 0:
                    child = node << 1 | 1
                    if _useful(level + 1, child, n, lens, vals):
                        top += 1
                        slev[top] = level + 1
                        snode[top] = child
                if d != 1:
                    child = node << 1
                    if _useful(level + 1, child, n, lens, vals):
                        top += 1
                        slev[top] = level + 1
                        snode[top] = child
            hits += hit
    free(lens)
    free(vals)
    return hits
