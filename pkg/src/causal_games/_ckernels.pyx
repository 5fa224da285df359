# cython: boundscheck=False, wraparound=False
"""Compiled versions of the functions in ``_pykernels``."""

from libc.stdint cimport uint64_t

from causal_games import _pykernels

CODE_H = -1
CODE_E = -2
CODE_Z = -3


cdef void _reach(int n, list edges, uint64_t *reach):
    cdef int i, k, a, b
    cdef uint64_t bit, rk
    for i in range(n):
        reach[i] = 0
    for a, b in edges:
        reach[a] |= (<uint64_t>1) << b
    for k in range(n):
        bit = (<uint64_t>1) << k
        rk = reach[k]
        for i in range(n):
            if reach[i] & bit:
                reach[i] |= rk


def closure_restrict(int n, edges, keep):
    if n > 64:
        return _pykernels.closure_restrict(n, edges, keep)
    cdef uint64_t reach[64]
    cdef int a, b
    _reach(n, list(edges), reach)
    cdef list out = []
    for a in keep:
        for b in keep:
            if (reach[a] >> b) & 1:
                out.append((a, b))
    return out


def has_cycle(int n, edges):
    if n > 64:
        return _pykernels.has_cycle(n, edges)
    cdef uint64_t reach[64]
    cdef int i
    _reach(n, list(edges), reach)
    for i in range(n):
        if (reach[i] >> i) & 1:
            return True
    return False


def mrel_encode(entries, int m, int n):
    cdef list out = []
    cdef int i, j, k, r
    for i in range(m):
        for j in range(n - 1, -1, -1):
            r = entries[i * n + j]
            for k in range(r):
                out.append(j)
        out.append(CODE_E)
    for j in range(n):
        out.append(CODE_H)
    out.append(CODE_Z)
    return out


def mrel_decode(codes):
    cdef int m = 0, n = 0, es = 0, hs = 0, c, col
    for c in codes:
        if c == CODE_E:
            m += 1
        elif c == CODE_H:
            n += 1
    cdef list entries = [0] * (m * n)
    for c in codes:
        if c >= 0:
            col = hs + c
            if es >= m or col >= n:
                raise ValueError("ill-typed code word")
            entries[es * n + col] += 1
        elif c == CODE_E:
            es += 1
        elif c == CODE_H:
            hs += 1
    return m, n, entries
