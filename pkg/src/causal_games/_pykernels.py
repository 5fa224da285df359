"""Pure-Python versions of the hot loops.  ``_ckernels.pyx`` mirrors this file."""

# B-letter integer codes: W_i is i >= 0, then H, E, Z
CODE_H = -1
CODE_E = -2
CODE_Z = -3


def _reach(n, edges):
    reach = [0] * n
    for a, b in edges:
        reach[a] |= 1 << b
    for k in range(n):
        bit = 1 << k
        rk = reach[k]
        for i in range(n):
            if reach[i] & bit:
                reach[i] |= rk
    return reach


def closure_restrict(n, edges, keep):
    """Pairs (a, b) of nodes of ``keep`` joined by a non-empty path."""
    reach = _reach(n, edges)
    return [(a, b) for a in keep for b in keep if reach[a] >> b & 1]


def has_cycle(n, edges):
    reach = _reach(n, edges)
    return any(reach[i] >> i & 1 for i in range(n))


def mrel_encode(entries, m, n):
    """Canonical word codes of a row-major m×n matrix of naturals."""
    out = []
    for i in range(m):
        row = i * n
        for j in range(n - 1, -1, -1):
            out.extend([j] * entries[row + j])
        out.append(CODE_E)
    out.extend([CODE_H] * n)
    out.append(CODE_Z)
    return out


def mrel_decode(codes):
    """Letter semantics of a code word: returns (m, n, row-major entries)."""
    m = sum(1 for c in codes if c == CODE_E)
    n = sum(1 for c in codes if c == CODE_H)
    entries = [0] * (m * n)
    es = hs = 0
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
