"""Reference implementations that share no code with the library.

They are deliberately naive: dense numpy products for multirelations, and
networkx reachability for strategies.
"""

import networkx as nx
import numpy as np


def mrel_compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m, k = a.shape
    k2, n = b.shape
    assert k == k2
    out = np.zeros((m, n), dtype=np.int64)
    for i in range(m):
        for j in range(n):
            out[i, j] = sum(int(a[i, t]) * int(b[t, j]) for t in range(k))
    return out


def mrel_tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.int64)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out


def filiform_order(n: int, offset: int = 0) -> list[tuple[int, int]]:
    return [(offset + a, offset + b) for a in range(n) for b in range(a + 1, n)]


def reference_compose(a: int, b: int, c: int, sigma_pairs, tau_pairs) -> set[tuple[int, int]]:
    """Hide the middle game: keep outer pairs linked by a path through the union."""
    g = nx.DiGraph()
    g.add_nodes_from(range(a + b + c))
    g.add_edges_from(sigma_pairs)
    g.add_edges_from((x + a, y + a) for x, y in tau_pairs)
    outer = [v for v in g if v < a or v >= a + b]
    rename = {v: (v if v < a else v - b) for v in outer}
    out = set()
    for x in outer:
        for y in nx.descendants(g, x):
            if y in rename:
                out.add((rename[x], rename[y]))
    return out


def reference_acyclic(n: int, pairs, order) -> bool:
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from(pairs)
    g.add_edges_from(order)
    return nx.is_directed_acyclic_graph(g)
