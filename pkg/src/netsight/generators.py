"""Small synthetic graphs in three classic families. All take a numpy
Generator so batch statistics are reproducible seed by seed."""

from __future__ import annotations

import numpy as np

from .graph import Graph, build_graph


def ba_graph(n: int, m: int = 2, rng: np.random.Generator | None = None) -> Graph:
    """Preferential attachment: start from a complete core of m nodes,
    then attach each new node to m distinct existing nodes chosen with
    probability proportional to degree. Always connected; for m=2 the
    edge count is exactly 2n-3."""
    if rng is None:
        rng = np.random.default_rng()
    if n < m + 1:
        raise ValueError(f"need n > m, got n={n}, m={m}")
    edges = [(i, j) for i in range(m) for j in range(i + 1, m)]
    # endpoint multiset; each appearance weighs a node by its degree
    repeated: list[int] = [v for e in edges for v in e]
    if not repeated:
        repeated = [0]
    for new in range(m, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(repeated[rng.integers(0, len(repeated))])
        for t in sorted(targets):
            edges.append((t, new))
            repeated.extend((t, new))
    return build_graph(range(n), edges)


def er_graph(n: int, p: float, rng: np.random.Generator | None = None) -> Graph:
    """Independent coin per node pair. Isolated nodes are kept."""
    if rng is None:
        rng = np.random.default_rng()
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((i, j))
    return build_graph(range(n), edges)


def ws_graph(n: int, rewire_p: float = 0.2, rng: np.random.Generator | None = None) -> Graph:
    """Ring with one neighbor per side, then each edge's far endpoint is
    rewired with probability rewire_p to a uniformly chosen node that
    keeps the graph simple. Edge count stays n, so a cycle always
    survives somewhere."""
    if rng is None:
        rng = np.random.default_rng()
    if n < 3:
        raise ValueError("ring needs at least 3 nodes")
    neighbors: dict[int, set[int]] = {i: set() for i in range(n)}
    edges = []
    for i in range(n):
        j = (i + 1) % n
        edges.append((i, j))
        neighbors[i].add(j)
        neighbors[j].add(i)
    for idx, (u, v) in enumerate(edges):
        if rng.random() >= rewire_p:
            continue
        candidates = [w for w in range(n) if w != u and w not in neighbors[u]]
        if not candidates:
            continue
        w = candidates[rng.integers(0, len(candidates))]
        neighbors[u].discard(v)
        neighbors[v].discard(u)
        neighbors[u].add(w)
        neighbors[w].add(u)
        edges[idx] = (u, w)
    return build_graph(range(n), edges)
