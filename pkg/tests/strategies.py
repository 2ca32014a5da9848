"""Shared hypothesis strategies producing small simple graphs."""

import hypothesis.strategies as st


@st.composite
def small_graphs(draw, min_nodes=2, max_nodes=8, max_edges=12):
    """(n, edges) with edges a sorted list of distinct undirected pairs."""
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = draw(st.integers(0, min(len(pairs), max_edges)))
    chosen = draw(st.permutations(range(len(pairs))))[:m]
    return n, sorted(pairs[i] for i in chosen)


@st.composite
def connected_graphs(draw, min_nodes=2, max_nodes=8, max_extra_edges=6):
    """(n, edges) guaranteed connected: a random spanning tree plus extras."""
    n = draw(st.integers(min_nodes, max_nodes))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    extra = draw(st.integers(0, min(len(pairs), max_extra_edges)))
    chosen = draw(st.permutations(range(len(pairs))))[:extra]
    edges.update(pairs[i] for i in chosen)
    return n, sorted(edges)
