"""Structural node scores: degree, betweenness, closeness, PageRank and
collective influence. All operate on the immutable Graph and are pure."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import Graph

METHODS = ("degree", "betweenness", "closeness", "pagerank", "collective_influence")


@dataclass(frozen=True)
class CentralityScores:
    method: str
    values: tuple[float, ...]
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown centrality method {self.method!r}")
        if any(v != v or v in (float("inf"), float("-inf")) for v in self.values):
            raise ValueError("centrality scores must be finite")


class PageRankDivergence(RuntimeError):
    """Power iteration failed to converge; carries the last iterate."""

    def __init__(self, iterate, change):
        super().__init__(f"pagerank did not converge, last L1 change {change:g}")
        self.iterate = iterate
        self.change = change


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def betweenness(g: Graph) -> CentralityScores:
    """Shortest-path betweenness, unnormalized, each unordered node pair
    counted once. Brandes' dependency accumulation, O(VE)."""
    n = g.node_count
    bc = [0.0] * n
    adj = g.adjacency
    for s in range(n):
        # single-source shortest-path DAG
        sigma = [0.0] * n
        dist = [-1] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma[s] = 1.0
        dist[s] = 0
        order = []
        q = deque([s])
        while q:
            u = q.popleft()
            order.append(u)
            du = dist[u]
            su = sigma[u]
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = du + 1
                    q.append(w)
                if dist[w] == du + 1:
                    sigma[w] += su
                    preds[w].append(u)
        delta = [0.0] * n
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for u in preds[w]:
                delta[u] += sigma[u] * coeff
            if w != s:
                bc[w] += delta[w]
    # each unordered pair was visited from both endpoints
    return CentralityScores("betweenness", tuple(x / 2.0 for x in bc))


def closeness(g: Graph, v: int) -> float:
    """1 / sum of hop distances to reachable nodes; 0 for isolated v."""
    if not 0 <= v < g.node_count:
        raise KeyError(f"no node {v}")
    total = 0
    seen = [False] * g.node_count
    seen[v] = True
    q = deque([(v, 0)])
    while q:
        u, d = q.popleft()
        total += d
        for w in g.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                q.append((w, d + 1))
    if total == 0:
        return 0.0
    return 1.0 / total


def closeness_all(g: Graph) -> CentralityScores:
    return CentralityScores("closeness", tuple(closeness(g, v) for v in range(g.node_count)))


def pagerank(g: Graph, alpha: float = 0.85, tol: float = 1e-9, max_iter: int = 200) -> CentralityScores:
    """Fixed point of PR(v) = (1-alpha)/n + alpha * sum PR(u)/deg(u) over
    neighbors u. Degree-zero nodes spread their mass uniformly so the
    scores keep summing to 1."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie strictly between 0 and 1")
    n = g.node_count
    degs = g.degrees()
    pr = [1.0 / n] * n
    base = (1.0 - alpha) / n
    dangling = [v for v in range(n) if degs[v] == 0]
    for _ in range(max_iter):
        loose = alpha * sum(pr[v] for v in dangling) / n
        share = [pr[v] / degs[v] if degs[v] else 0.0 for v in range(n)]
        nxt = [base + loose + alpha * sum(share[u] for u in g.adjacency[v]) for v in range(n)]
        change = sum(abs(a - b) for a, b in zip(nxt, pr))
        pr = nxt
        if change < tol:
            return CentralityScores("pagerank", tuple(pr),
                                    {"alpha": alpha, "tol": tol, "max_iter": max_iter})
    raise PageRankDivergence(pr, change)


def collective_influence(g: Graph, v: int, l: int = 2) -> float:
    """(deg(v)-1) times the sum of (deg(u)-1) over the exact-distance-l
    BFS frontier from v."""
    if l < 1:
        raise ValueError("radius l must be at least 1")
    if not 0 <= v < g.node_count:
        raise KeyError(f"no node {v}")
    kv = len(g.adjacency[v])
    if kv == 0:
        return 0.0
    dist = {v: 0}
    frontier = [v]
    for step in range(l):
        nxt = []
        for u in frontier:
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = step + 1
                    nxt.append(w)
        frontier = nxt
        if not frontier:
            return 0.0
    return float(kv - 1) * sum(len(g.adjacency[u]) - 1 for u in frontier)


def collective_influence_all(g: Graph, l: int = 2) -> CentralityScores:
    vals = tuple(collective_influence(g, v, l) for v in range(g.node_count))
    return CentralityScores("collective_influence", vals, {"l": l})


def scores_for(g: Graph, method: str, *, l: int = 2, alpha: float = 0.85) -> list[float]:
    """Full score vector for any method name; the ranking backbone for
    heuristic selection."""
    if method == "degree":
        return [float(d) for d in g.degrees()]
    if method == "betweenness":
        return list(betweenness(g).values)
    if method == "closeness":
        return list(closeness_all(g).values)
    if method == "pagerank":
        return list(pagerank(g, alpha=alpha).values)
    if method == "collective_influence":
        return list(collective_influence_all(g, l).values)
    raise ValueError(f"unknown centrality method {method!r}")
