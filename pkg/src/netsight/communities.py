"""Community detection and size-driven merging.

Detection delegates to greedy modularity maximization (agglomerative,
deterministic). Merging repeatedly folds the smallest community into the
neighbor it shares the most edges with until a target count is reached,
which keeps small groups from vanishing into single-pixel blobs when the
graph is drawn.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .graph import Graph


@dataclass(frozen=True)
class CommunityAssignment:
    membership: tuple[int, ...]
    community_count: int

    def __post_init__(self):
        if self.community_count < 1 or len(self.membership) == 0:
            raise ValueError("assignment must cover at least one node and one community")
        used = set(self.membership)
        if used != set(range(self.community_count)):
            raise ValueError("community indices must be contiguous and non-empty")

    def members(self, c: int) -> list[int]:
        return [v for v, m in enumerate(self.membership) if m == c]

    def sizes(self) -> list[int]:
        counts = [0] * self.community_count
        for m in self.membership:
            counts[m] += 1
        return counts

    def to_json_dict(self) -> dict:
        return {str(v): int(c) for v, c in enumerate(self.membership)}


def _to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.node_count))
    h.add_edges_from(g.edges)
    return h


def detect_communities(g: Graph, rng_seed: int = 0) -> CommunityAssignment:
    """Greedy modularity partition. The algorithm is deterministic; the
    seed is recorded in call sites for config completeness only.
    Communities are indexed by size (largest first), ties by smallest
    member id."""
    if g.node_count == 1:
        return CommunityAssignment((0,), 1)
    comms = nx.algorithms.community.greedy_modularity_communities(_to_networkx(g))
    ordered = sorted((sorted(c) for c in comms), key=lambda c: (-len(c), c[0]))
    membership = [0] * g.node_count
    for idx, comm in enumerate(ordered):
        for v in comm:
            membership[v] = idx
    return CommunityAssignment(tuple(membership), len(ordered))


def _connecting_edges(g: Graph, membership, a: int) -> dict[int, int]:
    """Edge counts from community a into each other community."""
    counts: dict[int, int] = {}
    for u, v in g.edges:
        cu, cv = membership[u], membership[v]
        if cu == cv:
            continue
        if cu == a:
            counts[cv] = counts.get(cv, 0) + 1
        elif cv == a:
            counts[cu] = counts.get(cu, 0) + 1
    return counts


def merge_communities(g: Graph, asg: CommunityAssignment, target: int) -> CommunityAssignment:
    """Reduce the assignment to exactly `target` communities.

    Each round: pick the smallest community (ties: lowest index), fold it
    into the neighbor with the most connecting edges (ties: larger
    neighbor, then lower index). A community with no external edges is
    folded into the next-smallest one. Indices are recompacted after
    every fold.
    """
    if not 1 <= target <= asg.community_count:
        raise ValueError(f"target must lie in 1..{asg.community_count}")
    membership = list(asg.membership)
    count = asg.community_count
    while count > target:
        sizes = [0] * count
        for m in membership:
            sizes[m] += 1
        smallest = min(range(count), key=lambda c: (sizes[c], c))
        counts = _connecting_edges(g, membership, smallest)
        if counts:
            dest = max(counts, key=lambda c: (counts[c], sizes[c], -c))
        else:
            others = [c for c in range(count) if c != smallest]
            dest = min(others, key=lambda c: (sizes[c], c))
        for v, m in enumerate(membership):
            if m == smallest:
                membership[v] = dest
        # recompact: indices above the removed slot shift down by one
        for v, m in enumerate(membership):
            if m > smallest:
                membership[v] = m - 1
        count -= 1
    return CommunityAssignment(tuple(membership), count)
