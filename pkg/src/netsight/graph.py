"""Immutable undirected simple graph with contiguous integer node ids.

Node ids are 0..node_count-1 internally. Files and generators may use
arbitrary integer labels; ingestion relabels them in sorted order and
keeps the original labels around so selector replies (which quote the
labels drawn on images) can be mapped back.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


class EdgeListError(ValueError):
    """Raised for malformed or empty edge-list input."""


UNREACHABLE = None


@dataclass(frozen=True)
class Graph:
    node_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]
    original_labels: tuple[int, ...]
    _label_to_id: dict[int, int] = field(repr=False, compare=False, default_factory=dict)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        if not 0 <= v < self.node_count:
            raise KeyError(f"no node {v}")
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adjacency]

    def has_node_label(self, label: int) -> bool:
        return label in self._label_to_id

    def id_of(self, label: int) -> int:
        """Internal id for an original label."""
        try:
            return self._label_to_id[label]
        except KeyError:
            raise KeyError(f"no node labeled {label}") from None

    def label_of(self, v: int) -> int:
        return self.original_labels[v]

    def label_map(self) -> dict[int, int]:
        """Original label -> internal id, exportable as JSON."""
        return dict(self._label_to_id)


def build_graph(node_labels, edge_pairs) -> Graph:
    """Construct a Graph from original labels and edges given in labels.

    Self-loops are dropped, duplicate edges collapsed, labels sorted and
    relabeled to 0..n-1. Nodes without edges are kept.
    """
    labels = sorted(set(node_labels))
    if not labels:
        raise EdgeListError("graph has no nodes")
    to_id = {lab: i for i, lab in enumerate(labels)}
    seen = set()
    for a, b in edge_pairs:
        if a == b:
            continue
        u, v = to_id[a], to_id[b]
        seen.add((min(u, v), max(u, v)))
    edges = tuple(sorted(seen))
    nbrs = [[] for _ in labels]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    adjacency = tuple(tuple(sorted(ns)) for ns in nbrs)
    return Graph(len(labels), edges, adjacency, tuple(labels), to_id)


def load_edge_list(source, keep_lcc: bool = True) -> Graph:
    """Parse edge-list text: one edge per line, two integer tokens,
    '#' comment lines ignored.

    By default only the largest connected component is retained, the
    usual preprocessing for the bundled empirical networks; pass
    keep_lcc=False when disconnected structure matters.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = source
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    pairs = []
    nodes = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise EdgeListError(f"line {lineno}: expected two node tokens, got {stripped!r}")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListError(f"line {lineno}: non-integer node token in {stripped!r}") from None
        pairs.append((a, b))
        nodes.add(a)
        nodes.add(b)
    if not nodes:
        raise EdgeListError("edge list holds no nodes")

    g = build_graph(nodes, pairs)
    if keep_lcc:
        comps = connected_components(g)
        largest = max(comps, key=lambda c: (len(c), -min(c)))
        if len(largest) < g.node_count:
            keep = {g.label_of(v) for v in largest}
            g = build_graph(keep, [(g.label_of(u), g.label_of(v)) for u, v in g.edges
                                   if g.label_of(u) in keep])
    return g


def load_edge_list_path(path, keep_lcc: bool = True) -> Graph:
    with open(path, "r", encoding="utf-8") as f:
        return load_edge_list(f, keep_lcc=keep_lcc)


def remove_nodes(g: Graph, labels) -> Graph:
    """Induced subgraph after deleting the nodes with the given original
    labels. Survivors keep their labels; isolated survivors are kept."""
    drop = set(labels)
    keep = [lab for lab in g.original_labels if lab not in drop]
    if not keep:
        return Graph(0, (), (), (), {})
    kept = set(keep)
    pairs = [(g.label_of(u), g.label_of(v)) for u, v in g.edges
             if g.label_of(u) in kept and g.label_of(v) in kept]
    return build_graph(keep, pairs)


def bfs_distances(g: Graph, source: int) -> list:
    """Hop distances from source; UNREACHABLE where disconnected."""
    dist = [UNREACHABLE] * g.node_count
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        for v in g.adjacency[u]:
            if dist[v] is UNREACHABLE:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def shortest_distance(g: Graph, u: int, v: int):
    """BFS hop distance between internal ids u and v; UNREACHABLE when
    they sit in different components, 0 when u == v."""
    if not 0 <= u < g.node_count:
        raise KeyError(f"no node {u}")
    if not 0 <= v < g.node_count:
        raise KeyError(f"no node {v}")
    if u == v:
        return 0
    dist = [UNREACHABLE] * g.node_count
    dist[u] = 0
    q = deque([u])
    while q:
        x = q.popleft()
        for y in g.adjacency[x]:
            if dist[y] is UNREACHABLE:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                q.append(y)
    return UNREACHABLE


def connected_components(g: Graph) -> list[list[int]]:
    """Partition of internal ids by reachability, each component sorted,
    components ordered by their smallest member."""
    seen = [False] * g.node_count
    comps = []
    for s in range(g.node_count):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        q = deque([s])
        while q:
            u = q.popleft()
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    q.append(v)
        comps.append(sorted(comp))
    return comps


def largest_component_size(g: Graph) -> int:
    if g.node_count == 0:
        return 0
    return max(len(c) for c in connected_components(g))


def has_cycle(g: Graph) -> bool:
    """True iff some component has at least as many edges as nodes."""
    comp_of = {}
    for i, comp in enumerate(connected_components(g)):
        for v in comp:
            comp_of[v] = i
        if len(comp) == 0:
            continue
    comp_nodes = {}
    comp_edges = {}
    for v, i in comp_of.items():
        comp_nodes[i] = comp_nodes.get(i, 0) + 1
    for u, v in g.edges:
        i = comp_of[u]
        comp_edges[i] = comp_edges.get(i, 0) + 1
    return any(comp_edges.get(i, 0) >= n for i, n in comp_nodes.items())
