"""Node placement: force-directed, circle and grid layouts, community
centroids, and the centroid-pull adjustment that tightens communities
visually while leaving their hubs in place."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .communities import CommunityAssignment

LAYOUT_KINDS = ("fruchterman_reingold", "circle", "grid")


@dataclass(frozen=True)
class LayoutResult:
    positions: tuple[tuple[float, float], ...]
    layout_kind: str
    rng_seed: int

    def __post_init__(self):
        if self.layout_kind not in LAYOUT_KINDS:
            raise ValueError(f"unknown layout kind {self.layout_kind!r}")
        for x, y in self.positions:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError("layout produced a non-finite coordinate")

    def to_json_dict(self) -> dict:
        return {
            "layout_kind": self.layout_kind,
            "rng_seed": self.rng_seed,
            "positions": {str(v): [x, y] for v, (x, y) in enumerate(self.positions)},
        }


@dataclass(frozen=True)
class AdjustmentParams:
    d: float = 0.7
    top_n: int = 5

    def __post_init__(self):
        if not 0.0 < self.d < 1.0:
            raise ValueError("d must lie strictly between 0 and 1")
        if self.top_n < 0:
            raise ValueError("top_n must be nonnegative")


def fr_layout(g: Graph, rng_seed: int = 0, iterations: int = 500) -> LayoutResult:
    """Force-directed placement: nodes repel like charges, edges pull
    like springs, displacement capped by a linearly cooling temperature.
    Deterministic per seed."""
    n = g.node_count
    rng = np.random.default_rng(rng_seed)
    pos = rng.random((n, 2))
    if n <= 1:
        return LayoutResult(tuple(map(tuple, pos.tolist())), "fruchterman_reingold", rng_seed)

    k = math.sqrt(1.0 / n)
    edge_idx = np.array(g.edges, dtype=np.int64) if g.edges else np.empty((0, 2), dtype=np.int64)
    temp = 0.1
    cool = temp / (iterations + 1)
    block = 512

    for _ in range(iterations):
        disp = np.zeros((n, 2))
        # repulsion, row blocks to bound the n^2 temporaries
        for start in range(0, n, block):
            rows = pos[start:start + block]
            delta = rows[:, None, :] - pos[None, :, :]
            dist = np.linalg.norm(delta, axis=2)
            np.clip(dist, 1e-9, None, out=dist)
            disp[start:start + block] += (delta / dist[:, :, None] * (k * k / dist)[:, :, None]).sum(axis=1)
        # attraction along edges
        if len(edge_idx):
            dvec = pos[edge_idx[:, 0]] - pos[edge_idx[:, 1]]
            dist = np.linalg.norm(dvec, axis=1)
            np.clip(dist, 1e-9, None, out=dist)
            pull = dvec / dist[:, None] * (dist * dist / k)[:, None]
            np.subtract.at(disp, edge_idx[:, 0], pull)
            np.add.at(disp, edge_idx[:, 1], pull)
        length = np.linalg.norm(disp, axis=1)
        np.clip(length, 1e-9, None, out=length)
        pos += disp / length[:, None] * np.minimum(length, temp)[:, None]
        temp -= cool

    return LayoutResult(tuple(map(tuple, pos.tolist())), "fruchterman_reingold", rng_seed)


def circle_layout(g: Graph) -> LayoutResult:
    """Node i at angle 2*pi*i/n on the unit circle."""
    n = g.node_count
    pts = []
    for i in range(n):
        ang = 2.0 * math.pi * i / max(n, 1)
        pts.append((math.cos(ang), math.sin(ang)))
    return LayoutResult(tuple(pts), "circle", 0)


def grid_layout(g: Graph) -> LayoutResult:
    """Row-major placement on a ceil(sqrt(n))-wide integer grid."""
    n = g.node_count
    width = max(1, math.ceil(math.sqrt(n)))
    pts = [(float(i % width), float(i // width)) for i in range(n)]
    return LayoutResult(tuple(pts), "grid", 0)


def centroids(asg: CommunityAssignment, layout: LayoutResult) -> dict[int, tuple[float, float]]:
    """Arithmetic mean of member positions per community."""
    if len(layout.positions) != len(asg.membership):
        raise ValueError("layout does not cover the assignment's nodes")
    sums = {c: [0.0, 0.0, 0] for c in range(asg.community_count)}
    for v, c in enumerate(asg.membership):
        x, y = layout.positions[v]
        acc = sums[c]
        acc[0] += x
        acc[1] += y
        acc[2] += 1
    return {c: (sx / cnt, sy / cnt) for c, (sx, sy, cnt) in sums.items()}


def adjust_positions(g: Graph, layout: LayoutResult, asg: CommunityAssignment,
                     params: AdjustmentParams) -> LayoutResult:
    """Pull every node toward its community centroid: p' = p*d + c*(1-d).

    The top_n highest-degree nodes of each community (degree ties broken
    by lower node id) stay where they are. Centroids are computed once,
    from the pre-adjustment positions.
    """
    cents = centroids(asg, layout)
    keep: set[int] = set()
    for c in range(asg.community_count):
        members = sorted(asg.members(c), key=lambda v: (-g.degree(v), v))
        keep.update(members[:params.top_n])
    d = params.d
    moved = []
    for v, (x, y) in enumerate(layout.positions):
        if v in keep:
            moved.append((x, y))
        else:
            cx, cy = cents[asg.membership[v]]
            moved.append((x * d + cx * (1.0 - d), y * d + cy * (1.0 - d)))
    return LayoutResult(tuple(moved), layout.layout_kind, layout.rng_seed)
