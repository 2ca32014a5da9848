"""Seed-set refinement by neighbor swaps.

Degrees and betweenness are precomputed once. Each pass walks the seeds
in order; for each seed a coin picks degree or betweenness ranking, the
top-ranked neighbor outside the set becomes the candidate, and the swap
is kept only when the estimated spread strictly increases, restarting
the pass. Every spread estimate in a run shares one RNG seed, so the
comparisons are paired and the accept decision is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .centrality import betweenness
from .diffusion import DiffusionModel, expected_spread


@dataclass(frozen=True)
class LocalSearchResult:
    seeds: list[int]
    accepted_spreads: list[float]
    evaluations: int


def local_search(g: Graph, seeds, model: DiffusionModel, max_iter: int = 5,
                 trials: int = 5000, rng_seed: int = 0) -> LocalSearchResult:
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    current = list(seeds)
    if len(set(current)) != len(current):
        raise ValueError("seed set holds duplicates")
    for v in current:
        if not 0 <= v < g.node_count:
            raise KeyError(f"no node {v}")

    deg = g.degrees()
    bet = betweenness(g).values
    coin = np.random.default_rng([rng_seed & 0x7FFFFFFF, 0x10CA15EA])
    cache: dict[frozenset, float] = {}
    evals = 0

    def spread(s: list[int]) -> float:
        nonlocal evals
        key = frozenset(s)
        if key not in cache:
            cache[key] = expected_spread(g, s, model, trials, rng_seed).mean
            evals += 1
        return cache[key]

    best = spread(current)
    history = [best]
    for _ in range(max_iter):
        improved = False
        members = set(current)
        for i, v in enumerate(current):
            rank = deg if coin.random() < 0.5 else bet
            candidates = [u for u in g.adjacency[v] if u not in members]
            if not candidates:
                continue
            u = max(candidates, key=lambda x: (rank[x], -x))
            trial_set = current.copy()
            trial_set[i] = u
            new = spread(trial_set)
            if new > best:
                current = trial_set
                best = new
                history.append(best)
                improved = True
                break
        if not improved:
            break
    return LocalSearchResult(current, history, evals)
