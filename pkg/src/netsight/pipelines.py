"""End-to-end flows: seed selection with refinement for influence
maximization, and sequential node removal for dismantling, plus the
trace metrics (robustness and area under the shrink curve)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import Graph, largest_component_size, remove_nodes
from .centrality import collective_influence
from .communities import detect_communities, merge_communities
from .layout import (LayoutResult, AdjustmentParams, fr_layout, circle_layout,
                     grid_layout, adjust_positions)
from .render import (RenderSpec, FullLabels, PartialLabels, ImageArtifact,
                     render, rasterize)
from .diffusion import DiffusionModel, SpreadEstimate, expected_spread
from .prompts import AgentProfile, build_im_prompt, build_dismantle_prompt
from .parsing import (parse_node_list, parse_single_node, validate_seed_set,
                      ValidationReport, heuristic_select, aggregate_attempts)
from .backends import SelectorRequest, query
from .localsearch import local_search
from .config import VizParams


class PipelineError(RuntimeError):
    pass


def _make_layout(g: Graph, viz: VizParams) -> LayoutResult:
    if viz.layout == "circle":
        return circle_layout(g)
    if viz.layout == "grid":
        return grid_layout(g)
    return fr_layout(g, viz.rng_seed, viz.iterations)


def prepare_image(g: Graph, label_mode: str, viz: VizParams,
                  rasterize_png: bool = True, png_scale: float = 1.0):
    """The visualization pipeline: detect communities, merge down to the
    target count, lay out, pull members toward their community centroid,
    draw. Returns (artifact, assignment, adjusted layout)."""
    asg = detect_communities(g, viz.rng_seed)
    if viz.target_communities is not None and viz.target_communities < asg.community_count:
        asg = merge_communities(g, asg, viz.target_communities)
    layout = _make_layout(g, viz)
    layout = adjust_positions(g, layout, asg, AdjustmentParams(viz.d, viz.top_n))
    if label_mode == "partial":
        policy = PartialLabels(viz.top_fraction, viz.min_labels)
        radius = viz.node_radius if viz.node_radius is not None else 3.0
    else:
        policy = FullLabels()
        radius = viz.node_radius if viz.node_radius is not None else 6.0
    spec = RenderSpec(canvas_px=viz.canvas, node_radius_px=radius,
                      label_policy=policy, label_font_px=viz.label_font)
    img = render(g, layout, asg, spec)
    if rasterize_png:
        img = rasterize(img, png_scale)
    return img, asg, layout


@dataclass(frozen=True)
class AttemptRecord:
    agent_id: int
    attempt: int
    raw_text: str
    parsed: list[int] | None            # original labels as replied
    report: ValidationReport | None
    estimate: SpreadEstimate | None
    cached: bool
    retries_used: int

    def to_json_dict(self) -> dict:
        return {
            "agent_id": self.agent_id,
            "attempt": self.attempt,
            "raw_text": self.raw_text,
            "parsed": self.parsed,
            "validation": self.report.to_json_dict() if self.report else None,
            "spread": self.estimate.to_json_dict() if self.estimate else None,
            "cached": self.cached,
            "retries_used": self.retries_used,
        }


@dataclass
class IMRun:
    network_id: str
    model: DiffusionModel
    k: int
    label_mode: str
    records: list[AttemptRecord]
    best_seeds: list[int]               # internal ids
    best_estimate: SpreadEstimate
    best_seeds_ls: list[int] | None
    ls_estimate: SpreadEstimate | None
    ls_reverted: bool
    ls_accepted_spreads: list[float] | None
    graph: Graph = field(repr=False)

    def _labels(self, seeds) -> list[int]:
        return [self.graph.label_of(v) for v in seeds]

    def to_json_dict(self) -> dict:
        out = {
            "network": self.network_id,
            "model": {"kind": self.model.kind, "p": self.model.p},
            "k": self.k,
            "label_mode": self.label_mode,
            "attempts": [r.to_json_dict() for r in self.records],
            "best_seeds": self._labels(self.best_seeds),
            "best_spread": self.best_estimate.to_json_dict(),
            "local_search": None,
        }
        if self.best_seeds_ls is not None:
            out["local_search"] = {
                "seeds": self._labels(self.best_seeds_ls),
                "spread": self.ls_estimate.to_json_dict(),
                "reverted": self.ls_reverted,
                "accepted_spreads": self.ls_accepted_spreads,
            }
        return out


class HeuristicSeedBackend:
    """Offline stand-in selecting seeds by a centrality ranking; shaped
    like a reply so it flows through the same parse and validation path."""

    name = "heuristic"

    def __init__(self, g: Graph, method: str, l: int = 2):
        self.g = g
        self.method = method
        self.l = l

    def reply_for(self, k: int) -> str:
        seeds = heuristic_select(self.g, self.method, k, l=self.l)
        return "[" + ", ".join(str(self.g.label_of(v)) for v in seeds) + "]"


def run_im(g: Graph, agents: list[AgentProfile], k: int, attempts_per_agent: int,
           model: DiffusionModel, backend, *,
           network_id: str = "", image: ImageArtifact | None = None,
           viz: VizParams | None = None, cache=None,
           model_name: str = "offline", temperature: float = 1.0,
           trials_validate: int = 100000, trials_search: int = 5000,
           max_iter: int = 5, local_search_enabled: bool = True,
           retry_budget: int = 2, rng_seed: int = 0) -> IMRun:
    """Drive each agent for `attempts_per_agent` samples, validate and
    score every reply, keep the best seed set, then refine it by local
    search. Invalid replies are recorded untouched and re-queried at most
    `retry_budget` times each. Every spread estimate shares `rng_seed`,
    so attempt ranking and the refinement guarantee are deterministic."""
    if not agents:
        raise PipelineError("no agents given")
    if k < 1 or k > g.node_count:
        raise PipelineError(f"k={k} invalid for a {g.node_count}-node graph")
    label_mode = agents[0].label_mode
    if any(a.label_mode != label_mode for a in agents):
        raise PipelineError("agents mix label modes")
    if image is None and not isinstance(backend, HeuristicSeedBackend):
        image, _, _ = prepare_image(g, label_mode, viz or VizParams())

    records: list[AttemptRecord] = []
    valid: list[tuple[list[int], SpreadEstimate]] = []
    failures: dict[str, int] = {"parse": 0, "size": 0, "exist": 0, "duplicate": 0}

    for agent in agents:
        prompt = build_im_prompt(agent, k)
        slot = 0
        for attempt in range(attempts_per_agent):
            retries = 0
            while True:
                if isinstance(backend, HeuristicSeedBackend):
                    raw = backend.reply_for(k)
                    parsed_labels, cached = parse_node_list(raw), False
                else:
                    req = SelectorRequest(image, prompt, model_name, temperature)
                    resp = query(backend, req, cache, attempt=slot, parser=parse_node_list)
                    raw, parsed_labels, cached = resp.raw_text, resp.parsed, resp.cached
                slot += 1
                report = None
                estimate = None
                if parsed_labels is None:
                    failures["parse"] += 1
                else:
                    report = validate_seed_set(g, parsed_labels, k)
                    if report.all_ok:
                        internal = [g.id_of(x) for x in parsed_labels]
                        estimate = expected_spread(g, internal, model,
                                                   trials_validate, rng_seed)
                        valid.append((internal, estimate))
                    else:
                        if not report.size_ok:
                            failures["size"] += 1
                        if not report.all_exist:
                            failures["exist"] += 1
                        if not report.no_duplicates:
                            failures["duplicate"] += 1
                ok = estimate is not None
                if ok or retries >= retry_budget:
                    records.append(AttemptRecord(agent.agent_id, attempt, raw,
                                                 parsed_labels, report, estimate,
                                                 cached, retries))
                    break
                retries += 1

    if not valid:
        raise PipelineError(f"no valid attempts; failure counts: {failures}")

    best_seeds = aggregate_attempts(valid)
    best_est = next(est for seeds, est in valid if seeds == best_seeds)

    seeds_ls = None
    ls_est = None
    reverted = False
    history = None
    if local_search_enabled:
        result = local_search(g, best_seeds, model, max_iter, trials_search, rng_seed)
        history = result.accepted_spreads
        ls_est = expected_spread(g, result.seeds, model, trials_validate, rng_seed)
        if ls_est.mean < best_est.mean:
            # Monte Carlo noise between budgets would rank the refined
            # set lower; keep the original so refinement never loses
            seeds_ls, ls_est, reverted = list(best_seeds), best_est, True
        else:
            seeds_ls = result.seeds

    return IMRun(network_id, model, k, label_mode, records, best_seeds, best_est,
                 seeds_ls, ls_est, reverted, history, g)


@dataclass(frozen=True)
class DismantleTrace:
    removal_sequence: tuple[int, ...]   # original labels, in removal order
    lcc_curve: tuple[int, ...]          # s(0), s(1), ..., s(Q_max)
    N: int
    stop_fraction: float
    fallback_steps: tuple[int, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "removal_sequence": list(self.removal_sequence),
            "lcc_curve": list(self.lcc_curve),
            "N": self.N,
            "stop_fraction": self.stop_fraction,
            "fallback_steps": list(self.fallback_steps),
        }


def hd_step(g_residual: Graph) -> int:
    """Label of the highest-degree node in the residual graph, degree
    ties broken by lowest label."""
    if g_residual.node_count == 0:
        raise ValueError("residual graph is empty")
    degs = g_residual.degrees()
    v = max(range(g_residual.node_count), key=lambda x: (degs[x], -x))
    return g_residual.label_of(v)


def hci_step(g_residual: Graph, l: int = 2) -> int:
    """Label of the node with the highest collective influence in the
    residual graph, ties broken by lowest label."""
    if g_residual.node_count == 0:
        raise ValueError("residual graph is empty")
    vals = [collective_influence(g_residual, v, l) for v in range(g_residual.node_count)]
    v = max(range(g_residual.node_count), key=lambda x: (vals[x], -x))
    return g_residual.label_of(v)


class HDSelector:
    needs_image = False
    name = "hd"

    def choose(self, residual: Graph) -> int:
        return hd_step(residual)


class HCISelector:
    needs_image = False

    def __init__(self, l: int = 2):
        self.l = l
        self.name = f"hci(l={l})"

    def choose(self, residual: Graph) -> int:
        return hci_step(residual, self.l)


class CentralitySelector:
    """Adaptive argmax of any centrality on the residual graph."""

    needs_image = False

    def __init__(self, method: str, l: int = 2):
        self.method = method
        self.l = l
        self.name = f"heuristic({method})"

    def choose(self, residual: Graph) -> int:
        v = heuristic_select(residual, self.method, 1, l=self.l)[0]
        return residual.label_of(v)


class ChatSelector:
    """Asks a chat backend for one node id per step, using a fresh
    rendering of the residual graph."""

    needs_image = True

    def __init__(self, backend, *, model_name: str, temperature: float = 1.0,
                 cache=None, attempt: int = 0):
        self.backend = backend
        self.model_name = model_name
        self.temperature = temperature
        self.cache = cache
        self.attempt = attempt
        self.name = f"chat({getattr(backend, 'name', '?')})"
        self.prompt = build_dismantle_prompt()

    def propose(self, image: ImageArtifact, slot: int):
        req = SelectorRequest(image, self.prompt, self.model_name, self.temperature)
        resp = query(self.backend, req, self.cache,
                     attempt=self.attempt * 1_000_000 + slot, parser=parse_single_node)
        return resp


def dismantle(g: Graph, selector, stop_fraction: float = 0.25,
              relayout_each_step: bool = True, *,
              viz: VizParams | None = None, retry_budget: int = 2,
              save_dir=None, png_scale: float = 1.0) -> DismantleTrace:
    """Remove floor(stop_fraction * N) nodes one at a time, recording the
    largest-component size after each removal.

    Image-driven selectors see a full-label rendering of each residual
    graph (positions recomputed per step unless relayout_each_step is
    off, which freezes the starting layout). Invalid or already-removed
    suggestions are re-queried up to retry_budget times, then the
    highest-degree node is removed instead and the step is recorded as a
    fallback.
    """
    if not 0.0 < stop_fraction <= 1.0:
        raise ValueError("stop_fraction must lie in (0, 1]")
    viz = viz or VizParams()
    n0 = g.node_count
    steps = math.floor(stop_fraction * n0)
    residual = g
    frozen_layout: LayoutResult | None = None
    frozen_positions: dict[int, tuple[float, float]] = {}
    if selector.needs_image and not relayout_each_step:
        frozen_layout = _make_layout(g, viz)
        frozen_positions = {g.label_of(v): frozen_layout.positions[v]
                            for v in range(n0)}

    removed: list[int] = []
    curve = [largest_component_size(g)]
    fallbacks: list[int] = []

    for q in range(1, steps + 1):
        if selector.needs_image:
            asg = detect_communities(residual, viz.rng_seed)
            if viz.target_communities is not None and viz.target_communities < asg.community_count:
                asg = merge_communities(residual, asg, viz.target_communities)
            if relayout_each_step:
                layout = _make_layout(residual, viz)
            else:
                pts = tuple(frozen_positions[residual.label_of(v)]
                            for v in range(residual.node_count))
                layout = LayoutResult(pts, frozen_layout.layout_kind, frozen_layout.rng_seed)
            layout = adjust_positions(residual, layout, asg,
                                      AdjustmentParams(viz.d, viz.top_n))
            radius = viz.node_radius if viz.node_radius is not None else 6.0
            spec = RenderSpec(canvas_px=viz.canvas, node_radius_px=radius,
                              label_policy=FullLabels(), label_font_px=viz.label_font)
            img = rasterize(render(residual, layout, asg, spec), png_scale)
            if save_dir is not None:
                _save_step_images(save_dir, q, img)
            label = None
            for attempt in range(retry_budget + 1):
                resp = selector.propose(img, q * 100 + attempt)
                if resp.parsed is not None and residual.has_node_label(resp.parsed):
                    label = resp.parsed
                    break
            if label is None:
                label = hd_step(residual)
                fallbacks.append(q)
        else:
            label = selector.choose(residual)

        removed.append(label)
        residual = remove_nodes(residual, [label])
        curve.append(largest_component_size(residual))

    return DismantleTrace(tuple(removed), tuple(curve), n0, stop_fraction,
                          tuple(fallbacks))


def _save_step_images(save_dir, step: int, img: ImageArtifact) -> None:
    import os
    os.makedirs(save_dir, exist_ok=True)
    with open(os.path.join(save_dir, f"{step}.svg"), "wb") as f:
        f.write(img.svg)
    if img.png:
        with open(os.path.join(save_dir, f"{step}.png"), "wb") as f:
            f.write(img.png)


def robustness_R(trace: DismantleTrace) -> float:
    """(1/N) * sum of the largest-component sizes after each removal."""
    if not trace.removal_sequence:
        return 0.0
    return sum(trace.lcc_curve[1:]) / trace.N


def auc(trace: DismantleTrace) -> float:
    """Area under the normalized shrink curve across the removal steps,
    trapezoid over Q = 0..Q_max (intact size and final size each weighted
    by half)."""
    m = len(trace.removal_sequence)
    if m == 0:
        return 0.0
    curve = trace.lcc_curve
    return (0.5 * curve[0] + sum(curve[1:m]) + 0.5 * curve[m]) / trace.N
