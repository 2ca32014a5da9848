"""Command-line front door: viz, im, dismantle and bench subcommands.

Exit codes: 0 success, 1 pipeline failure, 2 usage or config error.
Every result file embeds the full config and package version; run
directories are named by a digest of (config, seed, timestamp) so
concurrent runs never collide, while the result bytes themselves stay
deterministic for a fixed seed.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import json
import os
import sys
import time

from . import __version__
from .graph import EdgeListError, load_edge_list_path
from .config import (VizParams, ModelParams, BackendParams, IMConfig,
                     DismantleConfig, BenchConfig, VizConfig, to_json_dict, merge_into)
from .diffusion import DiffusionModel
from .prompts import default_agents
from .backends import ReplyCache, ScriptedBackend, MllmBackend, BackendError
from .pipelines import (PipelineError, prepare_image, run_im, dismantle,
                        HDSelector, HCISelector, CentralitySelector, ChatSelector,
                        HeuristicSeedBackend, robustness_R, auc)
from .benchtasks import standard_gen_spec, run_benchmark, OracleBackend, TASK_KINDS

HEURISTICS = ("degree", "betweenness", "closeness", "pagerank", "collective_influence")


class ConfigError(ValueError):
    pass


def _run_dir(out_dir: str, cfg) -> str:
    stamp = time.strftime("%Y%m%d-%H%M%S")
    digest = hashlib.sha256(
        json.dumps(to_json_dict(cfg), sort_keys=True, default=str).encode()
        + stamp.encode()
    ).hexdigest()[:12]
    base = os.path.join(out_dir, f"{stamp}-{digest}")
    path, n = base, 1
    while True:
        try:
            os.makedirs(path)
            return path
        except FileExistsError:
            n += 1
            path = f"{base}-{n}"


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=1, sort_keys=True)
        f.write("\n")


def _load_graph(path: str, keep_lcc: bool):
    if not os.path.exists(path):
        raise ConfigError(f"network file not found: {path}")
    try:
        return load_edge_list_path(path, keep_lcc=keep_lcc)
    except EdgeListError as exc:
        raise ConfigError(str(exc)) from exc


def _chat_backend(bp: BackendParams):
    if bp.backend == "scripted":
        if not bp.fixture:
            raise ConfigError("scripted backend needs --fixture")
        if not os.path.exists(bp.fixture):
            raise ConfigError(f"fixture file not found: {bp.fixture}")
        return ScriptedBackend(bp.fixture)
    if bp.backend == "mllm":
        try:
            return MllmBackend(bp.endpoint)
        except BackendError as exc:
            raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown chat backend {bp.backend!r}")


def cmd_viz(cfg: VizConfig) -> int:
    g = _load_graph(cfg.network, cfg.keep_lcc)
    img, asg, layout = prepare_image(g, cfg.label_mode, cfg.viz,
                                     rasterize_png=True, png_scale=cfg.png_scale)
    run_dir = _run_dir(cfg.out_dir, cfg)
    with open(os.path.join(run_dir, "network.svg"), "wb") as f:
        f.write(img.svg)
    with open(os.path.join(run_dir, "network.png"), "wb") as f:
        f.write(img.png)
    _write_json(os.path.join(run_dir, "layout.json"), layout.to_json_dict())
    _write_json(os.path.join(run_dir, "communities.json"), asg.to_json_dict())
    _write_json(os.path.join(run_dir, "viz_result.json"), {
        "version": __version__,
        "config": to_json_dict(cfg),
        "community_count": asg.community_count,
        "labeled_nodes": sorted(g.label_of(v) for v in img.labeled_nodes),
        "content_hash": img.content_hash,
        "warnings": list(img.warnings),
    })
    print(run_dir)
    return 0


def cmd_im(cfg: IMConfig) -> int:
    g = _load_graph(cfg.network, cfg.keep_lcc)
    agents = default_agents(cfg.label_mode)
    model = DiffusionModel(cfg.model.kind, cfg.model.p)
    run_dir = _run_dir(cfg.out_dir, cfg)
    cache = ReplyCache(cfg.backend.cache_dir or os.path.join(run_dir, "cache"))

    image = None
    if cfg.backend.backend in HEURISTICS:
        backend = HeuristicSeedBackend(g, cfg.backend.backend)
    else:
        backend = _chat_backend(cfg.backend)
        image, asg, layout = prepare_image(g, cfg.label_mode, cfg.viz)
        with open(os.path.join(run_dir, "network.svg"), "wb") as f:
            f.write(image.svg)
        with open(os.path.join(run_dir, "network.png"), "wb") as f:
            f.write(image.png)

    run = run_im(
        g, agents, cfg.k, cfg.attempts, model, backend,
        network_id=os.path.basename(cfg.network), image=image, viz=cfg.viz,
        cache=cache, model_name=cfg.backend.model_name,
        temperature=cfg.backend.temperature, trials_validate=cfg.trials_validate,
        trials_search=cfg.trials_search, max_iter=cfg.max_iter,
        local_search_enabled=cfg.local_search, retry_budget=cfg.backend.retry_budget,
        rng_seed=cfg.rng_seed,
    )
    _write_json(os.path.join(run_dir, "results.json"), {
        "version": __version__,
        "config": to_json_dict(cfg),
        "result": run.to_json_dict(),
    })
    print(run_dir)
    return 0


def _dismantle_selector(cfg: DismantleConfig, cache):
    name = cfg.selector
    if name == "hd":
        return HDSelector()
    if name == "hci":
        return HCISelector(cfg.ci_radius)
    if name in HEURISTICS:
        return CentralitySelector(name, cfg.ci_radius)
    if name in ("scripted", "mllm"):
        bp = dataclasses.replace(cfg.backend, backend=name)
        return ChatSelector(_chat_backend(bp), model_name=cfg.backend.model_name,
                            temperature=cfg.backend.temperature, cache=cache)
    raise ConfigError(f"unknown selector {name!r}")


def cmd_dismantle(cfg: DismantleConfig) -> int:
    g = _load_graph(cfg.network, cfg.keep_lcc)
    run_dir = _run_dir(cfg.out_dir, cfg)
    cache = ReplyCache(cfg.backend.cache_dir or os.path.join(run_dir, "cache"))

    deterministic = cfg.selector not in ("scripted", "mllm")
    attempts = 1 if deterministic else max(1, cfg.attempts)
    traces = []
    for i in range(attempts):
        selector = _dismantle_selector(cfg, cache)
        if not deterministic:
            selector.attempt = i
        save_dir = os.path.join(run_dir, f"steps-{i}") if cfg.save_images else None
        trace = dismantle(g, selector, cfg.stop_fraction, cfg.relayout_each_step,
                          viz=cfg.viz, retry_budget=cfg.backend.retry_budget,
                          save_dir=save_dir)
        traces.append(trace)

    trace_dicts = []
    for trace in traces:
        d = trace.to_json_dict()
        d["robustness_R"] = robustness_R(trace)
        d["auc"] = auc(trace)
        trace_dicts.append(d)
    _write_json(os.path.join(run_dir, "results.json"), {
        "version": __version__,
        "config": to_json_dict(cfg),
        "traces": trace_dicts,
        "metrics": {
            "mean_robustness_R": sum(d["robustness_R"] for d in trace_dicts) / len(trace_dicts),
            "mean_auc": sum(d["auc"] for d in trace_dicts) / len(trace_dicts),
        },
    })
    with open(os.path.join(run_dir, "curve.csv"), "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["attempt", "Q", "lcc_size"])
        for i, trace in enumerate(traces):
            for q, s in enumerate(trace.lcc_curve):
                writer.writerow([i, q, s])
    print(run_dir)
    return 0


def cmd_bench(cfg: BenchConfig) -> int:
    spec = standard_gen_spec(cfg.family, cfg.difficulty)
    if cfg.backend.backend == "oracle":
        backend = OracleBackend()
    else:
        backend = _chat_backend(cfg.backend)
    result = run_benchmark(spec, cfg.tasks or TASK_KINDS, cfg.n_instances, backend,
                           cfg.presentation, layout=cfg.layout,
                           text_style=cfg.text_style, rng_seed=cfg.rng_seed)
    run_dir = _run_dir(cfg.out_dir, cfg)
    rows = result.pop("rows")
    _write_json(os.path.join(run_dir, "results.json"), {
        "version": __version__,
        "config": to_json_dict(cfg),
        "result": result,
    })
    with open(os.path.join(run_dir, "results.csv"), "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["family", "difficulty", "presentation", "task", "accuracy"])
        for kind, acc in result["accuracy"].items():
            writer.writerow([cfg.family, cfg.difficulty, cfg.presentation, kind, acc])
    with open(os.path.join(run_dir, "instances.csv"), "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["instance", "task", "correct", "error"])
        for row in rows:
            writer.writerow([row["instance"], row["task"], row["correct"], row["error"]])
    print(run_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netsight",
        description="Community-aware graph imaging with selector-driven "
                    "influence maximization and dismantling.",
    )
    parser.add_argument("--config", help="JSON file of config overrides")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out-dir", default=None)
        p.add_argument("--rng-seed", type=int, default=None)

    p_viz = sub.add_parser("viz", help="render a network image")
    p_viz.add_argument("network")
    p_viz.add_argument("--label-mode", choices=["full", "partial"], default=None)
    p_viz.add_argument("--layout", choices=["fruchterman_reingold", "circle", "grid"], default=None)
    p_viz.add_argument("--target-communities", type=int, default=None)
    p_viz.add_argument("--d", type=float, default=None)
    p_viz.add_argument("--top-n", type=int, default=None)
    p_viz.add_argument("--keep-lcc", action=argparse.BooleanOptionalAction, default=None)
    common(p_viz)

    p_im = sub.add_parser("im", help="influence maximization run")
    p_im.add_argument("network")
    p_im.add_argument("--k", type=int, default=None)
    p_im.add_argument("--attempts", type=int, default=None)
    p_im.add_argument("--label-mode", choices=["full", "partial"], default=None)
    p_im.add_argument("--backend", default=None,
                      help="scripted | mllm | " + " | ".join(HEURISTICS))
    p_im.add_argument("--fixture", default=None)
    p_im.add_argument("--model-kind", choices=["ic", "lt"], default=None)
    p_im.add_argument("--p", type=float, default=None)
    p_im.add_argument("--trials-validate", type=int, default=None)
    p_im.add_argument("--trials-search", type=int, default=None)
    p_im.add_argument("--max-iter", type=int, default=None)
    p_im.add_argument("--local-search", action=argparse.BooleanOptionalAction, default=None)
    p_im.add_argument("--target-communities", type=int, default=None)
    common(p_im)

    p_dis = sub.add_parser("dismantle", help="sequential node removal run")
    p_dis.add_argument("network")
    p_dis.add_argument("--selector", default=None,
                       help="hd | hci | scripted | mllm | " + " | ".join(HEURISTICS))
    p_dis.add_argument("--ci-radius", type=int, default=None)
    p_dis.add_argument("--stop-fraction", type=float, default=None)
    p_dis.add_argument("--attempts", type=int, default=None)
    p_dis.add_argument("--fixture", default=None)
    p_dis.add_argument("--relayout-each-step", action=argparse.BooleanOptionalAction, default=None)
    p_dis.add_argument("--save-images", action=argparse.BooleanOptionalAction, default=None)
    common(p_dis)

    p_bench = sub.add_parser("bench", help="basic graph-question benchmark")
    p_bench.add_argument("--family", choices=["ba", "er", "ws"], default=None)
    p_bench.add_argument("--difficulty", choices=["easy", "hard"], default=None)
    p_bench.add_argument("--tasks", nargs="*", choices=list(TASK_KINDS), default=None)
    p_bench.add_argument("--n-instances", type=int, default=None)
    p_bench.add_argument("--presentation", choices=["image", "text"], default=None)
    p_bench.add_argument("--layout", choices=["fruchterman_reingold", "circle", "grid"], default=None)
    p_bench.add_argument("--text-style", choices=["expert", "adjacency"], default=None)
    p_bench.add_argument("--backend", default=None, help="oracle | scripted | mllm")
    p_bench.add_argument("--fixture", default=None)
    common(p_bench)

    return parser


def _apply_args(cfg, args: argparse.Namespace, mapping: dict) -> None:
    for arg_name, path in mapping.items():
        value = getattr(args, arg_name, None)
        if value is None:
            continue
        target = cfg
        *parents, leaf = path.split(".")
        for part in parents:
            target = getattr(target, part)
        setattr(target, leaf, value)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    builders = {
        "viz": (VizConfig, cmd_viz, {
            "network": "network", "label_mode": "label_mode", "out_dir": "out_dir",
            "keep_lcc": "keep_lcc", "layout": "viz.layout", "rng_seed": "viz.rng_seed",
            "target_communities": "viz.target_communities", "d": "viz.d",
            "top_n": "viz.top_n",
        }),
        "im": (IMConfig, cmd_im, {
            "network": "network", "k": "k", "attempts": "attempts",
            "label_mode": "label_mode", "backend": "backend.backend",
            "fixture": "backend.fixture", "model_kind": "model.kind", "p": "model.p",
            "trials_validate": "trials_validate", "trials_search": "trials_search",
            "max_iter": "max_iter", "local_search": "local_search",
            "out_dir": "out_dir", "rng_seed": "rng_seed",
            "target_communities": "viz.target_communities",
        }),
        "dismantle": (DismantleConfig, cmd_dismantle, {
            "network": "network", "selector": "selector", "ci_radius": "ci_radius",
            "stop_fraction": "stop_fraction", "attempts": "attempts",
            "fixture": "backend.fixture",
            "relayout_each_step": "relayout_each_step", "save_images": "save_images",
            "out_dir": "out_dir", "rng_seed": "rng_seed",
        }),
        "bench": (BenchConfig, cmd_bench, {
            "family": "family", "difficulty": "difficulty", "tasks": "tasks",
            "n_instances": "n_instances", "presentation": "presentation",
            "layout": "layout", "text_style": "text_style",
            "backend": "backend.backend", "fixture": "backend.fixture",
            "out_dir": "out_dir", "rng_seed": "rng_seed",
        }),
    }
    cfg_cls, handler, mapping = builders[args.command]
    cfg = cfg_cls()
    try:
        if args.config:
            if not os.path.exists(args.config):
                raise ConfigError(f"config file not found: {args.config}")
            with open(args.config, "r", encoding="utf-8") as f:
                merge_into(cfg, json.load(f))
        _apply_args(cfg, args, mapping)
        return handler(cfg)
    except (ConfigError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PipelineError, BackendError) as exc:
        print(f"pipeline failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
