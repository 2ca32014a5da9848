"""Dataclass configs for the pipelines and CLI. Defaults follow the
experimental protocol the toolkit reproduces: infection probability 0.1,
100,000 validation trials, 5,000 local-search trials, 5 refinement
passes, removal stop at 25% of nodes."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field


@dataclass
class VizParams:
    layout: str = "fruchterman_reingold"
    iterations: int = 500
    rng_seed: int = 0
    d: float = 0.7
    top_n: int = 5
    target_communities: int | None = None
    canvas: tuple[int, int] = (2048, 2048)
    node_radius: float | None = None  # default depends on label mode
    top_fraction: float = 0.01
    min_labels: int = 20
    label_font: int = 14


@dataclass
class ModelParams:
    kind: str = "ic"
    p: float = 0.1


@dataclass
class BackendParams:
    backend: str = "scripted"
    endpoint: str = "https://api.openai.com/v1"
    model_name: str = "gpt-4o-2024-08-06"
    temperature: float = 1.0
    fixture: str | None = None
    cache_dir: str | None = None
    retry_budget: int = 2


@dataclass
class IMConfig:
    network: str = ""
    k: int = 5
    attempts: int = 10
    label_mode: str = "full"
    trials_validate: int = 100000
    trials_search: int = 5000
    max_iter: int = 5
    local_search: bool = True
    rng_seed: int = 0
    out_dir: str = "runs"
    keep_lcc: bool = True
    viz: VizParams = field(default_factory=VizParams)
    model: ModelParams = field(default_factory=ModelParams)
    backend: BackendParams = field(default_factory=BackendParams)


@dataclass
class DismantleConfig:
    network: str = ""
    selector: str = "hd"
    ci_radius: int = 2
    stop_fraction: float = 0.25
    relayout_each_step: bool = True
    attempts: int = 10
    rng_seed: int = 0
    out_dir: str = "runs"
    keep_lcc: bool = True
    save_images: bool = False
    viz: VizParams = field(default_factory=VizParams)
    backend: BackendParams = field(default_factory=BackendParams)


@dataclass
class BenchConfig:
    family: str = "ba"
    difficulty: str = "easy"
    tasks: tuple[str, ...] = ()
    n_instances: int = 200
    presentation: str = "image"
    layout: str = "fruchterman_reingold"
    text_style: str = "expert"
    rng_seed: int = 0
    out_dir: str = "runs"
    backend: BackendParams = field(default_factory=BackendParams)


@dataclass
class VizConfig:
    network: str = ""
    label_mode: str = "full"
    out_dir: str = "runs"
    keep_lcc: bool = True
    png_scale: float = 1.0
    viz: VizParams = field(default_factory=VizParams)


def to_json_dict(cfg) -> dict:
    """Recursive dataclass -> plain dict for result files."""
    return dataclasses.asdict(cfg)


def merge_into(cfg, overrides: dict):
    """Apply a {field: value} mapping onto a (possibly nested) config
    dataclass, type-checking nothing but field existence."""
    for name, value in overrides.items():
        if not hasattr(cfg, name):
            raise KeyError(f"unknown config field {name!r}")
        attr = getattr(cfg, name)
        if dataclasses.is_dataclass(attr) and isinstance(value, dict):
            merge_into(attr, value)
        else:
            setattr(cfg, name, value)
    return cfg
