"""Basic graph-question harness: generate small synthetic networks,
build questions with exact ground truth, encode the graph as an image or
text, and grade free-form answers."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
import re

import numpy as np

from .graph import Graph, UNREACHABLE, build_graph, connected_components, has_cycle, shortest_distance
from .centrality import betweenness
from .generators import ba_graph, er_graph, ws_graph
from .prompts import load_task_questions, load_prompt_templates

log = logging.getLogger(__name__)

TASK_KINDS = ("node_degree", "highest_degree", "highest_betweenness",
              "shortest_distance", "cycle_detection", "connected_components")


@dataclass(frozen=True)
class GenSpec:
    family: str
    difficulty: str
    n_range: tuple[int, int]
    ba_m: int = 2
    er_p: float = 0.2
    ws_rewire: float = 0.2

    def __post_init__(self):
        if self.family not in ("ba", "er", "ws"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.difficulty not in ("easy", "hard"):
            raise ValueError(f"unknown difficulty {self.difficulty!r}")


def standard_gen_spec(family: str, difficulty: str) -> GenSpec:
    """The stock parameterizations: attachment count 2 for preferential
    attachment, pair probability 0.2 (easy) / 0.1 (hard) for the random
    family, one ring neighbor per side with rewiring 0.2 for the
    small-world family; node counts 5-10 / 15-20 (10-15 / 15-20 for the
    random family's easy tier)."""
    if family == "er":
        n_range = (10, 15) if difficulty == "easy" else (15, 20)
        return GenSpec(family, difficulty, n_range,
                       er_p=0.2 if difficulty == "easy" else 0.1)
    n_range = (5, 10) if difficulty == "easy" else (15, 20)
    return GenSpec(family, difficulty, n_range)


def generate(spec: GenSpec, rng_seed: int) -> Graph:
    """One synthetic instance; node count uniform over the inclusive
    range, everything else from the family process. Deterministic per
    seed."""
    rng = np.random.default_rng(rng_seed)
    n = int(rng.integers(spec.n_range[0], spec.n_range[1] + 1))
    if spec.family == "ba":
        return ba_graph(n, spec.ba_m, rng)
    if spec.family == "er":
        return er_graph(n, spec.er_p, rng)
    return ws_graph(n, spec.ws_rewire, rng)


@dataclass(frozen=True)
class TaskInstance:
    graph: Graph
    kind: str
    params: dict
    question_text: str
    truth: object                       # int, bool, or False for unreachable
    admissible: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind not in TASK_KINDS:
            raise ValueError(f"unknown task kind {self.kind!r}")
        if not self.admissible:
            raise ValueError("admissible answer set must be nonempty")


def make_task(g: Graph, kind: str, rng: np.random.Generator) -> TaskInstance:
    """Instantiate one question against the graph with exact truth. The
    two highest-X tasks admit every argmax node as correct."""
    questions = load_task_questions()
    params: dict = {}
    if kind == "node_degree":
        i = int(rng.integers(0, g.node_count))
        params = {"i": g.label_of(i)}
        truth = g.degree(i)
        admissible = frozenset([truth])
        text = questions[kind].format(i=params["i"])
    elif kind == "highest_degree":
        degs = g.degrees()
        top = max(degs)
        admissible = frozenset(g.label_of(v) for v in range(g.node_count) if degs[v] == top)
        truth = min(admissible)
        text = questions[kind]
    elif kind == "highest_betweenness":
        vals = betweenness(g).values
        top = max(vals)
        admissible = frozenset(g.label_of(v) for v in range(g.node_count) if vals[v] == top)
        truth = min(admissible)
        text = questions[kind]
    elif kind == "shortest_distance":
        if g.node_count < 2:
            raise ValueError("distance task needs at least two nodes")
        i = int(rng.integers(0, g.node_count))
        j = int(rng.integers(0, g.node_count - 1))
        if j >= i:
            j += 1
        params = {"i": g.label_of(i), "j": g.label_of(j)}
        d = shortest_distance(g, i, j)
        truth = False if d is UNREACHABLE else d
        admissible = frozenset([truth])
        text = questions[kind].format(i=params["i"], j=params["j"])
    elif kind == "cycle_detection":
        truth = has_cycle(g)
        admissible = frozenset([truth])
        text = questions[kind]
    elif kind == "connected_components":
        truth = len(connected_components(g))
        admissible = frozenset([truth])
        text = questions[kind]
    else:
        raise ValueError(f"unknown task kind {kind!r}")
    return TaskInstance(g, kind, params, text, truth, admissible)


def encode_text(g: Graph, style: str) -> str:
    """Textual graph descriptions: `adjacency` is the 0/1 matrix, one row
    per line; `expert` is a role-setting sentence plus one connection
    sentence per edge."""
    if style == "adjacency":
        rows = []
        adj = [set(nbrs) for nbrs in g.adjacency]
        for i in range(g.node_count):
            rows.append(" ".join("1" if j in adj[i] else "0" for j in range(g.node_count)))
        return "\n".join(rows)
    if style == "expert":
        t = load_prompt_templates()["text_encoding"]
        lines = [t["expert_preamble"]["text"]]
        for u, v in g.edges:
            lines.append(t["edge_sentence"]["text"].format(i=g.label_of(u), j=g.label_of(v)))
        return "\n".join(lines)
    raise ValueError(f"unknown text style {style!r}")


def decode_adjacency(text: str) -> Graph:
    """Inverse of the adjacency encoding, for round-trip checks."""
    rows = [line.split() for line in text.strip().splitlines()]
    n = len(rows)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rows[i][j] == "1"]
    return build_graph(range(n), edges)


_ANSWER_RE = re.compile(r"\[\s*([^\[\]]*?)\s*\]")


def grade(raw: str, task: TaskInstance) -> bool:
    """Correct iff the first bracketed token parses to a value in the
    task's admissible set (booleans and integers never cross-match).
    Unparseable replies are wrong and logged."""
    m = _ANSWER_RE.search(raw)
    if not m:
        log.debug("ungradable reply (no bracketed answer): %r", raw)
        return False
    token = m.group(1).strip()
    if token in ("True", "true"):
        value: object = True
    elif token in ("False", "false"):
        value = False
    elif re.fullmatch(r"-?\d+", token):
        value = int(token)
    else:
        log.debug("ungradable reply (token %r)", token)
        return False
    for ans in task.admissible:
        if isinstance(ans, bool) or isinstance(value, bool):
            if value is ans:
                return True
        elif value == ans:
            return True
    return False


class OracleBackend:
    """Answers every question from the instance's own truth; closes the
    loop for harness tests."""

    name = "oracle"

    def answer(self, task: TaskInstance, payload) -> str:
        truth = task.truth
        return f"[{truth}]"


def run_benchmark(spec: GenSpec, tasks, n_instances: int, backend,
                  presentation: str = "image", *, layout: str = "circle",
                  text_style: str = "expert", rng_seed: int = 0,
                  png_scale: float = 1.0) -> dict:
    """Accuracy per task kind over generated instances.

    `backend` needs either answer(task, payload) (offline) or
    complete(request) (chat). Image presentations attach a rendering;
    text presentations prepend the requested encoding to the question.
    """
    from .backends import SelectorRequest, BackendError
    from .config import VizParams
    from .render import RenderSpec, FullLabels, render, rasterize
    from .layout import circle_layout, grid_layout, fr_layout

    tasks = list(tasks) or list(TASK_KINDS)
    for kind in tasks:
        if kind not in TASK_KINDS:
            raise ValueError(f"unknown task kind {kind!r}")
    hits = {kind: 0 for kind in tasks}
    errors = {kind: 0 for kind in tasks}
    rows = []
    rng = np.random.default_rng([rng_seed & 0x7FFFFFFF, 0xBE7C])
    image_sentence = load_prompt_templates()["text_encoding"]["image_sentence"]["text"]

    for idx in range(n_instances):
        g = generate(spec, rng_seed * 1_000_003 + idx)
        img = None
        if presentation == "image":
            if layout == "grid":
                lyt = grid_layout(g)
            elif layout == "fruchterman_reingold":
                lyt = fr_layout(g, rng_seed)
            else:
                lyt = circle_layout(g)
            spec_r = RenderSpec(canvas_px=(512, 512), node_radius_px=10.0,
                                label_policy=FullLabels(), label_font_px=20)
            img = rasterize(render(g, lyt, None, spec_r), png_scale)
        for kind in tasks:
            task = make_task(g, kind, rng)
            if presentation == "image":
                prompt = f"{image_sentence} {task.question_text}"
                payload = img
            else:
                prompt = f"{encode_text(g, text_style)}\n{task.question_text}"
                payload = None
            try:
                if hasattr(backend, "answer"):
                    raw = backend.answer(task, payload)
                else:
                    raw = backend.complete(SelectorRequest(payload, prompt, "bench", 0.0))
            except BackendError as exc:
                errors[kind] += 1
                rows.append({"instance": idx, "task": kind, "correct": False,
                             "error": str(exc)})
                continue
            ok = grade(raw, task)
            hits[kind] += int(ok)
            rows.append({"instance": idx, "task": kind, "correct": ok, "error": None})

    accuracy = {kind: hits[kind] / n_instances for kind in tasks}
    return {
        "family": spec.family,
        "difficulty": spec.difficulty,
        "presentation": presentation,
        "n_instances": n_instances,
        "accuracy": accuracy,
        "errors": errors,
        "rows": rows,
    }
