"""Reply parsing and the correctness checks applied to selector output,
plus the deterministic heuristic selector used as the offline stand-in
for a vision model."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import Graph
from .centrality import scores_for


class ReplyParseError(ValueError):
    """Reply text did not match the expected output grammar."""

    def __init__(self, message: str, raw_text: str):
        super().__init__(message)
        self.raw_text = raw_text


_LIST_RE = re.compile(r"\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]")
_INT_RE = re.compile(r"-?\d+")


def parse_node_list(raw: str) -> list[int]:
    """First bracketed comma-separated integer list in the reply; order
    and duplicates preserved (validation judges them, not the parser)."""
    m = _LIST_RE.search(raw)
    if not m:
        raise ReplyParseError("no bracketed integer list in reply", raw)
    return [int(tok) for tok in m.group(1).split(",")]


def parse_single_node(raw: str) -> int:
    """First integer token in the reply."""
    m = _INT_RE.search(raw)
    if not m:
        raise ReplyParseError("no integer in reply", raw)
    return int(m.group(0))


@dataclass(frozen=True)
class ValidationReport:
    size_ok: bool
    all_exist: bool
    no_duplicates: bool

    def to_json_dict(self) -> dict:
        return {"size_ok": self.size_ok, "all_exist": self.all_exist,
                "no_duplicates": self.no_duplicates}

    @property
    def all_ok(self) -> bool:
        return self.size_ok and self.all_exist and self.no_duplicates


def validate_seed_set(g: Graph, parsed: list[int], k: int) -> ValidationReport:
    """The three checks on a parsed reply: requested size met, every id
    names a real node (ids quote the labels drawn on the image), and no
    id repeats."""
    return ValidationReport(
        size_ok=len(parsed) == k,
        all_exist=all(g.has_node_label(x) for x in parsed),
        no_duplicates=len(set(parsed)) == len(parsed),
    )


def validation_ratios(g: Graph, attempts: list[tuple[list[int] | None, int]]) -> tuple[float, float, float]:
    """Aggregate correctness ratios over many attempts.

    v1: fraction of attempts whose parsed list has the requested size
        (unparseable attempts count as failures);
    v2: fraction of submitted ids naming real nodes, pooled over all
        parseable attempts;
    v3: fraction of non-redundant ids, pooled likewise (an id repeated m
        times contributes one non-redundant slot out of m).
    """
    if not attempts:
        raise ValueError("no attempts to validate")
    size_hits = 0
    ids_total = 0
    ids_exist = 0
    ids_unique = 0
    for parsed, k in attempts:
        if parsed is None:
            continue
        if len(parsed) == k:
            size_hits += 1
        ids_total += len(parsed)
        ids_exist += sum(1 for x in parsed if g.has_node_label(x))
        ids_unique += len(set(parsed))
    v1 = size_hits / len(attempts)
    v2 = ids_exist / ids_total if ids_total else 1.0
    v3 = ids_unique / ids_total if ids_total else 1.0
    return (v1, v2, v3)


def heuristic_select(g: Graph, method: str, k: int, *, l: int = 2, alpha: float = 0.85) -> list[int]:
    """Top-k internal node ids under the named centrality, ties broken by
    lower id. The ranking is a fixed total order, so the k-list is always
    a prefix of the (k+1)-list."""
    if k > g.node_count:
        raise ValueError(f"k={k} exceeds the {g.node_count}-node graph")
    scores = scores_for(g, method, l=l, alpha=alpha)
    ranked = sorted(range(g.node_count), key=lambda v: (-scores[v], v))
    return ranked[:k]


def aggregate_attempts(responses: list[tuple[list[int], object]]) -> list[int]:
    """Seed set with the highest estimated spread; ties go to the
    earliest attempt."""
    if not responses:
        raise ValueError("no attempts to aggregate")
    best_seeds, best_est = responses[0]
    for seeds, est in responses[1:]:
        if est.mean > best_est.mean:
            best_seeds, best_est = seeds, est
    return best_seeds
