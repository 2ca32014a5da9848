"""Prompt assembly from the template data files.

Template fragments carry an `authored` flag: false means the wording is
fixed and must not drift (output grammars the parsers depend on, context
sentences agents were designed around); true marks replaceable house
wording such as the agent hints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources


def _load(name: str) -> dict:
    ref = resources.files("netsight.templates").joinpath(name)
    return json.loads(ref.read_text(encoding="utf-8"))


def load_prompt_templates() -> dict:
    return _load("prompts.json")


def load_task_questions() -> dict:
    return _load("task_questions.json")


@dataclass(frozen=True)
class AgentProfile:
    agent_id: int
    name: str
    hint_text: str
    label_mode: str

    def __post_init__(self):
        if self.label_mode not in ("full", "partial"):
            raise ValueError("label_mode must be 'full' or 'partial'")
        if self.agent_id != 1 and not self.hint_text:
            raise ValueError("only the hint-free agent may carry an empty hint")


def default_agents(label_mode: str) -> list[AgentProfile]:
    """The stock agent roster: the hint-free, distribution-focused and
    center-focused agents for fully labeled images; the largest-community
    agent joins for partially labeled community renderings."""
    rows = load_prompt_templates()["agents"]
    count = 4 if label_mode == "partial" else 3
    return [AgentProfile(r["agent_id"], r["name"], r["hint"], label_mode) for r in rows[:count]]


def build_im_prompt(agent: AgentProfile, k: int) -> str:
    """Context sentence(s) for the agent's label mode, the agent hint,
    the seed-count task statement, and the list-shaped output directive."""
    if k < 1:
        raise ValueError("k must be at least 1")
    t = load_prompt_templates()["im"]
    if agent.label_mode == "partial":
        context = t["context_partial"]["text"]
        task = t["task_partial"]["text"].format(k=k)
    else:
        context = t["context_full"]["text"]
        task = t["task_full"]["text"].format(k=k)
    pieces = [context]
    if agent.hint_text:
        pieces.append(agent.hint_text)
    pieces.append(task)
    pieces.append(t["output"]["text"])
    return " ".join(pieces)


def build_dismantle_prompt() -> str:
    t = load_prompt_templates()["dismantle"]
    return " ".join([t["context"]["text"], t["task"]["text"], t["output"]["text"]])
