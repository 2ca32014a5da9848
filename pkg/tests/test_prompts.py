import pytest

from netsight.prompts import (AgentProfile, build_dismantle_prompt,
                              build_im_prompt, default_agents,
                              load_prompt_templates, load_task_questions)


def test_templates_carry_authored_flags():
    t = load_prompt_templates()
    for section in ("im", "dismantle", "text_encoding"):
        for entry in t[section].values():
            assert set(entry) == {"text", "authored"}
            assert isinstance(entry["authored"], bool)
    # output grammars and context sentences are fixed wording
    assert t["im"]["context_full"]["authored"] is False
    assert t["im"]["output"]["authored"] is False
    assert t["dismantle"]["output"]["authored"] is False


def test_task_questions_cover_all_kinds():
    q = load_task_questions()
    assert set(q) == {"node_degree", "highest_degree", "highest_betweenness",
                      "shortest_distance", "cycle_detection",
                      "connected_components"}
    assert "{i}" in q["node_degree"]
    assert "{i}" in q["shortest_distance"] and "{j}" in q["shortest_distance"]


def test_default_agents_rosters():
    full = default_agents("full")
    partial = default_agents("partial")
    assert [a.agent_id for a in full] == [1, 2, 3]
    assert [a.agent_id for a in partial] == [1, 2, 3, 4]
    assert full[0].hint_text == ""
    assert all(a.hint_text for a in full[1:])
    assert all(a.label_mode == "partial" for a in partial)


def test_agent_profile_validation():
    AgentProfile(1, "bare", "", "full")
    with pytest.raises(ValueError):
        AgentProfile(2, "needs hint", "", "full")
    with pytest.raises(ValueError):
        AgentProfile(1, "bare", "", "annotated")


def test_im_prompt_is_context_hint_task_output():
    t = load_prompt_templates()["im"]
    agent = default_agents("full")[1]
    got = build_im_prompt(agent, 7)
    want = " ".join([t["context_full"]["text"], agent.hint_text,
                     t["task_full"]["text"].format(k=7), t["output"]["text"]])
    assert got == want
    assert "{k}" not in got
    assert "7" in got


def test_im_prompt_hint_free_agent_omits_hint_slot():
    t = load_prompt_templates()["im"]
    agent = default_agents("full")[0]
    got = build_im_prompt(agent, 3)
    want = " ".join([t["context_full"]["text"],
                     t["task_full"]["text"].format(k=3), t["output"]["text"]])
    assert got == want


def test_im_prompt_partial_mode_swaps_context_and_task():
    # the partial context extends the full one, so check the prompt
    # starts with it and that the full-mode task text is gone
    t = load_prompt_templates()["im"]
    agent = default_agents("partial")[0]
    got = build_im_prompt(agent, 5)
    assert got.startswith(t["context_partial"]["text"])
    assert t["task_partial"]["text"].format(k=5) in got
    assert t["task_full"]["text"].format(k=5) not in got


def test_im_prompt_rejects_bad_k():
    with pytest.raises(ValueError):
        build_im_prompt(default_agents("full")[0], 0)


def test_dismantle_prompt_is_context_task_output():
    t = load_prompt_templates()["dismantle"]
    got = build_dismantle_prompt()
    assert got == " ".join([t["context"]["text"], t["task"]["text"],
                            t["output"]["text"]])


def test_prompt_join_uses_single_spaces():
    got = build_im_prompt(default_agents("full")[0], 2)
    assert "  " not in got
