import xml.etree.ElementTree as ET

import pytest

import netsight as ns
import netsight.pipelines as pipelines
from netsight.backends import ReplyCache, ScriptedBackend
from netsight.config import VizParams
from netsight.diffusion import DiffusionModel, SpreadEstimate
from netsight.localsearch import LocalSearchResult
from netsight.pipelines import (CentralitySelector, ChatSelector, HCISelector,
                                HDSelector, HeuristicSeedBackend,
                                PipelineError, auc, dismantle, hd_step,
                                hci_step, prepare_image, robustness_R, run_im)
from netsight.prompts import default_agents

SVG_NS = "{http://www.w3.org/2000/svg}"

# frozen adaptive-removal results on the bundled networks (l=2 for the
# collective-influence selector)
KARATE_HD = {"auc": 4.073529411764706, "R": 3.6470588235294117,
             "curve": (34, 33, 26, 20, 16, 8, 8, 8, 5),
             "head": (33, 0, 32, 1)}
KARATE_HCI = {"auc": 4.3088235294117645, "R": 3.8823529411764706,
              "head": (33, 32, 2, 1)}
LESMIS_HD = {"auc": 8.14935064935065, "R": 7.740259740259741,
             "head": (73, 31, 49, 39)}
LESMIS_HCI = {"auc": 7.779220779220779, "R": 7.35064935064935,
              "head": (73, 39, 70, 49)}

FAST_VIZ = VizParams(layout="circle", canvas=(256, 256))
MODEL = DiffusionModel("ic", 0.1)


def fast_run_im(g, backend, *, k=2, attempts=1, agents=None, **kwargs):
    kwargs.setdefault("trials_validate", 300)
    kwargs.setdefault("trials_search", 150)
    kwargs.setdefault("max_iter", 2)
    kwargs.setdefault("viz", FAST_VIZ)
    roster = default_agents("full") if agents is None else agents
    return run_im(g, roster, k, attempts, MODEL, backend, **kwargs)


def test_prepare_image_radius_tracks_label_mode(karate):
    full, _, _ = prepare_image(karate, "full", FAST_VIZ, rasterize_png=False)
    partial, _, _ = prepare_image(karate, "partial", FAST_VIZ, rasterize_png=False)
    r_full = {c.get("r") for c in ET.fromstring(full.svg).iter(f"{SVG_NS}circle")}
    r_partial = {c.get("r") for c in ET.fromstring(partial.svg).iter(f"{SVG_NS}circle")}
    assert r_full == {"6.0"}
    assert r_partial == {"3.0"}
    assert len(full.labeled_nodes) == 34
    assert len(partial.labeled_nodes) == 20


def test_prepare_image_merges_to_target(karate):
    viz = VizParams(layout="circle", canvas=(256, 256), target_communities=2)
    _, asg, _ = prepare_image(karate, "full", viz, rasterize_png=False)
    assert asg.community_count == 2


def test_run_im_heuristic_degree_matches_direct_selection(karate):
    backend = HeuristicSeedBackend(karate, "degree")
    run = fast_run_im(karate, backend, local_search_enabled=False)
    assert [karate.label_of(v) for v in run.best_seeds] == [33, 0]
    assert len(run.records) == 3  # three sampling profiles, one attempt each
    assert all(r.report.all_ok for r in run.records)
    assert run.best_seeds_ls is None


def test_run_im_scripted_replies_drive_selection(karate):
    backend = ScriptedBackend(["[33, 0]", "[1, 2]", "[5, 6]"])
    run = fast_run_im(karate, backend, local_search_enabled=False,
                      image=object_image())
    assert [karate.label_of(v) for v in run.best_seeds] == [33, 0]
    assert [r.agent_id for r in run.records] == [1, 2, 3]


def object_image():
    """A stand-in artifact so scripted runs skip rendering."""
    from netsight.render import ImageArtifact
    return ImageArtifact(b"<svg/>", b"png", "stub-hash", frozenset(), (256, 256))


def test_run_im_retries_then_records_failure(karate):
    replies = ["junk", "[1, 2, 3]", "[4, 4]",   # agent 1: parse, size, dup
               "[33, 0]",                        # agent 2 valid
               "[0, 1]"]                         # agent 3 valid
    backend = ScriptedBackend(replies)
    run = fast_run_im(karate, backend, local_search_enabled=False,
                      image=object_image(), retry_budget=2)
    first = run.records[0]
    assert first.retries_used == 2
    assert first.parsed == [4, 4]
    assert first.estimate is None
    assert not first.report.no_duplicates
    assert [karate.label_of(v) for v in run.best_seeds] == [33, 0]


def test_run_im_raises_when_nothing_validates(karate):
    backend = ScriptedBackend(["junk"] * 9)
    with pytest.raises(PipelineError, match="parse"):
        fast_run_im(karate, backend, local_search_enabled=False,
                    image=object_image(), retry_budget=2)


def test_run_im_rejects_bad_setups(karate):
    backend = HeuristicSeedBackend(karate, "degree")
    with pytest.raises(PipelineError):
        fast_run_im(karate, backend, agents=[])
    with pytest.raises(PipelineError):
        fast_run_im(karate, backend, k=0)
    mixed = [default_agents("full")[0], default_agents("partial")[1]]
    with pytest.raises(PipelineError):
        fast_run_im(karate, backend, agents=mixed)


def test_run_im_serves_second_run_from_cache(tmp_path, karate):
    cache = ReplyCache(tmp_path / "cache")
    replies = ["[33, 0]", "[1, 2]", "[5, 6]"]
    first = fast_run_im(karate, ScriptedBackend(replies),
                        local_search_enabled=False, image=object_image(),
                        cache=cache)
    # empty queue: only the cache can supply replies now
    second = fast_run_im(karate, ScriptedBackend([]),
                         local_search_enabled=False, image=object_image(),
                         cache=cache)
    assert all(not r.cached for r in first.records)
    assert all(r.cached for r in second.records)
    assert second.best_seeds == first.best_seeds


def test_run_im_local_search_never_loses(karate):
    backend = HeuristicSeedBackend(karate, "closeness")
    run = fast_run_im(karate, backend, local_search_enabled=True)
    assert run.best_seeds_ls is not None
    assert run.ls_estimate.mean >= run.best_estimate.mean or run.ls_reverted


def test_run_im_reverts_when_refinement_ranks_lower(karate, monkeypatch):
    base = [karate.id_of(33), karate.id_of(0)]
    worse = [karate.id_of(12), karate.id_of(13)]

    def fake_spread(g, seeds, model, trials, rng_seed=0):
        mean = 9.0 if sorted(seeds) == sorted(base) else 4.0
        return SpreadEstimate(mean, 0.1, trials, rng_seed)

    monkeypatch.setattr(pipelines, "expected_spread", fake_spread)
    monkeypatch.setattr(pipelines, "local_search",
                        lambda *a, **kw: LocalSearchResult(worse, [4.0], 1))
    backend = HeuristicSeedBackend(karate, "degree")
    run = fast_run_im(karate, backend, local_search_enabled=True)
    assert run.ls_reverted
    assert run.best_seeds_ls == run.best_seeds == base
    assert run.ls_estimate.mean == 9.0


def test_im_run_json_uses_original_labels():
    g = ns.build_graph([10, 20, 30], [(10, 20), (20, 30)])
    backend = HeuristicSeedBackend(g, "degree")
    run = fast_run_im(g, backend, k=1, local_search_enabled=False)
    d = run.to_json_dict()
    assert d["best_seeds"] == [20]
    assert d["local_search"] is None
    assert d["attempts"][0]["validation"]["size_ok"]


def test_hd_step_prefers_degree_then_low_label(karate):
    assert hd_step(karate) == 33
    g = ns.build_graph(range(4), [(0, 1), (2, 3)])
    assert hd_step(g) == 0
    with pytest.raises(ValueError):
        hd_step(ns.remove_nodes(g, [0, 1, 2, 3]))


def test_hci_step_uses_collective_influence(karate):
    assert hci_step(karate, 2) == 33


def test_dismantle_hd_karate_frozen_trace(karate):
    trace = dismantle(karate, HDSelector())
    assert trace.lcc_curve == KARATE_HD["curve"]
    assert trace.removal_sequence[:4] == KARATE_HD["head"]
    assert robustness_R(trace) == pytest.approx(KARATE_HD["R"], rel=1e-12)
    assert auc(trace) == pytest.approx(KARATE_HD["auc"], rel=1e-12)
    assert trace.fallback_steps == ()


def test_dismantle_hci_karate_frozen_metrics(karate):
    trace = dismantle(karate, HCISelector(2))
    assert trace.removal_sequence[:4] == KARATE_HCI["head"]
    assert auc(trace) == pytest.approx(KARATE_HCI["auc"], rel=1e-12)


def test_dismantle_lesmis_frozen_metrics(lesmis):
    hd = dismantle(lesmis, HDSelector())
    hci = dismantle(lesmis, HCISelector(2))
    assert auc(hd) == pytest.approx(LESMIS_HD["auc"], rel=1e-12)
    assert hd.removal_sequence[:4] == LESMIS_HD["head"]
    assert auc(hci) == pytest.approx(LESMIS_HCI["auc"], rel=1e-12)
    assert hci.removal_sequence[:4] == LESMIS_HCI["head"]


def test_dismantle_centrality_selector_runs(karate):
    trace = dismantle(karate, CentralitySelector("pagerank", 2))
    assert len(trace.removal_sequence) == 8
    assert trace.lcc_curve[0] == 34


def test_dismantle_stop_fraction_one_empties_graph(karate):
    trace = dismantle(karate, HDSelector(), stop_fraction=1.0)
    assert len(trace.removal_sequence) == 34
    assert trace.lcc_curve[-1] == 0


def test_dismantle_rejects_bad_stop_fraction(karate):
    with pytest.raises(ValueError):
        dismantle(karate, HDSelector(), stop_fraction=0.0)
    with pytest.raises(ValueError):
        dismantle(karate, HDSelector(), stop_fraction=1.2)


def test_dismantle_curve_never_increases(karate, lesmis):
    for g in (karate, lesmis):
        trace = dismantle(g, HDSelector(), stop_fraction=1.0)
        for a, b in zip(trace.lcc_curve, trace.lcc_curve[1:]):
            assert b <= a


def test_auc_equals_r_plus_endpoint_correction(karate):
    trace = dismantle(karate, HDSelector())
    want = robustness_R(trace) + (trace.lcc_curve[0] - trace.lcc_curve[-1]) / (2 * trace.N)
    assert auc(trace) == pytest.approx(want, rel=1e-12)


def test_dismantle_chat_selector_follows_script(karate):
    replies = [str(lab) for lab in (33, 0, 32, 1, 2, 3, 8, 13)]
    selector = ChatSelector(ScriptedBackend(replies), model_name="m", temperature=0.0)
    trace = dismantle(karate, selector, viz=FAST_VIZ)
    assert trace.removal_sequence == (33, 0, 32, 1, 2, 3, 8, 13)
    assert trace.fallback_steps == ()


def test_dismantle_falls_back_after_retry_budget(karate):
    # first step: three hopeless replies, then the script recovers
    replies = ["99", "99", "99"] + [str(lab) for lab in (0, 32, 1, 2, 3, 8, 13)]
    selector = ChatSelector(ScriptedBackend(replies), model_name="m", temperature=0.0)
    trace = dismantle(karate, selector, viz=FAST_VIZ, retry_budget=2)
    assert trace.fallback_steps == (1,)
    assert trace.removal_sequence[0] == 33  # highest-degree fallback
    assert trace.removal_sequence[1] == 0


def test_dismantle_frozen_layout_option(karate):
    replies = [str(lab) for lab in (33, 0, 32, 1, 2, 3, 8, 13)]
    selector = ChatSelector(ScriptedBackend(replies), model_name="m", temperature=0.0)
    trace = dismantle(karate, selector, relayout_each_step=False, viz=FAST_VIZ)
    assert trace.removal_sequence == (33, 0, 32, 1, 2, 3, 8, 13)


def test_dismantle_saves_step_images(tmp_path, karate):
    replies = [str(lab) for lab in (33, 0, 32, 1, 2, 3, 8, 13)]
    selector = ChatSelector(ScriptedBackend(replies), model_name="m", temperature=0.0)
    dismantle(karate, selector, viz=FAST_VIZ, save_dir=tmp_path / "steps")
    saved = sorted(p.name for p in (tmp_path / "steps").iterdir())
    assert len(saved) == 16  # a PNG and an SVG for each of 8 steps
