import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

import netsight as ns
from netsight.diffusion import (DiffusionModel, expected_spread, simulate_ic,
                                simulate_lt, trial_rng)
from netsight.graph import largest_component_size

import oracles as orc
from strategies import small_graphs

# exact expectations from brute-force enumeration over tiny graphs
EXACT_IC = [
    (3, [(0, 1), (1, 2)], [0], 0.1, 1.11),
    (3, [(0, 1), (1, 2), (0, 2)], [0], 0.5, 2.25),
    (5, [(0, i) for i in range(1, 5)], [0], 0.1, 1.4),
    (5, [(0, i) for i in range(1, 5)], [1], 0.5, 2.25),
]
EXACT_LT = [
    (3, [(0, 1), (1, 2)], [0], 2.0),
    (5, [(0, i) for i in range(1, 5)], [1], 2.0),
    (3, [(0, 1), (1, 2), (0, 2)], [0], 2.5),
]


def test_model_validation():
    DiffusionModel("ic", 0.0)
    DiffusionModel("ic", 1.0)
    DiffusionModel("lt")
    with pytest.raises(ValueError):
        DiffusionModel("sir", 0.1)
    with pytest.raises(ValueError):
        DiffusionModel("ic", 1.5)
    with pytest.raises(ValueError):
        DiffusionModel("ic", -0.1)


def test_trial_rng_streams_are_reproducible_and_distinct():
    a = trial_rng(7, 0).random(4).tolist()
    b = trial_rng(7, 0).random(4).tolist()
    c = trial_rng(7, 1).random(4).tolist()
    assert a == b
    assert a != c


def test_trial_rng_accepts_negative_seed():
    vals = trial_rng(-3, 0).random(2)
    assert len(vals) == 2
    # adjacent negative seeds map to distinct streams, no lossy cast
    a = trial_rng(-5, 0).random(3)
    b = trial_rng(-6, 0).random(3)
    assert not (a == b).all()


def test_ic_p_zero_activates_only_seeds(karate):
    rng = trial_rng(0, 0)
    assert simulate_ic(karate, [0, 5], 0.0, rng) == 2


def test_ic_p_one_activates_component(karate):
    rng = trial_rng(0, 0)
    assert simulate_ic(karate, [0], 1.0, rng) == 34
    g = ns.build_graph(range(4), [(0, 1), (2, 3)])
    assert simulate_ic(g, [0], 1.0, trial_rng(0, 0)) == 2


def test_lt_hub_seed_floods_star(star5):
    # every leaf's only neighbor is the hub, so weight 1 >= any threshold
    for t in range(20):
        assert simulate_lt(star5, [0], trial_rng(1, t)) == 5


def test_simulation_rejects_bad_seeds(path3):
    with pytest.raises(ValueError):
        simulate_ic(path3, [], 0.1, trial_rng(0, 0))
    with pytest.raises(KeyError):
        simulate_ic(path3, [9], 0.1, trial_rng(0, 0))
    with pytest.raises(ValueError):
        expected_spread(path3, [], DiffusionModel("ic", 0.1), 10)


def test_expected_spread_rejects_zero_trials(path3):
    with pytest.raises(ValueError):
        expected_spread(path3, [0], DiffusionModel("ic", 0.1), 0)


def test_expected_spread_deterministic_per_seed(karate):
    model = DiffusionModel("ic", 0.1)
    a = expected_spread(karate, [0], model, 500, rng_seed=11)
    b = expected_spread(karate, [0], model, 500, rng_seed=11)
    c = expected_spread(karate, [0], model, 500, rng_seed=12)
    assert a == b
    assert a.mean != c.mean


def test_expected_spread_single_trial_has_zero_se(path3):
    est = expected_spread(path3, [0], DiffusionModel("ic", 0.5), 1)
    assert est.std_error == 0.0
    assert est.trials == 1


def test_expected_spread_json_shape(path3):
    est = expected_spread(path3, [0], DiffusionModel("ic", 0.1), 10, rng_seed=3)
    d = est.to_json_dict()
    assert set(d) == {"mean", "std_error", "trials", "rng_seed"}
    assert d["trials"] == 10
    assert d["rng_seed"] == 3


@pytest.mark.parametrize("n,edges,seeds,p,exact", EXACT_IC)
def test_ic_estimates_match_enumeration(n, edges, seeds, p, exact):
    assert orc.exact_ic_spread(n, edges, seeds, p) == pytest.approx(exact, abs=1e-12)
    g = ns.build_graph(range(n), edges)
    est = expected_spread(g, seeds, DiffusionModel("ic", p), 20000, rng_seed=2)
    assert abs(est.mean - exact) <= 4 * max(est.std_error, 1e-12)


@pytest.mark.parametrize("n,edges,seeds,exact", EXACT_LT)
def test_lt_estimates_match_enumeration(n, edges, seeds, exact):
    assert orc.exact_lt_spread(n, edges, seeds) == pytest.approx(exact, abs=1e-12)
    g = ns.build_graph(range(n), edges)
    est = expected_spread(g, seeds, DiffusionModel("lt"), 20000, rng_seed=2)
    assert abs(est.mean - exact) <= 4 * max(est.std_error, 1e-12)


@settings(max_examples=25, deadline=None)
@given(small_graphs(min_nodes=2, max_nodes=6, max_edges=7),
       st.sampled_from(["ic", "lt"]))
def test_spread_bounded_by_seeds_and_nodes(ne, kind):
    n, edges = ne
    g = ns.build_graph(range(n), edges)
    model = DiffusionModel(kind, 0.4)
    est = expected_spread(g, [0], model, 50, rng_seed=1)
    assert 1.0 <= est.mean <= n


def test_ic_spread_monotone_in_p(karate):
    model_lo = DiffusionModel("ic", 0.05)
    model_hi = DiffusionModel("ic", 0.3)
    lo = expected_spread(karate, [33], model_lo, 3000, rng_seed=0)
    hi = expected_spread(karate, [33], model_hi, 3000, rng_seed=0)
    assert hi.mean > lo.mean
