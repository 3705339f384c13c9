import itertools
import math
from collections import Counter

import pytest

from oracles import exact_success_probability
from probdiff.errors import ConfigurationError, GraphGenerationError
from probdiff.experiment import (
    CellParams,
    ExperimentConfig,
    degree_report,
    run_cell,
    select_early_adopters,
    sweep,
)
from probdiff.randgraph import Graph
from probdiff.streams import SeedPlan, make_stream


def test_select_all_nodes():
    g = Graph.from_edges(10, [])
    assert select_early_adopters(g, 10, make_stream(0)) == frozenset(range(10))


def test_select_single_node():
    chosen = select_early_adopters(Graph.from_edges(10, []), 1, make_stream(0))
    assert len(chosen) == 1 and chosen <= set(range(10))


def test_select_out_of_range():
    g = Graph.from_edges(5, [])
    for k in (0, 6):
        with pytest.raises(ConfigurationError):
            select_early_adopters(g, k, make_stream(0))


def test_adopter_pairs_are_uniform():
    g = Graph.from_edges(5, [])
    rng = make_stream(123)
    counts = Counter(tuple(sorted(select_early_adopters(g, 2, rng))) for _ in range(10_000))
    assert set(counts) == set(itertools.combinations(range(5), 2))
    band = 3 * math.sqrt(1000 * 0.9)
    for c in counts.values():
        assert abs(c - 1000) <= band


def test_cell_params_validation():
    with pytest.raises(ConfigurationError):
        CellParams(10, 0.5, 0.5, 11)
    with pytest.raises(ConfigurationError):
        CellParams(10, 0.5, 1.5, 1)
    with pytest.raises(ConfigurationError):
        CellParams(10, 0.5, 0.5, 1, trials=0)


def test_complete_graph_certain_transmission():
    res = run_cell(CellParams(20, 1.0, 1.0, 1, 50), SeedPlan(1))
    assert res.successes == 50 and res.p_success == 1.0
    assert res.mean_rounds == 1.0
    assert res.p_success_ci[1] == 1.0
    assert res.mean_degree == 19.0 and res.mean_regen_attempts == 1.0


def test_no_transmission_reports_no_rounds():
    res = run_cell(CellParams(20, 1.0, 0.0, 1, 50), SeedPlan(1))
    assert res.successes == 0 and res.p_success_ci[0] == 0.0
    assert res.mean_rounds is None and res.rounds_ci is None


def test_triangle_cell_matches_enumeration():
    trials = 10_000
    res = run_cell(CellParams(3, 1.0, 0.5, 1, trials), SeedPlan(5))
    exact = exact_success_probability(3, [(0, 1), (0, 2), (1, 2)], {0}, 0.5)
    # both first-round arcs (1/4), or one of them plus the relay arc (2 x 1/8)
    assert exact == pytest.approx(0.5)
    se = math.sqrt(exact * (1 - exact) / trials)
    assert abs(res.p_success - exact) <= 3 * se


SMALL = ExperimentConfig(
    n_values=(30, 40),
    p_link_values=(0.15, 0.3),
    p_diff_values=(0.1, 0.3, 0.6, 1.0),
    adopter_counts=(1, 5),
    trials=30,
    master_seed=77,
)


@pytest.fixture(scope="module")
def small_results():
    return sweep(SMALL)


def test_sweep_order_and_size(small_results):
    assert [r.params for r in small_results] == SMALL.cells()
    assert len(small_results) == 2 * 2 * 4 * 2


def test_paper_grid_has_600_cells():
    cfg = ExperimentConfig()
    assert len(cfg.cells()) == 600
    assert cfg.p_diff_values[0] == 0.05 and cfg.p_diff_values[-1] == 1.0
    assert len(cfg.p_diff_values) == 20 and cfg.trials == 200


def test_single_cell_sweep():
    cfg = ExperimentConfig((30,), (0.2,), (0.5,), (1,), trials=5)
    assert len(sweep(cfg)) == 1


def test_run_cell_agrees_with_sweep(small_results):
    for res in small_results[::5]:
        assert run_cell(res.params, SeedPlan(SMALL.master_seed)) == res


def test_sweep_independent_of_workers(small_results):
    assert sweep(SMALL, threads=2) == small_results


def test_sweep_independent_of_grid_subset(small_results):
    sub = ExperimentConfig((40,), (0.3,), (0.6,), (5,), trials=30, master_seed=77)
    [only] = sweep(sub)
    assert only in small_results


def test_successes_monotone_in_p_diff(small_results):
    by_key = {}
    for r in small_results:
        p = r.params
        by_key.setdefault((p.n, p.p_link, p.k_adopters), []).append(r.successes)
    for series in by_key.values():
        assert series == sorted(series)


def test_certain_transmission_always_succeeds(small_results):
    for r in small_results:
        if r.params.p_diff == 1.0:
            assert r.p_success == 1.0


def test_cell_result_invariants(small_results):
    for r in small_results:
        lo, hi = r.p_success_ci
        assert r.p_success == r.successes / r.params.trials
        assert 0.0 <= lo <= r.p_success <= hi <= 1.0
        assert (r.mean_rounds is not None) == (r.successes >= 1)
        assert r.mean_regen_attempts >= 1.0


def test_generation_failure_identifies_cell():
    cfg = ExperimentConfig((20,), (0.0,), (0.5,), (1,), trials=3, max_regen_attempts=4)
    with pytest.raises(GraphGenerationError) as info:
        sweep(cfg)
    assert (info.value.n, info.value.p_link, info.value.trial) == (20, 0.0, 0)


def test_config_validation():
    with pytest.raises(ConfigurationError):
        ExperimentConfig(p_diff_values=())
    with pytest.raises(ConfigurationError):
        ExperimentConfig(p_link_values=(1.2,))
    with pytest.raises(ConfigurationError):
        ExperimentConfig(n_values=(5,), adopter_counts=(10,))


def test_degree_report_complete_graph():
    rep = degree_report(6, 1.0, 1)
    assert rep.histogram == {5: 6}
    assert rep.mean_degree == 5.0 and rep.stddev_degree == 0.0


def test_degree_report_mean_degree():
    rep = degree_report(100, 0.10, 200)
    assert abs(rep.mean_degree - 9.9) <= 0.5
    assert sum(rep.histogram.values()) == 100 * 200


def test_degree_report_stddev_ratio_follows_binomial():
    small = degree_report(100, 0.10, 200)
    large = degree_report(200, 0.10, 200)
    expected = math.sqrt(199 / 99)
    assert large.stddev_degree / small.stddev_degree == pytest.approx(expected, rel=0.10)


def test_degree_report_connected_variant():
    rep = degree_report(100, 0.05, 20, connected=True)
    assert min(rep.histogram) >= 1
