import itertools
from collections import Counter

import numpy as np
import pytest
from scipy import stats

from conftest import exhaustive_frustration, random_signed_graph
from analysis.nullmodel import ensemble, mode_config, reshuffle
from core.errors import ContractError
from core.models import EnsembleStats, SolverConfig
from core.signed_graph import SignedGraph


def _complete_graph(n: int, negative_edges: int) -> SignedGraph:
    pairs = list(itertools.combinations(range(n), 2))
    return SignedGraph(n, [(i, j, -1 if k < negative_edges else 1) for k, (i, j) in enumerate(pairs)])


# =============================================================
# REBATTAGE
# =============================================================

def test_reshuffle_preserves_topology_and_negative_count():
    graph = random_signed_graph(15, 0.3, 0.4, seed=1)
    shuffled = reshuffle(graph, seed=7)
    assert shuffled.n == graph.n and shuffled.m_minus == graph.m_minus
    assert [(i, j) for i, j, _ in shuffled.edges] == [(i, j) for i, j, _ in graph.edges]
    assert shuffled.labels == graph.labels


def test_reshuffle_is_deterministic_per_seed():
    graph = random_signed_graph(15, 0.3, 0.4, seed=1)
    assert reshuffle(graph, 3) == reshuffle(graph, 3)


@pytest.mark.parametrize("negatives", [0, 6])
def test_reshuffle_uniform_sign_graph_is_unchanged(negatives):
    graph = _complete_graph(4, negatives)
    for seed in range(5):
        assert reshuffle(graph, seed) == graph


def test_reshuffle_placements_are_uniform():
    graph = _complete_graph(4, 2)
    counts = Counter(
        tuple(k for k, (_, _, s) in enumerate(reshuffle(graph, seed).edges) if s < 0)
        for seed in range(10_000)
    )
    assert len(counts) == 15
    observed = [counts[p] for p in itertools.combinations(range(6), 2)]
    assert stats.chisquare(observed).pvalue > 1e-3


# =============================================================
# ENSEMBLE
# =============================================================

def test_ensemble_requires_two_runs():
    with pytest.raises(ContractError):
        ensemble(_complete_graph(4, 2), runs=1)


def test_ensemble_all_positive_graph_has_no_z():
    result = ensemble(_complete_graph(5, 0), runs=10)
    assert result.values == [0] * 10
    assert result.sd == 0.0 and result.z is None and not result.z_applicable


def test_ensemble_triangle_mean_is_exact():
    triangle = SignedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, -1)])
    result = ensemble(triangle, runs=20)
    assert result.mean == 1.0 and result.observed == 1 and result.z is None


def test_ensemble_mean_matches_enumerated_expectation():
    graph = _complete_graph(5, 4)
    pairs = [(i, j) for i, j, _ in graph.edges]
    values = []
    for negatives in itertools.combinations(range(graph.m), 4):
        signed = SignedGraph(5, [(i, j, -1 if k in negatives else 1) for k, (i, j) in enumerate(pairs)])
        values.append(exhaustive_frustration(signed))
    expected, spread = np.mean(values), np.std(values)

    runs = 300
    result = ensemble(graph, runs=runs, config=SolverConfig(seed=12))
    assert result.mean == pytest.approx(expected, abs=4 * spread / np.sqrt(runs) + 1e-9)
    assert result.mean == pytest.approx(np.mean(result.values))
    assert result.sd == pytest.approx(np.std(result.values, ddof=1))


def test_ensemble_is_reproducible():
    graph = random_signed_graph(12, 0.4, 0.5, seed=4)
    first = ensemble(graph, runs=8, config=SolverConfig(seed=2))
    second = ensemble(graph, runs=8, config=SolverConfig(seed=2))
    assert first == second


def test_ensemble_parallel_matches_sequential():
    graph = random_signed_graph(12, 0.4, 0.5, seed=4)
    sequential = ensemble(graph, runs=6, config=SolverConfig(seed=2), workers=1)
    parallel = ensemble(graph, runs=6, config=SolverConfig(seed=2), workers=2)
    assert parallel.values == sequential.values


def test_ensemble_values_respect_bounds():
    graph = random_signed_graph(12, 0.4, 0.5, seed=8)
    result = ensemble(graph, runs=10)
    assert all(0 <= v <= min(graph.m_minus, graph.m // 2) for v in result.values)
    assert not result.used_bounds and result.caveat is None


def test_lower_bound_mode_flags_one_sided_result():
    graph = random_signed_graph(12, 0.4, 0.5, seed=8)
    result = ensemble(graph, runs=5, mode="lower_bound")
    assert result.used_bounds and result.caveat


def test_mode_config_applies_default_gap():
    assert mode_config(SolverConfig(), "lower_bound").target_gap == 0.15
    assert mode_config(SolverConfig(target_gap=0.05), "lower_bound").target_gap == 0.05
    assert mode_config(SolverConfig(), "exact").target_gap == 0.0
    with pytest.raises(ContractError):
        mode_config(SolverConfig(), "approximate")


def test_ensemble_stats_z_score():
    result = EnsembleStats.from_values([4, 6, 5, 5], observed=2, used_bounds=False)
    assert result.mean == 5.0
    assert result.sd == pytest.approx(np.sqrt(2 / 3))
    assert result.z == pytest.approx(-3 / np.sqrt(2 / 3))
