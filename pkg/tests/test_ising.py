import itertools

import pytest

from analysis.measures import hamiltonian, ising_energy
from appkits.ising import ising_ensemble, ising_generate, ising_settings_table
from core.errors import ContractError
from core.models import IsingSpec, SolverConfig
from core.signed_graph import is_balanced, negate
from solvers.local_search import local_search
from solvers.orchestrator import solve_exact


# =============================================================
# GENERATEUR
# =============================================================

@pytest.mark.parametrize(
    "dimension, side, n, m",
    [
        (2, 50, 2500, 4900),
        (3, 10, 1000, 2700),
        (3, 5, 125, 300),
        (4, None, 16, 32),
        (5, None, 32, 80),
        (6, None, 64, 192),
        (7, None, 128, 448),
        (8, None, 256, 1024),
    ],
)
def test_lattice_shape_identities(dimension, side, n, m):
    spec = IsingSpec(dimension=dimension, side=side)
    assert (spec.node_count, spec.edge_count) == (n, m)
    graph = ising_generate(spec)
    assert (graph.n, graph.m) == (n, m)


def test_lattices_are_bipartite():
    for spec in (IsingSpec(dimension=3, side=4), IsingSpec(dimension=6)):
        graph = ising_generate(spec.model_copy(update={"negative_fraction": 0.0}))
        assert is_balanced(negate(graph))[0]


def test_grid_edges_join_unit_neighbours():
    graph = ising_generate(IsingSpec(dimension=2, side=3))
    assert {(i, j) for i, j, _ in graph.edges} == {
        (0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8),
        (0, 3), (3, 6), (1, 4), (4, 7), (2, 5), (5, 8),
    }


@pytest.mark.parametrize("fraction, expected", [(0.25, 75), (0.5, 150), (0.75, 225), (0.0, 0), (1.0, 300)])
def test_exact_negative_count(fraction, expected):
    graph = ising_generate(IsingSpec(dimension=3, side=5, negative_fraction=fraction, seed=3))
    assert graph.m_minus == expected


def test_negative_count_rounds_half_up():
    # chaine de 5 noeuds : m = 4, q*m = 1.5 arrondi a 2
    spec = IsingSpec(dimension=1, side=5, negative_fraction=0.375)
    assert spec.edge_count == 4 and spec.negative_count == 2


def test_generator_is_deterministic_per_seed():
    spec = IsingSpec(dimension=2, side=6, negative_fraction=0.5, seed=11)
    assert ising_generate(spec) == ising_generate(spec)
    assert ising_generate(spec) != ising_generate(spec.model_copy(update={"seed": 12}))


def test_node_cap_is_enforced():
    with pytest.raises(ContractError):
        ising_generate(IsingSpec(dimension=3, side=20), node_cap=1000)


def test_spec_validation():
    with pytest.raises(ValueError):
        IsingSpec(dimension=0)
    with pytest.raises(ValueError):
        IsingSpec(dimension=2, side=1)
    with pytest.raises(ValueError):
        IsingSpec(dimension=2, side=3, negative_fraction=1.5)


# =============================================================
# ETATS FONDAMENTAUX
# =============================================================

def test_ferromagnetic_lattice_has_no_frustration():
    graph = ising_generate(IsingSpec(dimension=2, side=8, negative_fraction=0.0))
    assert solve_exact(graph).upper_bound == 0


@pytest.mark.parametrize("seed", range(10))
def test_negation_symmetry_on_bipartite_lattices(seed):
    for spec in (
        IsingSpec(dimension=2, side=4, negative_fraction=0.25, seed=seed),
        IsingSpec(dimension=4, negative_fraction=0.25, seed=seed),
    ):
        graph = ising_generate(spec)
        assert solve_exact(negate(graph)).upper_bound == solve_exact(graph).upper_bound


@pytest.mark.parametrize("seed", range(5))
def test_ground_state_energy_matches_spin_enumeration(seed):
    graph = ising_generate(IsingSpec(dimension=2, side=3, negative_fraction=0.5, seed=seed))
    best = min(ising_energy(graph, bits) for bits in itertools.product((0, 1), repeat=graph.n))
    assert best == hamiltonian(solve_exact(graph).upper_bound, graph.m)


def test_ensemble_row_fields():
    spec = IsingSpec(dimension=2, side=4, negative_fraction=0.5, seed=7)
    row = ising_ensemble(spec, instances=4)
    assert (row["n"], row["m"], row["instances"]) == (16, 24, 4)
    assert len(row["values"]) == 4 and row["exact_instances"] == 4
    assert row["lower_values"] == row["values"]
    assert row["L_lower_mean"] == row["L_mean"]
    assert ising_ensemble(spec, instances=4)["values"] == row["values"]


def test_ensemble_requires_an_instance():
    with pytest.raises(ContractError):
        ising_ensemble(IsingSpec(dimension=4), instances=0)


def test_settings_table_has_one_row_per_fraction():
    rows = ising_settings_table(dimension=4, instances=3, seed=1)
    assert [row["negative_fraction"] for row in rows] == [0.25, 0.5, 0.75]
    assert all(row["hypercube"] for row in rows)


# =============================================================
# STATISTIQUES DE REFERENCE
# =============================================================

def test_iterated_search_reaches_cubic_grid_reference_mean():
    uppers = []
    for seed in range(3):
        graph = ising_generate(IsingSpec(dimension=3, side=5, negative_fraction=0.5, seed=seed))
        result = local_search(graph, SolverConfig(seed=seed))
        assert result.lower_bound <= result.upper_bound
        uppers.append(result.upper_bound)
    assert sum(uppers) / len(uppers) <= 52.4 + 7.5


@pytest.mark.slow
def test_hypercube_d4_mean_frustration():
    row = ising_ensemble(IsingSpec(dimension=4, negative_fraction=0.5), instances=10)
    assert row["exact_instances"] == 10
    assert abs(row["L_mean"] - 4.8) <= 3 * 1.0


@pytest.mark.slow
def test_cubic_grid_mean_frustration():
    spec = IsingSpec(dimension=3, side=5, negative_fraction=0.5)
    row = ising_ensemble(spec, instances=10, config=SolverConfig(time_limit=30.0), workers=2)
    # chaque L est encadre par [borne inf, borne sup] certifiees
    assert all(lo <= up for lo, up in zip(row["lower_values"], row["values"]))
    assert row["L_lower_mean"] <= 52.4 + 7.5
    assert abs(row["L_mean"] - 52.4) <= 7.5
