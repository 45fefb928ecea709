import pytest

from conftest import exhaustive_frustration, random_signed_graph
from core.errors import ContractError
from core.signed_graph import SignedGraph, frustration_count, parse_edge_list
from preprocessing.reduce import lift, reduce
from solvers.brute_force import brute_force


def test_tree_reduces_to_empty_core():
    tree = SignedGraph(5, [(0, 1, -1), (1, 2, 1), (1, 3, -1), (3, 4, -1)])
    reduced = reduce(tree)
    assert reduced.core.n == 0
    assert len(reduced.peeled) == 5
    colouring = lift(reduced, [])
    assert frustration_count(tree, colouring) == 0


def test_isolated_nodes_are_peeled():
    graph = SignedGraph(3, [])
    reduced = reduce(graph)
    assert reduced.core.n == 0
    assert list(lift(reduced, [])) == [0, 0, 0]


def test_two_triangles_sharing_a_cut_vertex_split_into_blocks():
    # deux triangles negatifs relies par le noeud c, plus une queue c-x-y
    graph = parse_edge_list(
        "a b +\nb c +\na c -\n"
        "c d -\nd e -\nc e -\n"
        "c x +\nx y -\n"
    )
    reduced = reduce(graph)
    assert len(reduced.core_blocks) == 2
    assert reduced.core.n == 6 and reduced.core.m == 6
    assert any(label.endswith("@b0") for label in reduced.core.labels)

    core_best = brute_force(reduced.core)
    colouring = lift(reduced, core_best.colouring)
    assert frustration_count(graph, colouring) == core_best.upper_bound == 2


def test_bridge_between_blocks_is_satisfied_after_lift():
    graph = parse_edge_list(
        "a b +\nb c +\na c -\n"
        "c d -\n"
        "d e +\ne f +\nd f -\n"
    )
    reduced = reduce(graph)
    assert sum(1 for b in reduced.blocks if b.bridge is not None) == 1
    colouring = lift(reduced, brute_force(reduced.core).colouring)
    assert frustration_count(graph, colouring) == 2


@pytest.mark.parametrize("seed", range(30))
def test_reduction_preserves_frustration_index(seed):
    graph = random_signed_graph(11, 0.25, 0.5, seed)
    reduced = reduce(graph)
    core_value = exhaustive_frustration(reduced.core) if reduced.core.n <= 14 else None
    if core_value is None:
        pytest.skip("coeur trop grand pour l'oracle")
    assert core_value + reduced.removed_contribution == exhaustive_frustration(graph)

    colouring = lift(reduced, brute_force(reduced.core).colouring)
    assert frustration_count(graph, colouring) == core_value


def test_lift_rejects_wrong_length(negative_triangle):
    reduced = reduce(negative_triangle)
    with pytest.raises(ContractError):
        lift(reduced, [0])
