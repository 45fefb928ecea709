"""
Fixtures partagees : generateur de graphes signes aleatoires, oracle
exhaustif independant des solveurs, acces aux jeux de donnees publics.
"""

import itertools
from pathlib import Path

import numpy as np
import pytest

from core.signed_graph import SignedGraph, parse_edge_list
from datasets.loader import NetworkLoader

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "networks"


def random_signed_graph(n: int, p: float, neg_fraction: float, seed: int) -> SignedGraph:
    """G(n, p) dont chaque arete est negative avec probabilite neg_fraction."""
    rng = np.random.default_rng(seed)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((i, j, -1 if rng.random() < neg_fraction else 1))
    return SignedGraph(n, edges)


def exhaustive_frustration(graph: SignedGraph) -> int:
    """min sur toutes les 2^n colorations, sans numpy ni solveur."""
    if graph.n == 0:
        return 0
    best = graph.m
    for bits in itertools.product((0, 1), repeat=graph.n):
        count = sum(
            1 for i, j, s in graph.edges
            if (bits[i] != bits[j]) != (s < 0)
        )
        best = min(best, count)
    return best


def cycle_graph(n: int, sign: int = 1) -> SignedGraph:
    return SignedGraph(n, [(k, (k + 1) % n, sign) for k in range(n)])


def require_fixture(name: str) -> SignedGraph:
    """Charge data/networks/<name> ou ignore le test avec un message explicite."""
    graph = NetworkLoader(DATA_DIR).load_fixture(name)
    if graph is None:
        pytest.skip(f"jeu de donnees '{name}' absent de {DATA_DIR} (non redistribue)")
    return graph


@pytest.fixture
def negative_triangle() -> SignedGraph:
    return parse_edge_list("a b +\nb c +\na c -\n")


@pytest.fixture
def balanced_square() -> SignedGraph:
    # deux camps {a, b} / {c, d}
    return parse_edge_list("a b +\nc d +\na c -\nb d -\n")


@pytest.fixture
def small_random_graphs():
    return [
        random_signed_graph(n, 0.5, q, seed)
        for seed, (n, q) in enumerate(itertools.product(range(4, 10), (0.25, 0.5, 0.75)))
    ]
