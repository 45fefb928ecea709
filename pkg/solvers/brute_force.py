"""
Enumeration exhaustive des colorations : oracle exact pour les petits graphes.
"""

import time
from typing import Any, Dict, Optional

import numpy as np

from core.errors import SolverRefusal
from core.models import FrustrationResult, SolverConfig
from core.signed_graph import SignedGraph
from solvers.base_solver import BaseSolver

CHUNK_BITS = 14


class BruteForceSolver(BaseSolver):
    """Parcourt les 2^(n-1) colorations, le noeud 0 etant fixe a la couleur 0."""

    def __init__(self, config: Optional[SolverConfig] = None):
        super().__init__(solver_name="brute_force", config=config)

    def can_handle(self, graph: SignedGraph) -> bool:
        return graph.n <= self.config.brute_force_cap

    def solve(self, graph: SignedGraph) -> FrustrationResult:
        if not self.can_handle(graph):
            raise SolverRefusal(
                f"n={graph.n} depasse le plafond de l'enumeration "
                f"({self.config.brute_force_cap}) : utiliser solve_exact"
            )

        started = time.perf_counter()
        n = graph.n
        if graph.m == 0 or n <= 1:
            return FrustrationResult.from_bounds(0, 0, [0] * n, "brute_force", 1)

        free   = n - 1
        total  = 1 << free
        neg    = graph.edge_sign < 0
        u, v   = graph.edge_u, graph.edge_v
        shifts = np.arange(free, dtype=np.int64)
        chunk  = 1 << min(free, CHUNK_BITS)

        best_count = graph.m + 1
        best_code  = 0
        for first in range(0, total, chunk):
            codes = np.arange(first, min(first + chunk, total), dtype=np.int64)
            bits = np.zeros((codes.size, n), dtype=bool)
            bits[:, 1:] = ((codes[:, None] >> shifts) & 1).astype(bool)
            counts = ((bits[:, u] != bits[:, v]) ^ neg).sum(axis=1)
            k = int(counts.argmin())
            if counts[k] < best_count:
                best_count = int(counts[k])
                best_code  = int(codes[k])

        colouring = [0] + [(best_code >> i) & 1 for i in range(free)]
        elapsed = time.perf_counter() - started
        self.log(f"enumeration n={n} : L={best_count} en {elapsed:.3f}s", "DEBUG")
        return FrustrationResult.from_bounds(
            best_count, best_count, colouring, "brute_force", total, elapsed
        )

    def get_capabilities(self) -> Dict[str, Any]:
        return {
            "solver_name": self.solver_name,
            "description": "Enumeration exhaustive (oracle exact)",
            "max_nodes":   self.config.brute_force_cap,
        }


def brute_force(graph: SignedGraph, config: Optional[SolverConfig] = None) -> FrustrationResult:
    """L(G) par enumeration directe ; refuse les graphes au-dela du plafond."""
    return BruteForceSolver(config).solve(graph)
