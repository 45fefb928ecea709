"""
Orchestrateur de resolution exacte.

Recoit un graphe signe et decide, composante par composante du coeur reduit,
quel solveur appeler :
  1. trivial          -> composante sans arete
  2. balanced         -> composante equilibree (parcours O(n + m)), L = 0
  3. branch_and_bound -> recherche locale pour l'incumbent, puis B&B

Les resultats des composantes sont fusionnes (L additif) puis la coloration
du coeur est relevee vers le graphe d'origine.
"""

import time
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from core.models import FrustrationResult, SolverConfig
from core.signed_graph import (
    SignedGraph,
    connected_components,
    frustrated_edges,
    frustration_count,
    is_balanced,
)
from preprocessing.reduce import lift, reduce
from solvers.base_solver import BaseSolver
from solvers.branch_and_bound import BranchAndBoundSolver
from solvers.local_search import LocalSearchSolver


# =============================================================
# ORCHESTRATEUR
# =============================================================

class FrustrationOrchestrator(BaseSolver):
    """
    Point d'entree de solve_exact.

    Responsabilites :
    - Reduire l'instance (feuilles, noeuds isoles, blocs biconnexes)
    - Router chaque composante vers le solveur adapte
    - Fusionner les bornes et relever la coloration
    - Verifier les invariants (L <= m-, L <= m/2, coloration coherente)
    """

    def __init__(
        self,
        config: Optional[SolverConfig] = None,
        local_search: Optional[LocalSearchSolver] = None,
        branch_and_bound: Optional[BranchAndBoundSolver] = None,
    ):
        super().__init__(solver_name="orchestrator", config=config)
        self.local_search     = local_search or LocalSearchSolver(self.config)
        self.branch_and_bound = branch_and_bound or BranchAndBoundSolver(self.config)

    # =========================================================
    # ROUTING
    # =========================================================

    def can_handle(self, graph: SignedGraph) -> bool:
        """L'orchestrateur accepte tous les graphes."""
        return True

    def _decide_route(self, component: SignedGraph) -> str:
        if component.m == 0:
            return "trivial"
        balanced, _ = is_balanced(component)
        if balanced:
            return "balanced"
        return "branch_and_bound"

    # =========================================================
    # TRAITEMENT PRINCIPAL
    # =========================================================

    def solve(self, graph: SignedGraph) -> FrustrationResult:
        started = time.perf_counter()
        deadline = (
            started + self.config.time_limit if self.config.time_limit is not None else None
        )

        reduced = reduce(graph)
        core = reduced.core
        self.log(
            f"graphe n={graph.n} m={graph.m} m-={graph.m_minus} -> "
            f"coeur n={core.n} m={core.m}",
            "DEBUG",
        )

        core_colouring = np.zeros(core.n, dtype=np.int64)
        partials: List[FrustrationResult] = []
        for index, (component, node_map) in enumerate(connected_components(core)):
            route = self._decide_route(component)
            if route == "trivial":
                partial = FrustrationResult.from_bounds(0, 0, [0] * component.n, route)
            elif route == "balanced":
                _, witness = is_balanced(component)
                partial = FrustrationResult.from_bounds(0, 0, witness, route)
            else:
                partial = self._handle_branch_and_bound(component, index, deadline)
            core_colouring[node_map] = partial.colouring
            partials.append(partial)

        result = self._merge_results(graph, reduced, core_colouring, partials, started)
        self._check_invariants(graph, result)
        return result

    def _handle_branch_and_bound(
        self, component: SignedGraph, index: int, deadline: Optional[float]
    ) -> FrustrationResult:
        """Incumbent par recherche locale (graine propre a la composante), puis B&B."""
        incumbent = self.local_search.solve(
            component, seed=self.config.seed + index, deadline=deadline
        )
        if incumbent.exact:
            return incumbent.model_copy(update={"method": "local_search"})
        return self.branch_and_bound.solve(component, incumbent=incumbent, deadline=deadline)

    # =========================================================
    # FUSION DES RESULTATS
    # =========================================================

    def _merge_results(
        self,
        graph: SignedGraph,
        reduced,
        core_colouring: np.ndarray,
        partials: Sequence[FrustrationResult],
        started: float,
    ) -> FrustrationResult:
        colouring = lift(reduced, core_colouring)
        lower = reduced.removed_contribution + sum(p.lower_bound for p in partials)
        upper = reduced.removed_contribution + sum(p.upper_bound for p in partials)
        explored = sum(p.nodes_explored for p in partials)
        elapsed = time.perf_counter() - started

        result = FrustrationResult.from_bounds(
            lower, upper, colouring, "solve_exact", explored, elapsed
        )
        self.log(
            f"L dans [{lower}, {upper}] (exact={result.exact}) "
            f"sur {len(partials)} composante(s) en {elapsed:.3f}s"
        )
        return result

    @staticmethod
    def _check_invariants(graph: SignedGraph, result: FrustrationResult):
        assert frustration_count(graph, result.colouring) == result.upper_bound
        assert result.lower_bound <= min(graph.m_minus, graph.m // 2)
        assert result.upper_bound <= min(graph.m_minus, graph.m // 2)

    # =========================================================
    # CAPACITES
    # =========================================================

    def get_capabilities(self) -> Dict[str, Any]:
        return {
            "solver_name": self.solver_name,
            "description": "Reduction, routage par composante et fusion des bornes",
            "routes": {
                "trivial":          "Composante sans arete",
                "balanced":         "Composante equilibree, L = 0",
                "branch_and_bound": "Recherche locale puis separation et evaluation",
            },
            "solvers": {
                "local_search":     self.local_search.get_capabilities(),
                "branch_and_bound": self.branch_and_bound.get_capabilities(),
            },
        }


# =============================================================
# FONCTIONS D'ENTREE
# =============================================================

def solve_exact(graph: SignedGraph, config: Optional[SolverConfig] = None) -> FrustrationResult:
    """L(G) exact (ou encadre si ecart cible / limite de temps atteints)."""
    return FrustrationOrchestrator(config).solve(graph)


def monotone_subsystem(graph: SignedGraph, colouring: Sequence[int]) -> SignedGraph:
    """Sous-graphe sans les aretes frustrees de la coloration : toujours equilibre."""
    removed = {(i, j) for i, j, _ in frustrated_edges(graph, colouring)}
    kept = [(i, j, s) for i, j, s in graph.edges if (i, j) not in removed]
    return SignedGraph(graph.n, kept, graph.labels)
