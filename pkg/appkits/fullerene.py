"""
Frustration d'aretes bipartite : nombre minimal d'aretes a retirer pour
rendre un graphe non signe biparti, obtenu comme L de la copie toute negative.
"""

import logging
from typing import Any, Dict, Optional

from analysis.measures import measure_report
from analysis.spectral import RESIDUAL_TOLERANCE, SPECTRAL_CAP
from core.errors import ContractError
from core.models import FrustrationResult, SolverConfig
from core.signed_graph import SignedGraph, negate
from solvers.orchestrator import solve_exact

logger = logging.getLogger(__name__)


def _all_negative_copy(graph: SignedGraph) -> SignedGraph:
    if graph.m_minus:
        raise ContractError(
            f"{graph.m_minus} arete(s) negative(s) : entree attendue non signee (tout +1)"
        )
    return negate(graph)


def bipartite_edge_frustration(
    graph: SignedGraph,
    config: Optional[SolverConfig] = None,
) -> FrustrationResult:
    """solve_exact sur la copie toute negative ; la coloration est une bipartition."""
    return solve_exact(_all_negative_copy(graph), config)


def bipartivity_row(
    graph: SignedGraph,
    config: Optional[SolverConfig] = None,
    spectral_cap: int = SPECTRAL_CAP,
    tolerance: float = RESIDUAL_TOLERANCE,
) -> Dict[str, Any]:
    """Ligne m / L / F / beta / bs ; beta et bs absents au-dela du plafond spectral."""
    negative = _all_negative_copy(graph)
    result = solve_exact(negative, config)
    measures = measure_report(negative, result, spectral_cap, tolerance)
    logger.info("bipartivite : m=%d, L dans [%d, %d]", graph.m, result.lower_bound, result.upper_bound)
    return {
        "n": graph.n,
        "m": graph.m,
        "L": result.value,
        "L_bounds": [result.lower_bound, result.upper_bound],
        "F": measures.F,
        "beta": measures.beta,
        "bs": measures.bs,
        "result": result,
        "measures": measures,
    }
