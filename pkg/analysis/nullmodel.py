"""
Modele nul par rebattage des signes : meme topologie, meme m-, signes
negatifs places uniformement au hasard. Score Z de L(G) face a l'ensemble.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

import numpy as np

from core.errors import ContractError
from core.models import EnsembleStats, SolverConfig
from core.signed_graph import SignedGraph
from solvers.orchestrator import solve_exact

logger = logging.getLogger(__name__)

MODES       = ("exact", "lower_bound")
DEFAULT_GAP = 0.15


def reshuffle(graph: SignedGraph, seed: int) -> SignedGraph:
    """m- aretes tirees sans remise recoivent le signe -1, les autres +1."""
    rng = np.random.default_rng(seed)
    signs = np.ones(graph.m, dtype=np.int64)
    if graph.m_minus:
        signs[rng.choice(graph.m, size=graph.m_minus, replace=False)] = -1
    return graph.with_signs(signs)


def mode_config(config: SolverConfig, mode: str, bounds_gap: float = DEFAULT_GAP) -> SolverConfig:
    """En mode lower_bound, resolution a ecart cible (config.target_gap, sinon bounds_gap)."""
    if mode not in MODES:
        raise ContractError(f"mode inconnu : {mode!r} (attendu : {', '.join(MODES)})")
    if mode == "lower_bound" and config.target_gap <= 0:
        return config.model_copy(update={"target_gap": bounds_gap})
    return config


def _solve_run(task: Tuple[SignedGraph, int, SolverConfig]) -> Tuple[int, bool]:
    """Un tirage : (borne inferieure prouvee, exact). Fonction de module pour le pool."""
    graph, seed, config = task
    shuffled = reshuffle(graph, seed)
    result = solve_exact(shuffled, config.model_copy(update={"seed": seed}))
    return result.lower_bound, result.exact


def ensemble(
    graph: SignedGraph,
    runs: int,
    config: Optional[SolverConfig] = None,
    mode: str = "exact",
    workers: int = 1,
    observed: Optional[int] = None,
    observed_exact: bool = True,
    bounds_gap: float = DEFAULT_GAP,
) -> EnsembleStats:
    """
    Resout `runs` graphes rebattus (graines seed+1..seed+runs) et calcule
    moyenne, ecart-type echantillon et Z.

    `observed` : L(G) deja connu (borne inferieure si observed_exact est faux) ;
    sinon G est resolu avec la meme configuration, borne inferieure comprise
    en mode lower_bound.
    """
    if runs < 2:
        raise ContractError(f"runs={runs} : au moins 2 tirages requis (ecart-type)")
    config = mode_config(config or SolverConfig(), mode, bounds_gap)

    if observed is None:
        observed_result = solve_exact(graph, config)
        observed = observed_result.lower_bound
        observed_exact = observed_result.exact

    tasks = [(graph, config.seed + r, config) for r in range(1, runs + 1)]
    if workers > 1 and runs > 1:
        logger.info("ensemble : %d tirages sur %d processus", runs, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes: List[Tuple[int, bool]] = list(pool.map(_solve_run, tasks))
    else:
        logger.info("ensemble : %d tirages (sequentiel)", runs)
        outcomes = [_solve_run(task) for task in tasks]

    values = [value for value, _ in outcomes]
    used_bounds = mode == "lower_bound" or not observed_exact or not all(
        exact for _, exact in outcomes
    )
    if used_bounds and mode == "exact":
        logger.warning("certains tirages n'ont pas ete prouves : bornes inferieures utilisees")

    stats = EnsembleStats.from_values(values, observed, used_bounds)
    logger.info(
        "L observe=%d, moyenne=%.3f, ecart-type=%.3f, Z=%s",
        stats.observed, stats.mean, stats.sd,
        "n/a" if stats.z is None else f"{stats.z:.3f}",
    )
    return stats
