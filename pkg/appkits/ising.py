"""
Instances de verre de spin d'Ising : grilles ouvertes en dimension d ou
hypercubes, une proportion fixee d'aretes recevant le couplage -1.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import ContractError
from core.models import IsingSpec, SolverConfig
from core.signed_graph import SignedGraph
from solvers.orchestrator import solve_exact

logger = logging.getLogger(__name__)

NODE_CAP          = 1_000_000
SETTING_FRACTIONS = (0.25, 0.5, 0.75)
LIST_COLUMNS      = ("values", "lower_values")   # par instance, hors tableau CSV


def _lattice_edges(spec: IsingSpec) -> np.ndarray:
    """Aretes (u, v) de la grille ouverte ou de l'hypercube, u < v."""
    if spec.side is None:
        nodes = np.arange(spec.node_count, dtype=np.int64)
        pairs = []
        for bit in range(spec.dimension):
            low = nodes[(nodes >> bit) & 1 == 0]
            pairs.append(np.stack([low, low | (1 << bit)], axis=1))
        return np.concatenate(pairs)

    shape = (spec.side,) * spec.dimension
    index = np.arange(spec.node_count, dtype=np.int64).reshape(shape)
    pairs = []
    for axis in range(spec.dimension):
        head = np.take(index, range(spec.side - 1), axis=axis).ravel()
        tail = np.take(index, range(1, spec.side), axis=axis).ravel()
        pairs.append(np.stack([head, tail], axis=1))
    return np.concatenate(pairs)


def ising_generate(spec: IsingSpec, node_cap: int = NODE_CAP) -> SignedGraph:
    """round(q m) aretes tirees sans remise recoivent -1 ; deterministe par graine."""
    if spec.node_count > node_cap:
        raise ContractError(f"n={spec.node_count} depasse le plafond {node_cap}")

    pairs = _lattice_edges(spec)
    signs = np.ones(len(pairs), dtype=np.int64)
    rng = np.random.default_rng(spec.seed)
    negatives = rng.choice(len(pairs), size=spec.negative_count, replace=False)
    signs[negatives] = -1

    return SignedGraph(
        spec.node_count,
        ((int(u), int(v), int(s)) for (u, v), s in zip(pairs, signs)),
    )


def _solve_instance(task: Tuple[IsingSpec, SolverConfig, int]) -> Tuple[int, int, bool, float]:
    spec, config, node_cap = task
    graph = ising_generate(spec, node_cap)
    started = time.perf_counter()
    result = solve_exact(graph, config.model_copy(update={"seed": spec.seed}))
    return result.lower_bound, result.upper_bound, result.exact, time.perf_counter() - started


def ising_ensemble(
    spec: IsingSpec,
    instances: int = 10,
    config: Optional[SolverConfig] = None,
    workers: int = 1,
    node_cap: int = NODE_CAP,
) -> Dict[str, Any]:
    """
    Resout `instances` tirages (graines spec.seed .. spec.seed + instances - 1)
    et resume L par moyenne +/- ecart-type echantillon.
    """
    if instances < 1:
        raise ContractError("instances >= 1")
    config = config or SolverConfig()
    tasks = [
        (spec.model_copy(update={"seed": spec.seed + k}), config, node_cap)
        for k in range(instances)
    ]
    if workers > 1 and instances > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_solve_instance, tasks))
    else:
        outcomes = [_solve_instance(task) for task in tasks]

    upper = np.array([o[1] for o in outcomes], dtype=float)
    lower = np.array([o[0] for o in outcomes], dtype=float)
    times = np.array([o[3] for o in outcomes], dtype=float)
    exact = sum(1 for o in outcomes if o[2])

    row = {
        "dimension": spec.dimension,
        "side": spec.side,
        "hypercube": spec.side is None,
        "n": spec.node_count,
        "m": spec.edge_count,
        "negative_fraction": spec.negative_fraction,
        "instances": instances,
        "values": [int(o[1]) for o in outcomes],
        "lower_values": [int(o[0]) for o in outcomes],
        "L_mean": float(upper.mean()),
        "L_sd": float(upper.std(ddof=1)) if instances > 1 else 0.0,
        "L_lower_mean": float(lower.mean()),
        "exact_instances": exact,
        "time_mean": float(times.mean()),
    }
    logger.info(
        "ising d=%d %s q=%.2f : L = %.1f +/- %.1f (%d/%d prouves)",
        spec.dimension, "hypercube" if spec.side is None else f"s={spec.side}",
        spec.negative_fraction, row["L_mean"], row["L_sd"], exact, instances,
    )
    return row


def ising_settings_table(
    dimension: int,
    side: Optional[int] = None,
    fractions: Sequence[float] = SETTING_FRACTIONS,
    instances: int = 10,
    seed: int = 0,
    config: Optional[SolverConfig] = None,
    workers: int = 1,
    node_cap: int = NODE_CAP,
) -> List[Dict[str, Any]]:
    """Une ligne par proportion d'aretes negatives (25 %, 50 %, 75 % par defaut)."""
    return [
        ising_ensemble(
            IsingSpec(dimension=dimension, side=side, negative_fraction=q, seed=seed),
            instances, config, workers, node_cap,
        )
        for q in fractions
    ]
