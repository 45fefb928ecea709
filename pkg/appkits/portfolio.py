"""
Portefeuilles de titres : seuillage d'une matrice de correlation en graphe
signe, classification mensuelle et sensibilite au seuil.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from appkits.temporal import state_frequencies, temporal_series
from core.errors import ContractError, DataError
from core.models import FrameReport, SolverConfig
from core.signed_graph import SignedGraph

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-9
DEFAULT_THRESHOLD  = 0.2
SWEEP_THRESHOLDS   = (0.1, 0.2, 0.3)

CorrelationFrame = Tuple[str, Union[pd.DataFrame, Exception]]


def validate_correlations(correlations: pd.DataFrame) -> np.ndarray:
    """
    Controle une matrice de correlation etiquetee et la retourne en numpy.

    Raises:
        DataError: matrice non carree, etiquettes incoherentes, valeur
            manquante, hors de [-1, 1], asymetrique ou diagonale non unitaire
    """
    if correlations.shape[0] != correlations.shape[1]:
        raise DataError(f"matrice non carree : {correlations.shape}")
    rows = [str(label) for label in correlations.index]
    cols = [str(label) for label in correlations.columns]
    if rows != cols:
        raise DataError("les etiquettes de lignes et de colonnes different")
    if len(set(cols)) != len(cols):
        raise DataError("etiquettes de titres dupliquees")

    try:
        matrix = correlations.to_numpy(dtype=float)
    except (TypeError, ValueError) as exc:
        raise DataError(f"valeur non numerique : {exc}") from exc
    if np.isnan(matrix).any():
        raise DataError("valeurs manquantes (aucune imputation)")

    tol = SYMMETRY_TOLERANCE
    if (np.abs(matrix) > 1.0 + tol).any():
        raise DataError("correlation hors de [-1, 1]")
    if not np.allclose(matrix, matrix.T, rtol=0.0, atol=tol):
        raise DataError("matrice asymetrique")
    if not np.allclose(np.diag(matrix), 1.0, rtol=0.0, atol=tol):
        raise DataError("diagonale non unitaire")
    return matrix


def portfolio_graph(correlations: pd.DataFrame, threshold: float = DEFAULT_THRESHOLD) -> SignedGraph:
    """Arete (i, j) de signe sign(c_ij) si et seulement si |c_ij| > threshold."""
    if not 0.0 < threshold < 1.0:
        raise ContractError(f"seuil {threshold} hors de ]0, 1[")
    matrix = validate_correlations(correlations)

    upper = np.triu(np.abs(matrix) > threshold, k=1)
    rows, cols = np.nonzero(upper)
    edges = [
        (int(i), int(j), 1 if matrix[i, j] > 0 else -1)
        for i, j in zip(rows, cols)
    ]
    return SignedGraph(matrix.shape[0], edges, [str(c) for c in correlations.columns])


def portfolio_series(
    frames: Sequence[CorrelationFrame],
    threshold: float = DEFAULT_THRESHOLD,
    config: Optional[SolverConfig] = None,
    workers: int = 1,
) -> List[FrameReport]:
    """Un FrameReport par matrice ; une matrice invalide donne une fenetre en erreur."""
    graphs: List[Union[SignedGraph, Exception]] = []
    labels: List[str] = []
    for label, correlations in frames:
        labels.append(label)
        if isinstance(correlations, Exception):
            graphs.append(correlations)
            continue
        try:
            graphs.append(portfolio_graph(correlations, threshold))
        except DataError as exc:
            logger.warning("%s : %s", label, exc)
            graphs.append(exc)
    return temporal_series(graphs, config, labels=labels, workers=workers)


def threshold_sweep(
    frames: Sequence[CorrelationFrame],
    thresholds: Sequence[float] = SWEEP_THRESHOLDS,
    config: Optional[SolverConfig] = None,
    workers: int = 1,
) -> Dict[float, Dict[str, int]]:
    """Effectifs des trois etats pour chaque seuil."""
    sweep = {}
    for threshold in thresholds:
        reports = portfolio_series(frames, threshold, config, workers)
        sweep[float(threshold)] = state_frequencies(reports)
        logger.info("seuil %.2f : %s", threshold, sweep[float(threshold)])
    return sweep
