"""
Bipartivite spectrale sur la matrice d'adjacence non signee |A|.

    beta = somme cosh(lambda_j) / somme exp(lambda_j)     (dans [0.5, 1])
    bs   = somme exp(-lambda_j) / somme exp(lambda_j)     (dans ]0, 1])

Les deux valent 1 pour un graphe sous-jacent biparti (spectre symetrique).
"""

import logging
from typing import Optional

import numpy as np
from scipy import linalg

from core.errors import NumericalError, SolverRefusal, UndefinedMeasureError
from core.signed_graph import SignedGraph

logger = logging.getLogger(__name__)

SPECTRAL_CAP       = 2000
RESIDUAL_TOLERANCE = 1e-10
RANGE_TOLERANCE    = 1e-9


def abs_adjacency(graph: SignedGraph) -> np.ndarray:
    """Matrice dense |A| (graphe non signe sous-jacent)."""
    matrix = np.zeros((graph.n, graph.n), dtype=float)
    matrix[graph.edge_u, graph.edge_v] = 1.0
    matrix[graph.edge_v, graph.edge_u] = 1.0
    return matrix


def spectrum_abs(
    graph: SignedGraph,
    cap: int = SPECTRAL_CAP,
    tolerance: float = RESIDUAL_TOLERANCE,
) -> np.ndarray:
    """
    Toutes les valeurs propres de |A|, en ordre decroissant.

    Raises:
        SolverRefusal: n au-dela du plafond spectral
        NumericalError: residu max |A v - lambda v| au-dela de la tolerance
    """
    if graph.n > cap:
        raise SolverRefusal(f"n={graph.n} depasse le plafond spectral ({cap})")
    if graph.n == 0:
        return np.zeros(0)

    matrix = abs_adjacency(graph)
    values, vectors = linalg.eigh(matrix)

    residual = float(np.abs(matrix @ vectors - vectors * values).max())
    scale = max(1.0, float(np.abs(values).max()))
    if residual > tolerance * scale:
        raise NumericalError("decomposition spectrale non convergee", residual)
    _check_traces(values, graph.m, tolerance * max(1.0, graph.n * scale))

    logger.debug("spectre de |A| (n=%d) : residu %.2e", graph.n, residual)
    return values[::-1].copy()


def _check_traces(values: np.ndarray, m: int, slack: float):
    """Tr(|A|) = somme lambda = 0 et Tr(|A|^2) = somme lambda^2 = 2m."""
    first = abs(float(values.sum()))
    if first > slack:
        raise NumericalError("somme des valeurs propres non nulle", first)
    second = abs(float((values ** 2).sum()) - 2 * m)
    if second > slack * max(1.0, float(np.abs(values).max())):
        raise NumericalError(f"somme des carres des valeurs propres differente de 2m={2 * m}", second)


def _exp_sums(spectrum: np.ndarray):
    """(somme e^-lambda, somme e^lambda), toutes deux multipliees par e^-lambda_max."""
    if spectrum.size == 0:
        raise UndefinedMeasureError("bipartivite spectrale non definie pour n = 0")
    top = float(spectrum.max())
    # |lambda_j| <= lambda_max (Perron-Frobenius) : pas de debordement
    positive = np.exp(spectrum - top).sum()
    negative = np.exp(-spectrum - top).sum()
    return float(negative), float(positive)


def _check_range(name: str, value: float, low: float, high: float) -> float:
    if not low - RANGE_TOLERANCE <= value <= high + RANGE_TOLERANCE:
        raise NumericalError(f"{name}={value!r} hors de [{low}, {high}]", abs(value - high))
    return min(max(value, low), high)


def beta_from_spectrum(spectrum: np.ndarray) -> float:
    negative, positive = _exp_sums(np.asarray(spectrum, dtype=float))
    return _check_range("beta", 0.5 * (positive + negative) / positive, 0.5, 1.0)


def bs_from_spectrum(spectrum: np.ndarray) -> float:
    negative, positive = _exp_sums(np.asarray(spectrum, dtype=float))
    value = negative / positive
    if value <= 0.0:
        raise NumericalError("bs nul (sous-depassement)", value)
    return _check_range("bs", value, 0.0, 1.0)


def beta(graph: SignedGraph, spectrum: Optional[np.ndarray] = None) -> float:
    """Proportion de marches fermees de longueur paire."""
    if spectrum is None:
        spectrum = spectrum_abs(graph)
    return beta_from_spectrum(spectrum)


def bs(graph: SignedGraph, spectrum: Optional[np.ndarray] = None) -> float:
    """Tr(e^-A) / Tr(e^A) sur |A|."""
    if spectrum is None:
        spectrum = spectrum_abs(graph)
    return bs_from_spectrum(spectrum)
