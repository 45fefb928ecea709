"""
Mesures scalaires derivees de L(G) : indice normalise F, densite,
hamiltonien d'Ising, et assemblage du MeasureReport.
"""

import logging
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from analysis.spectral import (
    RESIDUAL_TOLERANCE,
    SPECTRAL_CAP,
    beta_from_spectrum,
    bs_from_spectrum,
    spectrum_abs,
)
from core.errors import ContractError, FrustraError, UndefinedMeasureError
from core.models import FrustrationResult, MeasureReport
from core.signed_graph import SignedGraph, as_colouring

logger = logging.getLogger(__name__)


def normalized_frustration(L: int, m: int) -> Fraction:
    """F = 1 - 2L/m, valeur rationnelle exacte."""
    if m <= 0:
        raise UndefinedMeasureError("F non defini pour un graphe sans arete (m = 0)")
    if not 0 <= 2 * L <= m:
        raise ContractError(f"L={L} hors de [0, m/2] pour m={m}")
    return 1 - Fraction(2 * L, m)


def hamiltonian(L: int, m: int) -> int:
    """Energie optimale du modele d'Ising a couplages +/-1 : H = 2L - m."""
    if not 0 <= L <= m:
        raise ContractError(f"L={L} hors de [0, m]")
    return 2 * L - m


def ising_energy(graph: SignedGraph, x: Sequence[int]) -> int:
    """-somme a_ij s_i s_j avec s = 2x - 1, pour une coloration donnee."""
    spins = 2 * as_colouring(x, graph.n).astype(np.int64) - 1
    return -int((graph.edge_sign * spins[graph.edge_u] * spins[graph.edge_v]).sum())


def density(graph: SignedGraph) -> Optional[float]:
    """rho = 2m / (n(n-1)) ; None pour n < 2."""
    if graph.n < 2:
        return None
    return 2 * graph.m / (graph.n * (graph.n - 1))


def is_uniform_sign(graph: SignedGraph) -> bool:
    """Tout positif ou tout negatif : seuls cas ou beta/bs sont rapportes."""
    return graph.m > 0 and graph.m_minus in (0, graph.m)


def measure_report(
    graph: SignedGraph,
    result: FrustrationResult,
    spectral_cap: int = SPECTRAL_CAP,
    tolerance: float = RESIDUAL_TOLERANCE,
) -> MeasureReport:
    """
    Assemble les mesures d'un graphe resolu.

    Si seules des bornes sont connues, F et H sont donnes sous forme
    d'intervalles (F_bounds, H_bounds) et les champs ponctuels restent vides.
    """
    m = graph.m
    report = {
        "n": graph.n,
        "m": m,
        "m_minus": graph.m_minus,
        "density": density(graph),
        "L_lower": result.lower_bound,
        "L_upper": result.upper_bound,
        "exact": result.exact,
    }

    if m > 0:
        f_high = float(normalized_frustration(result.lower_bound, m))
        f_low  = float(normalized_frustration(result.upper_bound, m))
        h_low  = hamiltonian(result.lower_bound, m)
        h_high = hamiltonian(result.upper_bound, m)
        if result.exact:
            report["F"] = f_low
            report["H"] = h_high
        else:
            report["F_bounds"] = (f_low, f_high)
            report["H_bounds"] = (h_low, h_high)
    else:
        # F indefini ; H = 2L - m = 0
        report["H"] = 0

    if is_uniform_sign(graph):
        if graph.n <= spectral_cap:
            try:
                spectrum = spectrum_abs(graph, cap=spectral_cap, tolerance=tolerance)
                report["beta"] = beta_from_spectrum(spectrum)
                report["bs"]   = bs_from_spectrum(spectrum)
            except FrustraError as exc:
                logger.warning("bipartivite spectrale non calculee : %s", exc)
        else:
            logger.info("n=%d > plafond spectral %d : beta/bs absents", graph.n, spectral_cap)

    return MeasureReport(**report)
