"""
Enregistrements standardises echanges entre modules (solveur, modele nul,
mesures, adaptateurs, rapports CLI).
"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# =============================================================
# CONFIGURATION DU SOLVEUR
# =============================================================

class SolverConfig(BaseModel):
    """Parametres d'une resolution (exacte, avec ecart cible ou limitee en temps)."""

    model_config = ConfigDict(frozen=True)

    time_limit: Optional[float] = None        # secondes, None = sans limite
    target_gap: float           = 0.0         # 0 = prouver l'optimalite
    seed: int                   = 0
    heuristic_restarts: int     = 20
    perturbation_rounds: int    = 500         # tours de recherche locale iteree, 0 = aucun
    perturbation_size: int      = 6           # taille max de l'amas bascule
    brute_force_cap: int        = 25
    pack_refresh_interval: int  = 64
    pack_refresh_depth: int     = 10
    pack_budget: int            = 200_000     # expansions max pour les cycles de longueur 4-5

    @field_validator("target_gap")
    @classmethod
    def _gap_in_unit_interval(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"target_gap doit etre dans [0, 1], recu {value}")
        return value

    @field_validator("heuristic_restarts")
    @classmethod
    def _at_least_one_restart(cls, value: int) -> int:
        if value < 1:
            raise ValueError("heuristic_restarts doit etre >= 1")
        return value

    @field_validator("perturbation_rounds")
    @classmethod
    def _non_negative_rounds(cls, value: int) -> int:
        if value < 0:
            raise ValueError("perturbation_rounds doit etre >= 0")
        return value

    @field_validator("time_limit")
    @classmethod
    def _positive_time_limit(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and value <= 0:
            raise ValueError("time_limit doit etre strictement positif")
        return value


# =============================================================
# RESULTAT DE RESOLUTION
# =============================================================

class FrustrationResult(BaseModel):
    """Indice de frustration certifie par un encadrement [lower_bound, upper_bound]."""

    lower_bound: int
    upper_bound: int
    colouring: List[int]
    exact: bool
    nodes_explored: int = 0
    elapsed: float      = 0.0
    gap: float          = 0.0
    method: str         = ""

    @model_validator(mode="after")
    def _check_bounds(self) -> "FrustrationResult":
        if not 0 <= self.lower_bound <= self.upper_bound:
            raise ValueError(
                f"encadrement invalide : {self.lower_bound} <= L <= {self.upper_bound}"
            )
        if self.exact != (self.lower_bound == self.upper_bound):
            raise ValueError("exact doit valoir lower_bound == upper_bound")
        return self

    @classmethod
    def from_bounds(
        cls,
        lower: int,
        upper: int,
        colouring,
        method: str,
        nodes_explored: int = 0,
        elapsed: float = 0.0,
    ) -> "FrustrationResult":
        """Construit un resultat en derivant exact et gap des bornes."""
        lower = min(int(lower), int(upper))
        return cls(
            lower_bound=lower,
            upper_bound=int(upper),
            colouring=[int(c) for c in colouring],
            exact=lower == int(upper),
            nodes_explored=nodes_explored,
            elapsed=elapsed,
            gap=(int(upper) - lower) / max(int(upper), 1),
            method=method,
        )

    @property
    def value(self) -> Optional[int]:
        """L(G) si prouve, None sinon."""
        return self.upper_bound if self.exact else None

    def summary(self) -> Dict[str, Any]:
        """Resume reproductible (sans duree ni coloration)."""
        return {
            "lower_bound":    self.lower_bound,
            "upper_bound":    self.upper_bound,
            "exact":          self.exact,
            "gap":            round(self.gap, 6),
            "nodes_explored": self.nodes_explored,
            "method":         self.method,
        }


# =============================================================
# MODELE NUL
# =============================================================

ONE_SIDED_CAVEAT = (
    "valeurs = bornes inferieures : la moyenne des graphes rebattus est "
    "sous-estimee, |Z| est donc minore"
)


class EnsembleStats(BaseModel):
    """Moyenne / ecart-type de L sur les graphes rebattus, et score Z."""

    runs: int
    values: List[int]
    observed: int
    mean: float
    sd: float
    z: Optional[float] = None
    used_bounds: bool  = False
    caveat: Optional[str] = None

    @field_validator("runs")
    @classmethod
    def _two_runs_minimum(cls, value: int) -> int:
        if value < 2:
            raise ValueError("au moins 2 tirages sont necessaires (ecart-type)")
        return value

    @property
    def z_applicable(self) -> bool:
        return self.z is not None

    @classmethod
    def from_values(cls, values: List[int], observed: int, used_bounds: bool) -> "EnsembleStats":
        """Ecart-type echantillon (diviseur k - 1) ; z non applicable si sd = 0."""
        array = np.asarray(values, dtype=float)
        mean  = float(array.mean())
        sd    = float(array.std(ddof=1))
        z     = (observed - mean) / sd if sd > 0 else None
        return cls(
            runs=len(values),
            values=[int(v) for v in values],
            observed=int(observed),
            mean=mean,
            sd=sd,
            z=z,
            used_bounds=used_bounds,
            caveat=ONE_SIDED_CAVEAT if used_bounds else None,
        )


# =============================================================
# MESURES
# =============================================================

class MeasureReport(BaseModel):
    """Mesures scalaires derivees de L(G) et du spectre de |A|."""

    n: int
    m: int
    m_minus: int
    density: Optional[float]
    L_lower: int
    L_upper: int
    exact: bool
    F: Optional[float]                        = None
    F_bounds: Optional[Tuple[float, float]]   = None
    H: Optional[int]                          = None
    H_bounds: Optional[Tuple[int, int]]       = None
    beta: Optional[float]                     = None
    bs: Optional[float]                       = None

    @model_validator(mode="after")
    def _check_identities(self) -> "MeasureReport":
        if self.H is not None and self.H + self.m != 2 * self.L_upper:
            raise ValueError("H + m doit valoir 2L")
        if self.F is not None and not 0.0 <= self.F <= 1.0:
            raise ValueError(f"F hors de [0, 1] : {self.F}")
        return self

    @property
    def L(self) -> Optional[int]:
        return self.L_upper if self.exact else None


# =============================================================
# SERIES TEMPORELLES / PORTEFEUILLES
# =============================================================

class FrameState(str, Enum):
    ALL_POSITIVE = "all_positive"
    BALANCED     = "balanced"
    UNBALANCED   = "unbalanced"


class FrameReport(BaseModel):
    """Une fenetre temporelle ou un mois de portefeuille."""

    model_config = ConfigDict(use_enum_values=True)

    label: str
    n: int                         = 0
    m: int                         = 0
    m_minus: int                   = 0
    L_lower: Optional[int]         = None
    L_upper: Optional[int]         = None
    exact: bool                    = False
    F: Optional[float]             = None
    state: Optional[FrameState]    = None
    node_labels: List[str]         = Field(default_factory=list)
    partition: List[int]           = Field(default_factory=list)
    error: Optional[str]           = None

    @property
    def L(self) -> Optional[int]:
        return self.L_upper if self.exact else None

    @classmethod
    def failed(cls, label: str, error: Exception) -> "FrameReport":
        """Fenetre en erreur : enregistree, jamais fatale pour la serie."""
        return cls(label=label, error=f"{type(error).__name__}: {error}")


class NodeStability(BaseModel):
    """Resume par noeud de la stabilite de partition au fil des fenetres."""

    label: str
    frames_present: int
    majority_side: int
    majority_count: int

    @property
    def stability(self) -> float:
        return self.majority_count / self.frames_present if self.frames_present else 0.0


# =============================================================
# MODELES D'ISING
# =============================================================

class IsingSpec(BaseModel):
    """Grille ouverte de cote `side` en dimension d, ou hypercube si side est None."""

    model_config = ConfigDict(frozen=True)

    dimension: int
    side: Optional[int]       = None
    negative_fraction: float  = 0.5
    seed: int                 = 0

    @field_validator("dimension")
    @classmethod
    def _positive_dimension(cls, value: int) -> int:
        if value < 1:
            raise ValueError("dimension >= 1")
        return value

    @field_validator("side")
    @classmethod
    def _side_at_least_two(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 2:
            raise ValueError("side >= 2")
        return value

    @field_validator("negative_fraction")
    @classmethod
    def _fraction_in_unit_interval(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0:
            raise ValueError("negative_fraction dans [0, 1]")
        return value

    @property
    def node_count(self) -> int:
        if self.side is None:
            return 2 ** self.dimension
        return self.side ** self.dimension

    @property
    def edge_count(self) -> int:
        if self.side is None:
            return self.dimension * 2 ** (self.dimension - 1)
        return self.dimension * self.side ** (self.dimension - 1) * (self.side - 1)

    @property
    def negative_count(self) -> int:
        # arrondi au plus proche (demi-entiers vers le haut)
        return int(math.floor(self.negative_fraction * self.edge_count + 0.5))


# =============================================================
# RAPPORT D'ANALYSE (CLI)
# =============================================================

class AnalysisReport(BaseModel):
    """Rapport JSON emis par les commandes analyze / zscore / partition / bipartivity."""

    tool_version: str
    seed: int
    input: Dict[str, Any]
    measures: MeasureReport
    solve: Dict[str, Any]
    ensemble: Optional[EnsembleStats]         = None
    partition: Dict[str, List[str]]           = Field(default_factory=dict)
    extra: Dict[str, Any]                     = Field(default_factory=dict)
    timing: Dict[str, float]                  = Field(default_factory=dict)
