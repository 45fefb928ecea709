"""
Chargement de la configuration : config.yaml (optionnel) + variables d'environnement.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field

from core.models import SolverConfig

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "config.yaml"
WORKERS_ENV_VAR     = "FRUSTRA_WORKERS"


class NullModelSettings(BaseModel):
    runs: int = 500
    mode: str = "exact"
    bounds_gap: float = 0.15


class MeasureSettings(BaseModel):
    spectral_cap: int         = 2000
    residual_tolerance: float = 1e-10


class AppkitSettings(BaseModel):
    portfolio_threshold: float = 0.2
    sweep_thresholds: list     = Field(default_factory=lambda: [0.1, 0.2, 0.3])
    ising_node_cap: int        = 1_000_000
    ising_instances: int       = 10


class RuntimeSettings(BaseModel):
    workers: Optional[int] = None


class FrustraConfig(BaseModel):
    """Configuration complete, chaque section avec ses valeurs par defaut."""

    solver: SolverConfig        = Field(default_factory=SolverConfig)
    nullmodel: NullModelSettings = Field(default_factory=NullModelSettings)
    measures: MeasureSettings   = Field(default_factory=MeasureSettings)
    appkits: AppkitSettings     = Field(default_factory=AppkitSettings)
    runtime: RuntimeSettings    = Field(default_factory=RuntimeSettings)


def load_config(path: Union[str, Path, None] = None) -> FrustraConfig:
    """
    Charge config.yaml si present, sinon les valeurs par defaut.
    Un chemin explicite absent est une erreur ; le chemin par defaut absent ne l'est pas.
    """
    load_dotenv()

    explicit = path is not None
    config_path = Path(path or DEFAULT_CONFIG_PATH)

    raw: Dict[str, Any] = {}
    if config_path.exists():
        with open(config_path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
        logger.debug("configuration chargee depuis %s", config_path)
    elif explicit:
        raise FileNotFoundError(f"fichier de configuration introuvable : {config_path}")

    return FrustraConfig.model_validate(raw)


def resolve_workers(flag: Optional[int], config: FrustraConfig) -> int:
    """--workers > FRUSTRA_WORKERS > config.yaml > parallelisme disponible."""
    if flag is not None:
        return max(1, flag)
    env_value = os.environ.get(WORKERS_ENV_VAR)
    if env_value:
        try:
            return max(1, int(env_value))
        except ValueError:
            logger.warning("%s ignore (valeur non entiere : %r)", WORKERS_ENV_VAR, env_value)
    if config.runtime.workers:
        return max(1, config.runtime.workers)
    return os.cpu_count() or 1
