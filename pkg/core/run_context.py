"""
Contexte d'execution partage par les commandes du CLI
"""

import logging
import time
from datetime import datetime
from typing import Any, Dict, List

from core import TOOL_VERSION

logger = logging.getLogger(__name__)


class RunContext:
    """Graine, version, nombre de workers et chronometrage d'une invocation"""

    def __init__(self, seed: int = 0, workers: int = 1):
        self.seed: int = seed
        self.workers: int = workers
        self.tool_version: str = TOOL_VERSION
        self.timings: Dict[str, float] = {}
        self.events: List[Dict] = []
        self.created_at: datetime = datetime.now()
        self._started: Dict[str, float] = {}

    def start(self, step: str):
        """Demarre le chronometre d'une etape"""
        self._started[step] = time.perf_counter()
        self.add_event(step, "debut")

    def stop(self, step: str) -> float:
        """Arrete le chronometre et enregistre la duree (secondes)"""
        elapsed = time.perf_counter() - self._started.pop(step)
        self.timings[step] = round(elapsed, 6)
        self.add_event(step, f"fin en {elapsed:.3f}s")
        return elapsed

    def add_event(self, step: str, detail: str):
        """Trace une etape ; visible au niveau DEBUG (option --verbose)"""
        self.events.append({
            "timestamp": datetime.now().isoformat(),
            "step": step,
            "detail": detail,
        })
        logger.debug("[%s] %s", step, detail)

    def header(self) -> Dict[str, Any]:
        """Champs reproductibles embarques dans chaque rapport"""
        return {
            "tool_version": self.tool_version,
            "seed": self.seed,
        }

    def to_dict(self) -> Dict:
        """Resume complet de l'invocation, journalise en fin de commande"""
        return {
            **self.header(),
            "workers": self.workers,
            "started_at": self.created_at.isoformat(),
            "timings": self.timings,
            "events": self.events,
        }
