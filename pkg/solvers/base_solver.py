"""
Classe de base abstraite dont tous les solveurs heritent
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

from core.models import FrustrationResult, SolverConfig
from core.signed_graph import SignedGraph


class BaseSolver(ABC):
    """Classe abstraite de base pour tous les solveurs"""

    def __init__(self, solver_name: str, config: Optional[SolverConfig] = None):
        self.solver_name = solver_name
        self.config = config or SolverConfig()
        self.logger = logging.getLogger(f"frustra.{solver_name}")

    @abstractmethod
    def can_handle(self, graph: SignedGraph) -> bool:
        """
        Determine si ce solveur accepte l'instance

        Returns:
            bool: True si le solveur peut traiter, False sinon
        """
        pass

    @abstractmethod
    def solve(self, graph: SignedGraph) -> FrustrationResult:
        """
        Calcule (ou encadre) l'indice de frustration

        Returns:
            FrustrationResult: bornes certifiees et coloration atteignant la borne sup
        """
        pass

    @abstractmethod
    def get_capabilities(self) -> Dict[str, Any]:
        """
        Retourne les capacites du solveur

        Returns:
            Dict decrivant ce que le solveur sait faire
        """
        pass

    def log(self, message: str, level: str = "INFO"):
        """Journalisation sur stderr (stdout est reserve aux rapports)"""
        self.logger.log(getattr(logging, level.upper(), logging.INFO), message)
