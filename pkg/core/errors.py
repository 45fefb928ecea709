"""
Exceptions communes a tous les modules Frustra.

Toutes derivent de FrustraError ; le CLI traduit FrustraError en code de sortie 1.
"""

from typing import Optional


class FrustraError(Exception):
    """Racine de toutes les erreurs metier."""


class GraphParseError(FrustraError, ValueError):
    """Ligne invalide dans un fichier de liste d'aretes."""

    def __init__(self, message: str, line_number: Optional[int] = None, line: str = ""):
        self.line_number = line_number
        self.line        = line
        if line_number is not None:
            message = f"ligne {line_number} : {message} ({line.strip()!r})"
        super().__init__(message)


class ContractError(FrustraError, ValueError):
    """Precondition d'une operation non respectee (dimensions, signes...)."""


class SolverRefusal(FrustraError, ValueError):
    """Le solveur refuse l'instance (taille au-dela du plafond configure)."""


class UndefinedMeasureError(FrustraError, ValueError):
    """Mesure non definie pour ce graphe (m = 0 par exemple)."""


class NumericalError(FrustraError, RuntimeError):
    """Le calcul spectral n'a pas atteint la tolerance demandee."""

    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (residu atteint : {residual:.3e})")


class DataError(FrustraError, ValueError):
    """Donnees d'entree incoherentes (matrice de correlation, manifeste...)."""
