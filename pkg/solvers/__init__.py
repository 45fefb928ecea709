"""
Solveurs de l'indice de frustration.
"""

from solvers.brute_force import brute_force
from solvers.local_search import local_search
from solvers.orchestrator import monotone_subsystem, solve_exact
