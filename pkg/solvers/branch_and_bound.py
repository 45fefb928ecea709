"""
Separation et evaluation en profondeur sur les couleurs des noeuds d'une
composante connexe.

Borne en chaque noeud de l'arbre :
  (a) aretes deja frustrees entre noeuds colores
  (b) pour chaque noeud libre, min sur ses deux couleurs des aretes frustrees
      vers ses voisins colores
  (c) cycles negatifs entierement contenus dans les aretes libres : leur nombre
      si les cycles sont disjoints en aretes, la moitie arrondie au superieur si
      chaque arete sert au plus deux fois (on garde le meilleur des deux)
Les trois termes portent sur des ensembles d'aretes disjoints.
"""

import math
import sys
import time
from typing import Any, Dict, List, Optional, Sequence

from core.models import FrustrationResult, SolverConfig
from core.signed_graph import SignedGraph
from solvers.base_solver import BaseSolver
from solvers.bounds import pack_negative_cycles, packing_bound


class _CyclePacking:
    """Cycles empiles ; `alive` compte ceux dont aucun noeud n'est encore colore."""

    def __init__(self, cycles: Sequence[Sequence[int]]):
        self.cycles_of: Dict[int, List[int]] = {}
        for cid, nodes in enumerate(cycles):
            for v in nodes:
                self.cycles_of.setdefault(v, []).append(cid)
        self.touched = [0] * len(cycles)
        self.alive = len(cycles)

    def on_assign(self, v: int):
        for cid in self.cycles_of.get(v, ()):
            if self.touched[cid] == 0:
                self.alive -= 1
            self.touched[cid] += 1

    def on_unassign(self, v: int):
        for cid in self.cycles_of.get(v, ()):
            self.touched[cid] -= 1
            if self.touched[cid] == 0:
                self.alive += 1


class _Search:
    """Etat mutable d'une exploration ; assign/unassign sont exactement inverses."""

    def __init__(
        self,
        graph: SignedGraph,
        config: SolverConfig,
        incumbent: int,
        incumbent_colouring: Sequence[int],
        deadline: Optional[float],
    ):
        n = graph.n
        self.graph     = graph
        self.config    = config
        self.adjacency = graph.adjacency
        self.degree    = [len(nbrs) for nbrs in graph.adjacency]
        self.deadline  = deadline

        self.colour     = [-1] * n
        self.cost       = [[0] * n, [0] * n]
        self.conn       = [0] * n
        self.unassigned = set(range(n))
        self.forced     = 0
        self.sum_min    = 0

        self.best           = incumbent
        self.best_colouring = list(incumbent_colouring)
        self.open_lb        = math.inf
        self.nodes          = 0
        self.aborted        = False
        self.packing        = _CyclePacking([])
        self.double         = _CyclePacking([])

    # ---------------------------------------------------------
    # Affectation / retrait
    # ---------------------------------------------------------

    def assign(self, v: int, c: int):
        cost0, cost1 = self.cost
        colour = self.colour
        self.unassigned.remove(v)
        self.sum_min -= min(cost0[v], cost1[v])
        self.forced += self.cost[c][v]
        colour[v] = c
        for w, sign in self.adjacency[v]:
            if colour[w] != -1:
                continue
            before = min(cost0[w], cost1[w])
            # w frustre l'arete s'il prend 1-c (arete +) ou c (arete -)
            if sign > 0:
                self.cost[1 - c][w] += 1
            else:
                self.cost[c][w] += 1
            self.sum_min += min(cost0[w], cost1[w]) - before
            self.conn[w] += 1
        self.packing.on_assign(v)
        self.double.on_assign(v)

    def unassign(self, v: int, c: int):
        cost0, cost1 = self.cost
        colour = self.colour
        self.packing.on_unassign(v)
        self.double.on_unassign(v)
        for w, sign in self.adjacency[v]:
            if colour[w] != -1:
                continue
            before = min(cost0[w], cost1[w])
            if sign > 0:
                self.cost[1 - c][w] -= 1
            else:
                self.cost[c][w] -= 1
            self.sum_min += min(cost0[w], cost1[w]) - before
            self.conn[w] -= 1
        colour[v] = -1
        self.forced -= self.cost[c][v]
        self.sum_min += min(cost0[v], cost1[v])
        self.unassigned.add(v)

    # ---------------------------------------------------------
    # Bornes
    # ---------------------------------------------------------

    def refresh_packing(self):
        """
        Recalcule les deux empilements (capacite 1 et 2) sur les aretes libres ;
        chacun remplace l'ancien seulement s'il compte plus de cycles vivants.
        """
        colour = self.colour
        free_edges = [
            (i, j, s) for i, j, s in self.graph.edges
            if colour[i] == -1 and colour[j] == -1
        ]
        budget = self.config.pack_budget
        cycles = pack_negative_cycles(self.graph.n, free_edges, budget=budget)
        if len(cycles) > self.packing.alive:
            self.packing = _CyclePacking(cycles)
        cycles = pack_negative_cycles(self.graph.n, free_edges, budget=budget, capacity=2)
        if len(cycles) > self.double.alive:
            self.double = _CyclePacking(cycles)

    def free_bound(self) -> int:
        """Minorant des aretes frustrees entre noeuds libres."""
        return max(self.packing.alive, packing_bound(self.double.alive, 2))

    def bound(self, depth: int) -> int:
        if (
            depth < self.config.pack_refresh_depth
            or self.nodes % self.config.pack_refresh_interval == 0
        ):
            self.refresh_packing()
        return self.forced + self.sum_min + self.free_bound()

    def gap_cut(self) -> float:
        """Seuil a partir duquel un sous-arbre est abandonne en mode ecart cible."""
        if self.config.target_gap <= 0:
            return math.inf
        return math.ceil((1.0 - self.config.target_gap) * self.best - 1e-9)

    def out_of_time(self) -> bool:
        if self.deadline is None:
            return False
        return time.perf_counter() > self.deadline

    # ---------------------------------------------------------
    # Branchement
    # ---------------------------------------------------------

    def select(self) -> int:
        """Branchement prioritaire : connexions aux noeuds colores, puis degre, puis id."""
        conn, degree = self.conn, self.degree
        return max(self.unassigned, key=lambda v: (conn[v], degree[v], -v))

    def explore(self, depth: int):
        self.nodes += 1
        previous_packing = self.packing, self.double
        try:
            bound = self.bound(depth)
            if bound >= self.best:
                return
            if bound >= self.gap_cut():
                self.open_lb = min(self.open_lb, bound)
                return
            if not self.unassigned:
                self.best = self.forced
                self.best_colouring = list(self.colour)
                return
            if self.out_of_time():
                self.aborted = True
            if self.aborted:
                self.open_lb = min(self.open_lb, bound)
                return

            v = self.select()
            first = 0 if self.cost[0][v] <= self.cost[1][v] else 1
            children = (0,) if depth == 0 else (first, 1 - first)
            for c in children:
                if self.aborted:
                    # la borne du parent couvre le fils non explore
                    self.open_lb = min(self.open_lb, bound)
                    break
                self.assign(v, c)
                self.explore(depth + 1)
                self.unassign(v, c)
        finally:
            self.packing, self.double = previous_packing


class BranchAndBoundSolver(BaseSolver):
    """Resolution exacte (ou a ecart cible / temps limite) d'une composante."""

    def __init__(self, config: Optional[SolverConfig] = None):
        super().__init__(solver_name="branch_and_bound", config=config)

    def can_handle(self, graph: SignedGraph) -> bool:
        return True

    def solve(
        self,
        graph: SignedGraph,
        incumbent: Optional[FrustrationResult] = None,
        deadline: Optional[float] = None,
    ) -> FrustrationResult:
        """
        `incumbent` fournit la borne superieure initiale (recherche locale) ;
        `deadline` est un instant time.perf_counter() partage entre composantes.
        """
        started = time.perf_counter()
        if incumbent is None:
            incumbent = FrustrationResult.from_bounds(
                0, graph.m_minus, [0] * graph.n, "zero_colouring"
            )
        if deadline is None and self.config.time_limit is not None:
            deadline = started + self.config.time_limit

        search = _Search(
            graph, self.config, incumbent.upper_bound, incumbent.colouring, deadline
        )
        if incumbent.lower_bound < incumbent.upper_bound and graph.n > 0:
            limit = sys.getrecursionlimit()
            sys.setrecursionlimit(max(limit, 3 * graph.n + 1000))
            try:
                search.explore(0)
            finally:
                sys.setrecursionlimit(limit)
            lower = int(min(search.best, search.open_lb))
        else:
            lower = incumbent.upper_bound

        lower = max(lower, incumbent.lower_bound)
        elapsed = time.perf_counter() - started
        result = FrustrationResult.from_bounds(
            lower, search.best, search.best_colouring, "branch_and_bound",
            search.nodes, elapsed,
        )
        self.log(
            f"composante n={graph.n} m={graph.m} : [{result.lower_bound}, "
            f"{result.upper_bound}] en {search.nodes} noeuds, {elapsed:.3f}s"
            + (" (interrompu)" if search.aborted else ""),
            "DEBUG",
        )
        return result

    def get_capabilities(self) -> Dict[str, Any]:
        return {
            "solver_name": self.solver_name,
            "description": "Separation et evaluation sur les couleurs des noeuds",
            "branching":   "connexions aux noeuds colores > degre > identifiant",
            "bounds":      ["frustration forcee", "min par noeud libre", "cycles negatifs (capacite 1 et 2)"],
            "target_gap":  self.config.target_gap,
            "time_limit":  self.config.time_limit,
        }
