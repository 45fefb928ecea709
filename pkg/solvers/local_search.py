"""
Heuristique de recherche locale : descente par plus forte pente sur les
bascules de couleur d'un noeud, avec redemarrages, puis recherche locale
iteree (bascule d'un petit amas autour d'une arete frustree, nouvelle
descente, retour arriere si le nombre d'aretes frustrees augmente).
"""

import time
from collections import deque
from typing import Any, Dict, List, Optional

import numpy as np

from core.models import FrustrationResult, SolverConfig
from core.signed_graph import SignedGraph, frustration_count
from solvers.base_solver import BaseSolver
from solvers.bounds import lower_bound_pack

ROUNDS_PER_NODE = 4     # plafond des tours iteres : 4n


def tree_colouring(graph: SignedGraph) -> List[int]:
    """Coloration coherente avec les signes d'un arbre couvrant en largeur."""
    colour = [-1] * graph.n
    for root in range(graph.n):
        if colour[root] != -1:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, sign in graph.adjacency[u]:
                if colour[v] == -1:
                    colour[v] = colour[u] if sign > 0 else 1 - colour[u]
                    queue.append(v)
    return colour


# =============================================================
# ETAT DE BASCULE
# =============================================================

class _FlipState:
    """
    gain[v] = (aretes frustrees incidentes) - (aretes satisfaites incidentes) :
    ce que gagne la bascule de v. Mise a jour en O(degre) ; flip(v) deux fois
    de suite restaure exactement l'etat.
    """

    def __init__(self, graph: SignedGraph, colour: List[int]):
        self.adjacency = graph.adjacency
        self.degree    = np.array([len(nbrs) for nbrs in graph.adjacency], dtype=np.int64)
        self.colour    = list(colour)
        self.gain      = np.zeros(graph.n, dtype=np.int64)
        for v in range(graph.n):
            g = 0
            for w, sign in self.adjacency[v]:
                g += 1 if (self.colour[v] != self.colour[w]) != (sign < 0) else -1
            self.gain[v] = g
        self.count = frustration_count(graph, self.colour)
        self.flips = 0
        self.trail: List[int] = []

    def flip(self, v: int):
        colour, gain = self.colour, self.gain
        self.count -= int(gain[v])
        colour[v] ^= 1
        gain[v] = -gain[v]
        for w, sign in self.adjacency[v]:
            gain[w] += 2 if (colour[v] != colour[w]) != (sign < 0) else -2
        self.flips += 1
        self.trail.append(v)

    def descend(self):
        gain = self.gain
        while True:
            v = int(gain.argmax())
            if gain[v] <= 0:
                return
            self.flip(v)

    def undo(self, mark: int):
        """Annule les bascules posterieures a la position `mark` de la piste."""
        while len(self.trail) > mark:
            v = self.trail.pop()
            self.flip(v)
            self.trail.pop()

    def kick(self, rng: np.random.Generator, size: int):
        """Bascule un amas connexe de `size` noeuds autour d'une arete frustree."""
        touching = np.flatnonzero(self.gain > -self.degree)
        if touching.size == 0:
            return
        start = int(touching[rng.integers(touching.size)])
        cluster, seen = [start], {start}
        queue = deque([start])
        while queue and len(cluster) < size:
            u = queue.popleft()
            neighbours = [w for w, _ in self.adjacency[u] if w not in seen]
            for k in rng.permutation(len(neighbours)):
                w = neighbours[int(k)]
                seen.add(w)
                cluster.append(w)
                queue.append(w)
                if len(cluster) >= size:
                    break
        for v in cluster:
            self.flip(v)


# =============================================================
# SOLVEUR
# =============================================================

class LocalSearchSolver(BaseSolver):
    """
    Points de depart : la coloration d'arbre couvrant (0 sur un graphe
    equilibre), la coloration nulle (au plus m- aretes frustrees), puis
    `heuristic_restarts` colorations aleatoires tirees avec config.seed.
    La meilleure sert de depart a min(`perturbation_rounds`, 4n) tours de
    recherche iteree.
    """

    def __init__(self, config: Optional[SolverConfig] = None):
        super().__init__(solver_name="local_search", config=config)

    def can_handle(self, graph: SignedGraph) -> bool:
        return True

    def solve(
        self,
        graph: SignedGraph,
        seed: Optional[int] = None,
        deadline: Optional[float] = None,
    ) -> FrustrationResult:
        """
        `seed` remplace config.seed (une graine par composante) ; `deadline`
        (instant time.perf_counter()) interrompt la recherche iteree.
        """
        started = time.perf_counter()
        lower = lower_bound_pack(graph, budget=self.config.pack_budget)

        if graph.m == 0:
            return FrustrationResult.from_bounds(0, 0, [0] * graph.n, "local_search")

        rng = np.random.default_rng(self.config.seed if seed is None else seed)
        starts = [tree_colouring(graph), [0] * graph.n]

        best_count, best_colour = graph.m + 1, None
        flips_total = 0
        for attempt in range(2 + self.config.heuristic_restarts):
            if attempt < 2:
                start = list(starts[attempt])
            else:
                start = [int(c) for c in rng.integers(0, 2, graph.n)]
            state = _FlipState(graph, start)
            state.descend()
            flips_total += state.flips
            if state.count < best_count:
                best_count, best_colour = state.count, list(state.colour)
            if best_count <= lower:
                break

        rounds = 0
        max_rounds = min(self.config.perturbation_rounds, ROUNDS_PER_NODE * graph.n)
        if best_count > lower and max_rounds > 0:
            state = _FlipState(graph, best_colour)
            max_size = max(2, self.config.perturbation_size)
            while rounds < max_rounds:
                if deadline is not None and time.perf_counter() > deadline:
                    break
                rounds += 1
                before = state.count
                state.trail.clear()
                state.kick(rng, int(rng.integers(1, max_size + 1)))
                state.descend()
                if state.count < best_count:
                    best_count, best_colour = state.count, list(state.colour)
                    if best_count <= lower:
                        break
                elif state.count > before:
                    state.undo(0)
            flips_total += state.flips

        elapsed = time.perf_counter() - started
        self.log(
            f"descente : meilleur={best_count}, borne inf={lower}, "
            f"{flips_total} bascules, {rounds} tours iteres en {elapsed:.3f}s",
            "DEBUG",
        )
        return FrustrationResult.from_bounds(
            lower, best_count, best_colour, "local_search", flips_total, elapsed
        )

    def get_capabilities(self) -> Dict[str, Any]:
        return {
            "solver_name": self.solver_name,
            "description": "Descente par bascules, redemarrages et recherche iteree (borne superieure)",
            "restarts":    self.config.heuristic_restarts,
            "rounds":      self.config.perturbation_rounds,
            "seed":        self.config.seed,
        }


def local_search(graph: SignedGraph, config: Optional[SolverConfig] = None) -> FrustrationResult:
    """Borne superieure heuristique, borne inferieure par empilement de cycles."""
    return LocalSearchSolver(config).solve(graph)
