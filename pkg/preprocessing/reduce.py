"""
Reductions de pre-traitement avant la resolution exacte.

Ensemble de reductions retenu :
  1. suppression des noeuds isoles
  2. effeuillage des noeuds de degre 1 (leur unique arete est toujours satisfaite)
  3. decoupage en composantes biconnexes aux points d'articulation (L additif)

Le coeur est l'union disjointe des blocs non reduits a une arete ; la
reconstruction permet de relever une coloration du coeur vers le graphe d'origine.
"""

import logging
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from core.errors import ContractError
from core.signed_graph import SignedGraph

logger = logging.getLogger(__name__)


# =============================================================
# STRUCTURES
# =============================================================

class Block(BaseModel):
    """Bloc biconnexe ; core_offset est None pour un pont (arete seule)."""

    nodes: List[int]
    core_offset: Optional[int] = None
    bridge: Optional[Tuple[int, int, int]] = None


class ReducedInstance(BaseModel):
    """Coeur reduit + journal permettant de relever une coloration."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    original: SignedGraph
    core: SignedGraph
    removed_contribution: int = 0
    peeled: List[Tuple[int, int, int]] = Field(default_factory=list)   # (noeud, voisin | -1, signe)
    blocks: List[Block] = Field(default_factory=list)
    steps: List[str] = Field(default_factory=list)

    @property
    def core_blocks(self) -> List[Block]:
        return [b for b in self.blocks if b.core_offset is not None]


# =============================================================
# REDUCTION
# =============================================================

def _peel(graph: SignedGraph) -> Tuple[List[bool], List[Tuple[int, int, int]]]:
    """Effeuillage jusqu'au point fixe : retire les noeuds de degre <= 1."""
    alive  = [True] * graph.n
    degree = [graph.degree(v) for v in range(graph.n)]
    peeled: List[Tuple[int, int, int]] = []

    queue = deque(v for v in range(graph.n) if degree[v] <= 1)
    while queue:
        v = queue.popleft()
        if not alive[v] or degree[v] > 1:
            continue
        alive[v] = False
        if degree[v] == 0:
            peeled.append((v, -1, 0))
            continue
        w, sign = next((w, s) for w, s in graph.adjacency[v] if alive[w])
        peeled.append((v, w, sign))
        degree[v] = 0
        degree[w] -= 1
        if degree[w] <= 1:
            queue.append(w)

    return alive, peeled


def reduce(graph: SignedGraph) -> ReducedInstance:
    """
    Reduit le graphe en preservant l'indice de frustration :
    L(original) = L(core) + removed_contribution (toujours 0 ici).
    """
    steps: List[str] = []

    alive, peeled = _peel(graph)
    isolated = sum(1 for _, w, _ in peeled if w == -1)
    steps.append(f"effeuillage : {len(peeled)} noeuds retires dont {isolated} isoles")

    remaining = nx.Graph()
    remaining.add_edges_from(
        (i, j, {"sign": s}) for i, j, s in graph.edges if alive[i] and alive[j]
    )

    raw_blocks = []
    for block_edges in nx.biconnected_component_edges(remaining):
        edges = sorted(
            (min(u, v), max(u, v), remaining.edges[u, v]["sign"]) for u, v in block_edges
        )
        nodes = sorted({u for u, _, _ in edges} | {v for _, v, _ in edges})
        raw_blocks.append((nodes, edges))
    raw_blocks.sort(key=lambda b: (b[0][0], b[0]))

    # Un bloc biconnexe d'au moins 3 noeuds est de degre minimal 2 : le
    # re-effeuillage a l'interieur d'un bloc ne retire rien, seuls les ponts
    # (blocs a une arete) sont de nouvelles feuilles, de contribution nulle.
    blocks: List[Block] = []
    core_edges:  List[Tuple[int, int, int]] = []
    core_labels: List[str] = []
    offset = 0
    for index, (nodes, edges) in enumerate(raw_blocks):
        if len(edges) == 1:
            blocks.append(Block(nodes=nodes, bridge=edges[0]))
            continue
        local = {v: offset + k for k, v in enumerate(nodes)}
        core_edges.extend((local[i], local[j], s) for i, j, s in edges)
        core_labels.extend(f"{graph.labels[v]}@b{index}" for v in nodes)
        blocks.append(Block(nodes=nodes, core_offset=offset))
        offset += len(nodes)

    core = SignedGraph(offset, core_edges, core_labels)
    bridges = sum(1 for b in blocks if b.core_offset is None)
    steps.append(
        f"decoupage biconnexe : {len(blocks) - bridges} blocs, {bridges} ponts, "
        f"coeur n={core.n} m={core.m}"
    )
    logger.debug("reduction : %s", " | ".join(steps))

    return ReducedInstance(
        original=graph,
        core=core,
        removed_contribution=0,
        peeled=peeled,
        blocks=blocks,
        steps=steps,
    )


# =============================================================
# RELEVEMENT
# =============================================================

def lift(reduced: ReducedInstance, core_colouring: Sequence[int]) -> np.ndarray:
    """
    Releve une coloration du coeur vers le graphe d'origine.

    Les blocs sont parcourus en largeur dans l'arbre blocs-articulations ; un
    bloc est complemente si besoin pour s'accorder sur son point d'articulation
    deja colore. Les ponts puis les feuilles (ordre inverse d'effeuillage) sont
    colores de facon a satisfaire leur arete.
    """
    core_colouring = np.asarray(core_colouring, dtype=np.int64).ravel()
    if core_colouring.shape[0] != reduced.core.n:
        raise ContractError(
            f"coloration du coeur de longueur {core_colouring.shape[0]}, "
            f"attendu {reduced.core.n}"
        )

    colour = np.full(reduced.original.n, -1, dtype=np.int64)

    blocks_of_node: Dict[int, List[int]] = {}
    for b_index, block in enumerate(reduced.blocks):
        for v in block.nodes:
            blocks_of_node.setdefault(v, []).append(b_index)

    visited = [False] * len(reduced.blocks)
    for start in range(len(reduced.blocks)):
        if visited[start]:
            continue
        visited[start] = True
        queue = deque([start])
        while queue:
            block = reduced.blocks[queue.popleft()]
            _colour_block(block, core_colouring, colour)
            for v in block.nodes:
                for neighbour in blocks_of_node[v]:
                    if not visited[neighbour]:
                        visited[neighbour] = True
                        queue.append(neighbour)

    for v, w, sign in reversed(reduced.peeled):
        if w == -1:
            colour[v] = 0
        else:
            colour[v] = colour[w] if sign > 0 else 1 - colour[w]

    return colour.astype(np.uint8)


def _colour_block(block: Block, core_colouring: np.ndarray, colour: np.ndarray):
    if block.core_offset is None:
        u, v, sign = block.bridge
        if colour[u] == -1 and colour[v] == -1:
            colour[u] = 0
        if colour[v] == -1:
            colour[v] = colour[u] if sign > 0 else 1 - colour[u]
        elif colour[u] == -1:
            colour[u] = colour[v] if sign > 0 else 1 - colour[v]
        return

    local = core_colouring[block.core_offset: block.core_offset + len(block.nodes)]
    flip = 0
    for k, v in enumerate(block.nodes):
        if colour[v] != -1:
            flip = int(colour[v] != local[k])
            break
    for k, v in enumerate(block.nodes):
        colour[v] = local[k] ^ flip
