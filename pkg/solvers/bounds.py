"""
Borne inferieure combinatoire : empilement de cycles negatifs.

Chaque cycle de signe negatif impose au moins une arete frustree. Si chaque
arete appartient a au plus `capacity` cycles de l'empilement, une arete
frustree en couvre au plus `capacity` : L(G) >= ceil(nombre de cycles / capacity).
"""

from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

from core.signed_graph import SignedGraph

MAX_CYCLE_LENGTH = 5
DEFAULT_BUDGET   = 200_000


def packing_bound(cycle_count: int, capacity: int = 1) -> int:
    """ceil(cycle_count / capacity)."""
    return -(-cycle_count // capacity)


def pack_negative_cycles(
    node_count: int,
    edges: Iterable[Tuple[int, int, int]],
    max_length: int = MAX_CYCLE_LENGTH,
    budget: int = DEFAULT_BUDGET,
    capacity: int = 1,
) -> List[Tuple[int, ...]]:
    """
    Glouton : d'abord les triangles negatifs, puis les cycles negatifs de
    longueur <= max_length sur les aretes restantes. Une arete sert au plus
    `capacity` fois et un meme cycle n'est jamais repris. `budget` plafonne
    le nombre d'expansions de la seconde phase (la borne reste valide).
    """
    if capacity < 1:
        raise ValueError(f"capacity doit etre >= 1, recu {capacity}")

    edges = list(edges)
    adjacency: List[Dict[int, int]] = [dict() for _ in range(node_count)]
    room: Dict[Tuple[int, int], int] = {}
    for i, j, sign in edges:
        adjacency[i][j] = sign
        adjacency[j][i] = sign
        room[(min(i, j), max(i, j))] = capacity

    cycles: List[Tuple[int, ...]] = []
    taken: Set[FrozenSet[Tuple[int, int]]] = set()

    def cycle_key(nodes: List[int]) -> FrozenSet[Tuple[int, int]]:
        return frozenset(
            (min(a, b), max(a, b))
            for a, b in zip(nodes, nodes[1:] + nodes[:1])
        )

    def take(nodes: List[int]):
        for a, b in zip(nodes, nodes[1:] + nodes[:1]):
            key = (min(a, b), max(a, b))
            room[key] -= 1
            if room[key] == 0:
                del adjacency[a][b]
                del adjacency[b][a]
        taken.add(cycle_key(nodes))
        cycles.append(tuple(nodes))

    # Triangles negatifs
    for i, j, sign in edges:
        while j in adjacency[i]:
            a, b = (i, j) if len(adjacency[i]) <= len(adjacency[j]) else (j, i)
            found = None
            for w, s_aw in adjacency[a].items():
                if w == b:
                    continue
                s_bw = adjacency[b].get(w)
                if s_bw is not None and sign * s_aw * s_bw < 0 and cycle_key([a, b, w]) not in taken:
                    found = [a, b, w]
                    break
            if found is None:
                break
            take(found)

    if max_length <= 3:
        return cycles

    # Cycles negatifs de longueur 4..max_length
    remaining = [budget]

    def search(path: List[int], on_path: set, product: int, target: int, closing_sign: int):
        current = path[-1]
        for w, sign in adjacency[current].items():
            if remaining[0] <= 0:
                return None
            remaining[0] -= 1
            if w == target:
                if (
                    len(path) >= 2
                    and product * sign * closing_sign < 0
                    and cycle_key([target] + path) not in taken
                ):
                    return path
                continue
            if w in on_path or len(path) + 1 >= max_length:
                continue
            on_path.add(w)
            path.append(w)
            found = search(path, on_path, product * sign, target, closing_sign)
            if found is not None:
                return found
            path.pop()
            on_path.discard(w)
        return None

    for i, j, sign in edges:
        while remaining[0] > 0 and j in adjacency[i]:
            found = search([j], {i, j}, 1, i, sign)
            if found is None:
                break
            take([i] + list(found))
        if remaining[0] <= 0:
            break

    return cycles


def lower_bound_pack(graph: SignedGraph, budget: int = DEFAULT_BUDGET) -> int:
    """
    Meilleure des deux bornes : cycles disjoints en aretes, ou moitie (arrondie
    au superieur) d'un empilement ou chaque arete sert au plus deux fois.
    """
    single = len(pack_negative_cycles(graph.n, graph.edges, budget=budget))
    double = len(pack_negative_cycles(graph.n, graph.edges, budget=budget, capacity=2))
    return max(single, packing_bound(double, 2))
