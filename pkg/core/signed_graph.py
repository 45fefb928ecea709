"""
Graphe signe non oriente, lecture/ecriture au format liste d'aretes,
comptage de frustration et detection exacte de l'equilibre.

Tous les autres modules s'appuient sur SignedGraph : c'est l'objet d'entree universel.
"""

import logging
from collections import deque
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from core.errors import ContractError, GraphParseError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int]

SIGN_TOKENS: Dict[str, int] = {
    "+":  1,
    "+1": 1,
    "1":  1,
    "-":  -1,
    "-1": -1,
}


# =============================================================
# GRAPHE SIGNE
# =============================================================

class SignedGraph:
    """
    Graphe simple non oriente dont chaque arete porte un signe +1 ou -1.

    Immuable apres construction : les aretes sont normalisees (i < j) et triees,
    les tableaux numpy exposes sont en lecture seule. Partageable sans verrou.
    """

    __slots__ = (
        "_n", "_edges", "_labels", "_adjacency", "_label_index",
        "_u", "_v", "_s", "_m_minus",
    )

    def __init__(
        self,
        node_count: int,
        edges: Iterable[Tuple[int, int, int]],
        labels: Optional[Sequence[str]] = None,
    ):
        if node_count < 0:
            raise ContractError(f"nombre de noeuds negatif : {node_count}")

        normalized: List[Edge] = []
        seen = set()
        for i, j, sign in edges:
            i, j, sign = int(i), int(j), int(sign)
            if sign not in (1, -1):
                raise ContractError(f"signe invalide {sign} sur l'arete ({i}, {j})")
            if i == j:
                raise ContractError(f"boucle sur le noeud {i}")
            if not (0 <= i < node_count and 0 <= j < node_count):
                raise ContractError(f"arete ({i}, {j}) hors de [0, {node_count})")
            if i > j:
                i, j = j, i
            if (i, j) in seen:
                raise ContractError(f"arete dupliquee ({i}, {j})")
            seen.add((i, j))
            normalized.append((i, j, sign))
        normalized.sort()

        if labels is None:
            labels = [str(k) for k in range(node_count)]
        labels = tuple(str(label) for label in labels)
        if len(labels) != node_count:
            raise ContractError(
                f"{len(labels)} etiquettes pour {node_count} noeuds"
            )
        label_index = {label: k for k, label in enumerate(labels)}
        if len(label_index) != node_count:
            raise ContractError("etiquettes de noeuds non uniques")

        adjacency: List[List[Tuple[int, int]]] = [[] for _ in range(node_count)]
        for i, j, sign in normalized:
            adjacency[i].append((j, sign))
            adjacency[j].append((i, sign))

        self._n           = node_count
        self._edges       = tuple(normalized)
        self._labels      = labels
        self._label_index = label_index
        self._adjacency   = tuple(tuple(nbrs) for nbrs in adjacency)

        self._u = np.fromiter((e[0] for e in normalized), dtype=np.int64, count=len(normalized))
        self._v = np.fromiter((e[1] for e in normalized), dtype=np.int64, count=len(normalized))
        self._s = np.fromiter((e[2] for e in normalized), dtype=np.int8, count=len(normalized))
        for arr in (self._u, self._v, self._s):
            arr.flags.writeable = False
        self._m_minus = int(np.count_nonzero(self._s < 0))

    # ---------------------------------------------------------
    # Accesseurs
    # ---------------------------------------------------------

    @property
    def node_count(self) -> int:
        return self._n

    n = node_count

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def adjacency(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        return self._adjacency

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def m_minus(self) -> int:
        return self._m_minus

    @property
    def m_plus(self) -> int:
        return self.m - self._m_minus

    @property
    def edge_u(self) -> np.ndarray:
        return self._u

    @property
    def edge_v(self) -> np.ndarray:
        return self._v

    @property
    def edge_sign(self) -> np.ndarray:
        return self._s

    def degree(self, node: int) -> int:
        return len(self._adjacency[node])

    def index_of(self, label: str) -> int:
        """Identifiant dense d'une etiquette d'origine."""
        try:
            return self._label_index[label]
        except KeyError:
            raise ContractError(f"etiquette inconnue : {label!r}") from None

    def with_signs(self, signs: Sequence[int]) -> "SignedGraph":
        """Meme topologie, nouveaux signes (dans l'ordre de self.edges)."""
        if len(signs) != self.m:
            raise ContractError(f"{len(signs)} signes pour {self.m} aretes")
        return SignedGraph(
            self._n,
            ((i, j, int(s)) for (i, j, _), s in zip(self._edges, signs)),
            self._labels,
        )

    def to_networkx(self) -> nx.Graph:
        """Copie networkx (attribut d'arete 'sign')."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from((i, j, {"sign": s}) for i, j, s in self._edges)
        return graph

    # ---------------------------------------------------------
    # Egalite / representation
    # ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return (
            self._n == other._n
            and self._edges == other._edges
            and self._labels == other._labels
        )

    def __hash__(self) -> int:
        return hash((self._n, self._edges, self._labels))

    def __repr__(self) -> str:
        return f"SignedGraph(n={self._n}, m={self.m}, m_minus={self._m_minus})"

    def __getstate__(self):
        return (self._n, self._edges, self._labels)

    def __setstate__(self, state):
        n, edges, labels = state
        SignedGraph.__init__(self, n, edges, labels)


# =============================================================
# LECTURE / ECRITURE
# =============================================================

def parse_edge_list(text: Union[str, Iterable[str]]) -> SignedGraph:
    """
    Lit une liste d'aretes signees.

    Format : une arete par ligne `<u> <v> <signe>`, signe dans {+, -, +1, -1, 1}.
    `#` commence un commentaire, les lignes vides sont ignorees. Une ligne ne
    contenant qu'une etiquette declare un noeud (noeud isole possible).
    Les etiquettes sont compactees en [0, n) dans l'ordre de premiere apparition.
    """
    lines = text.splitlines() if isinstance(text, str) else text

    label_index: Dict[str, int] = {}
    labels: List[str] = []
    edges:  List[Edge] = []
    seen = set()

    def node_id(label: str) -> int:
        if label not in label_index:
            label_index[label] = len(labels)
            labels.append(label)
        return label_index[label]

    for number, raw in enumerate(lines, start=1):
        content = raw.split("#", 1)[0]
        tokens = content.split()
        if not tokens:
            continue

        if len(tokens) == 1:
            node_id(tokens[0])
            continue

        if len(tokens) != 3:
            raise GraphParseError("format attendu '<u> <v> <signe>'", number, raw)

        left, right, token = tokens
        if token not in SIGN_TOKENS:
            raise GraphParseError(f"signe invalide {token!r}", number, raw)
        if left == right:
            raise GraphParseError("boucle interdite", number, raw)

        i, j = node_id(left), node_id(right)
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GraphParseError("arete dupliquee", number, raw)
        seen.add(key)
        edges.append((i, j, SIGN_TOKENS[token]))

    graph = SignedGraph(len(labels), edges, labels)
    logger.debug("liste d'aretes lue : %r", graph)
    return graph


def read_edge_list(path) -> SignedGraph:
    """Lit un fichier de liste d'aretes (UTF-8) ; octets invalides -> GraphParseError."""
    with open(path, "rb") as f:
        raw = f.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        line_number = raw.count(b"\n", 0, exc.start) + 1
        raise GraphParseError(
            f"encodage UTF-8 invalide dans {path} (octet {exc.start})", line_number
        ) from exc
    return parse_edge_list(text)


def serialize_edge_list(graph: SignedGraph) -> str:
    """
    Forme canonique : declarations de noeuds dans l'ordre des identifiants,
    puis les aretes i < j avec des signes +1 / -1.
    """
    for label in graph.labels:
        if not label or any(c.isspace() for c in label) or "#" in label:
            raise ContractError(f"etiquette non serialisable : {label!r}")

    lines = [f"# n={graph.n} m={graph.m} m_minus={graph.m_minus}"]
    lines.extend(graph.labels)
    for i, j, sign in graph.edges:
        lines.append(f"{graph.labels[i]} {graph.labels[j]} {'+1' if sign > 0 else '-1'}")
    return "\n".join(lines) + "\n"


# =============================================================
# COLORATIONS ET FRUSTRATION
# =============================================================

def as_colouring(x: Sequence[int], node_count: int) -> np.ndarray:
    """Valide une coloration (vecteur de bits de longueur n)."""
    colouring = np.asarray(x, dtype=np.int64).ravel()
    if colouring.shape[0] != node_count:
        raise ContractError(
            f"coloration de longueur {colouring.shape[0]} pour {node_count} noeuds"
        )
    if colouring.size and not np.isin(colouring, (0, 1)).all():
        raise ContractError("une coloration ne contient que des 0 et des 1")
    return colouring.astype(np.uint8)


def _frustration_mask(graph: SignedGraph, colouring: np.ndarray) -> np.ndarray:
    # arete positive frustree ssi couleurs differentes, negative ssi couleurs egales
    differ = colouring[graph.edge_u] != colouring[graph.edge_v]
    return differ ^ (graph.edge_sign < 0)


def frustration_count(graph: SignedGraph, x: Sequence[int]) -> int:
    """Nombre d'aretes frustrees sous la coloration x."""
    colouring = as_colouring(x, graph.n)
    if graph.m == 0:
        return 0
    return int(np.count_nonzero(_frustration_mask(graph, colouring)))


def frustrated_edges(graph: SignedGraph, x: Sequence[int]) -> List[Edge]:
    """Aretes frustrees sous la coloration x, dans l'ordre canonique."""
    colouring = as_colouring(x, graph.n)
    if graph.m == 0:
        return []
    mask = _frustration_mask(graph, colouring)
    return [edge for edge, hit in zip(graph.edges, mask) if hit]


# =============================================================
# EQUILIBRE
# =============================================================

def is_balanced(graph: SignedGraph) -> Tuple[bool, Union[np.ndarray, List[Edge]]]:
    """
    Parcours en largeur avec 2-coloration coherente avec les signes, O(n + m).

    Retourne (True, coloration sans arete frustree) ou
    (False, aretes d'un cycle de signe negatif).
    """
    n = graph.n
    adjacency = graph.adjacency
    colour      = [-1] * n
    parent      = [-1] * n
    parent_sign = [0] * n
    depth       = [0] * n

    for root in range(n):
        if colour[root] != -1:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, sign in adjacency[u]:
                expected = colour[u] if sign > 0 else 1 - colour[u]
                if colour[v] == -1:
                    colour[v]      = expected
                    parent[v]      = u
                    parent_sign[v] = sign
                    depth[v]       = depth[u] + 1
                    queue.append(v)
                elif colour[v] != expected:
                    cycle = _negative_cycle(u, v, sign, parent, parent_sign, depth)
                    return False, cycle

    return True, np.array(colour, dtype=np.uint8)


def _negative_cycle(u, v, sign, parent, parent_sign, depth) -> List[Edge]:
    """Chemin d'arbre u -> ancetre commun -> v, ferme par l'arete (u, v)."""
    left:  List[Edge] = []
    right: List[Edge] = []
    a, b = u, v
    while depth[a] > depth[b]:
        left.append((min(a, parent[a]), max(a, parent[a]), parent_sign[a]))
        a = parent[a]
    while depth[b] > depth[a]:
        right.append((min(b, parent[b]), max(b, parent[b]), parent_sign[b]))
        b = parent[b]
    while a != b:
        left.append((min(a, parent[a]), max(a, parent[a]), parent_sign[a]))
        right.append((min(b, parent[b]), max(b, parent[b]), parent_sign[b]))
        a, b = parent[a], parent[b]
    return left + right[::-1] + [(min(u, v), max(u, v), sign)]


# =============================================================
# TRANSFORMATIONS
# =============================================================

def switch(graph: SignedGraph, subset: Iterable[int]) -> SignedGraph:
    """Inverse le signe de chaque arete ayant exactement une extremite dans subset."""
    members = set(int(k) for k in subset)
    for k in members:
        if not 0 <= k < graph.n:
            raise ContractError(f"noeud {k} hors du graphe")
    edges = (
        (i, j, -s if ((i in members) != (j in members)) else s)
        for i, j, s in graph.edges
    )
    return SignedGraph(graph.n, edges, graph.labels)


def negate(graph: SignedGraph) -> SignedGraph:
    """Tous les signes inverses."""
    return SignedGraph(graph.n, ((i, j, -s) for i, j, s in graph.edges), graph.labels)


def induced_subgraph(graph: SignedGraph, nodes: Sequence[int]) -> Tuple[SignedGraph, List[int]]:
    """Sous-graphe induit ; node_map[k] = identifiant d'origine du noeud local k."""
    node_map = [int(v) for v in nodes]
    local = {v: k for k, v in enumerate(node_map)}
    edges = [
        (local[i], local[j], s)
        for i, j, s in graph.edges
        if i in local and j in local
    ]
    labels = [graph.labels[v] for v in node_map]
    return SignedGraph(len(node_map), edges, labels), node_map


def connected_components(graph: SignedGraph) -> List[Tuple[SignedGraph, List[int]]]:
    """
    Composantes connexes maximales (noeuds isoles compris), ordonnees par
    plus petit identifiant d'origine, noeuds tries dans chaque composante.
    """
    components = sorted(
        (sorted(c) for c in nx.connected_components(graph.to_networkx())),
        key=lambda c: c[0],
    )
    return [induced_subgraph(graph, nodes) for nodes in components]


def disjoint_union(first: SignedGraph, second: SignedGraph) -> SignedGraph:
    """Union disjointe ; les noeuds de `second` sont decales de first.n."""
    offset = first.n
    edges = list(first.edges) + [(i + offset, j + offset, s) for i, j, s in second.edges]
    labels = list(first.labels) + list(second.labels)
    if len(set(labels)) != len(labels):
        labels = [f"a:{l}" for l in first.labels] + [f"b:{l}" for l in second.labels]
    return SignedGraph(first.n + second.n, edges, labels)
