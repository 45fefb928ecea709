"""
Chargement des reseaux : listes d'aretes, series (repertoire ou manifeste),
matrices de correlation CSV et jeux de donnees publics de data/networks/.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import pandas as pd

from core.errors import DataError, FrustraError
from core.signed_graph import SignedGraph, read_edge_list

logger = logging.getLogger(__name__)

DEFAULT_DATA_DIR   = "data/networks"
FIXTURE_SUFFIXES   = ("", ".txt", ".edges", ".tsv")
IGNORED_NAMES      = {"README", "README.md", "MANIFEST"}

LoadedFrame = Tuple[str, Union[SignedGraph, Exception]]


class NetworkLoader:
    """Charge les graphes signes et les matrices de correlation depuis le disque"""

    def __init__(self, data_dir: Union[str, Path] = DEFAULT_DATA_DIR):
        self.data_dir = Path(data_dir)

    # =========================================================
    # LISTES D'ARETES
    # =========================================================

    def load_graph(self, path: Union[str, Path]) -> SignedGraph:
        """Lit un fichier ; introuvable -> DataError, ligne invalide -> GraphParseError."""
        path = Path(path)
        if not path.is_file():
            raise DataError(f"fichier introuvable : {path}")
        graph = read_edge_list(path)
        logger.debug("%s : n=%d m=%d m-=%d", path.name, graph.n, graph.m, graph.m_minus)
        return graph

    def _load_frame(self, label: str, path: Path) -> LoadedFrame:
        try:
            return label, self.load_graph(path)
        except FrustraError as exc:
            logger.warning("fenetre %s (%s) illisible : %s", label, path.name, exc)
            return label, exc

    def load_edge_list_dir(self, directory: Union[str, Path]) -> List[LoadedFrame]:
        """Tous les fichiers du repertoire, en ordre lexicographique ; etiquette = nom sans suffixe."""
        directory = Path(directory)
        if not directory.is_dir():
            raise DataError(f"repertoire introuvable : {directory}")
        files = sorted(
            p for p in directory.iterdir()
            if p.is_file() and not p.name.startswith(".") and p.name not in IGNORED_NAMES
        )
        if not files:
            raise DataError(f"aucune liste d'aretes dans {directory}")
        return [self._load_frame(p.stem, p) for p in files]

    def load_manifest(self, manifest: Union[str, Path]) -> List[LoadedFrame]:
        """
        Manifeste : une ligne `<etiquette> <chemin>` par fenetre, chemins
        relatifs au manifeste, `#` en commentaire.
        """
        manifest = Path(manifest)
        if not manifest.is_file():
            raise DataError(f"manifeste introuvable : {manifest}")

        frames: List[LoadedFrame] = []
        with open(manifest, "r", encoding="utf-8") as f:
            for number, raw in enumerate(f, start=1):
                tokens = raw.split("#", 1)[0].split()
                if not tokens:
                    continue
                if len(tokens) != 2:
                    raise DataError(f"{manifest.name} ligne {number} : attendu '<etiquette> <chemin>'")
                label, target = tokens
                path = Path(target)
                if not path.is_absolute():
                    path = manifest.parent / path
                frames.append(self._load_frame(label, path))

        if not frames:
            raise DataError(f"manifeste vide : {manifest}")
        return frames

    def load_series(self, source: Union[str, Path]) -> List[LoadedFrame]:
        """Repertoire de listes d'aretes ou fichier manifeste."""
        source = Path(source)
        if source.is_dir():
            return self.load_edge_list_dir(source)
        return self.load_manifest(source)

    # =========================================================
    # CORRELATIONS CSV
    # =========================================================

    def load_correlation_csv(self, path: Union[str, Path]) -> pd.DataFrame:
        """Premiere ligne / premiere colonne : etiquettes des titres."""
        path = Path(path)
        try:
            frame = pd.read_csv(path, index_col=0)
        except FileNotFoundError as exc:
            raise DataError(f"fichier introuvable : {path}") from exc
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
            raise DataError(f"{path.name} : CSV illisible ({exc})") from exc
        frame.index = [str(label).strip() for label in frame.index]
        frame.columns = [str(label).strip() for label in frame.columns]
        return frame

    def load_correlation_dir(
        self, directory: Union[str, Path]
    ) -> List[Tuple[str, Union[pd.DataFrame, Exception]]]:
        """Un CSV par mois, en ordre lexicographique ; un CSV illisible est garde comme erreur."""
        directory = Path(directory)
        if directory.is_file():
            files = [directory]
        elif directory.is_dir():
            files = sorted(directory.glob("*.csv"))
        else:
            raise DataError(f"chemin introuvable : {directory}")
        if not files:
            raise DataError(f"aucun CSV dans {directory}")

        frames = []
        for path in files:
            try:
                frames.append((path.stem, self.load_correlation_csv(path)))
            except DataError as exc:
                logger.warning("%s", exc)
                frames.append((path.stem, exc))
        return frames

    # =========================================================
    # ETIQUETTES EXTERNES / JEUX PUBLICS
    # =========================================================

    def load_labels(self, path: Union[str, Path]) -> Dict[str, str]:
        """Fichier `<noeud> <valeur>` (par ex. le parti d'un senateur)."""
        path = Path(path)
        if not path.is_file():
            raise DataError(f"fichier introuvable : {path}")
        labels: Dict[str, str] = {}
        with open(path, "r", encoding="utf-8") as f:
            for number, raw in enumerate(f, start=1):
                tokens = raw.split("#", 1)[0].split()
                if not tokens:
                    continue
                if len(tokens) != 2:
                    raise DataError(f"{path.name} ligne {number} : attendu '<noeud> <valeur>'")
                labels[tokens[0]] = tokens[1]
        return labels

    def fixture(self, name: str) -> Optional[Path]:
        """Chemin d'un jeu de donnees de data/networks/, ou None s'il n'est pas installe."""
        for suffix in FIXTURE_SUFFIXES:
            candidate = self.data_dir / f"{name}{suffix}"
            if candidate.is_file():
                return candidate
        return None

    def load_fixture(self, name: str) -> Optional[SignedGraph]:
        path = self.fixture(name)
        if path is None:
            logger.info("jeu de donnees %s absent de %s", name, self.data_dir)
            return None
        return self.load_graph(path)
