import pandas as pd
import pytest

from conftest import DATA_DIR, require_fixture
from analysis.measures import normalized_frustration
from analysis.nullmodel import ensemble
from core.errors import DataError, GraphParseError
from core.models import SolverConfig
from core.signed_graph import SignedGraph
from datasets.loader import NetworkLoader
from main import _label_match
from solvers.brute_force import brute_force
from solvers.local_search import local_search
from solvers.orchestrator import solve_exact


@pytest.fixture
def loader(tmp_path):
    return NetworkLoader(tmp_path)


# =============================================================
# CHARGEUR
# =============================================================

def test_load_graph_missing_file(loader, tmp_path):
    with pytest.raises(DataError):
        loader.load_graph(tmp_path / "absent.txt")


def test_edge_list_dir_is_lexicographic_and_keeps_bad_frames(loader, tmp_path):
    for name, text in [("b.txt", "x y -\n"), ("a.txt", "x y +\n"), ("c.txt", "x x +\n"), ("README", "notes\n")]:
        (tmp_path / name).write_text(text, encoding="utf-8")
    frames = loader.load_edge_list_dir(tmp_path)
    assert [label for label, _ in frames] == ["a", "b", "c"]
    assert isinstance(frames[0][1], SignedGraph)
    assert isinstance(frames[2][1], GraphParseError)


def test_empty_directory_is_an_error(loader, tmp_path):
    (tmp_path / "empty").mkdir()
    with pytest.raises(DataError):
        loader.load_edge_list_dir(tmp_path / "empty")


def test_frame_with_invalid_utf8_is_recorded_not_raised(loader, tmp_path):
    (tmp_path / "a.txt").write_text("x y +\n", encoding="utf-8")
    (tmp_path / "b.txt").write_bytes(b"x \xff\xfe +\n")
    frames = loader.load_edge_list_dir(tmp_path)
    assert [label for label, _ in frames] == ["a", "b"]
    assert isinstance(frames[0][1], SignedGraph)
    assert isinstance(frames[1][1], GraphParseError)


def test_manifest_paths_are_relative_to_manifest(loader, tmp_path):
    (tmp_path / "sub").mkdir()
    (tmp_path / "sub" / "g.txt").write_text("a b -\n", encoding="utf-8")
    manifest = tmp_path / "series.txt"
    manifest.write_text("# etiquette chemin\n1990 sub/g.txt\n1991 sub/missing.txt\n", encoding="utf-8")
    frames = loader.load_series(manifest)
    assert [label for label, _ in frames] == ["1990", "1991"]
    assert frames[0][1].m_minus == 1
    assert isinstance(frames[1][1], DataError)


def test_malformed_manifest_line(loader, tmp_path):
    manifest = tmp_path / "series.txt"
    manifest.write_text("only-one-token\n", encoding="utf-8")
    with pytest.raises(DataError):
        loader.load_manifest(manifest)


def test_correlation_csv_round_trip(loader, tmp_path):
    frame = pd.DataFrame([[1.0, 0.3], [0.3, 1.0]], index=["AAA", "BBB"], columns=["AAA", "BBB"])
    frame.to_csv(tmp_path / "2020-01.csv")
    (tmp_path / "2020-02.csv").write_bytes(b"")
    loaded = loader.load_correlation_dir(tmp_path)
    assert [label for label, _ in loaded] == ["2020-01", "2020-02"]
    assert list(loaded[0][1].columns) == ["AAA", "BBB"]
    assert isinstance(loaded[1][1], DataError)


def test_load_labels(loader, tmp_path):
    path = tmp_path / "party.txt"
    path.write_text("smith D\njones R  # commentaire\n\n", encoding="utf-8")
    assert loader.load_labels(path) == {"smith": "D", "jones": "R"}
    path.write_text("smith\n", encoding="utf-8")
    with pytest.raises(DataError):
        loader.load_labels(path)


def test_fixture_lookup_tries_suffixes(loader, tmp_path):
    (tmp_path / "toy.edges").write_text("a b -\n", encoding="utf-8")
    assert loader.fixture("toy") == tmp_path / "toy.edges"
    assert loader.load_fixture("toy").m == 1
    assert loader.load_fixture("absent") is None


def test_label_match_prefers_identity_on_tie(negative_triangle):
    result = solve_exact(negative_triangle)
    values = {"a": "p", "b": "q"}
    match = _label_match(negative_triangle, result, values)
    assert match["total"] == 2 and match["codes"] == {"p": 0, "q": 1}
    with pytest.raises(DataError):
        _label_match(negative_triangle, result, {"a": "p", "b": "q", "c": "r"})


# =============================================================
# RESEAUX PUBLICS (ignores s'ils ne sont pas installes)
# =============================================================

def test_highland_tribes():
    graph = require_fixture("highland_tribes")
    assert (graph.n, graph.m, graph.m_minus) == (16, 58, 29)
    result = solve_exact(graph)
    assert result.exact and result.upper_bound == 7
    assert brute_force(graph).upper_bound == 7
    assert float(normalized_frustration(7, 58)) == pytest.approx(0.75862, abs=5e-6)


def test_monastery():
    graph = require_fixture("monastery")
    result = solve_exact(graph)
    assert result.exact and result.upper_bound == 5
    assert brute_force(graph).upper_bound == 5


@pytest.mark.slow
def test_yeast_heuristic_and_exact():
    graph = require_fixture("yeast")
    heuristic = local_search(graph, SolverConfig())
    assert 41 <= heuristic.upper_bound <= 60
    result = solve_exact(graph, SolverConfig(time_limit=1800))
    assert result.lower_bound <= 41 <= result.upper_bound
    if result.exact:
        assert result.upper_bound == 41
    else:
        assert result.gap <= 0.10


@pytest.mark.slow
def test_highland_tribes_null_model():
    graph = require_fixture("highland_tribes")
    stats = ensemble(graph, runs=500, config=SolverConfig(seed=0), workers=2)
    assert stats.mean == pytest.approx(14.65, abs=0.25)
    assert stats.sd == pytest.approx(1.38, abs=0.35)
    assert stats.z == pytest.approx(-5.54, abs=0.6)


@pytest.mark.slow
def test_senate_partition_matches_party():
    graph = require_fixture("senate")
    party = NetworkLoader(DATA_DIR).fixture("senate_party")
    if party is None:
        pytest.skip(f"fichier senate_party absent de {DATA_DIR}")
    result = solve_exact(graph, SolverConfig(time_limit=600))
    match = _label_match(graph, result, NetworkLoader(DATA_DIR).load_labels(party))
    assert match["total"] == 100 and match["matches"] >= 90
