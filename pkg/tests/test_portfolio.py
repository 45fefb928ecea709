import numpy as np
import pandas as pd
import pytest

from appkits.portfolio import (
    portfolio_graph,
    portfolio_series,
    threshold_sweep,
    validate_correlations,
)
from core.errors import ContractError, DataError

TICKERS = ["AAA", "BBB", "CCC", "DDD", "EEE"]


def _correlations(pairs, labels=TICKERS) -> pd.DataFrame:
    matrix = np.eye(len(labels))
    index = {label: k for k, label in enumerate(labels)}
    for (a, b), value in pairs.items():
        matrix[index[a], index[b]] = matrix[index[b], index[a]] = value
    return pd.DataFrame(matrix, index=labels, columns=labels)


# deux blocs {AAA, BBB, CCC} / {DDD, EEE} anti-correles : equilibre
BALANCED = _correlations({
    ("AAA", "BBB"): 0.6, ("AAA", "CCC"): 0.45, ("BBB", "CCC"): 0.5,
    ("DDD", "EEE"): 0.7,
    ("AAA", "DDD"): -0.3, ("BBB", "EEE"): -0.4, ("CCC", "DDD"): -0.25,
})

# triangle AAA-BBB-CCC a un seul lien negatif : desequilibre
UNBALANCED = _correlations({
    ("AAA", "BBB"): 0.5, ("BBB", "CCC"): 0.4, ("AAA", "CCC"): -0.35,
    ("DDD", "EEE"): 0.1,
})

ALL_POSITIVE = _correlations({
    ("AAA", "BBB"): 0.3, ("CCC", "DDD"): 0.25, ("DDD", "EEE"): -0.1,
})


# =============================================================
# SEUILLAGE
# =============================================================

def test_threshold_keeps_strong_correlations_only():
    graph = portfolio_graph(_correlations({("AAA", "BBB"): 0.35, ("CCC", "DDD"): -0.15}), 0.2)
    assert graph.edges == ((0, 1, 1),)
    assert graph.labels == tuple(TICKERS)


def test_threshold_is_strict():
    graph = portfolio_graph(_correlations({("AAA", "BBB"): 0.2, ("CCC", "DDD"): -0.2000001}), 0.2)
    assert graph.edges == ((2, 3, -1),)


@pytest.mark.parametrize("threshold", [0.0, 1.0, -0.3])
def test_threshold_out_of_range(threshold):
    with pytest.raises(ContractError):
        portfolio_graph(BALANCED, threshold)


def test_higher_threshold_gives_edge_subset():
    rng = np.random.default_rng(3)
    samples = rng.standard_normal((60, 8))
    labels = [f"S{k}" for k in range(8)]
    frame = pd.DataFrame(np.corrcoef(samples, rowvar=False), index=labels, columns=labels)
    previous = None
    for threshold in (0.05, 0.1, 0.2, 0.3):
        edges = set(portfolio_graph(frame, threshold).edges)
        if previous is not None:
            assert edges <= previous
        previous = edges


# =============================================================
# VALIDATION
# =============================================================

def test_validate_rejects_non_square():
    with pytest.raises(DataError):
        validate_correlations(pd.DataFrame(np.ones((2, 3))))


def test_validate_rejects_label_mismatch():
    frame = BALANCED.copy()
    frame.columns = ["AAA", "BBB", "CCC", "DDD", "ZZZ"]
    with pytest.raises(DataError):
        validate_correlations(frame)


def test_validate_rejects_missing_values():
    frame = BALANCED.copy()
    frame.iloc[0, 1] = frame.iloc[1, 0] = np.nan
    with pytest.raises(DataError):
        validate_correlations(frame)


def test_validate_rejects_asymmetry_and_range():
    asymmetric = BALANCED.copy()
    asymmetric.iloc[0, 1] = 0.1
    with pytest.raises(DataError):
        validate_correlations(asymmetric)
    with pytest.raises(DataError):
        validate_correlations(_correlations({("AAA", "BBB"): 1.5}))


def test_validate_rejects_non_unit_diagonal():
    frame = BALANCED.copy()
    frame.iloc[2, 2] = 0.9
    with pytest.raises(DataError):
        validate_correlations(frame)


# =============================================================
# SERIES MENSUELLES
# =============================================================

def test_portfolio_series_classifies_months():
    frames = [("2020-01", BALANCED), ("2020-02", UNBALANCED), ("2020-03", ALL_POSITIVE)]
    reports = portfolio_series(frames, threshold=0.2)
    assert [r.label for r in reports] == ["2020-01", "2020-02", "2020-03"]
    assert [r.state for r in reports] == ["balanced", "unbalanced", "all_positive"]
    assert reports[1].L == 1


def test_invalid_month_is_recorded_not_fatal():
    broken = BALANCED.copy()
    broken.iloc[0, 0] = 0.5
    reports = portfolio_series([("jan", BALANCED), ("feb", broken), ("mar", UNBALANCED)])
    assert reports[1].error is not None
    assert reports[0].state == "balanced" and reports[2].state == "unbalanced"


def test_threshold_sweep_counts_states():
    frames = [("m1", BALANCED), ("m2", UNBALANCED), ("m3", ALL_POSITIVE)]
    sweep = threshold_sweep(frames, thresholds=(0.2, 0.42))
    assert sweep[0.2] == {"all_positive": 1, "balanced": 1, "unbalanced": 1, "failed": 0}
    # a 0.42 il ne reste que des correlations positives
    assert sweep[0.42] == {"all_positive": 3, "balanced": 0, "unbalanced": 0, "failed": 0}
