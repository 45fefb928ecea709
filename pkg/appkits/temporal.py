"""
Series temporelles de graphes signes : une resolution par fenetre, etat
(tout positif / equilibre / desequilibre), et stabilite des partitions.
"""

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple, Union

from analysis.measures import normalized_frustration
from core.errors import FrustraError
from core.models import FrameReport, FrameState, NodeStability, SolverConfig
from core.signed_graph import SignedGraph, is_balanced
from solvers.orchestrator import solve_exact

logger = logging.getLogger(__name__)

Frame = Union[SignedGraph, Exception]


# =============================================================
# CLASSIFICATION
# =============================================================

def classify_state(m_minus: int, L: int) -> FrameState:
    """Trichotomie : aucune arete negative / L = 0 / L > 0."""
    if m_minus == 0:
        return FrameState.ALL_POSITIVE
    if L == 0:
        return FrameState.BALANCED
    return FrameState.UNBALANCED


def state_frequencies(reports: Sequence[FrameReport]) -> Dict[str, int]:
    """Effectifs des trois etats ; les fenetres en erreur sont comptees a part."""
    counts = {state.value: 0 for state in FrameState}
    counts["failed"] = 0
    for report in reports:
        if report.error is not None or report.state is None:
            counts["failed"] += 1
        else:
            counts[FrameState(report.state).value] += 1
    return counts


# =============================================================
# RESOLUTION PAR FENETRE
# =============================================================

def frame_report(label: str, graph: SignedGraph, config: Optional[SolverConfig] = None) -> FrameReport:
    """Resout une fenetre ; F n'est renseigne que si L est prouve et m > 0."""
    result = solve_exact(graph, config)
    balanced, _ = is_balanced(graph)
    # un graphe desequilibre a L >= 1 meme si la borne prouvee est 0
    state = classify_state(graph.m_minus, 0 if balanced else max(result.lower_bound, 1))

    F = None
    if result.exact and graph.m > 0:
        F = float(normalized_frustration(result.upper_bound, graph.m))

    return FrameReport(
        label=label,
        n=graph.n,
        m=graph.m,
        m_minus=graph.m_minus,
        L_lower=result.lower_bound,
        L_upper=result.upper_bound,
        exact=result.exact,
        F=F,
        state=state,
        node_labels=list(graph.labels),
        partition=result.colouring,
    )


def _solve_frame(task: Tuple[str, SignedGraph, Optional[SolverConfig]]) -> FrameReport:
    label, frame, config = task
    try:
        return frame_report(label, frame, config)
    except FrustraError as exc:
        logger.warning("fenetre %s en erreur : %s", label, exc)
        return FrameReport.failed(label, exc)


def temporal_series(
    frames: Sequence[Frame],
    config: Optional[SolverConfig] = None,
    labels: Optional[Sequence[str]] = None,
    workers: int = 1,
) -> List[FrameReport]:
    """
    Un FrameReport par fenetre, dans l'ordre d'entree.

    Une fenetre peut etre une exception (fichier illisible) : elle est
    enregistree comme fenetre en erreur, la serie continue.
    """
    if not frames:
        raise FrustraError("une serie temporelle contient au moins une fenetre")
    if labels is None:
        labels = [f"frame_{k:03d}" for k in range(len(frames))]
    if len(labels) != len(frames):
        raise FrustraError(f"{len(labels)} etiquettes pour {len(frames)} fenetres")

    reports: List[Optional[FrameReport]] = [None] * len(frames)
    tasks, positions = [], []
    for k, (label, frame) in enumerate(zip(labels, frames)):
        if isinstance(frame, Exception):
            reports[k] = FrameReport.failed(str(label), frame)
        else:
            tasks.append((str(label), frame, config))
            positions.append(k)

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            solved = list(pool.map(_solve_frame, tasks))
    else:
        solved = [_solve_frame(task) for task in tasks]
    for k, report in zip(positions, solved):
        reports[k] = report

    failed = sum(1 for r in reports if r.error is not None)
    logger.info("serie : %d fenetres resolues, %d en erreur", len(reports) - failed, failed)
    return reports


# =============================================================
# STABILITE DES PARTITIONS
# =============================================================

def _sides(report: FrameReport) -> Dict[str, int]:
    return dict(zip(report.node_labels, report.partition))


def align_partitions(reports: Sequence[FrameReport]) -> List[Dict[str, int]]:
    """
    Oriente chaque partition pour maximiser l'accord avec la fenetre
    precedente (en cas d'egalite, orientation conservee). Fenetres en
    erreur ignorees.
    """
    aligned: List[Dict[str, int]] = []
    for report in reports:
        if report.error is not None or not report.partition:
            continue
        sides = _sides(report)
        if aligned:
            previous = aligned[-1]
            common = [label for label in sides if label in previous]
            agree = sum(1 for label in common if sides[label] == previous[label])
            if len(common) - agree > agree:
                sides = {label: 1 - side for label, side in sides.items()}
        aligned.append(sides)
    return aligned


def partition_stability(reports: Sequence[FrameReport]) -> List[NodeStability]:
    """Par etiquette : fenetres de presence et effectif du cote majoritaire."""
    present: Dict[str, List[int]] = {}
    for sides in align_partitions(reports):
        for label, side in sides.items():
            present.setdefault(label, [0, 0])[side] += 1

    summary = []
    for label, (zeros, ones) in present.items():
        majority_side = 0 if zeros >= ones else 1
        summary.append(NodeStability(
            label=label,
            frames_present=zeros + ones,
            majority_side=majority_side,
            majority_count=max(zeros, ones),
        ))
    return summary


def stable_groups(
    summary: Sequence[NodeStability],
    min_frames: Optional[int] = None,
) -> Dict[str, List[str]]:
    """
    Noeuds restes du meme cote : dans au moins `min_frames` fenetres, ou par
    defaut dans toutes les fenetres de la serie.
    """
    if min_frames is None:
        total = max((s.frames_present for s in summary), default=0)
        keep = [s for s in summary if s.frames_present == total and s.stability == 1.0]
    else:
        keep = [s for s in summary if s.majority_count >= min_frames]
    return {
        "group_0": sorted(s.label for s in keep if s.majority_side == 0),
        "group_1": sorted(s.label for s in keep if s.majority_side == 1),
    }


def dominant_partition(reports: Sequence[FrameReport]) -> Optional[Dict[str, object]]:
    """Partition la plus frequente parmi les fenetres equilibrees (a complement pres)."""
    counter: Counter = Counter()
    for report in reports:
        if report.error is not None or report.state != FrameState.BALANCED.value:
            continue
        sides = _sides(report)
        groups = frozenset(
            frozenset(label for label, side in sides.items() if side == c) for c in (0, 1)
        )
        counter[groups] += 1

    if not counter:
        return None
    groups, count = counter.most_common(1)[0]
    ordered = sorted((sorted(g) for g in groups), key=lambda g: (not g, g[:1]))
    if len(ordered) == 1:
        ordered.append([])
    return {
        "groups": ordered,
        "frames": count,
        "balanced_frames": sum(counter.values()),
    }
