"""
Point d'entree principal - Frustra, indice de frustration des graphes signes

Commandes :
  analyze      L(G), F, H, densite (et beta / bs pour un graphe de signe uniforme)
  zscore       modele nul par rebattage des signes et score Z
  partition    deux groupes + aretes frustrees (+ concordance avec des etiquettes)
  portfolio    matrices de correlation -> etats tout positif / equilibre / desequilibre
  series       serie temporelle de listes d'aretes -> CSV
  ising        statistiques de L sur des grilles / hypercubes d'Ising
  bipartivity  frustration d'aretes bipartite et bipartivite spectrale

Codes de sortie : 0 resolution exacte, 2 bornes seulement, 1 erreur.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
from pydantic import ValidationError

from analysis.measures import measure_report
from analysis.nullmodel import ensemble, mode_config
from appkits.fullerene import bipartivity_row
from appkits.ising import LIST_COLUMNS, SETTING_FRACTIONS, ising_settings_table
from appkits.portfolio import portfolio_series, threshold_sweep
from appkits.temporal import (
    dominant_partition,
    partition_stability,
    stable_groups,
    state_frequencies,
    temporal_series,
)
from core.config import FrustraConfig, load_config, resolve_workers
from core.errors import ContractError, DataError, FrustraError
from core.models import AnalysisReport, FrameReport, FrustrationResult, SolverConfig
from core.run_context import RunContext
from core.signed_graph import SignedGraph, frustrated_edges, serialize_edge_list
from datasets.loader import NetworkLoader
from solvers.orchestrator import monotone_subsystem, solve_exact

logger = logging.getLogger("frustra.cli")

EXIT_EXACT  = 0
EXIT_ERROR  = 1
EXIT_BOUNDS = 2

SERIES_COLUMNS = ["label", "n", "m", "m_minus", "L", "F", "state", "exact"]


class _Parser(argparse.ArgumentParser):
    """Erreur d'usage -> code 1 (le code 2 signifie 'bornes seulement')."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: erreur : {message}\n")


# =============================================================
# OUTILS COMMUNS
# =============================================================

def setup_logging(verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="[%(levelname)s] [%(name)s] %(message)s",
        stream=sys.stderr,
        force=True,
    )


def solver_config(args: argparse.Namespace, config: FrustraConfig) -> SolverConfig:
    """Valeurs de config.yaml, surchargees par --time-limit / --gap / --seed."""
    overrides = {
        "time_limit": args.time_limit,
        "target_gap": args.gap,
        "seed": args.seed,
    }
    values = config.solver.model_dump()
    values.update({k: v for k, v in overrides.items() if v is not None})
    return SolverConfig.model_validate(values)


def emit(payload: str, out: Optional[str]):
    """Rapport sur stdout ou dans --out."""
    if out:
        Path(out).write_text(payload, encoding="utf-8")
        logger.info("rapport ecrit dans %s", out)
    else:
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")


def emit_json(report: Any, out: Optional[str]):
    if hasattr(report, "model_dump"):
        report = report.model_dump(mode="json")
    emit(json.dumps(report, indent=2, ensure_ascii=False), out)


def input_descriptor(path: str, graph: SignedGraph) -> Dict[str, Any]:
    return {"path": str(path), "n": graph.n, "m": graph.m, "m_minus": graph.m_minus}


def labelled_groups(graph: SignedGraph, result: FrustrationResult) -> Dict[str, List[str]]:
    return {
        "A": [graph.labels[v] for v in range(graph.n) if result.colouring[v] == 0],
        "B": [graph.labels[v] for v in range(graph.n) if result.colouring[v] == 1],
    }


def build_report(
    ctx: RunContext,
    path: str,
    graph: SignedGraph,
    result: FrustrationResult,
    config: FrustraConfig,
    **fields,
) -> AnalysisReport:
    report = AnalysisReport(
        **ctx.header(),
        input=input_descriptor(path, graph),
        measures=measure_report(
            graph, result, config.measures.spectral_cap, config.measures.residual_tolerance
        ),
        solve=result.summary(),
        **fields,
    )
    if graph.m == 0:
        report.extra["F_undefined"] = True
    return report


def exit_code(exact: bool) -> int:
    return EXIT_EXACT if exact else EXIT_BOUNDS


# =============================================================
# COMMANDES
# =============================================================

def cmd_analyze(args, config: FrustraConfig, ctx: RunContext) -> int:
    graph = NetworkLoader().load_graph(args.graph)
    cfg = solver_config(args, config)

    ctx.start("solve")
    result = solve_exact(graph, cfg)
    ctx.stop("solve")

    report = build_report(ctx, args.graph, graph, result, config, timing=ctx.timings)
    emit_json(report, args.out)
    return exit_code(result.exact)


def cmd_zscore(args, config: FrustraConfig, ctx: RunContext) -> int:
    graph = NetworkLoader().load_graph(args.graph)
    runs = args.runs if args.runs is not None else config.nullmodel.runs
    mode = "lower_bound" if (args.mode or config.nullmodel.mode) in ("bounds", "lower_bound") else "exact"
    cfg = mode_config(solver_config(args, config), mode, config.nullmodel.bounds_gap)

    ctx.start("solve")
    result = solve_exact(graph, cfg)
    ctx.stop("solve")

    ctx.start("ensemble")
    stats = ensemble(
        graph, runs, cfg, mode, ctx.workers,
        observed=result.lower_bound, observed_exact=result.exact,
    )
    ctx.stop("ensemble")

    report = build_report(
        ctx, args.graph, graph, result, config,
        ensemble=stats,
        extra={"mode": mode, "z_applicable": stats.z_applicable},
        timing=ctx.timings,
    )
    emit_json(report, args.out)
    return exit_code(not stats.used_bounds)


def _label_match(graph: SignedGraph, result: FrustrationResult, values: Dict[str, str]) -> Dict[str, Any]:
    """Concordance partition / etiquettes apres la meilleure orientation (egalite -> identite)."""
    codes: Dict[str, int] = {}
    for value in values.values():
        if value not in codes:
            codes[value] = len(codes)
    if len(codes) > 2:
        raise DataError(f"etiquettes a plus de deux valeurs : {sorted(codes)}")

    common = [v for v in range(graph.n) if graph.labels[v] in values]
    agree = sum(1 for v in common if codes[values[graph.labels[v]]] == result.colouring[v])
    total = len(common)
    complement = total - agree > agree
    return {
        "matches": total - agree if complement else agree,
        "total": total,
        "orientation": "complement" if complement else "identity",
        "codes": codes,
    }


def cmd_partition(args, config: FrustraConfig, ctx: RunContext) -> int:
    loader = NetworkLoader()
    graph = loader.load_graph(args.graph)
    cfg = solver_config(args, config)

    ctx.start("solve")
    result = solve_exact(graph, cfg)
    ctx.stop("solve")

    extra: Dict[str, Any] = {
        "frustrated_edges": [
            [graph.labels[i], graph.labels[j], s]
            for i, j, s in frustrated_edges(graph, result.colouring)
        ],
    }
    if args.labels:
        extra["label_match"] = _label_match(graph, result, loader.load_labels(args.labels))
    if args.monotone:
        subsystem = monotone_subsystem(graph, result.colouring)
        Path(args.monotone).write_text(serialize_edge_list(subsystem), encoding="utf-8")
        extra["monotone_subsystem"] = {"path": args.monotone, "m": subsystem.m}

    report = build_report(
        ctx, args.graph, graph, result, config,
        partition=labelled_groups(graph, result),
        extra=extra,
        timing=ctx.timings,
    )
    emit_json(report, args.out)
    return exit_code(result.exact)


def _frames_table(reports: Sequence[FrameReport]) -> pd.DataFrame:
    rows = []
    for r in reports:
        rows.append({
            "label": r.label,
            "n": r.n,
            "m": r.m,
            "m_minus": r.m_minus,
            "L": r.L_upper,
            "F": r.F,
            "state": r.state if r.error is None else "error",
            "exact": r.exact,
        })
    return pd.DataFrame(rows, columns=SERIES_COLUMNS)


def _series_exit_code(reports: Sequence[FrameReport]) -> int:
    solved = [r for r in reports if r.error is None]
    if not solved:
        return EXIT_ERROR
    return exit_code(all(r.exact for r in solved))


def cmd_portfolio(args, config: FrustraConfig, ctx: RunContext) -> int:
    frames = NetworkLoader().load_correlation_dir(args.correlations)
    threshold = args.threshold if args.threshold is not None else config.appkits.portfolio_threshold
    cfg = solver_config(args, config)

    ctx.start("solve")
    reports = portfolio_series(frames, threshold, cfg, ctx.workers)
    ctx.stop("solve")

    if args.format == "csv":
        emit(_frames_table(reports).to_csv(index=False), args.out)
        return _series_exit_code(reports)

    payload: Dict[str, Any] = {
        **ctx.header(),
        "threshold": threshold,
        "frames": [r.model_dump(mode="json") for r in reports],
        "frequencies": state_frequencies(reports),
        "dominant_partition": dominant_partition(reports),
    }
    if args.sweep:
        thresholds = config.appkits.sweep_thresholds
        ctx.start("sweep")
        payload["sweep"] = {
            f"{t:g}": counts for t, counts in threshold_sweep(frames, thresholds, cfg, ctx.workers).items()
        }
        ctx.stop("sweep")
    payload["timing"] = ctx.timings
    emit_json(payload, args.out)
    return _series_exit_code(reports)


def cmd_series(args, config: FrustraConfig, ctx: RunContext) -> int:
    loaded = NetworkLoader().load_series(args.manifest)
    labels = [label for label, _ in loaded]
    frames = [frame for _, frame in loaded]
    cfg = solver_config(args, config)

    reports = temporal_series(frames, cfg, labels=labels, workers=ctx.workers)
    if args.stability:
        groups = stable_groups(partition_stability(reports))
        logger.info(
            "noeuds stables : %d cote 0, %d cote 1",
            len(groups["group_0"]), len(groups["group_1"]),
        )
        Path(args.stability).write_text(json.dumps(groups, indent=2, ensure_ascii=False), encoding="utf-8")

    emit(_frames_table(reports).to_csv(index=False), args.out)
    return _series_exit_code(reports)


def cmd_ising(args, config: FrustraConfig, ctx: RunContext) -> int:
    if args.hypercube is not None:
        dimension, side = args.hypercube, None
    elif args.dim is not None and args.side is not None:
        dimension, side = args.dim, args.side
    else:
        raise ContractError("preciser --dim et --side, ou --hypercube")

    cfg = solver_config(args, config)
    instances = args.instances if args.instances is not None else config.appkits.ising_instances
    fractions = [args.neg] if args.neg is not None else list(SETTING_FRACTIONS)

    rows = ising_settings_table(
        dimension, side, fractions, instances, cfg.seed, cfg,
        ctx.workers, config.appkits.ising_node_cap,
    )
    table = pd.DataFrame([
        {k: v for k, v in row.items() if k not in LIST_COLUMNS} for row in rows
    ])
    emit(table.to_csv(index=False), args.out)
    return exit_code(all(row["exact_instances"] == row["instances"] for row in rows))


def cmd_bipartivity(args, config: FrustraConfig, ctx: RunContext) -> int:
    graph = NetworkLoader().load_graph(args.graph)
    cfg = solver_config(args, config)

    ctx.start("solve")
    row = bipartivity_row(
        graph, cfg, config.measures.spectral_cap, config.measures.residual_tolerance
    )
    ctx.stop("solve")

    result: FrustrationResult = row["result"]
    report = AnalysisReport(
        **ctx.header(),
        input=input_descriptor(args.graph, graph),
        measures=row["measures"],
        solve=result.summary(),
        extra={"row": {k: row[k] for k in ("m", "L", "L_bounds", "F", "beta", "bs")}},
        timing=ctx.timings,
    )
    emit_json(report, args.out)
    return exit_code(result.exact)


COMMANDS = {
    "analyze":     cmd_analyze,
    "zscore":      cmd_zscore,
    "partition":   cmd_partition,
    "portfolio":   cmd_portfolio,
    "series":      cmd_series,
    "ising":       cmd_ising,
    "bipartivity": cmd_bipartivity,
}


# =============================================================
# ANALYSE DES ARGUMENTS
# =============================================================

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", default=None, help="fichier YAML (defaut : config.yaml si present)")
    common.add_argument("--workers", type=int, default=None, help="processus paralleles")
    common.add_argument("--verbose", action="store_true", help="journal DEBUG sur stderr")
    common.add_argument("--out", default=None, help="fichier de sortie (defaut : stdout)")

    solving = _Parser(add_help=False)
    solving.add_argument("--time-limit", type=float, default=None, help="secondes")
    solving.add_argument("--gap", type=float, default=None, help="ecart relatif cible dans [0, 1]")
    solving.add_argument("--seed", type=int, default=None)

    parser = _Parser(prog="frustra", description="Indice de frustration des graphes signes")
    sub = parser.add_subparsers(dest="command", required=True)
    parents = [common, solving]

    p = sub.add_parser("analyze", parents=parents, help="L(G) et mesures derivees")
    p.add_argument("graph")

    p = sub.add_parser("zscore", parents=parents, help="modele nul et score Z")
    p.add_argument("graph")
    p.add_argument("--runs", type=int, default=None)
    p.add_argument("--mode", choices=["exact", "bounds"], default=None)

    p = sub.add_parser("partition", parents=parents, help="deux groupes et aretes frustrees")
    p.add_argument("graph")
    p.add_argument("--labels", default=None, help="fichier '<noeud> <valeur>' (deux valeurs)")
    p.add_argument("--monotone", default=None, help="ecrit le sous-systeme equilibre dans ce fichier")

    p = sub.add_parser("portfolio", parents=parents, help="matrices de correlation CSV")
    p.add_argument("correlations", help="repertoire de CSV (ou un seul CSV)")
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--sweep", action="store_true", help="sensibilite aux seuils de config.yaml")
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("series", parents=parents, help="serie temporelle -> CSV")
    p.add_argument("manifest", help="manifeste '<etiquette> <chemin>' ou repertoire")
    p.add_argument("--stability", default=None, help="ecrit les groupes stables (JSON) dans ce fichier")

    p = sub.add_parser("ising", parents=parents, help="grilles et hypercubes d'Ising")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--side", type=int, default=None)
    p.add_argument("--hypercube", type=int, default=None, metavar="D")
    p.add_argument("--neg", type=float, default=None, help="proportion d'aretes negatives")
    p.add_argument("--instances", type=int, default=None)

    p = sub.add_parser("bipartivity", parents=parents, help="graphe non signe : L, F, beta, bs")
    p.add_argument("graph")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Point d'entree principal"""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)

    try:
        config = load_config(args.config)
        seed = args.seed if args.seed is not None else config.solver.seed
        ctx = RunContext(seed=seed, workers=resolve_workers(args.workers, config))
        ctx.add_event(args.command, f"workers={ctx.workers}")
        code = COMMANDS[args.command](args, config, ctx)
        ctx.add_event(args.command, f"code de sortie {code}")
        logger.debug("contexte : %s", ctx.to_dict())
        return code
    except (FrustraError, ValidationError, FileNotFoundError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
