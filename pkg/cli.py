"""Robust MDS experiment driver.

Usage:
    python cli.py generate --kind hypercube --n 70 --dim 2 --outliers 0.10 --seed 7 --out s1/
    python cli.py filter --input s1/ --mode exact --out s1/filter
    python cli.py embed --input s1/ --method tmds --dim 2 --out s1/tmds
    python cli.py evaluate --bundle s1/ --embedding s1/tmds --out s1/tmds/eval
    python cli.py sweep --kind rate --repeats 10 --workers 4 --out sweeps/
    python cli.py sweep --config config/templates/rate_sweep.yaml

Every command writes its outputs under --out (default: <output_root>/<command>)
and exits 0 only once all of them are written; input and parameter errors
exit with status 2.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Iterator, Optional

import numpy as np
import pandas as pd
import structlog
from rich.console import Console
from rich.table import Table

from config import PipelineConfig
from evaluation import (
    deformation_sweep,
    detection_report,
    embedding_score_report,
    lambda_sweep,
    rate_sweep,
    sampling_sweep,
    shepard_data,
    sigma_sweep,
    summarize,
    theory_table,
    timing_sweep,
)
from mds_solvers import EmbedMethod, embed_with
from metric_core import (
    DistanceMatrix,
    Embedding,
    FilterMask,
    load_distance_csv,
    load_points_csv,
    read_matrix_csv,
    write_json,
    write_matrix_csv,
)
from synthetic import build_scenario, load_bundle, save_bundle
from triangle_filter import tmds_filter

logger = logging.getLogger("tmds")
console = Console(stderr=True)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


# =============================================================================
# Logging and timing
# =============================================================================


def configure_logging(level: str = "INFO", json_logs: bool = False):
    """Route every stdlib logger through one structlog formatter on stderr."""
    renderer = structlog.processors.JSONRenderer() if json_logs else structlog.dev.ConsoleRenderer(colors=False)
    formatter = structlog.stdlib.ProcessorFormatter(
        foreign_pre_chain=[
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            structlog.processors.TimeStamper(fmt="iso"),
        ],
        processors=[structlog.stdlib.ProcessorFormatter.remove_processors_meta, renderer],
    )
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level.upper())


class PhaseTimer:
    """Wall-clock seconds per named phase."""

    def __init__(self):
        self.phases: list[tuple[str, float]] = []

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            seconds = time.perf_counter() - start
            self.phases.append((name, seconds))
            logger.info(f"{name} took {seconds:.3f}s")

    def render(self) -> Table:
        table = Table(title="Timings")
        table.add_column("Phase", style="cyan")
        table.add_column("Seconds", justify="right")
        for name, seconds in self.phases:
            table.add_row(name, f"{seconds:.3f}")
        return table


# =============================================================================
# Argument helpers
# =============================================================================


def _list_of(kind: Callable[[str], object]) -> Callable[[str], list]:
    def parse(text: str) -> list:
        try:
            values = [kind(part) for part in text.split(",") if part.strip()]
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"invalid list {text!r}: {e}")
        if not values:
            raise argparse.ArgumentTypeError("list must not be empty")
        return values

    return parse


def _output_dir(args: argparse.Namespace, cfg: PipelineConfig) -> Path:
    out = Path(args.out) if args.out else Path(cfg.output_root) / args.command
    out.mkdir(parents=True, exist_ok=True)
    return out


def _read_distances(path: str) -> DistanceMatrix:
    """A distance CSV, or a scenario bundle whose observed matrix is used."""
    source = Path(path)
    if source.is_dir():
        source = source / "observed_d.csv"
    return load_distance_csv(source)


def _read_mask(path: Path) -> FilterMask:
    return FilterMask(read_matrix_csv(path).astype(bool))


def _write_mask(path: Path, mask: FilterMask):
    write_matrix_csv(path, mask.keep.astype(int), integer=True)


# =============================================================================
# Commands
# =============================================================================


def cmd_generate(args: argparse.Namespace, cfg: PipelineConfig, timer: PhaseTimer) -> list[Path]:
    cfg = cfg.with_overrides(seed=args.seed).with_overrides(
        "generate",
        kind=args.kind,
        n=args.n,
        dim=args.dim,
        outlier_rate=args.outliers,
        outlier_count=args.outlier_count,
        sigma=args.sigma,
        lognormal_center=args.lognormal_center,
        side=args.side,
        jitter=args.jitter,
    )
    settings = cfg.generate
    with timer.phase("generate"):
        scenario = build_scenario(
            settings.kind,
            n=settings.n,
            dim=settings.dim,
            outlier_rate=settings.outlier_rate,
            outlier_count_override=settings.outlier_count,
            sigma=settings.sigma,
            lognormal_center=settings.lognormal_center,
            side=settings.side,
            jitter=settings.jitter,
            seed=cfg.seed,
        )
    out = _output_dir(args, cfg)
    save_bundle(scenario, out)
    cfg.to_yaml(out / "config.yaml")
    print(out)
    return [out]


def _filter_config(args: argparse.Namespace, cfg: PipelineConfig, seed: Optional[int]) -> PipelineConfig:
    return cfg.with_overrides(
        "filter",
        mode=args.mode,
        triangles_per_edge=args.per_edge,
        seed=seed,
        rel_tol=args.tol,
        edge_fraction=args.edge_fraction,
        expected_outlier_rate=args.expected_outlier_rate,
    )


def cmd_filter(args: argparse.Namespace, cfg: PipelineConfig, timer: PhaseTimer) -> list[Path]:
    cfg = _filter_config(args, cfg, args.seed)
    settings = cfg.filter
    D = _read_distances(args.input)
    mode = settings.to_filter_mode(cfg.seed, D.n)
    with timer.phase("filter"):
        result = tmds_filter(
            D,
            mode=mode,
            rel_tol=settings.rel_tol,
            edge_fraction=settings.edge_fraction,
            expected_outlier_rate=settings.expected_outlier_rate,
        )
    out = _output_dir(args, cfg)
    _write_mask(out / "mask.csv", result.mask)
    write_matrix_csv(out / "counts.csv", result.counts.count, integer=True)
    write_json(out / "diagnostics.json", result.diagnostics())
    console.print(f"[green]φ={result.phi}, flagged {result.mask.n_flagged} of {result.histogram.edge_total} edges[/green]")
    return [out / "mask.csv", out / "counts.csv", out / "diagnostics.json"]


def cmd_embed(args: argparse.Namespace, cfg: PipelineConfig, timer: PhaseTimer) -> list[Path]:
    cfg = _filter_config(args, cfg, None)
    cfg = cfg.with_overrides("embed", method=args.method, dim=args.dim, lam=args.lam)
    cfg = cfg.with_overrides(
        "solver", init=args.init, max_iters=args.max_iters, rel_stress_tol=args.stress_tol, seed=args.seed
    )
    if cfg.embed.method == EmbedMethod.FG12.value and cfg.embed.lam is None:
        raise ValueError("--method fg12 requires --lambda")

    D = _read_distances(args.input)
    with timer.phase(f"embed ({cfg.embed.method})"):
        outcome = embed_with(
            cfg.embed.method,
            D,
            dim=cfg.embed.dim,
            cfg=cfg.solver.to_solver_config(cfg.seed),
            mode=cfg.filter.to_filter_mode(cfg.seed, D.n),
            lam=cfg.embed.lam,
            rel_tol=cfg.filter.rel_tol,
            edge_fraction=cfg.filter.edge_fraction,
            expected_outlier_rate=cfg.filter.expected_outlier_rate,
        )
    if outcome.diagnostics.get("reconnected"):
        logger.warning("Filtered graph was disconnected; threshold was raised to reconnect it")

    out = _output_dir(args, cfg)
    written = [write_matrix_csv(out / "embedding.csv", outcome.embedding.coords)]
    diagnostics = {"method": outcome.method.value, "dim": cfg.embed.dim, "lambda": cfg.embed.lam, **outcome.diagnostics}
    written.append(write_json(out / "diagnostics.json", diagnostics))
    if outcome.mask is not None:
        _write_mask(out / "mask.csv", outcome.mask)
        written.append(out / "mask.csv")
    return written


def cmd_evaluate(args: argparse.Namespace, cfg: PipelineConfig, timer: PhaseTimer) -> list[Path]:
    cfg = cfg.with_overrides("evaluate", against=args.against)
    scenario = load_bundle(args.bundle)
    embedding_path = Path(args.embedding)
    if embedding_path.is_dir():
        embedding_path = embedding_path / "embedding.csv"
    X = Embedding(load_points_csv(embedding_path))

    mask_path = Path(args.mask) if args.mask else embedding_path.parent / "mask.csv"
    mask: Optional[FilterMask] = None
    if mask_path.exists():
        mask = _read_mask(mask_path)
        if mask.n != scenario.n:
            raise ValueError(f"Mask is {mask.n}×{mask.n} but the bundle has N={scenario.n}")
    elif args.mask:
        raise FileNotFoundError(f"Mask not found: {mask_path}")

    reference = scenario.true_D if cfg.evaluate.against == "true" else scenario.observed_D
    with timer.phase("evaluate"):
        score = embedding_score_report(reference, X, against=cfg.evaluate.against)
        detection = detection_report(mask, scenario.outlier_set) if mask is not None else None
        shepard = shepard_data(scenario.observed_D, X, mask)

    out = _output_dir(args, cfg)
    report = {
        "bundle": str(Path(args.bundle)),
        "embedding": str(embedding_path),
        "embedding_score": score.to_dict(),
        "detection": detection.to_dict() if detection else None,
    }
    write_json(out / "report.json", report)
    shepard.to_csv(out / "shepard.csv", index=False)
    console.print(f"[green]score={score.score:.6g} (against {score.against} distances)[/green]")
    if detection:
        console.print(f"[green]precision={detection.precision:.3f} recall={detection.recall:.3f}[/green]")
    return [out / "report.json", out / "shepard.csv"]


def _run_sweep(cfg: PipelineConfig) -> tuple[pd.DataFrame, Optional[pd.DataFrame]]:
    s = cfg.sweep
    solver = cfg.solver.to_solver_config(cfg.seed)
    if s.kind in ("rate", "sigma"):
        n = s.n or 100
        common = dict(
            n=n,
            dim=s.dim,
            repeats=s.repeats,
            seed=cfg.seed,
            methods=s.methods,
            mode=cfg.filter.to_filter_mode(cfg.seed, n),
            cfg=solver,
            lam=cfg.embed.lam,
            workers=cfg.workers,
        )
        if s.kind == "rate":
            rows = rate_sweep(s.rates, **common)
        else:
            rows = sigma_sweep(s.sigmas, center=s.lognormal_center, **common)
        return rows, summarize(rows, [s.kind, "method"], ["score", "precision", "recall"])
    if s.kind == "deformation":
        n = s.n or 100
        rows = deformation_sweep(
            s.log2_factors,
            n=n,
            dim=s.dim,
            repeats=s.repeats,
            seed=cfg.seed,
            mode=cfg.filter.to_filter_mode(cfg.seed, n),
            background_rate=s.background_rate,
            workers=cfg.workers,
        )
        return rows, summarize(rows, ["log2_factor"], ["detected", "false_positive_rate"])
    if s.kind == "theory":
        return theory_table(s.dims, trials=s.trials, seed=cfg.seed, workers=cfg.workers), None
    if s.kind == "sampling":
        rows = sampling_sweep(
            s.triangles_per_edge,
            n=s.n or 70,
            dim=s.dim,
            rate=s.sampling_rate,
            repeats=s.repeats,
            seed=cfg.seed,
            workers=cfg.workers,
        )
        return rows, summarize(rows, ["mode", "triangles_per_edge"], ["precision", "recall", "detected"])
    if s.kind == "lambda":
        rows = lambda_sweep(
            s.lambdas,
            n=s.n or 50,
            dim=s.dim,
            outliers=s.lambda_outliers,
            inits=s.inits,
            side=s.lambda_side,
            seed=cfg.seed,
            workers=cfg.workers,
        )
        return rows, summarize(rows, ["lam"], ["nonzero_count", "true_positives", "score"])
    rows = timing_sweep(s.sizes, dim=s.dim, seed=cfg.seed, lam=cfg.embed.lam)
    return rows, summarize(rows, ["n", "phase"], ["seconds"])


def cmd_sweep(args: argparse.Namespace, cfg: PipelineConfig, timer: PhaseTimer) -> list[Path]:
    cfg = cfg.with_overrides(seed=args.seed)
    cfg = cfg.with_overrides("embed", lam=args.lam)
    cfg = cfg.with_overrides(
        "sweep",
        kind=args.kind,
        n=args.n,
        dim=args.dim,
        repeats=args.repeats,
        methods=args.methods,
        rates=args.rates,
        sigmas=args.sigmas,
        lognormal_center=args.lognormal_center,
        log2_factors=args.factors,
        background_rate=args.background_rate,
        dims=args.dims,
        trials=args.trials,
        triangles_per_edge=args.per_edge_grid,
        lambdas=args.lambdas,
        inits=args.inits,
        sizes=args.sizes,
    )
    kind = cfg.sweep.kind
    with timer.phase(f"{kind} sweep"):
        rows, summary = _run_sweep(cfg)

    out = _output_dir(args, cfg)
    written = [out / f"{kind}_sweep.csv"]
    rows.to_csv(written[0], index=False)
    if summary is not None:
        written.append(out / f"{kind}_summary.csv")
        summary.to_csv(written[1], index=False)
    cfg.to_yaml(out / f"{kind}_config.yaml")
    written.append(out / f"{kind}_config.yaml")

    shown = summary if summary is not None else rows
    table = Table(title=f"{kind} sweep")
    for column in shown.columns:
        table.add_column(str(column))
    for record in shown.itertuples(index=False):
        table.add_row(*(f"{v:.4g}" if isinstance(v, (float, np.floating)) else str(v) for v in record))
    console.print(table)
    return written


COMMANDS: dict[str, Callable[[argparse.Namespace, PipelineConfig, PhaseTimer], list[Path]]] = {
    "generate": cmd_generate,
    "filter": cmd_filter,
    "embed": cmd_embed,
    "evaluate": cmd_evaluate,
    "sweep": cmd_sweep,
}


# =============================================================================
# Parser
# =============================================================================


def _add_filter_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--mode", choices=["exact", "sampled"], help="Broken-triangle counting mode")
    parser.add_argument("--per-edge", type=int, dest="per_edge", help="Sampled triangles per edge")
    parser.add_argument("--tol", type=float, help="Relative tolerance of the broken-triangle test")
    parser.add_argument("--edge-fraction", type=float, dest="edge_fraction", help="Cumulative histogram requirement")
    parser.add_argument(
        "--expected-outlier-rate", type=float, dest="expected_outlier_rate", help="Sets edge fraction to 1 − rate"
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Pipeline YAML; flags override its values")
    common.add_argument("--log-level", dest="log_level", choices=LOG_LEVELS, type=str.upper, default=None)
    common.add_argument("--log-json", dest="log_json", action="store_true", default=None, help="JSON log lines")
    common.add_argument("--workers", type=int, help="Worker processes for sweeps")
    common.add_argument("--out", help="Output directory (default: <output_root>/<command>)")

    parser = argparse.ArgumentParser(description="Triangle-filtered robust MDS experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", parents=[common], help="Write a synthetic scenario bundle")
    gen.add_argument("--kind", choices=["hypercube", "plus", "spiral"])
    gen.add_argument("--n", type=int)
    gen.add_argument("--dim", type=int)
    gen.add_argument("--outliers", type=float, help="Outlier rate in [0, 1]")
    gen.add_argument("--outlier-count", type=int, dest="outlier_count", help="Exact outlier count")
    gen.add_argument("--sigma", type=float, help="Log-normal distortion σ")
    gen.add_argument("--lognormal-center", choices=["mean", "median"], dest="lognormal_center")
    gen.add_argument("--side", type=float)
    gen.add_argument("--jitter", type=float)
    gen.add_argument("--seed", type=int, help="Global seed")

    flt = sub.add_parser("filter", parents=[common], help="Flag outlier distances")
    flt.add_argument("--input", required=True, help="Distance CSV or scenario bundle")
    _add_filter_flags(flt)
    flt.add_argument("--seed", type=int, help="Sampling seed")

    emb = sub.add_parser("embed", parents=[common], help="Embed a distance matrix")
    emb.add_argument("--input", required=True, help="Distance CSV or scenario bundle")
    emb.add_argument("--method", choices=[m.value for m in EmbedMethod])
    emb.add_argument("--dim", type=int)
    emb.add_argument("--lambda", type=float, dest="lam", help="FG12 λ (required for fg12)")
    emb.add_argument("--init", choices=["classical", "random"])
    emb.add_argument("--max-iters", type=int, dest="max_iters")
    emb.add_argument("--stress-tol", type=float, dest="stress_tol")
    emb.add_argument("--seed", type=int, help="Random-init seed")
    _add_filter_flags(emb)

    ev = sub.add_parser("evaluate", parents=[common], help="Score an embedding against a bundle")
    ev.add_argument("--bundle", required=True)
    ev.add_argument("--embedding", required=True, help="embedding.csv or the directory holding it")
    ev.add_argument("--mask", help="mask.csv (default: next to the embedding, if present)")
    ev.add_argument("--against", choices=["true", "observed"])

    sw = sub.add_parser("sweep", parents=[common], help="Run an experiment sweep")
    sw.add_argument("--kind", choices=["rate", "deformation", "sigma", "theory", "sampling", "lambda", "timing"])
    sw.add_argument("--n", type=int)
    sw.add_argument("--dim", type=int)
    sw.add_argument("--repeats", type=int)
    sw.add_argument("--seed", type=int, help="Global seed")
    sw.add_argument("--methods", type=_list_of(str))
    sw.add_argument("--rates", type=_list_of(float))
    sw.add_argument("--sigmas", type=_list_of(float))
    sw.add_argument("--lognormal-center", choices=["mean", "median"], dest="lognormal_center")
    sw.add_argument("--factors", type=_list_of(float), help="log₂ deformation factors")
    sw.add_argument("--background-rate", type=float, dest="background_rate")
    sw.add_argument("--dims", type=_list_of(int))
    sw.add_argument("--trials", type=int)
    sw.add_argument("--per-edge-grid", type=_list_of(int), dest="per_edge_grid")
    sw.add_argument("--lambdas", type=_list_of(float))
    sw.add_argument("--lambda", type=float, dest="lam", help="FG12 λ for rate/sigma/timing sweeps")
    sw.add_argument("--inits", type=int)
    sw.add_argument("--sizes", type=_list_of(int))
    return parser


def load_config(args: argparse.Namespace) -> PipelineConfig:
    cfg = PipelineConfig.from_yaml(args.config) if args.config else PipelineConfig.from_env()
    return cfg.with_overrides(workers=args.workers)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or "INFO", bool(args.log_json))
    timer = PhaseTimer()
    try:
        cfg = load_config(args)
        written = COMMANDS[args.command](args, cfg, timer)
    except (ValueError, FileNotFoundError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return 2

    for path in written:
        logger.info(f"Wrote {path}")
    console.print(timer.render())
    return 0


if __name__ == "__main__":
    sys.exit(main())
