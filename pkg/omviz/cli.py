"""
Command-line surface: data generation, rendering, study building, scoring and analysis.

Exit codes: 0 success, 1 domain error (bad values, missing or malformed
files), 2 usage error (unknown flags, designs or kinds).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from omviz.charts.registry import CLI_DESIGNS, render
from omviz.color.omc import load_palette
from omviz.config.settings import ANALYSIS_CONFIG, OUTPUT_DIR, RENDER_CONFIG
from omviz.contracts.errors import OmvizError, UsageError
from omviz.contracts.types import (
    DESIGNS,
    AnalysisConfig,
    ChartSpec,
    DatasetRef,
    MagnitudeRange,
    Marker,
    Series,
)
from omviz.data.datagen import random_walk, trend_series
from omviz.data.io import read_series, write_manifest, write_series_csv
from omviz.stats.analysis import analyze_file, report_json, report_text
from omviz.study.builder import build_manifest, materialize
from omviz.study.scoring import (
    read_manifest,
    read_responses,
    score_responses,
    write_manifest as write_study_manifest,
    write_responses,
    write_scored,
)
from omviz.study.synthetic import synthetic_responses
from omviz.utils.logging import StructuredLogger, configure_logging, log_operation

log = StructuredLogger("cli")


def _marker(text: str) -> Marker:
    label, sep, index = text.partition(":")
    try:
        if not sep:
            raise ValueError("missing ':'")
        return Marker(label=label, index=int(index))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"marker must look like LABEL:INDEX (got {text!r}): {exc}") from None


def _value_range(args: argparse.Namespace) -> MagnitudeRange:
    try:
        return MagnitudeRange(e_min=args.e_min, e_max=args.e_max)
    except ValueError as exc:
        raise UsageError(f"invalid magnitude range: {exc}") from None


def _default_out(args: argparse.Namespace, name: str) -> Path:
    return Path(args.out) if args.out else Path(OUTPUT_DIR) / name


def _emit(path: Path) -> None:
    print(str(path))


# ─────────────────────────────────────────────────────────────
# Subcommands
# ─────────────────────────────────────────────────────────────

def _write_dataset(series: Series, ref: DatasetRef, out: Path) -> None:
    write_series_csv(series, out)
    write_manifest(ref, out.with_suffix(".json"))
    _emit(out)


def cmd_gen_walk(args: argparse.Namespace) -> int:
    value_range = _value_range(args)
    series = random_walk(args.seed, args.n, value_range)
    ref = DatasetRef(seed=args.seed, kind="walk", n=args.n, value_range=value_range)
    _write_dataset(series, ref, _default_out(args, f"walk-{args.seed}.csv"))
    return 0


def cmd_gen_trend(args: argparse.Namespace) -> int:
    value_range = _value_range(args)
    series = trend_series(args.kind, args.seed, args.n, value_range)
    ref = DatasetRef(seed=args.seed, kind=args.kind, n=args.n, value_range=value_range)
    _write_dataset(series, ref, _default_out(args, f"{args.kind}-{args.seed}.csv"))
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    value_range = _value_range(args)
    design = CLI_DESIGNS[args.design]
    if args.input:
        series = read_series(args.input, value_range)
    else:
        series = random_walk(args.seed, value_range=value_range)
    try:
        spec = ChartSpec(
            design=design, width_px=args.width, height_px=args.height,
            markers=args.marker or [], show_legend=not args.no_legend,
            n_bands=args.n_bands, value_range=value_range,
        )
    except ValueError as exc:
        raise UsageError(f"invalid chart options: {exc}") from None
    palette = load_palette(args.palette) if args.palette else None
    chart = render(series, spec, palette)
    out = _default_out(args, f"{args.design}.svg")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(chart.document, encoding="utf-8")
    _emit(out)
    return 0


def cmd_build_study(args: argparse.Namespace) -> int:
    out_dir = Path(args.out_dir) if args.out_dir else Path(OUTPUT_DIR) / "study"
    with log_operation(log, "build_study_files", out_dir=str(out_dir)):
        manifest = build_manifest(args.master_seed)
        for trial in manifest.trials:
            series = materialize(trial.dataset)
            write_series_csv(series, out_dir / "datasets" / f"{trial.trial_id}.csv")
            if args.render:
                spec = ChartSpec(design=trial.design, markers=trial.marked,
                                 width_px=RENDER_CONFIG["width_px"], height_px=RENDER_CONFIG["height_px"],
                                 n_bands=RENDER_CONFIG["horizon_bands"], value_range=trial.dataset.value_range)
                svg = out_dir / "stimuli" / f"{trial.trial_id}.svg"
                svg.parent.mkdir(parents=True, exist_ok=True)
                svg.write_text(render(series, spec).document, encoding="utf-8")
        path = write_study_manifest(manifest, out_dir / "study.json")
    _emit(path)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    manifest = read_manifest(args.study)
    rows = synthetic_responses(manifest.trials, args.participants, args.seed, bad_designs=args.bad_design or ())
    out = write_responses(rows, _default_out(args, "responses.csv"))
    _emit(out)
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    manifest = read_manifest(args.study)
    scored = score_responses(manifest, read_responses(args.responses), source=str(args.responses))
    out = write_scored(scored, _default_out(args, "scored.csv"))
    _emit(out)
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        cfg = AnalysisConfig(alpha=args.alpha, bonferroni_factor=args.bonferroni)
    except ValueError as exc:
        raise UsageError(f"invalid analysis options: {exc}") from None
    report = analyze_file(args.scored, cfg)
    out = _default_out(args, "report.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report_json(report), encoding="utf-8")
    out.with_suffix(".txt").write_text(report_text(report), encoding="utf-8")
    _emit(out)
    return 0


# ─────────────────────────────────────────────────────────────
# Parser
# ─────────────────────────────────────────────────────────────

def _add_range(p: argparse.ArgumentParser) -> None:
    p.add_argument("--e-min", type=int, default=0, help="Lowest decade exponent (default 0)")
    p.add_argument("--e-max", type=int, default=4, help="Highest decade exponent (default 4)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="omviz", description="Order-of-magnitude time-series charts and study tooling")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-walk", help="Generate a constrained random walk (CSV + JSON manifest)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--out")
    _add_range(p)
    p.set_defaults(handler=cmd_gen_walk)

    p = sub.add_parser("gen-trend", help="Generate a periodic, linear or exponential trend series")
    p.add_argument("--kind", choices=["periodic", "linear", "exponential"], required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--out")
    _add_range(p)
    p.set_defaults(handler=cmd_gen_trend)

    p = sub.add_parser("render", help="Render one chart to SVG")
    p.add_argument("--design", choices=list(CLI_DESIGNS), required=True)
    p.add_argument("--input", help="CSV (index,value) or JSON array; a walk from --seed when omitted")
    p.add_argument("--out")
    p.add_argument("--width", type=int, default=RENDER_CONFIG["width_px"])
    p.add_argument("--height", type=int, default=RENDER_CONFIG["height_px"])
    p.add_argument("--marker", type=_marker, nargs="+", action="extend", metavar="LABEL:INDEX")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--palette", help="JSON palette override")
    p.add_argument("--n-bands", type=int, default=RENDER_CONFIG["horizon_bands"])
    p.add_argument("--no-legend", action="store_true")
    _add_range(p)
    p.set_defaults(handler=cmd_render)

    p = sub.add_parser("build-study", help="Build the 60-trial stimulus set")
    p.add_argument("--master-seed", type=int, required=True)
    p.add_argument("--out-dir")
    p.add_argument("--render", action="store_true", help="Also write one SVG stimulus per trial")
    p.set_defaults(handler=cmd_build_study)

    p = sub.add_parser("simulate", help="Write synthetic responses for a study manifest")
    p.add_argument("--study", required=True)
    p.add_argument("--out")
    p.add_argument("--participants", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bad-design", choices=list(DESIGNS), action="append")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("score", help="Score a responses CSV against a study manifest")
    p.add_argument("--study", required=True)
    p.add_argument("--responses", required=True)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_score)

    p = sub.add_parser("analyze", help="Run the significance pipeline on scored responses")
    p.add_argument("--scored", required=True)
    p.add_argument("--out")
    p.add_argument("--alpha", type=float, default=ANALYSIS_CONFIG["alpha"])
    p.add_argument("--bonferroni", type=int, default=ANALYSIS_CONFIG["bonferroni_factor"])
    p.set_defaults(handler=cmd_analyze)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 on --help
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"omviz: usage error: {exc}", file=sys.stderr)
        return 2
    except (OmvizError, ValueError, OSError) as exc:
        log.error("command_failed", command=args.command, error=str(exc), error_type=type(exc).__name__)
        print(f"omviz: error: {exc}", file=sys.stderr)
        return 1


def main(argv: Optional[List[str]] = None) -> None:
    configure_logging()
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
