"""Command-line front end: verify, simulate, fit, figures.

Exit codes: 0 success, 1 failed check or fit, 2 usage/input error, 3 I/O
error. All randomness flows from --seed; reruns with the same flags produce
byte-identical CSV and JSON artifacts.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

import dynact
from dynact.activations import DyISRUParams, DyTParams, dyisru, scaled_dyt
from dynact.fitting import BracketFailure, FitResult, fit_dyisru, fit_dyt, mirror_augment
from dynact.simulation import (
    OutlierScenario,
    SimulationConfig,
    outlier_points,
    read_points_csv,
    run_scenario,
    write_scenario_csv,
)
from dynact.svgplot import Curve, Panel, Scatter, color_cycle, render_figure
from dynact.verification import run_all_checks

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

CURVE_SEGMENTS = 512

# Parameter sets drawn for the side-by-side activation curve figure (C = 50).
FIG1_CHANNELS = 50
FIG1_ALPHAS = (0.25, 0.5, 1.0)
FIG1_BETAS = (4.0, 25.0, 100.0)
FIG1_XMAX = 15.0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynact",
        description="Layer normalization vs dynamic activations: verification, simulation, fits, figures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the numerical identity checks")
    p_verify.add_argument("--seed", type=int, default=1)
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--out", default="verification_report.json")
    p_verify.add_argument("--json", action="store_true", help="print the report JSON to stdout")

    p_sim = sub.add_parser("simulate", help="run the stepwise outlier simulation")
    p_sim.add_argument("--channels", type=int, default=100)
    p_sim.add_argument("--sigma", type=float, default=2.0)
    p_sim.add_argument("--mu", type=float, default=0.0)
    p_sim.add_argument("--step", type=float, default=5.0)
    p_sim.add_argument("--s-max", type=int, default=9)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--frames", default="0,1,2,9", help="comma-separated frame indices to plot")
    p_sim.add_argument("--out", default="out")
    p_sim.add_argument("--json", action="store_true")

    p_fit = sub.add_parser("fit", help="fit DyT or DyISRU to (x, y) data")
    p_fit.add_argument("--input", required=True, help="scenario CSV or plain x,y CSV")
    p_fit.add_argument("--kind", choices=["dyt", "dyisru"], required=True)
    p_fit.add_argument("--channels", type=int, default=None)
    p_fit.add_argument("--out", default="out")
    p_fit.add_argument("--json", action="store_true")

    p_figs = sub.add_parser("figures", help="regenerate all figures as SVG + CSV")
    p_figs.add_argument("--seed", type=int, default=0)
    p_figs.add_argument("--out", default="figures")
    p_figs.add_argument("--json", action="store_true")

    return parser


def _write_text(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")


def _write_manifest(out_dir: Path, command: str, config: dict, seed: int, artifacts: list[str]) -> None:
    manifest = {
        "command": command,
        "config": config,
        "seed": seed,
        "artifacts": sorted(artifacts),
        "tool_version": dynact.__version__,
    }
    _write_text(out_dir / "manifest.json", json.dumps(manifest, indent=2) + "\n")


def _frame_panel(scenario: OutlierScenario, s: int) -> Panel:
    frame = scenario.frames[s]
    o = scenario.outlier_index
    mask = np.ones(frame.x.size, dtype=bool)
    mask[o] = False
    panel = Panel(title=f"S = {s}", xlabel="x", ylabel="y")
    panel.series.append(
        Scatter(xs=tuple(frame.x[mask]), ys=tuple(frame.y[mask]), filled=False, color="#555555")
    )
    if s >= 1:
        panel.series.append(
            Scatter(xs=(float(frame.x[o]),), ys=(float(frame.y[o]),), filled=True, color="#d62728")
        )
    return panel


def _fit_figure(points: list[tuple[float, float]], results: list[FitResult], channels: int) -> str:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    top = Panel(title="outlier data and fitted activations", xlabel="x", ylabel="y")
    top.series.append(Scatter(xs=tuple(xs), ys=tuple(ys), filled=True, color="#555555", label="outliers"))
    grid = np.linspace(min(xs + [0.0]), max(xs), CURVE_SEGMENTS + 1)
    bottom = Panel(title="residuals (positive outliers)", xlabel="x", ylabel="residual")
    bottom.hlines.append((0.0, True))
    for k, res in enumerate(results):
        color = color_cycle(k + 1)
        if res.function_kind == "dyt":
            curve = scaled_dyt(grid, DyTParams(alpha=res.parameter, channels=channels))
        else:
            curve = dyisru(grid, DyISRUParams(beta=res.parameter, channels=channels))
        top.series.append(
            Curve(xs=tuple(grid), ys=tuple(curve), color=color, label=res.function_kind)
        )
        pos = [(x, r) for x, r in zip(xs, res.residuals) if x > 0]
        bottom.series.append(
            Scatter(
                xs=tuple(x for x, _ in pos),
                ys=tuple(r for _, r in pos),
                filled=True,
                color=color,
                label=res.function_kind,
            )
        )
    return render_figure([top, bottom])


def cmd_verify(args) -> int:
    if args.trials < 1:
        print("dynact verify: --trials must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    report = run_all_checks(args.seed, trials=args.trials)
    _write_text(Path(args.out), report.to_json() + "\n")
    if args.json:
        print(report.to_json())
    else:
        for c in report.checks:
            status = "PASS" if c.passed else "FAIL"
            print(
                f"{status} {c.name}: trials={c.trials} max_abs={c.max_abs_error:.3e} "
                f"max_rel={c.max_rel_error:.3e} tol={c.tolerance:.0e}"
            )
        print(f"verdict: {'passed' if report.verdict else 'FAILED'} (report: {args.out})")
    return EXIT_OK if report.verdict else EXIT_FAILED


def cmd_simulate(args) -> int:
    config = SimulationConfig(
        channels=args.channels,
        sigma=args.sigma,
        mu=args.mu,
        step=args.step,
        s_max=args.s_max,
        seed=args.seed,
    )
    try:
        frames = [int(s) for s in str(args.frames).split(",") if s.strip() != ""]
    except ValueError:
        print(f"dynact simulate: bad --frames value {args.frames!r}", file=sys.stderr)
        return EXIT_USAGE
    scenario = run_scenario(config)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    artifacts = ["scenario.csv"]
    write_scenario_csv(scenario, out_dir / "scenario.csv")
    for s in frames:
        if not 0 <= s <= config.s_max:
            continue
        name = f"frame_s{s}.svg"
        _write_text(out_dir / name, render_figure([_frame_panel(scenario, s)]))
        artifacts.append(name)
    config_dict = {
        "channels": config.channels,
        "sigma": config.sigma,
        "mu": config.mu,
        "step": config.step,
        "s_max": config.s_max,
        "seed": config.seed,
        "frames": frames,
    }
    _write_manifest(out_dir, "simulate", config_dict, config.seed, artifacts)
    if args.json:
        print(json.dumps({"out": str(out_dir), "artifacts": sorted(artifacts + ["manifest.json"])}))
    else:
        print(f"wrote {len(artifacts) + 1} files to {out_dir}")
    return EXIT_OK


def cmd_fit(args) -> int:
    points, inferred_channels = read_points_csv(args.input)
    if not points:
        raise ValueError("no fit points in input CSV")
    channels = args.channels if args.channels is not None else inferred_channels
    if channels is None:
        print("dynact fit: --channels is required for plain x,y input", file=sys.stderr)
        return EXIT_USAGE
    data = mirror_augment(points, channels=channels)
    result = fit_dyt(data) if args.kind == "dyt" else fit_dyisru(data)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    json_name = f"fit_{args.kind}.json"
    svg_name = f"fit_{args.kind}.svg"
    _write_text(out_dir / json_name, json.dumps(result.to_dict(), indent=2) + "\n")
    _write_text(out_dir / svg_name, _fit_figure(points, [result], channels))
    config_dict = {"input": str(args.input), "kind": args.kind, "channels": channels}
    _write_manifest(out_dir, "fit", config_dict, 0, [json_name, svg_name])
    if args.json:
        print(json.dumps(result.to_dict()))
    else:
        print(
            f"{args.kind}: parameter={result.parameter:.6g} sse={result.sse:.6g} "
            f"mae={result.mae:.6g} n={result.n_points}"
        )
    return EXIT_OK


def _fig1_files(out_dir: Path) -> list[str]:
    grid = np.linspace(-FIG1_XMAX, FIG1_XMAX, CURVE_SEGMENTS + 1)
    panel = Panel(title=f"DyT and DyISRU, C = {FIG1_CHANNELS}", xlabel="x", ylabel="y")
    bound = math.sqrt(FIG1_CHANNELS - 1)
    panel.hlines.extend([(bound, True), (-bound, True)])
    rows = []
    k = 0
    for alpha in FIG1_ALPHAS:
        ys = scaled_dyt(grid, DyTParams(alpha=alpha, channels=FIG1_CHANNELS))
        panel.series.append(
            Curve(xs=tuple(grid), ys=tuple(ys), color=color_cycle(k), label=f"DyT alpha={alpha:g}")
        )
        rows.extend(("dyt", repr(float(alpha)), repr(float(x)), repr(float(y))) for x, y in zip(grid, ys))
        k += 1
    for beta in FIG1_BETAS:
        ys = dyisru(grid, DyISRUParams(beta=beta, channels=FIG1_CHANNELS))
        panel.series.append(
            Curve(
                xs=tuple(grid), ys=tuple(ys), color=color_cycle(k), dashed=True,
                label=f"DyISRU beta={beta:g}",
            )
        )
        rows.extend(("dyisru", repr(float(beta)), repr(float(x)), repr(float(y))) for x, y in zip(grid, ys))
        k += 1
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["function", "parameter", "x", "y"])
    writer.writerows(rows)
    _write_text(out_dir / "fig1_curves.csv", buf.getvalue())
    _write_text(out_dir / "fig1.svg", render_figure([panel]))
    return ["fig1_curves.csv", "fig1.svg"]


def cmd_figures(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    artifacts: list[str] = []

    artifacts += _fig1_files(out_dir)

    config = SimulationConfig(seed=args.seed)
    scenario = run_scenario(config)
    write_scenario_csv(scenario, out_dir / "scenario.csv")
    artifacts.append("scenario.csv")
    for s in (0, 1, 2, 9):
        name = f"frame_s{s}.svg"
        _write_text(out_dir / name, render_figure([_frame_panel(scenario, s)]))
        artifacts.append(name)

    points = outlier_points(scenario)
    data = mirror_augment(points, channels=config.channels)
    results = [fit_dyt(data), fit_dyisru(data)]
    for res in results:
        name = f"fit_{res.function_kind}.json"
        _write_text(out_dir / name, json.dumps(res.to_dict(), indent=2) + "\n")
        artifacts.append(name)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "x", "y", "residual"])
    for res in results:
        for (x, y), r in zip(points, res.residuals):
            writer.writerow([res.function_kind, repr(float(x)), repr(float(y)), repr(float(r))])
    _write_text(out_dir / "fig3_residuals.csv", buf.getvalue())
    artifacts.append("fig3_residuals.csv")
    _write_text(out_dir / "fig3.svg", _fit_figure(points, results, config.channels))
    artifacts.append("fig3.svg")

    _write_manifest(
        out_dir,
        "figures",
        {
            "seed": args.seed,
            "fig1": {"channels": FIG1_CHANNELS, "alphas": list(FIG1_ALPHAS), "betas": list(FIG1_BETAS)},
            "simulation": {"channels": config.channels, "sigma": config.sigma, "mu": config.mu,
                           "step": config.step, "s_max": config.s_max},
        },
        args.seed,
        artifacts,
    )
    if args.json:
        print(json.dumps({"out": str(out_dir), "artifacts": sorted(artifacts + ["manifest.json"])}))
    else:
        print(f"wrote {len(artifacts) + 1} files to {out_dir}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return EXIT_USAGE
        return EXIT_USAGE if exc.code else EXIT_OK
    dispatch = {
        "verify": cmd_verify,
        "simulate": cmd_simulate,
        "fit": cmd_fit,
        "figures": cmd_figures,
    }
    try:
        return dispatch[args.command](args)
    except BracketFailure as exc:
        print(f"dynact {args.command}: fit failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        print(f"dynact {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"dynact {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())
