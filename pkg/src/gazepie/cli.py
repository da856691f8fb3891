"""Command-line front door: simulate, replay, sweep, layout, serve."""

from __future__ import annotations

import argparse
import json
import sys

from .config import ConfigError, PieConfig
from .engine import replay as replay_trace
from .geometry import slice_spans
from .layout import LayoutError, build_layout
from .metrics import Metrics, compute_metrics
from .simulator import (
    SimParams,
    SimulationError,
    parse_strategy,
    simulate_user,
)
from .sweep import PRESETS, SweepSpec, SweepSpecError, run_sweep, to_csv
from .traceio import TraceFormatError, load_trace, save_trace


class CliError(Exception):
    """Fatal CLI failure with a user-facing one-line diagnostic."""


def _add_config_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("interface geometry")
    g.add_argument("--slices", type=int, default=6, help="number of pie slices")
    g.add_argument("--pie-radius", type=float, default=240.0, help="pie radius in px")
    g.add_argument("--char-width", type=float, default=100.0, help="character ring width in px")
    g.add_argument("--safe-width", type=float, default=20.0, help="safe ring width in px")
    g.add_argument("--selection-width", type=float, default=120.0, help="selection ring width in px")
    g.add_argument("--expand", type=float, default=20.0, help="focus expansion per side in deg")
    g.add_argument("--center", type=float, nargs=2, default=(512.0, 512.0), metavar=("X", "Y"))


def _config_from_args(args) -> PieConfig:
    return PieConfig(
        num_slices=args.slices,
        pie_radius_px=args.pie_radius,
        char_width_px=args.char_width,
        safe_width_px=args.safe_width,
        selection_width_px=args.selection_width,
        expand_deg=args.expand,
        center_x_px=args.center[0],
        center_y_px=args.center[1],
    )


def _add_sim_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("simulated user")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--rate", type=float, default=60.0, help="sample rate in Hz")
    g.add_argument("--jitter", type=float, default=10.0, help="fixation jitter sigma in px")
    g.add_argument("--tracker-noise", type=float, default=5.0, help="sensor noise sigma in px")
    g.add_argument("--expertise", type=float, default=1.0, help="fixation-time scale in (0,1]")
    g.add_argument("--p-notice", type=float, default=1.0, help="chance of noticing a wrong commit")


def _params_from_args(args) -> SimParams:
    return SimParams(
        seed=args.seed,
        sample_rate_hz=args.rate,
        jitter_sigma_px=args.jitter,
        tracker_sigma_px=args.tracker_noise,
        expertise=args.expertise,
        p_notice=args.p_notice,
    )


def _metrics_lines(m: Metrics, result) -> list[str]:
    return [
        f"transcribed: {result.transcribed!r}",
        f"wpm: {m.wpm:.3f}",
        f"uncorrected_error_pct: {m.uncorrected_error_pct:.3f}",
        f"corrections: {m.corrections}",
        f"kspc: {m.kspc:.3f}",
        f"duration_ms: {result.duration_ms:.1f}",
    ]


def _cmd_simulate(args) -> int:
    cfg = _config_from_args(args)
    layout = build_layout(cfg.num_slices)
    params = _params_from_args(args)
    strategy = parse_strategy(args.strategy)
    trace, result = simulate_user(args.phrase, cfg, layout, params, strategy)
    if args.out:
        save_trace(trace, args.out)
    m = compute_metrics(result, args.phrase)
    if args.json:
        print(
            json.dumps(
                {
                    "transcribed": result.transcribed,
                    "wpm": m.wpm,
                    "uncorrected_error_pct": m.uncorrected_error_pct,
                    "corrections": m.corrections,
                    "kspc": m.kspc,
                    "duration_ms": result.duration_ms,
                    "samples": len(trace.samples),
                    "trace": args.out,
                },
                sort_keys=True,
            )
        )
    else:
        for line in _metrics_lines(m, result):
            print(line)
        if args.out:
            print(f"trace written to {args.out} ({len(trace.samples)} samples)")
    return 0


def _cmd_replay(args) -> int:
    try:
        trace = load_trace(args.trace)
    except FileNotFoundError:
        raise CliError(f"file not found: {args.trace}")
    except TraceFormatError as exc:
        raise CliError(f"malformed trace {args.trace}: {exc}")
    meta_cfg = trace.meta.get("config")
    cfg = PieConfig.from_dict(meta_cfg) if meta_cfg else _config_from_args(args)
    layout = build_layout(cfg.num_slices)
    strategy = parse_strategy(args.strategy or trace.meta.get("strategy", "border"))
    result = replay_trace(trace, cfg, layout, strategy)
    target = args.target if args.target is not None else trace.meta.get("phrase", "")
    m = compute_metrics(result, target)
    if args.json:
        print(
            json.dumps(
                {
                    "transcribed": result.transcribed,
                    "wpm": m.wpm,
                    "uncorrected_error_pct": m.uncorrected_error_pct,
                    "corrections": m.corrections,
                    "kspc": m.kspc,
                    "duration_ms": result.duration_ms,
                    "commits": len(result.commit_log),
                },
                sort_keys=True,
            )
        )
    else:
        for line in _metrics_lines(m, result):
            print(line)
    return 0


def _cmd_sweep(args) -> int:
    if args.preset:
        spec = PRESETS[args.preset]
    elif args.spec:
        try:
            with open(args.spec, "r", encoding="utf-8") as fp:
                spec = SweepSpec.from_json(fp.read())
        except FileNotFoundError:
            raise CliError(f"file not found: {args.spec}")
        except SweepSpecError as exc:
            raise CliError(f"invalid sweep spec {args.spec}: {exc}")
    else:
        raise CliError("sweep needs a spec file or --preset")
    rows = run_sweep(spec, jobs=args.jobs)
    for row in rows:
        if row.error:
            print(f"error: cell slices={row.slices} width={row.width_px:g} "
                  f"strategy={row.strategy}: {row.error}", file=sys.stderr)
    csv = to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fp:
            fp.write(csv)
    else:
        sys.stdout.write(csv)
    return 0


def _cmd_layout(args) -> int:
    cfg = _config_from_args(args)
    layout = build_layout(cfg.num_slices)
    spans = slice_spans(cfg)
    if args.json:
        print(
            json.dumps(
                {
                    "num_slices": layout.num_slices,
                    "base_span_deg": cfg.base_span_deg,
                    "focused_span_deg": cfg.focused_span_deg,
                    "slices": [
                        {
                            "index": i,
                            "start_deg": start,
                            "end_deg": end,
                            "labels": [it.label for it in layout.slices[i]],
                            "cell_deg": cfg.focused_span_deg / len(layout.slices[i]),
                        }
                        for i, start, end in spans
                    ],
                },
                sort_keys=True,
            )
        )
    else:
        print(f"{layout.num_slices} slices, {cfg.base_span_deg:g} deg each, "
              f"{cfg.focused_span_deg:g} deg when focused")
        for i, start, end in spans:
            labels = " ".join(it.label for it in layout.slices[i])
            cell = cfg.focused_span_deg / len(layout.slices[i])
            print(f"  slice {i}: [{start:g}, {end:g}) deg  cells {cell:g} deg  | {labels}")
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    serve(host=args.host, port=args.port, ws_port=args.ws_port, static_dir=args.static_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gazepie",
        description="Dwell-free pie-menu gaze typing: simulator, metrics, harness, service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="type a phrase with a simulated user")
    p.add_argument("--phrase", required=True, help="lowercase letters and spaces")
    p.add_argument("--strategy", default="border", help="border or dwell[:MS]")
    p.add_argument("--out", help="write the gaze trace to this file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    _add_config_args(p)
    _add_sim_args(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("replay", help="run a recorded trace through the engine")
    p.add_argument("trace", help="trace file (JSON lines)")
    p.add_argument("--strategy", default=None, help="override the trace's strategy")
    p.add_argument("--target", default=None, help="target phrase for error metrics")
    p.add_argument("--json", action="store_true")
    _add_config_args(p)
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("sweep", help="run a parameter sweep, emit CSV")
    p.add_argument("spec", nargs="?", help="sweep spec file (JSON)")
    p.add_argument("--preset", choices=sorted(PRESETS), help="built-in sweep preset")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("layout", help="print the character-to-slice assignment")
    p.add_argument("--json", action="store_true")
    _add_config_args(p)
    p.set_defaults(func=_cmd_layout)

    p = sub.add_parser("serve", help="run the session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8200)
    p.add_argument("--ws-port", type=int, default=None, help="also serve a WebSocket bridge")
    p.add_argument("--static-dir", default=None, help="serve this directory over HTTP (UI build)")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, LayoutError, SimulationError, SweepSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
