"""Command-line front end.

Subcommands: simulate, detect-period, normalize, analyze, graph, evaluate.
Every result goes to a file named by ``--out``; only ``evaluate`` also prints
its RMSE table. Exit codes: 0 success, 1 invalid input, 2 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import WvcError
from .evaluation import format_table, run_comparison
from .normalization import WindowConfig, normalize, periodic_stats
from .pcc import pcc_probability_trace
from .period import detect_period
from .synthetic import GroundTruth, Scenario, ScenarioConfig, default_scenarios, simulate
from .timeseries import Interval, MultiSeries, format_float, load_multiseries, save_multiseries
from .wvc import (
    DEFAULT_PERMUTATIONS,
    VARIANCE_MODELS,
    build_graph,
    default_trace_window,
    normalize_signal,
    probability_trace,
)


class UsageError(WvcError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; here that is a validation error (1)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class _HelpFormatter(argparse.ArgumentDefaultsHelpFormatter):
    def _get_help_string(self, action):
        if action.default is None or action.default is False:
            return action.help
        return super()._get_help_string(action)


def _write_json(doc, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _samples(value, ms: MultiSeries, seconds: bool, name: str, offset: bool = False) -> int | None:
    """Convert a flag value to samples; with ``--seconds`` divide by the sample interval."""
    if value is None:
        return None
    if seconds:
        base = ms.start_time if offset else 0.0
        return int(round((value - base) / ms.sample_interval))
    if float(value) != int(value):
        raise UsageError(f"--{name} must be an integer sample count (or pass --seconds)")
    return int(value)


def _parse_taus(items) -> dict:
    out = {}
    for item in items or []:
        label, sep, val = item.rpartition("=")
        if not sep or not label:
            raise UsageError(f"--tau expects LABEL=SAMPLES, got {item!r}")
        try:
            out[label] = int(val)
        except ValueError:
            raise UsageError(f"--tau value for {label!r} is not an integer: {val!r}") from None
    return out


def _pick_pair(ms: MultiSeries, pair: str | None) -> tuple[int, int]:
    if pair is None:
        if ms.d != 2:
            raise UsageError(f"input has {ms.d} signals; choose two with --pair i,j")
        return 0, 1
    try:
        i, j = (int(p) for p in pair.split(","))
    except ValueError:
        raise UsageError(f"--pair expects two comma-separated indices, got {pair!r}") from None
    for k in (i, j):
        if not 0 <= k < ms.d:
            raise UsageError(f"--pair index {k} out of range for {ms.d} signals")
    if i == j:
        raise UsageError("--pair needs two different signals")
    return i, j


def _load_truth(path, length: int) -> GroundTruth:
    ms = load_multiseries(path, "csv")
    col = ms.labels[0]
    if ms.length != length:
        raise UsageError(f"truth {path} has {ms.length} rows but the data has {length}")
    labels = ms[col].values
    if not np.all(np.isin(labels, (-1, 0, 1))):
        raise UsageError(f"truth column {col!r} must contain only -1, 0, 1")
    return GroundTruth(labels.astype(int))


def save_truth(truth: GroundTruth, times, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("time,label\n")
        fh.writelines(f"{format_float(t)},{int(v)}\n" for t, v in zip(times, truth.labels))


def cmd_simulate(args) -> None:
    if args.config:
        cfg = ScenarioConfig.from_json(args.config)
        name = "custom"
    else:
        independent, modulated = default_scenarios()
        chosen = modulated if args.default_modulated else independent
        cfg, name = chosen.config, chosen.name
    if args.seed is not None:
        cfg = cfg.replace(seed=args.seed)
    sc: Scenario = simulate(cfg, name)
    save_multiseries(sc.data, f"{args.out}_data.csv", "csv")
    save_truth(sc.truth, sc.data[0].times, f"{args.out}_truth.csv")


def cmd_detect_period(args) -> None:
    ms = load_multiseries(args.input)
    profiles = [detect_period(s, args.tau_max, args.alpha).to_dict() for s in ms]
    _write_json(profiles, args.out)


def cmd_normalize(args) -> None:
    ms = load_multiseries(args.input)
    taus = _parse_taus(args.tau)
    rows = []
    for s in ms:
        tau = taus.get(s.label)
        if tau is None:
            rows.append(normalize_signal(s, args.alpha).z)
        else:
            cfg = WindowConfig(tau=tau, alpha=args.alpha)
            rows.append(normalize(s, periodic_stats(s, cfg), cfg).z)
    out = MultiSeries.from_array(np.vstack(rows), ms.labels, ms.sample_interval, ms.start_time)
    save_multiseries(out, args.out, "csv")


def cmd_analyze(args) -> None:
    ms = load_multiseries(args.input)
    i, j = _pick_pair(ms, args.pair)
    window = _samples(args.window, ms, args.seconds, "window")
    stride = _samples(args.stride, ms, args.seconds, "stride")
    if args.metric == "wvc" or window is None:
        zi = normalize_signal(ms[i], args.alpha)
        zj = normalize_signal(ms[j], args.alpha)
        if window is None:
            window = default_trace_window(zi.config.tau, zj.config.tau)[0]
    if args.metric == "wvc":
        trace = probability_trace(
            zi, zj, window, stride, args.variance_model, args.permutations, args.seed
        )
    else:
        trace = pcc_probability_trace(ms[i], ms[j], window, stride)
    trace.to_csv(args.out)


def cmd_graph(args) -> None:
    ms = load_multiseries(args.input)
    t1 = _samples(args.t1, ms, args.seconds, "t1", offset=True)
    t2 = _samples(args.t2, ms, args.seconds, "t2", offset=True)
    t1 = 0 if t1 is None else t1
    t2 = ms.length - 1 if t2 is None else t2
    if t1 > t2:
        raise UsageError(f"--t1 ({t1}) must not exceed --t2 ({t2})")
    snap = build_graph(ms, Interval(t1, t2), args.alpha, _parse_taus(args.tau))
    _write_json(snap.to_dict(), args.out)


def cmd_evaluate(args) -> None:
    ms = load_multiseries(args.input)
    if ms.d != 2:
        raise UsageError(f"evaluate needs exactly two signals, {args.input} has {ms.d}")
    truth = _load_truth(args.truth, ms.length)
    window = _samples(args.window, ms, args.seconds, "window")
    stride = _samples(args.stride, ms, args.seconds, "stride")
    sc = Scenario(name=args.name, data=ms, truth=truth, config=None)
    comp = run_comparison(sc, window, stride, args.alpha, args.variance_model)
    comp.to_json(args.out)
    print(format_table({args.name: (comp.pcc.rmse, comp.wvc.rmse)}))


def _add_common(p, window=False):
    p.add_argument("--input", required=True, help="data file (CSV or JSON)")
    p.add_argument("--out", required=True, help="output path")
    p.add_argument("--alpha", type=float, default=0.0, help="fractional window overlap")
    if window:
        p.add_argument("--window", type=float, default=None,
                       help="trace window length in samples (default: 2 * max detected period)")
        p.add_argument("--stride", type=float, default=None,
                       help="trace stride in samples (default: window // 4)")
        p.add_argument("--seconds", action="store_true",
                       help="read --window/--stride in seconds instead of samples")


def build_parser() -> argparse.ArgumentParser:
    fmt = _HelpFormatter
    parser = _Parser(prog="wvcgraph", description="Windowed variance-correlation graphs.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="generate a benchmark scenario", formatter_class=fmt)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="scenario config JSON")
    src.add_argument("--default-independent", action="store_true", help="independent benchmark pair")
    src.add_argument("--default-modulated", action="store_true", help="modulated benchmark pair")
    p.add_argument("--out", required=True, help="output prefix; writes <out>_data.csv and <out>_truth.csv")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("detect-period", help="ACF window length per signal (JSON)", formatter_class=fmt)
    _add_common(p)
    p.add_argument("--tau-max", type=int, default=None, help="largest lag searched (default: L // 2)")
    p.set_defaults(func=cmd_detect_period)

    p = sub.add_parser("normalize", help="periodically normalized series (CSV)", formatter_class=fmt)
    _add_common(p)
    p.add_argument("--tau", action="append", metavar="LABEL=SAMPLES",
                   help="fix the window length of a signal instead of detecting it")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("analyze", help="sliding-window probability trace (CSV)", formatter_class=fmt)
    _add_common(p, window=True)
    p.add_argument("--metric", choices=("wvc", "pcc"), default="wvc", help="metric to trace")
    p.add_argument("--variance-model", choices=VARIANCE_MODELS, default="analytic",
                   help="null variance used for WVC z-scores")
    p.add_argument("--permutations", type=int, default=DEFAULT_PERMUTATIONS,
                   help="circular shifts for the empirical variance model")
    p.add_argument("--seed", type=int, default=0, help="seed for the empirical variance model")
    p.add_argument("--pair", default=None, help="0-based signal indices i,j")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graph", help="WVC graph for one interval (JSON)", formatter_class=fmt)
    _add_common(p)
    p.add_argument("--t1", type=float, default=None, help="first sample of the interval (default: 0)")
    p.add_argument("--t2", type=float, default=None, help="last sample, inclusive (default: L - 1)")
    p.add_argument("--seconds", action="store_true", help="read --t1/--t2 as times in seconds")
    p.add_argument("--tau", action="append", metavar="LABEL=SAMPLES",
                   help="fix the window length of a signal instead of detecting it")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("evaluate", help="RMSE of WVC and PCC against ground truth", formatter_class=fmt)
    _add_common(p, window=True)
    p.add_argument("--truth", required=True, help="truth CSV with columns time,label")
    p.add_argument("--variance-model", choices=VARIANCE_MODELS, default="analytic",
                   help="null variance used for WVC z-scores")
    p.add_argument("--name", default="scenario", help="scenario name recorded in the report")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except WvcError as exc:
        print(f"wvcgraph {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"wvcgraph {args.command}: I/O error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
