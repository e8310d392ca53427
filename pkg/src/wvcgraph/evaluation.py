"""Scoring probability traces against ground truth.

Per-sample truth is reduced to one label per window by majority vote over the
window span (ties count as correlated). RMSE compares the unsigned probability
with that binary label; windows where PCC was degenerate are dropped from both
metrics so the comparison stays paired.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import WvcError
from .pcc import pcc_probability_trace
from .synthetic import GroundTruth, Scenario
from .wvc import ProbabilityTrace, default_trace_window, normalize_all, probability_trace


@dataclass(frozen=True)
class EvalReport:
    metric_name: str
    rmse: float
    n_windows: int
    n_excluded: int
    scenario: str = ""


@dataclass(frozen=True, eq=False)
class Comparison:
    scenario: str
    window_length: int
    stride: int
    wvc: EvalReport
    pcc: EvalReport
    wvc_trace: ProbabilityTrace
    pcc_trace: ProbabilityTrace
    truth: np.ndarray

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "window_length": self.window_length,
            "stride": self.stride,
            "aggregation": "per-window",
            "metrics": [
                {"name": r.metric_name, "rmse": r.rmse, "n_windows": r.n_windows, "n_excluded": r.n_excluded}
                for r in (self.pcc, self.wvc)
            ],
        }

    def to_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    def table(self) -> str:
        return format_table({self.scenario: (self.pcc.rmse, self.wvc.rmse)})


def format_table(columns: dict) -> str:
    """Two-row RMSE table (PCC, WVC) with one column per scenario."""
    names = list(columns)
    width = max(12, *(len(n) + 2 for n in names))
    lines = ["RMSE against ground truth (lower is better)", " " * 6 + "".join(f"{n:>{width}}" for n in names)]
    for row, idx in (("PCC", 0), ("WVC", 1)):
        lines.append(f"{row:<6}" + "".join(f"{columns[n][idx]:>{width}.4f}" for n in names))
    return "\n".join(lines)


def align_truth(truth, trace: ProbabilityTrace) -> np.ndarray:
    """One 0/1 label per trace window: majority of ``|truth|`` over the window, ties -> 1."""
    binary = truth.binary if isinstance(truth, GroundTruth) else np.abs(np.asarray(truth, dtype=float))
    starts = trace.starts
    if starts.size and (starts[0] < 0 or starts[-1] + trace.window_length > binary.size):
        raise WvcError("trace windows extend beyond the ground truth")
    csum = np.concatenate([[0.0], np.cumsum(binary)])
    frac = (csum[starts + trace.window_length] - csum[starts]) / trace.window_length
    return (frac >= 0.5).astype(float)


def rmse(probabilities, truth) -> float:
    p = np.asarray(probabilities, dtype=float)
    t = np.asarray(truth, dtype=float)
    if p.shape != t.shape:
        raise WvcError(f"length mismatch: {p.size} probabilities vs {t.size} truth values")
    keep = np.isfinite(p) & np.isfinite(t)
    if not keep.any():
        raise WvcError("no windows left to score")
    return float(np.sqrt(np.mean((p[keep] - t[keep]) ** 2)))


def run_comparison(
    scenario: Scenario,
    window_length: int | None = None,
    stride: int | None = None,
    alpha: float = 0.0,
    variance_model: str = "analytic",
) -> Comparison:
    """WVC and PCC traces on one shared grid, each scored against the truth."""
    ms = scenario.data
    if ms.d != 2:
        raise WvcError(f"comparison needs exactly two signals, got {ms.d}")
    if len(scenario.truth) != ms.length:
        raise WvcError(f"truth has {len(scenario.truth)} samples, data has {ms.length}")
    zi, zj = normalize_all(ms, alpha)
    if window_length is None:
        window_length = default_trace_window(zi.config.tau, zj.config.tau)[0]
    if stride is None:
        stride = max(1, window_length // 4)
    wtrace = probability_trace(zi, zj, window_length, stride, variance_model)
    ptrace = pcc_probability_trace(ms[0], ms[1], window_length, stride)
    truth = align_truth(scenario.truth, wtrace)
    excluded = ~ptrace.valid
    keep = ~excluded
    reports = []
    for name, trace in (("WVC", wtrace), ("PCC", ptrace)):
        reports.append(
            EvalReport(
                metric_name=name,
                rmse=rmse(trace.probabilities[keep], truth[keep]),
                n_windows=int(keep.sum()),
                n_excluded=int(excluded.sum()),
                scenario=scenario.name,
            )
        )
    return Comparison(
        scenario=scenario.name,
        window_length=window_length,
        stride=stride,
        wvc=reports[0],
        pcc=reports[1],
        wvc_trace=wtrace,
        pcc_trace=ptrace,
        truth=truth,
    )
