"""Windowed variance-correlation (WVC) between periodically normalized signals.

``WVC[t1, t2] = sum_{t=t1..t2} z_i(t) * z_j(t)``, where each ``z`` comes from
:func:`wvcgraph.normalization.normalize`. Under independence its analytic
null variance is taken as ``(t2 - t1 + 1) * beta_i * beta_j``; a
circular-shift permutation null is available as a data-driven alternative.

Note on the two null models: per-position normalization leaves ``z`` with unit
variance, so the empirical null of the sum is close to ``t2 - t1 + 1`` and the
analytic form is larger by a factor ``beta_i * beta_j``. Z-scores computed with
the analytic variance are therefore shrunk by ``sqrt(beta_i * beta_j)``.
:func:`null_variance_ratio` reports that factor on real data.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from scipy.special import erf

from .errors import WindowTooLongError, WvcError
from .normalization import NormalizedSeries, normalize_periodic
from .period import detect_period
from .timeseries import Interval, MultiSeries, TimeSeries

VARIANCE_MODELS = ("analytic", "empirical")
DEFAULT_PERMUTATIONS = 200


@dataclass(frozen=True)
class WvcResult:
    raw: float
    z_score: float
    probability: float
    interval: Interval
    beta_i: int
    beta_j: int
    variance_model: str = "analytic"
    variance: float = float("nan")


@dataclass(frozen=True, eq=False)
class GraphSnapshot:
    """Weighted graph for one interval; the diagonal is zero by convention."""

    labels: list
    interval: Interval
    weights: np.ndarray
    z_scores: np.ndarray
    probabilities: np.ndarray
    taus: tuple = ()

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "interval": {"t1": self.interval.t1, "t2": self.interval.t2},
            "weights": self.weights.tolist(),
            "z_scores": self.z_scores.tolist(),
            "probabilities": self.probabilities.tolist(),
        }


@dataclass(frozen=True, eq=False)
class ProbabilityTrace:
    """Per-window metric values on a regular grid.

    ``raw`` holds the metric itself (WVC sum or Pearson r). Windows the metric
    could not score are NaN in every column except ``centers``.
    """

    window_length: int
    stride: int
    centers: np.ndarray
    raw: np.ndarray
    z_scores: np.ndarray
    probabilities: np.ndarray
    signed: np.ndarray
    metric: str = "wvc"

    def __len__(self) -> int:
        return self.centers.size

    @property
    def starts(self) -> np.ndarray:
        return self.centers - self.window_length // 2

    @property
    def valid(self) -> np.ndarray:
        return np.isfinite(self.probabilities)

    def to_csv(self, path) -> None:
        from .timeseries import format_float

        def cell(v):
            return format_float(v) if np.isfinite(v) else ""

        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("center,raw,z,probability,signed\n")
            for row in zip(self.centers, self.raw, self.z_scores, self.probabilities, self.signed):
                fh.write(",".join([str(int(row[0]))] + [cell(v) for v in row[1:]]) + "\n")


def _z(x) -> np.ndarray:
    return x.z if isinstance(x, NormalizedSeries) else np.asarray(x, dtype=float)


def window_grid(L: int, window_length: int, stride: int) -> np.ndarray:
    """Start indices of the windows ``[s, s + window_length - 1]`` that fit in ``L``."""
    if window_length < 1 or stride < 1:
        raise WvcError("window_length and stride must be >= 1")
    if window_length > L:
        raise WindowTooLongError(f"window length {window_length} exceeds series length {L}")
    return np.arange(0, L - window_length + 1, stride)


def wvc(zi, zj, interval: Interval) -> float:
    """Sum of ``zi(t) * zj(t)`` over the inclusive interval."""
    a, b = _z(zi), _z(zj)
    if a.size != b.size:
        raise WvcError(f"series lengths differ ({a.size} vs {b.size})")
    interval.check(a.size)
    return float(np.dot(a[interval.slice], b[interval.slice]))


def wvc_null_variance(interval: Interval, beta_i: int, beta_j: int) -> float:
    if beta_i < 1 or beta_j < 1:
        raise WvcError("window counts must be >= 1")
    return float(interval.n * beta_i * beta_j)


def _shift_offsets(L: int, permutations: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.integers(1, L, size=permutations) if L > 1 else np.zeros(permutations, dtype=int)


def _shifted_sums(a: np.ndarray, b: np.ndarray, starts, n: int, offsets) -> np.ndarray:
    """``sums[w, p] = sum_{t in window w} a[t] * b[(t - offsets[p]) mod L]``."""
    L = a.size
    t = np.asarray(starts)[:, None] + np.arange(n)[None, :]
    out = np.empty((t.shape[0], offsets.size))
    for p, off in enumerate(offsets):
        out[:, p] = np.einsum("wt,wt->w", a[t], b[(t - off) % L])
    return out


def empirical_null_variance(
    zi, zj, interval: Interval, permutations: int = 2000, seed: int = 0
) -> float:
    """Sample variance of WVC over random circular shifts of ``zj``."""
    a, b = _z(zi), _z(zj)
    if permutations < 100:
        raise WvcError(f"need at least 100 permutations, got {permutations}")
    if a.size != b.size:
        raise WvcError(f"series lengths differ ({a.size} vs {b.size})")
    if interval.n > a.size or interval.t2 > a.size - 1:
        raise WindowTooLongError(f"interval of {interval.n} samples exceeds series length {a.size}")
    offsets = _shift_offsets(a.size, permutations, seed)
    sums = _shifted_sums(a, b, [interval.t1], interval.n, offsets)[0]
    return float(np.var(sums, ddof=1))


def wvc_zscore(raw: float, variance: float) -> float:
    if not variance > 0:
        raise WvcError(f"variance must be positive, got {variance}")
    return raw / math.sqrt(variance)


def correlation_probability(z):
    """``2 * Phi(|z|) - 1``: 0 at z = 0, approaching 1 as |z| grows.

    Works elementwise on arrays. Saturates at exactly 1.0 for |z| above ~8.3
    because of double precision.
    """
    z = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(z)):
        raise WvcError("z-score must be finite")
    p = erf(np.abs(z) / math.sqrt(2.0))
    return float(p) if p.ndim == 0 else p


def _check_model(model: str) -> None:
    if model not in VARIANCE_MODELS:
        raise WvcError(f"variance_model must be one of {VARIANCE_MODELS}, got {model!r}")


def wvc_result(
    zi: NormalizedSeries,
    zj: NormalizedSeries,
    interval: Interval,
    variance_model: str = "analytic",
    permutations: int = DEFAULT_PERMUTATIONS,
    seed: int = 0,
) -> WvcResult:
    """Raw WVC plus its z-score and probability under the chosen null."""
    _check_model(variance_model)
    raw = wvc(zi, zj, interval)
    if variance_model == "analytic":
        var = wvc_null_variance(interval, zi.beta, zj.beta)
    else:
        var = empirical_null_variance(zi, zj, interval, permutations, seed)
    z = wvc_zscore(raw, var)
    return WvcResult(
        raw=raw,
        z_score=z,
        probability=correlation_probability(z),
        interval=interval,
        beta_i=zi.beta,
        beta_j=zj.beta,
        variance_model=variance_model,
        variance=var,
    )


def null_variance_ratio(zi, zj, interval: Interval, permutations: int = 2000, seed: int = 0) -> float:
    """Analytic over empirical null variance for one interval."""
    emp = empirical_null_variance(zi, zj, interval, permutations, seed)
    return wvc_null_variance(interval, zi.beta, zj.beta) / emp


def default_trace_window(tau_i: int, tau_j: int) -> tuple[int, int]:
    """Window of two slow-signal periods and a quarter-window stride."""
    window = 2 * max(tau_i, tau_j)
    return window, max(1, window // 4)


def probability_trace(
    zi: NormalizedSeries,
    zj: NormalizedSeries,
    window_length: int | None = None,
    stride: int | None = None,
    variance_model: str = "analytic",
    permutations: int = DEFAULT_PERMUTATIONS,
    seed: int = 0,
) -> ProbabilityTrace:
    """WVC, z-score and probability on sliding windows.

    ``center = start + window_length // 2``. The empirical model draws one set
    of circular shifts (from ``seed``) and reuses it for every window.
    """
    _check_model(variance_model)
    a, b = _z(zi), _z(zj)
    if a.size != b.size:
        raise WvcError(f"series lengths differ ({a.size} vs {b.size})")
    if window_length is None:
        window_length = default_trace_window(zi.config.tau, zj.config.tau)[0]
    if stride is None:
        stride = max(1, window_length // 4)
    starts = window_grid(a.size, window_length, stride)
    t = starts[:, None] + np.arange(window_length)[None, :]
    raw = np.einsum("wt,wt->w", a[t], b[t])
    if variance_model == "analytic":
        var = np.full(starts.size, float(window_length * zi.beta * zj.beta))
    else:
        offsets = _shift_offsets(a.size, permutations, seed)
        var = np.var(_shifted_sums(a, b, starts, window_length, offsets), axis=1, ddof=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(var > 0, raw / np.sqrt(var), np.nan)
    finite = np.isfinite(z)
    prob = np.full(z.shape, np.nan)
    prob[finite] = correlation_probability(z[finite])
    return ProbabilityTrace(
        window_length=window_length,
        stride=stride,
        centers=starts + window_length // 2,
        raw=raw,
        z_scores=z,
        probabilities=prob,
        signed=np.sign(raw) * prob,
        metric="wvc",
    )


def normalize_signal(x: TimeSeries, alpha: float = 0.0, tau: int | None = None) -> NormalizedSeries:
    """Detect the period of ``x`` (unless ``tau`` is given) and normalize it."""
    try:
        if tau is None:
            tau = detect_period(x, alpha=alpha).tau
        return normalize_periodic(x, tau, alpha)
    except WvcError as exc:
        msg = str(exc)
        if repr(x.label) not in msg:
            msg = f"signal {x.label!r}: {msg}"
        raise type(exc)(msg) from exc


def normalize_all(
    ms: MultiSeries, alpha: float = 0.0, overrides: Mapping[str, int] | None = None
) -> list[NormalizedSeries]:
    overrides = dict(overrides or {})
    unknown = set(overrides) - set(ms.labels)
    if unknown:
        raise WvcError(f"tau override for unknown signal(s): {', '.join(sorted(unknown))}")
    return [normalize_signal(s, alpha, overrides.get(s.label)) for s in ms]


def compare_pair(
    x_i: TimeSeries,
    x_j: TimeSeries,
    interval: Interval | None = None,
    alpha: float = 0.0,
    tau_i: int | None = None,
    tau_j: int | None = None,
    variance_model: str = "analytic",
    permutations: int = DEFAULT_PERMUTATIONS,
    seed: int = 0,
) -> WvcResult:
    """Full pipeline for one pair: period detection, normalization, WVC."""
    zi = normalize_signal(x_i, alpha, tau_i)
    zj = normalize_signal(x_j, alpha, tau_j)
    if interval is None:
        interval = Interval.full(len(x_i))
    return wvc_result(zi, zj, interval, variance_model, permutations, seed)


def build_graph(
    ms: MultiSeries,
    interval: Interval | None = None,
    alpha: float = 0.0,
    overrides: Mapping[str, int] | None = None,
) -> GraphSnapshot:
    """WVC-weighted adjacency over ``interval`` for every pair of signals."""
    if ms.d < 2:
        raise WvcError("a graph needs at least two signals")
    if interval is None:
        interval = Interval.full(ms.length)
    interval.check(ms.length)
    zs = normalize_all(ms, alpha, overrides)
    d = ms.d
    weights = np.zeros((d, d))
    zsc = np.zeros((d, d))
    prob = np.zeros((d, d))
    for i in range(d):
        for j in range(i + 1, d):
            res = wvc_result(zs[i], zs[j], interval)
            weights[i, j] = weights[j, i] = res.raw
            zsc[i, j] = zsc[j, i] = res.z_score
            prob[i, j] = prob[j, i] = res.probability
    return GraphSnapshot(
        labels=ms.labels,
        interval=interval,
        weights=weights,
        z_scores=zsc,
        probabilities=prob,
        taus=tuple(z.config.tau for z in zs),
    )
