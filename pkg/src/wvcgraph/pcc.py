"""Pearson correlation baseline with Fisher z-scoring.

Operates on the raw signals, window by window, on the same grid as the WVC
trace so the two can be compared head to head.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import WvcError, ZeroVarianceError
from .timeseries import Interval, TimeSeries
from .wvc import ProbabilityTrace, correlation_probability, window_grid

R_MAX = 1.0 - 1e-12


@dataclass(frozen=True)
class PccResult:
    r: float
    fisher: float
    z_score: float
    n: int
    probability: float


def _values(x) -> np.ndarray:
    return x.values if isinstance(x, TimeSeries) else np.asarray(x, dtype=float)


def pearson(xi, xj, interval: Interval | None = None) -> float:
    """Sample Pearson correlation of the two signals over ``interval``."""
    a, b = _values(xi), _values(xj)
    if a.size != b.size:
        raise WvcError(f"series lengths differ ({a.size} vs {b.size})")
    if interval is None:
        interval = Interval.full(a.size)
    interval.check(a.size)
    if interval.n < 2:
        raise WvcError("pearson needs at least 2 samples")
    a = a[interval.slice] - a[interval.slice].mean()
    b = b[interval.slice] - b[interval.slice].mean()
    saa, sbb = np.dot(a, a), np.dot(b, b)
    if saa == 0 or sbb == 0:
        raise ZeroVarianceError(f"constant window [{interval.t1}, {interval.t2}]")
    r = np.dot(a, b) / math.sqrt(saa * sbb)
    return float(min(1.0, max(-1.0, r)))


def fisher_z(r: float, n: int) -> tuple[float, float]:
    """``(atanh(r), atanh(r) * sqrt(n - 3))`` with ``|r|`` clamped just below 1."""
    if n < 4:
        raise WvcError(f"Fisher z needs n >= 4, got {n}")
    r = float(np.clip(r, -R_MAX, R_MAX))
    f = math.atanh(r)
    return f, f * math.sqrt(n - 3)


def pcc_result(xi, xj, interval: Interval) -> PccResult:
    r = pearson(xi, xj, interval)
    f, z = fisher_z(r, interval.n)
    return PccResult(r=r, fisher=f, z_score=z, n=interval.n, probability=correlation_probability(z))


def pcc_probability_trace(xi, xj, window_length: int, stride: int | None = None) -> ProbabilityTrace:
    """Sliding-window PCC. Constant windows are NaN rather than dropped."""
    a, b = _values(xi), _values(xj)
    if a.size != b.size:
        raise WvcError(f"series lengths differ ({a.size} vs {b.size})")
    if window_length < 4:
        raise WvcError(f"window_length must be >= 4 for the Fisher transform, got {window_length}")
    if stride is None:
        stride = max(1, window_length // 4)
    starts = window_grid(a.size, window_length, stride)
    t = starts[:, None] + np.arange(window_length)[None, :]
    wa = a[t] - a[t].mean(axis=1, keepdims=True)
    wb = b[t] - b[t].mean(axis=1, keepdims=True)
    saa = np.einsum("wt,wt->w", wa, wa)
    sbb = np.einsum("wt,wt->w", wb, wb)
    sab = np.einsum("wt,wt->w", wa, wb)
    ok = (saa > 0) & (sbb > 0)
    r = np.full(starts.size, np.nan)
    r[ok] = np.clip(sab[ok] / np.sqrt(saa[ok] * sbb[ok]), -1.0, 1.0)
    z = np.arctanh(np.clip(r, -R_MAX, R_MAX)) * math.sqrt(window_length - 3)
    prob = np.full(starts.size, np.nan)
    prob[ok] = correlation_probability(z[ok])
    return ProbabilityTrace(
        window_length=window_length,
        stride=stride,
        centers=starts + window_length // 2,
        raw=r,
        z_scores=z,
        probabilities=prob,
        signed=np.sign(r) * prob,
        metric="pcc",
    )
