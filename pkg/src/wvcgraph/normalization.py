"""Periodic (per-position) normalization of a signal.

A signal with window length ``tau`` is cut into ``beta`` windows that start
every ``stride`` samples. For each position ``k`` within a window the mean and
population standard deviation are taken across windows, and every sample is
then z-scored against the statistics of its position ``t mod tau``. What is
left is the deviation of the signal from its own typical cycle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePositionError, WindowTooLongError, WvcError
from .timeseries import TimeSeries

SIGMA_FLOOR = 1e-12


def window_count(L: int, tau: int, alpha: float = 0.0) -> tuple[int, int]:
    """Return ``(beta, stride)`` for a series of ``L`` samples.

    ``stride = max(1, floor(tau * (1 - alpha)))`` and
    ``beta = floor(L / (tau * (1 - alpha)))``, reduced if needed so that every
    window start ``u * stride`` (``u < beta``) lies inside the series.
    """
    if tau < 1:
        raise WvcError(f"tau must be >= 1, got {tau}")
    if not 0.0 <= alpha < 1.0:
        raise WvcError(f"alpha must be in [0, 1), got {alpha}")
    if L < tau:
        raise WindowTooLongError(f"window length {tau} exceeds series length {L}")
    step = tau * (1.0 - alpha)
    stride = max(1, math.floor(step))
    beta = math.floor(L / step)
    beta = max(1, min(beta, (L - 1) // stride + 1))
    return beta, stride


@dataclass(frozen=True)
class WindowConfig:
    tau: int
    alpha: float = 0.0

    def __post_init__(self):
        if int(self.tau) != self.tau or self.tau < 1:
            raise WvcError(f"tau must be a positive integer, got {self.tau}")
        if not 0.0 <= self.alpha < 1.0:
            raise WvcError(f"alpha must be in [0, 1), got {self.alpha}")


@dataclass(frozen=True, eq=False)
class WindowStats:
    """Per-position mean/std across windows; ``counts[k]`` samples fed position ``k``."""

    mu: np.ndarray
    sigma: np.ndarray
    counts: np.ndarray
    beta: int
    stride: int

    @property
    def tau(self) -> int:
        return self.mu.size


@dataclass(frozen=True, eq=False)
class NormalizedSeries:
    z: np.ndarray
    stats: WindowStats
    config: WindowConfig
    source_label: str

    def __len__(self) -> int:
        return self.z.size

    @property
    def beta(self) -> int:
        return self.stats.beta


def _values(x) -> np.ndarray:
    return x.values if isinstance(x, TimeSeries) else np.asarray(x, dtype=float)


def periodic_stats(x, cfg: WindowConfig) -> WindowStats:
    """Mean and population std of each within-window position across all windows."""
    v = _values(x)
    L = v.size
    beta, stride = window_count(L, cfg.tau, cfg.alpha)
    idx = np.arange(cfg.tau)[:, None] + stride * np.arange(beta)[None, :]
    inside = idx <= L - 1
    samples = np.where(inside, v[np.minimum(idx, L - 1)], 0.0)
    counts = inside.sum(axis=1)
    mu = samples.sum(axis=1) / counts
    # two-pass variance: same quantity as mean(x^2) - mu^2 without the cancellation
    dev = np.where(inside, samples - mu[:, None], 0.0)
    sigma = np.sqrt((dev * dev).sum(axis=1) / counts)
    for arr in (mu, sigma, counts):
        arr.setflags(write=False)
    return WindowStats(mu=mu, sigma=sigma, counts=counts, beta=beta, stride=stride)


def normalize(x, stats: WindowStats, config: WindowConfig | None = None) -> NormalizedSeries:
    """z(t) = (x(t) - mu[t mod tau]) / sigma[t mod tau]."""
    v = _values(x)
    label = x.label if isinstance(x, TimeSeries) else ""
    tau = stats.tau
    used = np.unique(np.arange(v.size) % tau)
    low = used[stats.sigma[used] <= SIGMA_FLOOR]
    if low.size:
        k = int(low[0])
        raise DegeneratePositionError(
            f"series {label!r}: position {k} of {tau} has std {stats.sigma[k]:.3g} "
            "(signal is exactly periodic or constant at that phase)",
            position=k,
        )
    pos = np.arange(v.size) % tau
    z = (v - stats.mu[pos]) / stats.sigma[pos]
    z.setflags(write=False)
    if config is None:
        config = WindowConfig(tau=tau)
    return NormalizedSeries(z=z, stats=stats, config=config, source_label=label)


def normalize_periodic(x, tau: int, alpha: float = 0.0) -> NormalizedSeries:
    """Shorthand for ``normalize(x, periodic_stats(x, cfg), cfg)``."""
    cfg = WindowConfig(tau=tau, alpha=alpha)
    return normalize(x, periodic_stats(x, cfg), cfg)
