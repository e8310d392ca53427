"""Window-length selection from the sample autocorrelation function.

The window length of a signal is the first lag ``tau > 1`` at which the ACF
has a local maximum that clears the white-noise band ``1.96 / sqrt(L)``.
If no lag qualifies the signal is treated as aperiodic and ``tau = 1``, which
reduces periodic normalization to a plain global z-score.

Caveat: the rule is literally "first significant local maximum", so a signal
whose ACF has a significant bump at a sub-multiple of its fundamental period
(sharp pulse trains with ringing, harmonics) will report that shorter lag.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import WvcError, ZeroVarianceError
from .normalization import window_count
from .timeseries import TimeSeries

CONFIDENCE_Z = 1.96


def _values(x) -> np.ndarray:
    return x.values if isinstance(x, TimeSeries) else np.asarray(x, dtype=float)


def _label(x) -> str:
    return x.label if isinstance(x, TimeSeries) else ""


@dataclass(frozen=True, eq=False)
class AcfResult:
    """``rho[tau]`` for ``tau = 0..tau_max`` and the 95% white-noise threshold."""

    rho: np.ndarray
    threshold: float
    L: int

    @property
    def tau_max(self) -> int:
        return self.rho.size - 1


@dataclass(frozen=True, eq=False)
class PeriodProfile:
    tau: int
    beta: int
    stride: int
    detected: bool
    acf: AcfResult
    alpha: float = 0.0
    label: str = ""

    def __eq__(self, other):
        if not isinstance(other, PeriodProfile):
            return NotImplemented
        return (
            (self.tau, self.beta, self.stride, self.detected, self.alpha, self.label)
            == (other.tau, other.beta, other.stride, other.detected, other.alpha, other.label)
            and self.acf.threshold == other.acf.threshold
            and np.array_equal(self.acf.rho, other.acf.rho)
        )

    __hash__ = None

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "tau": self.tau,
            "beta": self.beta,
            "stride": self.stride,
            "detected": self.detected,
            "threshold": self.acf.threshold,
            "rho": self.acf.rho.tolist(),
        }


def autocovariance(x, lag: int) -> float:
    """Sample autocovariance at ``lag`` with the ``1/(L - lag)`` divisor."""
    v = _values(x)
    L = v.size
    if L < 2:
        raise WvcError(f"series {_label(x)!r}: need at least 2 samples, got {L}")
    if not 0 <= lag <= L - 2:
        raise WvcError(f"lag {lag} out of range [0, {L - 2}]")
    d = v - v.mean()
    return float(np.dot(d[: L - lag], d[lag:]) / (L - lag))


def _acvf(v: np.ndarray, tau_max: int) -> np.ndarray:
    L = v.size
    d = v - v.mean()
    # np.correlate is a direct (non-FFT) sum, so plateau comparisons stay exact-ish
    full = np.correlate(d, d, mode="full")[L - 1 : L + tau_max]
    return full / (L - np.arange(tau_max + 1))


def autocorrelation(x, tau_max: int) -> AcfResult:
    """Normalized ACF ``rho[tau] = R(tau) / R(0)`` for lags ``0..tau_max``."""
    v = _values(x)
    L = v.size
    if not 1 <= tau_max <= L - 2:
        raise WvcError(f"tau_max {tau_max} out of range [1, {L - 2}] for series of length {L}")
    acvf = _acvf(v, tau_max)
    if acvf[0] <= 0.0:
        raise ZeroVarianceError(f"series {_label(x)!r} is constant; ACF undefined")
    rho = acvf / acvf[0]
    rho[0] = 1.0
    rho.setflags(write=False)
    return AcfResult(rho=rho, threshold=CONFIDENCE_Z / np.sqrt(L), L=L)


def first_significant_peak(acf: AcfResult) -> int | None:
    """Smallest lag > 1 with ``|rho| > threshold`` and ``rho`` above both neighbours."""
    rho = acf.rho
    if rho.size < 4:
        return None
    mid = rho[2:-1]
    ok = (np.abs(mid) > acf.threshold) & (mid > rho[1:-2]) & (mid > rho[3:])
    hits = np.flatnonzero(ok)
    return int(hits[0]) + 2 if hits.size else None


def detect_period(x, tau_max: int | None = None, alpha: float = 0.0) -> PeriodProfile:
    """Pick the window length for ``x`` (``tau_max`` defaults to ``L // 2``)."""
    v = _values(x)
    L = v.size
    if tau_max is None:
        tau_max = L // 2
    if not 2 <= tau_max <= L - 2:
        raise WvcError(f"tau_max {tau_max} out of range [2, {L - 2}] for series of length {L}")
    acf = autocorrelation(x, tau_max)
    peak = first_significant_peak(acf)
    tau = 1 if peak is None else peak
    beta, stride = window_count(L, tau, alpha)
    return PeriodProfile(
        tau=tau,
        beta=beta,
        stride=stride,
        detected=peak is not None,
        acf=acf,
        alpha=alpha,
        label=_label(x),
    )
