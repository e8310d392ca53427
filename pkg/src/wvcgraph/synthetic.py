"""Synthetic benchmark: a sine and a repeating inverse-Gaussian pulse train.

The two base signals have different periods and shapes and are independent.
Modulation segments multiply stretches of each signal by a factor (1.1 to
elevate, 0.9 to depress). Where both signals move the same way the pair is
labelled +1, where they move in opposite directions -1, elsewhere 0.
"""
from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import WvcError
from .timeseries import MultiSeries, TimeSeries

_SINE_STREAM = 0
_IG_STREAM = 1


@dataclass(frozen=True)
class ModSegment:
    """Inclusive sample range ``[start, end]`` with one multiplier per signal."""

    start: int
    end: int
    factor_i: float = 1.0
    factor_j: float = 1.0

    def __post_init__(self):
        if self.start < 0 or self.end < self.start:
            raise WvcError(f"segment [{self.start}, {self.end}] is empty or negative")
        if self.factor_i <= 0 or self.factor_j <= 0:
            raise WvcError(f"segment [{self.start}, {self.end}]: factors must be positive")

    @property
    def sign(self) -> int:
        a = np.sign(self.factor_i - 1.0)
        b = np.sign(self.factor_j - 1.0)
        return int(a * b)


@dataclass(frozen=True)
class ScenarioConfig:
    """Generator settings. Times are in seconds; ``sample_interval`` maps them to samples.

    ``sine_offset`` shifts the sine upward; with an offset larger than the
    amplitude the signal stays positive, so multiplying a segment by 1.1 really
    elevates it everywhere instead of flipping direction on the negative
    half-cycle.
    """

    length_seconds: float = 4800.0
    sample_interval: float = 1.0
    sine_period: float = 150.0
    ig_period: float = 240.0
    ig_mu: float = 1.0
    ig_lambda: float = 3.0
    noise_sigma: float = 0.02
    seed: int = 7
    sine_offset: float = 0.0
    modulation: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(
            self,
            "modulation",
            tuple(m if isinstance(m, ModSegment) else ModSegment(**m) for m in self.modulation),
        )
        errors = self.validation_errors()
        if errors:
            raise WvcError("; ".join(errors))
        _check_segments(self.modulation, self.n_samples)

    def validation_errors(self) -> list[str]:
        out = []
        dt = self.sample_interval
        if not dt > 0:
            out.append(f"sample_interval must be > 0 (got {dt})")
            return out
        for name in ("sine_period", "ig_period"):
            val = getattr(self, name)
            if not val >= 2 * dt:
                out.append(f"{name} must be >= 2 * sample_interval (got {val})")
        if not self.length_seconds >= 4 * max(self.sine_period, self.ig_period):
            out.append(
                f"length_seconds must be >= 4 * max(sine_period, ig_period) (got {self.length_seconds})"
            )
        if not self.ig_mu > 0:
            out.append(f"ig_mu must be > 0 (got {self.ig_mu})")
        if not self.ig_lambda > 0:
            out.append(f"ig_lambda must be > 0 (got {self.ig_lambda})")
        if not self.noise_sigma >= 0:
            out.append(f"noise_sigma must be >= 0 (got {self.noise_sigma})")
        return out

    @property
    def n_samples(self) -> int:
        return int(round(self.length_seconds / self.sample_interval))

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["modulation"] = [dataclasses.asdict(m) for m in self.modulation]
        return d

    @classmethod
    def from_dict(cls, doc: dict) -> "ScenarioConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(doc) - known)
        if unknown:
            raise WvcError(f"unknown config field(s): {', '.join(unknown)}")
        return cls(**doc)

    @classmethod
    def from_json(cls, path) -> "ScenarioConfig":
        with open(path, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise WvcError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_dict(doc)


@dataclass(frozen=True, eq=False)
class GroundTruth:
    """Per-sample labels in {-1, 0, +1}; ``binary`` is ``|labels|``."""

    labels: np.ndarray

    @property
    def binary(self) -> np.ndarray:
        return np.abs(self.labels).astype(float)

    def __len__(self) -> int:
        return self.labels.size


@dataclass(frozen=True, eq=False)
class Scenario:
    name: str
    data: MultiSeries
    truth: GroundTruth
    config: ScenarioConfig


def _check_segments(segments, L: int) -> None:
    prev_end = -1
    for seg in segments:
        if seg.end > L - 1:
            raise WvcError(f"segment [{seg.start}, {seg.end}] runs past the last sample {L - 1}")
        if seg.start <= prev_end:
            raise WvcError(f"segment [{seg.start}, {seg.end}] overlaps or is out of order")
        prev_end = seg.end


def _noise(cfg: ScenarioConfig, stream: int, n: int) -> np.ndarray:
    if cfg.noise_sigma == 0:
        return np.zeros(n)
    # separate streams per signal; a shared stream would correlate the two noises
    rng = np.random.default_rng([cfg.seed, stream])
    return rng.normal(0.0, cfg.noise_sigma, n)


def gen_sine(cfg: ScenarioConfig, label: str = "sine") -> TimeSeries:
    n = cfg.n_samples
    t = np.arange(n) * cfg.sample_interval
    values = cfg.sine_offset + np.sin(2 * np.pi * t / cfg.sine_period)
    return TimeSeries(label, values + _noise(cfg, _SINE_STREAM, n), cfg.sample_interval)


def ig_density(x, mu: float, lam: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.sqrt(lam / (2 * np.pi * x**3)) * np.exp(-lam * (x - mu) ** 2 / (2 * mu**2 * x))


def ig_mode(mu: float, lam: float) -> float:
    return mu * (math.sqrt(1 + 9 * mu**2 / (4 * lam**2)) - 3 * mu / (2 * lam))


def ig_pulse(period_samples: int, mu: float, lam: float) -> np.ndarray:
    """One period of the pulse: IG density on ``(0, 3*mu]``, scaled to peak 1."""
    if mu <= 0 or lam <= 0:
        raise WvcError("inverse-Gaussian mu and lambda must be positive")
    x = (np.arange(period_samples) + 1) / period_samples * (3 * mu)
    f = ig_density(x, mu, lam)
    return f / f.max()


def gen_ig_train(cfg: ScenarioConfig, label: str = "ig") -> TimeSeries:
    n = cfg.n_samples
    period = int(round(cfg.ig_period / cfg.sample_interval))
    pulse = ig_pulse(period, cfg.ig_mu, cfg.ig_lambda)
    values = np.resize(pulse, n)
    return TimeSeries(label, values + _noise(cfg, _IG_STREAM, n), cfg.sample_interval)


def apply_modulation(x_i: TimeSeries, x_j: TimeSeries, segments) -> tuple[TimeSeries, TimeSeries]:
    """Multiply each segment of ``x_i`` by ``factor_i`` and of ``x_j`` by ``factor_j``."""
    if len(x_i) != len(x_j):
        raise WvcError("modulated series must have equal length")
    _check_segments(segments, len(x_i))
    gi = np.ones(len(x_i))
    gj = np.ones(len(x_j))
    for seg in segments:
        gi[seg.start : seg.end + 1] = seg.factor_i
        gj[seg.start : seg.end + 1] = seg.factor_j
    return x_i.with_values(x_i.values * gi), x_j.with_values(x_j.values * gj)


def ground_truth(segments, L: int) -> GroundTruth:
    _check_segments(segments, L)
    labels = np.zeros(L, dtype=int)
    for seg in segments:
        labels[seg.start : seg.end + 1] = seg.sign
    labels.setflags(write=False)
    return GroundTruth(labels)


def simulate(cfg: ScenarioConfig, name: str = "scenario") -> Scenario:
    sine, ig = apply_modulation(gen_sine(cfg), gen_ig_train(cfg), cfg.modulation)
    return Scenario(
        name=name,
        data=MultiSeries((sine, ig)),
        truth=ground_truth(cfg.modulation, cfg.n_samples),
        config=cfg,
    )


DEFAULT_SINE_OFFSET = 2.0


def default_config(**changes) -> ScenarioConfig:
    """Benchmark settings: 4800 s at 1 Hz, noise 0.02, seed 7, sine lifted to [1, 3]."""
    base = ScenarioConfig(sine_offset=DEFAULT_SINE_OFFSET)
    return base.replace(**changes) if changes else base


def default_schedule(L: int) -> tuple[ModSegment, ...]:
    """Five equal blocks: neutral, same-side (1.1, 1.1), neutral, opposite (1.1, 0.9), neutral.

    Modulated blocks cover 40% of the series.
    """
    b = L // 5
    return (
        ModSegment(b, 2 * b - 1, 1.1, 1.1),
        ModSegment(3 * b, 4 * b - 1, 1.1, 0.9),
    )


def default_scenarios(seed: int | None = None) -> tuple[Scenario, Scenario]:
    """The independent and modulated benchmark pair, sharing the same base signals."""
    cfg = default_config() if seed is None else default_config(seed=seed)
    independent = simulate(cfg, "independent")
    modulated = simulate(cfg.replace(modulation=default_schedule(cfg.n_samples)), "modulated")
    return independent, modulated
