"""Gaussian-noise corruption and universal-threshold denoising in a tight frame."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Signal, signal_values

TIGHTNESS_TOL = 1e-6


@dataclass(frozen=True)
class NoiseModel:
    """Additive white Gaussian noise of standard deviation ``sigma``.

    The draw for a trial comes from a stream keyed on ``(seed, stream, trial)``
    so results do not depend on the order in which trials run.
    """

    sigma: float
    seed: int = 0
    stream: int = 0

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")

    def rng(self, trial: int) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([self.seed, self.stream, trial]))

    def draw(self, n: int, trial: int) -> np.ndarray:
        return self.rng(trial).standard_normal(n)


def add_awgn(x: Signal, model: NoiseModel, trial: int = 0) -> Signal:
    z = model.draw(x.graph.n, trial)
    return Signal(x.graph, x.values + model.sigma * z)


def hard_threshold(c: np.ndarray, tau) -> np.ndarray:
    return np.where(np.abs(c) > tau, c, 0.0)


def soft_threshold(c: np.ndarray, tau) -> np.ndarray:
    return np.sign(c) * np.maximum(np.abs(c) - tau, 0.0)


def universal_thresholds(d, sigma: float) -> np.ndarray:
    """``sigma * ||psi_k|| * sqrt(2 ln N)`` per atom, ``N`` = vertex count."""
    n = d.graph.n
    norms = np.linalg.norm(d.matrix, axis=0)
    return sigma * norms * np.sqrt(2.0 * np.log(n))


def _check_tight(d) -> None:
    bounds = getattr(d, "frame_bounds", None)
    if bounds is None:  # orthonormal dictionaries are checked on construction
        return
    lo, hi = bounds
    if abs(lo - 1) > TIGHTNESS_TOL or abs(hi - 1) > TIGHTNESS_TOL:
        raise ValueError(f"dictionary is not a tight frame with bound 1: ({lo:.3g}, {hi:.3g})")


def universal_threshold_denoise(d, y, sigma: float, mode: str = "hard") -> Signal:
    """Analyze, threshold every coefficient at its universal level, synthesize."""
    if sigma < 0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    _check_tight(d)
    vals = signal_values(y, d.graph)
    c = d.analyze(vals)
    tau = universal_thresholds(d, sigma)
    if mode == "hard":
        kept = hard_threshold(c, tau)
    elif mode == "soft":
        kept = soft_threshold(c, tau)
    else:
        raise ValueError(f"unknown thresholding mode {mode!r}")
    return Signal(d.graph, d.synthesize(kept))


def surviving_count(d, y, sigma: float) -> int:
    c = d.analyze(signal_values(y, d.graph))
    return int(np.count_nonzero(np.abs(c) > universal_thresholds(d, sigma)))


def mse(x, xhat) -> float:
    a = np.asarray(x, dtype=float)
    b = np.asarray(xhat, dtype=float)
    if isinstance(x, Signal) and isinstance(xhat, Signal) and x.graph != xhat.graph:
        raise ValueError("signals live on different graphs")
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.mean((a - b) ** 2))


def default_sigma_grid(x, count: int = 12) -> np.ndarray:
    """``count`` log-spaced noise levels from 1% to 100% of the signal RMS."""
    rms = float(np.sqrt(np.mean(np.asarray(x, dtype=float) ** 2)))
    return np.logspace(-2, 0, count) * rms


@dataclass(frozen=True)
class DenoiseRow:
    method: str
    sigma: float
    mean_mse: float
    std_mse: float
    trials: int


def denoise_experiment(
    clean: Signal,
    dictionaries,
    sigma_grid=None,
    trials: int = 50,
    seed: int = 0,
    mode: str = "hard",
) -> list[DenoiseRow]:
    """Mean and std of the MSE per (method, sigma) over paired noise draws.

    ``dictionaries`` is a mapping or a sequence of ``(name, dictionary)``.
    Every method sees the same noise vector for a given (sigma, trial).
    """
    named = list(dictionaries.items()) if hasattr(dictionaries, "items") else list(dictionaries)
    if sigma_grid is None:
        sigma_grid = default_sigma_grid(clean)
    rows = []
    for name, d in named:
        for s_idx, sigma in enumerate(sigma_grid):
            model = NoiseModel(float(sigma), seed, s_idx)
            errs = np.array([
                mse(clean, universal_threshold_denoise(d, add_awgn(clean, model, t), model.sigma, mode))
                for t in range(trials)
            ])
            rows.append(DenoiseRow(name, float(sigma), float(errs.mean()), float(errs.std()), trials))
    return rows
