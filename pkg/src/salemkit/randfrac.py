"""Stagewise Bernoulli refinement of [0,1] and its statistics.

Stage 1 splits [0,1] into N_1 cells and keeps each with probability
N_1**(-beta); stage i+1 splits every surviving cell into N_{i+1} children
and keeps each child with probability N_{i+1}**(-beta), so a depth-i cell
survives unconditionally with probability (N_1*...*N_i)**(-beta).  Trials
are reproducible: the per-trial stream is seeded by (master_seed,
trial_index) and is independent of execution order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .equidist import NApproximation, OrderEstimate, equidist_order


@dataclass(frozen=True)
class RandomFractalConfig:
    beta: float
    level_sizes: tuple[int, ...]
    depth: int
    trials: int
    master_seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "level_sizes", tuple(int(n) for n in self.level_sizes))
        if not 0 <= self.beta < 1:
            raise ValueError("beta must lie in [0, 1)")
        if not 1 <= self.depth <= len(self.level_sizes):
            raise ValueError("depth must select a prefix of level_sizes")
        if any(n < 1 for n in self.level_sizes):
            raise ValueError("level sizes must be positive")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 bits")

    def resolution(self, depth: int | None = None) -> int:
        """M_i = N_1 * ... * N_i at the requested (default full) depth."""
        d = self.depth if depth is None else depth
        out = 1
        for n in self.level_sizes[:d]:
            out *= n
        return out


@dataclass(frozen=True)
class TrialResult:
    beta: float
    level_sizes: tuple[int, ...]
    stages: tuple[tuple[int, ...], ...]
    white_counts: tuple[int, ...]
    extinct: bool
    trial_index: int
    master_seed: int

    def resolution(self, depth: int | None = None) -> int:
        d = len(self.stages) if depth is None else depth
        out = 1
        for n in self.level_sizes[:d]:
            out *= n
        return out


@dataclass(frozen=True)
class DimensionStats:
    mean_dim: float
    std_dim: float
    extinction_rate: float
    trials: int
    dims: tuple[float, ...]

    def as_dict(self) -> dict:
        return {
            "mean_dim": self.mean_dim,
            "std_dim": self.std_dim,
            "extinct": self.extinction_rate,
            "trials": self.trials,
            "dims": list(self.dims),
        }


@dataclass(frozen=True)
class LemmaCheckReport:
    N1: int
    epsilon1: float
    u_grid: str
    satisfied_fraction: float
    trials: int

    def as_dict(self) -> dict:
        return {
            "N1": self.N1,
            "epsilon1": self.epsilon1,
            "u_grid": self.u_grid,
            "satisfied_fraction": self.satisfied_fraction,
            "trials": self.trials,
        }


def trial_rng(config: RandomFractalConfig, trial_index: int) -> np.random.Generator:
    """Per-trial generator keyed by (master_seed, trial_index)."""
    return np.random.default_rng([config.master_seed, trial_index])


def generate_trial(config: RandomFractalConfig, trial_index: int) -> TrialResult:
    """One Bernoulli refinement down to the configured depth.

    If every cell dies before the requested depth the result is truncated
    at the first empty stage (which is recorded) and flagged extinct.
    Identical (master_seed, trial_index) gives identical output.
    """
    if not 0 <= trial_index < config.trials:
        raise ValueError("trial_index outside the configured trial count")
    rng = trial_rng(config, trial_index)
    sizes = config.level_sizes[: config.depth]
    stages: list[tuple[int, ...]] = []
    current = np.arange(sizes[0], dtype=np.int64)
    current = current[rng.random(current.size) < sizes[0] ** (-config.beta)]
    stages.append(tuple(int(c) for c in current))
    for size in sizes[1:]:
        if current.size == 0:
            break
        children = (current[:, None] * size + np.arange(size, dtype=np.int64)).ravel()
        keep = rng.random(children.size) < size ** (-config.beta)
        current = children[keep]
        stages.append(tuple(int(c) for c in current))
    counts = tuple(len(s) for s in stages)
    extinct = len(stages) < config.depth or counts[-1] == 0
    return TrialResult(
        beta=config.beta,
        level_sizes=sizes,
        stages=tuple(stages),
        white_counts=counts,
        extinct=extinct,
        trial_index=trial_index,
        master_seed=config.master_seed,
    )


def dimension_experiment(config: RandomFractalConfig) -> DimensionStats:
    """Box-dimension statistics log(count)/log(M_depth) across trials.

    Extinct trials are excluded from the mean and counted in the
    extinction rate; they are never resampled.
    """
    if config.depth < 3:
        raise ValueError("dimension experiments need depth at least 3")
    dims: list[float] = []
    extinct = 0
    M = config.resolution()
    for t in range(config.trials):
        trial = generate_trial(config, t)
        if trial.extinct:
            extinct += 1
            continue
        dims.append(math.log(trial.white_counts[-1]) / math.log(M))
    if dims:
        arr = np.asarray(dims)
        mean = float(arr.mean())
        std = float(arr.std())
    else:
        mean = float("nan")
        std = float("nan")
    return DimensionStats(mean, std, extinct / config.trials, config.trials, tuple(dims))


def mu1_hat(trial: TrialResult, u) -> complex:
    """Transform of the reweighted stage-1 measure.

    The measure has density p**(-1) on the union of white stage-1 cells
    (p = N_1**(-beta)), so each cell contributes its exact interval
    integral of e^{-2 pi i u x}.  At u = 0 this is white/(p*N_1); with no
    white cells the zero measure's transform (identically 0) is returned.
    """
    if not trial.stages:
        return 0j
    cells = trial.stages[0]
    N1 = trial.level_sizes[0]
    p = N1 ** (-trial.beta)
    if not cells:
        return 0j
    if u == 0:
        return complex(len(cells) / (p * N1))
    exact = isinstance(u, (int, Fraction))
    total = 0j
    for c in cells:
        if exact:
            phase = float((Fraction(u) * c / N1) % 1)
        else:
            phase = (float(u) * c / N1) % 1.0
        total += cmath.exp(-2j * math.pi * phase)
    factor = (1 - cmath.exp(-2j * math.pi * float(u) / N1)) / (2j * math.pi * float(u))
    return total * factor / p


def _mu1_values(cells: Sequence[int], N1: int, beta: float, us: np.ndarray) -> np.ndarray:
    """Vectorized mu1_hat over integer frequencies."""
    p = N1 ** (-beta)
    if len(cells) == 0:
        return np.zeros(len(us), dtype=complex)
    arr = np.asarray(cells, dtype=np.int64)
    u = np.asarray(us, dtype=np.int64)
    residues = u[:, None] * arr[None, :] % N1
    comb = np.exp((-2j * np.pi / N1) * residues).sum(axis=1)
    uf = u.astype(float)
    factor = (1 - np.exp(-2j * np.pi * uf / N1)) / (2j * np.pi * uf)
    return comb * factor / p


def lemma63_experiment(config: RandomFractalConfig, epsilon1: float, u_max: int) -> LemmaCheckReport:
    """Fraction of depth-1 trials with |mu1_hat(u)| < epsilon1 * u**((beta-1)/2)
    at every integer u in [2, u_max].

    The Lebesgue baseline vanishes at nonzero integers, so the checked
    difference is |mu1_hat| itself.  Requires u_max <= N_1.
    """
    if config.depth != 1:
        raise ValueError("the single-stage check needs a depth-1 config")
    N1 = config.level_sizes[0]
    if not 2 <= u_max <= N1:
        raise ValueError("u_max must lie in [2, N_1]")
    us = np.arange(2, u_max + 1, dtype=np.int64)
    bounds = epsilon1 * us.astype(float) ** ((config.beta - 1.0) / 2.0)
    satisfied = 0
    for t in range(config.trials):
        trial = generate_trial(config, t)
        values = np.abs(_mu1_values(trial.stages[0], N1, config.beta, us))
        if np.all(values < bounds):
            satisfied += 1
    return LemmaCheckReport(
        N1=N1,
        epsilon1=float(epsilon1),
        u_grid=f"integers 2..{u_max}",
        satisfied_fraction=satisfied / config.trials,
        trials=config.trials,
    )


def corollary64_check(trial: TrialResult) -> OrderEstimate:
    """Equidistribution order of the final-stage cell left endpoints."""
    if trial.extinct:
        raise ValueError("extinct trial has no final-stage points")
    M = trial.resolution()
    approx = NApproximation(M, trial.stages[-1])
    return equidist_order([approx])
