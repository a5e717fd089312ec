"""Stagewise measures on nested interval systems and their spectra.

The stage-k distribution function F_k climbs by 1/(d_1*...*d_k) across
each stage interval and is flat on the gaps.  Its transform factors into
per-level exponential sums

    Q_k(u) = (1/d_k) * sum_{a in A_k} e^{-2 pi i u a / M_k},

and the transform of the limit measure is the product
Q_1(u) * prod_k Q_{k+1}(eta_1...eta_k * u).  Factors whose phases have
shrunk below the threshold theta differ from 1 by O(theta) and are
dropped, so evaluation cost is logarithmic in |u|.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cantor import CantorStage, LevelPlan, build_stage
from .core_sets import IntegerSet, decay_exponent_fit, dft_char


@dataclass(frozen=True)
class StagewiseMeasure:
    plan: LevelPlan
    truncation_depth: int
    theta: float = 1e-3
    u_max: float = 1e6

    def __post_init__(self) -> None:
        if not 1 <= self.truncation_depth <= self.plan.depth:
            raise ValueError("truncation_depth must lie within the plan depth")
        if self.theta <= 0:
            raise ValueError("theta must be positive")


@dataclass(frozen=True)
class DecayReport:
    alpha_hat: float
    beta_target: float
    passed: bool
    truncation_depth_used: int
    capped: bool
    envelope: tuple[tuple[float, float], ...]

    def as_dict(self) -> dict:
        return {
            "alpha_hat": self.alpha_hat,
            "beta_target": self.beta_target,
            "pass": self.passed,
            "truncation_depth_used": self.truncation_depth_used,
            "capped": self.capped,
            "envelope": [[m, mag] for m, mag in self.envelope],
        }


def _phase_unit(u, scale: Fraction) -> complex:
    """e^{-2 pi i u * scale} with the phase reduced mod 1, exactly when u is
    an int or Fraction."""
    if isinstance(u, (int, Fraction)):
        frac = (Fraction(u) * scale) % 1
        return cmath.exp(-2j * math.pi * float(frac))
    return cmath.exp(-2j * math.pi * ((float(u) * float(scale)) % 1.0))


def q_factor(plan: LevelPlan, k: int, u) -> complex:
    """(1/d_k) * sum_{a in A_k} e^{-2 pi i u a / M_k}; modulus at most 1."""
    if not 1 <= k <= plan.depth:
        raise ValueError(f"level {k} outside the plan")
    level = plan.levels[k - 1]
    M_k = plan.M(k)
    total = 0j
    for a in level.digits:
        total += _phase_unit(u, Fraction(a, M_k))
    return total / len(level.digits)


def q_from_dft(A: IntegerSet, m: int) -> complex:
    """(N/d) times the normalized spectrum of A at m.

    Agrees with the level-k factor at integer arguments scaled by M_{k-1},
    since u = m * M_{k-1} turns the per-digit phase u*a/M_k into m*a/N_k.
    """
    d = len(A)
    if d == 0:
        raise ValueError("empty digit set")
    value = dft_char(A, [m])[0].value
    return (A.horizon / d) * value


def truncation_for(measure: StagewiseMeasure, u) -> tuple[int, bool]:
    """Number of product factors to evaluate at u, and whether the depth cap
    cut the tail while the next factor was still active."""
    au = abs(float(u))
    plan = measure.plan
    for p in range(measure.truncation_depth):
        if float(plan.eta_product(p)) * au / plan.M(p + 1) < measure.theta:
            return p + 1, False
    return measure.truncation_depth, True


def mu_hat(measure: StagewiseMeasure, u, *, depth: int | None = None) -> complex:
    """Transform of the stagewise measure at u via the factor product.

    With ``depth=None`` the factor count follows the truncation rule (and is
    silently capped at ``truncation_depth``; use :func:`truncation_for` to
    observe the cap).  An explicit ``depth`` forces exactly that many
    factors, i.e. the transform of the depth-``depth`` endpoint comb.
    """
    if abs(float(u)) > measure.u_max:
        raise ValueError(f"|u| exceeds the configured u_max {measure.u_max}")
    if depth is None:
        factors, _ = truncation_for(measure, u)
    else:
        if not 1 <= depth <= measure.truncation_depth:
            raise ValueError("depth must lie within the truncation depth")
        factors = depth
    plan = measure.plan
    exact = isinstance(u, (int, Fraction))
    value = q_factor(plan, 1, u)
    for k in range(1, factors):
        scaled = plan.eta_product(k) * Fraction(u) if exact else float(plan.eta_product(k)) * u
        value *= q_factor(plan, k + 1, scaled)
    return value


@lru_cache(maxsize=64)
def _cached_stage(plan: LevelPlan, k: int) -> CantorStage:
    return build_stage(plan, k)


def stage_cdf(measure: StagewiseMeasure, k: int, x) -> float:
    """F_k(x): piecewise-linear distribution function of the stage-k measure.

    Climbs by 1/(d_1*...*d_k) linearly across each stage interval, is
    constant on the gaps; F_k(0) = 0 and F_k(1) = 1.
    """
    if not 0 <= k <= measure.truncation_depth:
        raise ValueError("k must lie within the truncation depth")
    xq = Fraction(x)
    if not 0 <= xq <= 1:
        raise ValueError("x must lie in [0, 1]")
    stage = _cached_stage(measure.plan, k)
    L = stage.interval_length
    increment = Fraction(1, len(stage.left_endpoints))
    total = Fraction(0)
    for left in stage.left_endpoints:
        if xq >= left + L:
            total += increment
        elif xq > left:
            total += increment * (xq - left) / L
        else:
            break
    return float(total)


def dyadic_block_envelope(samples: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    """Per dyadic block [2^t, 2^{t+1}), the sample of largest magnitude.

    Collapsing to block maxima before exponent fitting keeps the
    oscillatory zeros of the transform from corrupting the envelope.
    """
    blocks: dict[int, tuple[float, float]] = {}
    for u, mag in samples:
        t = int(math.floor(math.log2(u)))
        if t not in blocks or mag > blocks[t][1]:
            blocks[t] = (u, mag)
    return [blocks[t] for t in sorted(blocks)]


def decay_check(
    measure: StagewiseMeasure,
    u_grid: Sequence[float],
    beta: float,
    tolerance: float = 0.1,
) -> DecayReport:
    """Sample |mu_hat| on the grid, fit the dyadic-block envelope, and judge
    the fitted exponent against beta - tolerance."""
    grid = sorted(float(u) if not isinstance(u, int) else u for u in u_grid)
    if not grid:
        raise ValueError("empty u grid")
    if grid[0] < 2:
        raise ValueError("grid frequencies must be at least 2")
    if grid[-1] > measure.u_max:
        raise ValueError("grid exceeds the configured u_max")
    samples = []
    depth_used = 0
    capped = False
    for u in grid:
        factors, hit = truncation_for(measure, u)
        depth_used = max(depth_used, factors)
        capped = capped or hit
        samples.append((u, abs(mu_hat(measure, u))))
    envelope = dyadic_block_envelope(samples)
    alpha_hat = decay_exponent_fit(envelope, cap=1.0)
    return DecayReport(
        alpha_hat=alpha_hat,
        beta_target=float(beta),
        passed=alpha_hat >= beta - tolerance,
        truncation_depth_used=depth_used,
        capped=capped,
        envelope=tuple(envelope),
    )
