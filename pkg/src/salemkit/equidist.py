"""Grid approximations of subsets of [0,1], equidistribution-order
estimation, the Salem characterization checker, and the grid-to-integer
extraction.

An N-approximation records the cells [j/N, (j+1)/N) that meet a target
set.  Its equidistribution order is fitted from normalized Weyl sums of
the cell fractions over a frequency sweep, using the shared bound-fitting
estimator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cantor import CantorStage
from .core_sets import IntegerSet, decay_exponent_fit, geometric_grid


@dataclass(frozen=True)
class NApproximation:
    N: int
    cells: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(int(c) for c in self.cells))
        if self.N < 1:
            raise ValueError("N must be positive")
        prev = -1
        for c in self.cells:
            if c <= prev:
                raise ValueError("cells must be strictly increasing and non-negative")
            prev = c
        if self.cells and self.cells[-1] >= self.N:
            raise ValueError("cells must lie below N")

    def fractions(self) -> list[Fraction]:
        return [Fraction(c, self.N) for c in self.cells]


@dataclass(frozen=True)
class OrderEstimate:
    alpha: float
    per_m_bounds: tuple[tuple[float, float], ...]
    cap: float


@dataclass(frozen=True)
class StageDensity:
    N: int
    count: int
    c_value: float
    pointwise_exponent: float


@dataclass(frozen=True)
class CharacterizationReport:
    density_exponents: tuple[StageDensity, ...]
    order_estimate: OrderEstimate
    verdict: str
    beta_hat: float
    c_in_bounds: bool
    tolerance: float

    def as_dict(self) -> dict:
        return {
            "density_exponents": [
                {
                    "N": s.N,
                    "count": s.count,
                    "c_value": s.c_value,
                    "pointwise_exponent": s.pointwise_exponent,
                }
                for s in self.density_exponents
            ],
            "order_estimate": {
                "alpha": self.order_estimate.alpha,
                "cap": self.order_estimate.cap,
                "per_m_bounds": [[m, b] for m, b in self.order_estimate.per_m_bounds],
            },
            "verdict": self.verdict,
            "beta_hat": self.beta_hat,
            "c_in_bounds": self.c_in_bounds,
            "tolerance": self.tolerance,
        }


def _coerce_target(target) -> tuple[list[Fraction], list[tuple[Fraction, Fraction]]]:
    """Split a target into exact points and half-open intervals [lo, hi)."""
    if isinstance(target, CantorStage):
        return [], [(lo, hi) for lo, hi in target.intervals()]
    points: list[Fraction] = []
    intervals: list[tuple[Fraction, Fraction]] = []
    for item in target:
        if isinstance(item, (tuple, list)):
            if len(item) != 2:
                raise ValueError("interval targets must be (lo, hi) pairs")
            lo, hi = Fraction(item[0]), Fraction(item[1])
            if not 0 <= lo < hi <= 1:
                raise ValueError("intervals must satisfy 0 <= lo < hi <= 1")
            intervals.append((lo, hi))
        else:
            p = Fraction(item)
            if not 0 <= p <= 1:
                raise ValueError("points must lie in [0, 1]")
            points.append(p)
    return points, intervals


def n_approximation(target, N: int) -> NApproximation:
    """Cells [j/N, (j+1)/N) that meet the target, decided exactly.

    The target is a finite list of rational points, a list of half-open
    (lo, hi) interval pairs, or a CantorStage.  An empty target gives an
    empty approximation.
    """
    if N < 1:
        raise ValueError("N must be positive")
    points, intervals = _coerce_target(target)
    cells: set[int] = set()
    for p in points:
        if p < 1:
            cells.add(int(p * N))
    for lo, hi in intervals:
        j = int(lo * N)
        j_end = min(math.ceil(hi * N) - 1, N - 1)
        for cell in range(j, j_end + 1):
            if max(lo, Fraction(cell, N)) < min(hi, Fraction(cell + 1, N)):
                cells.add(cell)
    return NApproximation(N, tuple(sorted(cells)))


def weyl_moduli(cells: Sequence[int], N: int, ms: Sequence[int]) -> np.ndarray:
    """|(1/d) sum_j e^{-2 pi i (j/N) m}| for each m, with exact integer
    phase reduction (j*m mod N)."""
    if N >= 1 << 31:
        raise ValueError("N too large for exact int64 phase reduction")
    arr = np.asarray(cells, dtype=np.int64)
    if arr.size == 0:
        raise ValueError("empty approximation has no Weyl sums")
    out = np.empty(len(ms))
    for i, m in enumerate(ms):
        residues = (arr * int(m)) % N
        out[i] = abs(np.exp((-2j * np.pi / N) * residues).mean())
    return out


def equidist_order(
    approximations: Sequence[NApproximation],
    cap: float = 1.0,
    *,
    m_grid: Sequence[int] | None = None,
    per_octave: int = 6,
) -> OrderEstimate:
    """Fit the equidistribution order of the finest approximation.

    Normalized Weyl sums are swept over integer frequencies up to N-1
    (geometric by default, or an explicit ``m_grid``) and fed to the
    bound-fitting exponent estimator.  The default sweep is kept moderate
    since every extra sample can only pull the fitted minimum down.
    Per-frequency moduli are retained for audit.
    """
    if not approximations:
        raise ValueError("need at least one approximation")
    finest = max(approximations, key=lambda a: a.N)
    if finest.N < 16:
        raise ValueError("the largest N must be at least 16")
    if m_grid is None:
        ms = geometric_grid(2, finest.N - 1, per_octave, integers=True)
    else:
        ms = sorted({int(m) for m in m_grid})
        if not ms or ms[0] < 2 or ms[-1] >= finest.N:
            raise ValueError("m grid must lie within [2, N-1]")
    moduli = weyl_moduli(finest.cells, finest.N, ms)
    per_m = tuple((float(m), float(b)) for m, b in zip(ms, moduli))
    alpha = decay_exponent_fit(per_m, cap=cap)
    return OrderEstimate(alpha, per_m, cap)


def characterize_salem(
    approximations: Sequence[NApproximation],
    beta: float,
    tolerance: float = 0.1,
    *,
    c_bounds: tuple[float, float] = (0.25, 4.0),
    salem_type_floor: float = 0.05,
    m_grid: Sequence[int] | None = None,
) -> CharacterizationReport:
    """Check the two-sided characterization on a stage sequence.

    Stage counts are normalized by N**beta to extract the constants c_i and
    checked against the uniform bounds; the fitted density exponent
    beta_hat is compared with the equidistribution order.  Verdict: salem
    when |beta_hat - alpha| <= tolerance, salem-type when alpha clears the
    floor but falls short of beta_hat, neither otherwise.
    """
    if len(approximations) < 3:
        raise ValueError("need at least 3 approximations")
    Ns = [a.N for a in approximations]
    for a, b in zip(Ns, Ns[1:]):
        if b <= a:
            raise ValueError("approximation sizes must be strictly increasing")
    stages = []
    for approx in approximations:
        count = len(approx.cells)
        c_val = count / approx.N**beta
        pw = math.log(count) / math.log(approx.N) if count > 0 and approx.N > 1 else 0.0
        stages.append(StageDensity(approx.N, count, c_val, pw))
    c_in_bounds = all(c_bounds[0] <= s.c_value <= c_bounds[1] for s in stages)
    fit = [(s.N, s.count) for s in stages if s.count > 0]
    if len(fit) >= 2:
        x = np.log([n for n, _ in fit])
        y = np.log([c for _, c in fit])
        slope = float(np.polyfit(x, y, 1)[0])
        beta_hat = min(1.0, max(0.0, slope))
    else:
        beta_hat = 0.0
    order = equidist_order(approximations, cap=1.0, m_grid=m_grid)
    if abs(beta_hat - order.alpha) <= tolerance:
        verdict = "salem"
    elif order.alpha > salem_type_floor:
        verdict = "salem-type"
    else:
        verdict = "neither"
    return CharacterizationReport(tuple(stages), order, verdict, beta_hat, c_in_bounds, tolerance)


def integers_from_approximations(approximations: Sequence[NApproximation]) -> IntegerSet:
    """Integer set whose stage-i block encodes the cells new at stage i.

    With N_0 = 0, stage i contributes N_{i-1} + a for every cell numerator
    a whose fraction a/N_i was not already a cell fraction of stage i-1.
    Overlapping blocks are merged by set union.
    """
    if not approximations:
        raise ValueError("need at least one approximation")
    Ns = [a.N for a in approximations]
    for a, b in zip(Ns, Ns[1:]):
        if b <= a:
            raise ValueError("approximation sizes must be strictly increasing")
    out: set[int] = set()
    prev_fractions: set[Fraction] = set()
    prev_N = 0
    horizon = 1
    for approx in approximations:
        fractions = {Fraction(c, approx.N): c for c in approx.cells}
        new = {num for frac, num in fractions.items() if frac not in prev_fractions}
        out.update(prev_N + num for num in new)
        horizon = max(horizon, prev_N + approx.N)
        prev_fractions = set(fractions)
        prev_N = approx.N
    return IntegerSet(tuple(sorted(out)), horizon)
