"""Nested interval systems on [0,1] driven by integer digit sets.

A plan fixes, per level k, a branching factor N_k, a digit set
A_k within [0, N_k), and a padding ratio eta_k in (0, 1].  Writing
M_k = N_1 * ... * N_k, the stage-k set keeps one interval per digit word
(a_1, ..., a_k) with exact left endpoint

    x = sum_{j <= k} (eta_1 ... eta_{j-1}) * a_j / M_j

and exact length L_k = (eta_1 ... eta_k) / M_k.  Children of a stage
interval sit inside it because eta <= 1; siblings are disjoint with gaps
whenever eta < 1.  Every endpoint is an exact rational, so nesting and
disjointness are decidable comparisons rather than float checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core_sets import IntegerSet

# Denominators grow like M_k times the eta denominators; the cap keeps
# endpoint numerators within a few machine words.
DEPTH_CAP = 12


def default_eta(level: int) -> Fraction:
    """1 - 1/(level+1)**2: padding that shrinks toward 1 up the levels."""
    return Fraction(level * (level + 2), (level + 1) ** 2)


@dataclass(frozen=True)
class Level:
    size: int
    digits: tuple[int, ...]
    eta: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        object.__setattr__(self, "eta", Fraction(self.eta))
        if self.size < 1:
            raise ValueError("level size must be positive")
        if not self.digits:
            raise ValueError("digit set must be nonempty")
        prev = -1
        for d in self.digits:
            if d <= prev:
                raise ValueError("digits must be strictly increasing and non-negative")
            prev = d
        if self.digits[-1] >= self.size:
            raise ValueError("digits must lie below the level size")
        if not 0 < self.eta <= 1:
            raise ValueError("eta must lie in (0, 1]")


@dataclass(frozen=True)
class LevelPlan:
    levels: tuple[Level, ...]
    beta: float
    c_bounds: tuple[Fraction, Fraction] = (Fraction(1, 4), Fraction(4))

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValueError("plan needs at least one level")
        if not 0 < self.beta <= 1:
            raise ValueError("beta must lie in (0, 1]")
        lower, upper = (Fraction(b) for b in self.c_bounds)
        object.__setattr__(self, "c_bounds", (lower, upper))
        if lower <= 0 or upper <= lower:
            raise ValueError("c_bounds must be positive with lower < upper")
        for k in range(1, len(self.levels) + 1):
            c = self.c_value(k)
            if not float(lower) <= c <= float(upper):
                raise ValueError(f"level {k}: c = {c:.6g} outside bounds ({float(lower):g}, {float(upper):g})")

    @property
    def depth(self) -> int:
        return len(self.levels)

    def M(self, k: int) -> int:
        """N_1 * ... * N_k (1 when k = 0)."""
        out = 1
        for level in self.levels[:k]:
            out *= level.size
        return out

    def eta_product(self, k: int) -> Fraction:
        """eta_1 * ... * eta_k (1 when k = 0)."""
        out = Fraction(1)
        for level in self.levels[:k]:
            out *= level.eta
        return out

    def interval_length(self, k: int) -> Fraction:
        return self.eta_product(k) / self.M(k)

    def digit_count(self, k: int) -> int:
        return len(self.levels[k - 1].digits)

    def c_value(self, k: int) -> float:
        """Normalized digit count |A_k| / N_k**beta at level k."""
        level = self.levels[k - 1]
        return len(level.digits) / level.size**self.beta


@dataclass(frozen=True)
class CantorStage:
    depth: int
    left_endpoints: tuple[Fraction, ...]
    interval_length: Fraction

    def intervals(self) -> list[tuple[Fraction, Fraction]]:
        return [(x, x + self.interval_length) for x in self.left_endpoints]


@dataclass(frozen=True)
class DigitPoint:
    """Digit values (one member of each level's digit set), not indices."""

    digits: tuple[int, ...]


def make_plan(
    A: IntegerSet,
    level_horizons: Sequence[int],
    beta: float,
    *,
    c_bounds: tuple[Fraction, Fraction] = (Fraction(1, 4), Fraction(4)),
    etas: Sequence[Fraction] | None = None,
) -> LevelPlan:
    """Plan whose level-k digits are the prefix A intersect [0, N_k).

    Horizons may repeat (the self-similar case) but may not decrease.  A
    level with an empty prefix, or whose normalized count |A_k|/N_k**beta
    leaves ``c_bounds``, rejects the plan naming the offending level.
    """
    horizons = [int(n) for n in level_horizons]
    if not horizons:
        raise ValueError("need at least one level horizon")
    for a, b in zip(horizons, horizons[1:]):
        if b < a:
            raise ValueError("level horizons must not decrease")
    if etas is not None and len(etas) < len(horizons):
        raise ValueError("need one eta per level")
    levels = []
    for k, N in enumerate(horizons, 1):
        digits = A.elements[: A.count_below(N)]
        if not digits:
            raise ValueError(f"level {k}: empty digit set below {N}")
        eta = default_eta(k) if etas is None else Fraction(etas[k - 1])
        levels.append(Level(N, digits, eta))
    return LevelPlan(tuple(levels), float(beta), c_bounds)


def ternary_plan(depth: int, *, unit_eta: bool = False, beta: float | None = None) -> LevelPlan:
    """Middle-thirds plan: N = 3, digits {0, 2} at every level."""
    if beta is None:
        beta = math.log(2) / math.log(3)
    levels = tuple(
        Level(3, (0, 2), Fraction(1) if unit_eta else default_eta(k)) for k in range(1, depth + 1)
    )
    return LevelPlan(levels, beta)


def build_stage(plan: LevelPlan, depth: int, *, depth_cap: int = DEPTH_CAP) -> CantorStage:
    """All stage-``depth`` left endpoints, sorted, with the exact length.

    Depth 0 is the single interval [0, 1).  The endpoint count is the
    product of the digit-set sizes through ``depth``.
    """
    if not 0 <= depth <= plan.depth:
        raise ValueError(f"depth {depth} exceeds plan depth {plan.depth}")
    if depth > depth_cap:
        raise ValueError(f"depth {depth} exceeds the cap {depth_cap}")
    endpoints = [Fraction(0)]
    for j in range(1, depth + 1):
        coeff = plan.eta_product(j - 1) / plan.M(j)
        terms = [coeff * a for a in plan.levels[j - 1].digits]
        endpoints = [x + t for x in endpoints for t in terms]
    endpoints.sort()
    return CantorStage(depth, tuple(endpoints), plan.interval_length(depth))


def point_from_digits(plan: LevelPlan, point: DigitPoint | Sequence[int]) -> Fraction:
    """Exact truncated digit expansion of the point selected by digit values.

    Equals the left endpoint of the stage interval the digits select.
    """
    digits = point.digits if isinstance(point, DigitPoint) else tuple(point)
    if len(digits) > plan.depth:
        raise ValueError("more digits than plan levels")
    x = Fraction(0)
    for j, a in enumerate(digits, 1):
        if a not in plan.levels[j - 1].digits:
            raise ValueError(f"digit {a} is not in the level-{j} digit set")
        x += plan.eta_product(j - 1) * Fraction(a, plan.M(j))
    return x


def box_dimension(plan: LevelPlan, max_depth: int) -> float:
    """log(prod d_j) / log(M_k) at k = max_depth.

    Counts covering cells at scale 1/M_k; the bounded eta-product
    correction is dropped deliberately, which makes plans with identical
    levels exact at every depth.
    """
    if max_depth < 2:
        raise ValueError("max_depth must be at least 2")
    if max_depth > plan.depth:
        raise ValueError(f"max_depth {max_depth} exceeds plan depth {plan.depth}")
    cells = 1
    M = 1
    for level in plan.levels[:max_depth]:
        cells *= len(level.digits)
        M *= level.size
    return math.log(cells) / math.log(M)
