"""Integer sets, sparse discrete Fourier transforms, Weyl sums, and the
shared decay-exponent fitting engine.

Conventions: an integer set lives below an explicit horizon N; its
normalized spectrum at frequency k is (1/N) * sum_{n in A} e^{-2 pi i k n/N}.
Spectral decay is summarized by the largest alpha such that
|value(m)| <= m**(-alpha/2) holds across every sampled frequency.

Everything here is a pure function of immutable inputs; per-frequency
evaluations can run concurrently and results never depend on evaluation
order.
"""

from __future__ import annotations

import cmath
import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

# Below this magnitude a spectral value is indistinguishable from the
# rounding noise of summing up to 1e6 unit-modulus terms in doubles.
ZERO_FLOOR = 1e-12

# Chunk budget (entries) for vectorized outer products.
_CHUNK = 1 << 22


@dataclass(frozen=True)
class IntegerSet:
    """Strictly increasing non-negative integers, all below ``horizon``."""

    elements: tuple[int, ...]
    horizon: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(int(e) for e in self.elements))
        if self.horizon < 1:
            raise ValueError("horizon must be positive")
        prev = -1
        for e in self.elements:
            if e <= prev:
                raise ValueError("elements must be strictly increasing and non-negative")
            prev = e
        if self.elements and self.elements[-1] >= self.horizon:
            raise ValueError(f"elements must lie below the horizon {self.horizon}")

    @classmethod
    def from_elements(cls, elements: Iterable[int], horizon: int | None = None) -> "IntegerSet":
        elems = tuple(sorted({int(e) for e in elements}))
        if horizon is None:
            horizon = elems[-1] + 1 if elems else 1
        return cls(elems, horizon)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, n: int) -> bool:
        i = bisect_left(self.elements, n)
        return i < len(self.elements) and self.elements[i] == n

    def count_below(self, n: int) -> int:
        """|A intersect [0, n)| by binary search."""
        return bisect_left(self.elements, n)

    def restrict(self, horizon: int) -> "IntegerSet":
        """The prefix A intersect [0, horizon), with the smaller horizon."""
        return IntegerSet(self.elements[: self.count_below(horizon)], horizon)


@dataclass(frozen=True)
class DensityEstimate:
    """Least-squares growth exponent of a counting function over a grid."""

    exponent: float
    sample_points: tuple[tuple[int, int], ...]
    residual: float
    empty: bool = False


@dataclass(frozen=True)
class SpectrumSample:
    frequency: float
    value: complex


def fractional_density(A: IntegerSet, grid: Sequence[int]) -> DensityEstimate:
    """Fit count(N) ~ C * N**exponent over the checkpoint grid.

    The exponent is the slope of the least-squares fit of log count against
    log N, clamped to [0, 1]; the residual is the RMS misfit.  Checkpoints
    with zero count stay in ``sample_points`` but carry no weight.  A set
    with fewer than two positive counts reports exponent 0 with the
    ``empty`` flag raised.
    """
    checkpoints = [int(n) for n in grid]
    if len(checkpoints) < 2:
        raise ValueError("need at least 2 grid checkpoints")
    for a, b in zip(checkpoints, checkpoints[1:]):
        if b <= a:
            raise ValueError("grid must be strictly increasing")
    if checkpoints[0] < 1 or checkpoints[-1] > A.horizon:
        raise ValueError("grid checkpoints must lie in [1, horizon]")
    counts = [A.count_below(n) for n in checkpoints]
    samples = tuple(zip(checkpoints, counts))
    fit = [(n, c) for n, c in samples if c > 0]
    if len(fit) < 2:
        return DensityEstimate(0.0, samples, 0.0, empty=True)
    x = np.log([n for n, _ in fit])
    y = np.log([c for _, c in fit])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return DensityEstimate(float(min(1.0, max(0.0, slope))), samples, resid)


def dft_char(A: IntegerSet, freqs: Sequence[int]) -> list[SpectrumSample]:
    """Normalized transform (1/N) * sum_{n in A} e^{-2 pi i k n / N}.

    Sparse sum over the members only, so the cost is |A| per frequency.
    Phases are reduced to (k*n) mod N in exact integer arithmetic before
    exponentiation; integral phases contribute exactly 1.
    """
    N = A.horizon
    ks = [int(k) for k in freqs]
    for k in ks:
        if not 0 <= k < N:
            raise ValueError(f"frequency {k} outside [0, {N})")
    if not A.elements:
        return [SpectrumSample(float(k), 0j) for k in ks]
    elems = np.asarray(A.elements, dtype=np.int64)
    karr = np.asarray(ks, dtype=np.int64)
    values = np.empty(len(ks), dtype=complex)
    rows = max(1, _CHUNK // len(elems))
    for lo in range(0, len(ks), rows):
        block = karr[lo : lo + rows, None] * elems[None, :] % N
        values[lo : lo + rows] = np.exp((-2j * np.pi / N) * block).sum(axis=1)
    return [SpectrumSample(float(k), complex(v) / N) for k, v in zip(ks, values)]


def weyl_sum(points: Sequence[Fraction], m: int) -> complex:
    """Normalized exponential sum (1/d) * sum_j e^{-2 pi i x_j m}.

    Each phase x_j * m is reduced modulo 1 in exact rational arithmetic, so
    points whose phases are all integral sum to exactly 1.
    """
    if m == 0:
        raise ValueError("m = 0 is excluded")
    pts = list(points)
    if not pts:
        raise ValueError("points must be nonempty")
    total = 0j
    for p in pts:
        phase = (Fraction(p) * m) % 1
        total += cmath.exp(-2j * math.pi * float(phase))
    return total / len(pts)


def decay_exponent_fit(samples: Sequence[tuple[float, float]], cap: float = 1.0) -> float:
    """Largest alpha such that magnitude <= m**(-alpha/2) across all samples.

    Bound fitting rather than slope regression: every sample (m, mag) above
    the zero floor implies alpha <= 2*(-log mag)/log m, and the minimum is
    reported, clamped to [0, cap].  Samples below ZERO_FLOOR are treated as
    exact zeros and skipped; if every sample is a zero the spectrum decays
    faster than any power and ``cap`` is returned.
    """
    pairs = [(float(m), float(mag)) for m, mag in samples]
    if len(pairs) < 4:
        raise ValueError("need at least 4 samples")
    for m, _ in pairs:
        if m < 2:
            raise ValueError("samples require m >= 2")
    implied = [2.0 * -math.log(mag) / math.log(m) for m, mag in pairs if mag >= ZERO_FLOOR]
    if not implied:
        return cap
    return min(cap, max(0.0, min(implied)))


def geometric_grid(lo: float, hi: float, per_octave: int = 16, *, integers: bool = False) -> list:
    """Geometric samples lo * 2**(j/per_octave) not exceeding hi.

    The endpoint hi appears only when it lies on the ladder itself; on
    grid-supported spectra a forced top sample would alias a low frequency.
    With ``integers=True`` samples are rounded and deduplicated, which keeps
    every integer at the low end of the range where spacing is below 1.
    """
    if lo <= 0 or hi < lo:
        raise ValueError("need 0 < lo <= hi")
    if per_octave < 1:
        raise ValueError("per_octave must be positive")
    steps = int(math.ceil(math.log2(hi / lo) * per_octave)) if hi > lo else 0
    vals = [lo * 2 ** (j / per_octave) for j in range(steps + 1)]
    if integers:
        return [v for v in sorted({int(round(v)) for v in vals}) if lo <= v <= hi]
    return sorted(v for v in set(vals) if v <= hi)
