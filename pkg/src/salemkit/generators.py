"""Set generators used by tests and experiment scripts.

Nothing here is load-bearing for the constructions themselves; these are
the stock examples (squares, quadratic residues, seeded random power-law
sets) that the estimators get exercised on.
"""

from __future__ import annotations

import numpy as np

from .core_sets import IntegerSet


def squares_below(horizon: int) -> IntegerSet:
    return IntegerSet.from_elements((n * n for n in range(int(horizon**0.5) + 1) if n * n < horizon), horizon)


def quadratic_residues(modulus: int, *, include_zero: bool = True) -> IntegerSet:
    """Squares mod a prime, with horizon equal to the modulus."""
    residues = {(n * n) % modulus for n in range(1, modulus)}
    if include_zero:
        residues.add(0)
    return IntegerSet.from_elements(residues, modulus)


def power_law_set(horizon: int, exponent: float, seed) -> IntegerSet:
    """Random set of fractional density ``exponent``.

    Each n >= 1 enters independently with probability n**(exponent - 1), so
    the expected count below N grows like N**exponent / exponent.  0 is
    never included.
    """
    if not 0 < exponent <= 1:
        raise ValueError("exponent must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    n = np.arange(1, horizon)
    mask = rng.random(horizon - 1) < n ** (exponent - 1.0)
    return IntegerSet(tuple(int(v) for v in n[mask]), horizon)


def bernoulli_set(horizon: int, p: float, seed) -> IntegerSet:
    """Uniform Bernoulli(p) inclusion over [0, horizon)."""
    rng = np.random.default_rng(seed)
    mask = rng.random(horizon) < p
    return IntegerSet(tuple(int(v) for v in np.flatnonzero(mask)), horizon)
