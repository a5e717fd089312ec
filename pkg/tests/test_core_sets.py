import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from salemkit.core_sets import (
    IntegerSet,
    decay_exponent_fit,
    dft_char,
    fractional_density,
    geometric_grid,
    weyl_sum,
)
from salemkit.generators import power_law_set


@st.composite
def integer_sets(draw, min_horizon=8, max_horizon=256, min_size=0):
    horizon = draw(st.integers(min_horizon, max_horizon))
    elems = draw(st.sets(st.integers(0, horizon - 1), min_size=min_size, max_size=horizon))
    return IntegerSet.from_elements(elems, horizon)


def naive_dft(A, k):
    # full-range oracle: iterate every n in [0, N), multiply by the indicator
    members = set(A.elements)
    total = 0j
    for n in range(A.horizon):
        if n in members:
            total += cmath.exp(-2j * math.pi * k * n / A.horizon)
    return total / A.horizon


class TestIntegerSet:
    def test_rejects_decreasing(self):
        with pytest.raises(ValueError):
            IntegerSet((3, 1), 10)

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            IntegerSet((1, 1), 10)

    def test_rejects_above_horizon(self):
        with pytest.raises(ValueError):
            IntegerSet((1, 10), 10)

    def test_count_below(self):
        A = IntegerSet((0, 3, 7), 10)
        assert [A.count_below(n) for n in (0, 1, 4, 8, 10)] == [0, 1, 2, 3, 3]


class TestFractionalDensity:
    def test_full_set_exponent_one(self):
        A = IntegerSet(tuple(range(256)), 256)
        est = fractional_density(A, [16, 64, 256])
        assert est.exponent == pytest.approx(1.0, abs=1e-12)
        assert est.residual == pytest.approx(0.0, abs=1e-12)

    def test_squares_exponent_half(self):
        A = IntegerSet.from_elements((n * n for n in range(100)), 10**4)
        est = fractional_density(A, [100, 400, 1600, 10**4])
        assert est.exponent == pytest.approx(0.5, abs=0.02)

    def test_random_two_thirds(self):
        # inclusion probability n**(-1/3) gives counts ~ N**(2/3); the
        # oracle recounts the sampled set by brute force
        A = power_law_set(10**5, 2 / 3, seed=7)
        grid = [10**2, 10**3, 10**4, 10**5]
        for n in grid:
            assert A.count_below(n) == sum(1 for e in A.elements if e < n)
        est = fractional_density(A, grid)
        assert est.exponent == pytest.approx(2 / 3, abs=0.05)

    def test_empty_set_flagged(self):
        est = fractional_density(IntegerSet((), 100), [10, 100])
        assert est.exponent == 0.0 and est.empty

    def test_short_grid_rejected(self):
        with pytest.raises(ValueError):
            fractional_density(IntegerSet((1,), 10), [10])

    def test_counts_non_decreasing(self):
        A = power_law_set(4096, 0.5, seed=3)
        est = fractional_density(A, [16, 64, 256, 1024, 4096])
        counts = [c for _, c in est.sample_points]
        assert counts == sorted(counts)


class TestDftChar:
    def test_full_set_orthogonality(self):
        A = IntegerSet((0, 1, 2, 3), 4)
        values = [s.value for s in dft_char(A, [0, 1, 2, 3])]
        assert values[0] == pytest.approx(1.0)
        for v in values[1:]:
            assert abs(v) < 1e-15

    def test_single_point(self):
        A = IntegerSet((0,), 4)
        for s in dft_char(A, [0, 1, 2, 3]):
            assert s.value == pytest.approx(0.25)

    def test_two_points(self):
        A = IntegerSet((0, 2), 4)
        values = [s.value for s in dft_char(A, [0, 1, 2, 3])]
        assert values[0] == pytest.approx(0.5)
        assert abs(values[1]) < 1e-15
        assert values[2] == pytest.approx(0.5)
        assert abs(values[3]) < 1e-15

    def test_frequency_out_of_range(self):
        with pytest.raises(ValueError):
            dft_char(IntegerSet((0,), 4), [4])

    @given(integer_sets(min_size=1))
    @settings(max_examples=40, deadline=None)
    def test_matches_naive_oracle(self, A):
        ks = [0, 1, A.horizon // 2, A.horizon - 1]
        for s, k in zip(dft_char(A, ks), ks):
            assert abs(s.value - naive_dft(A, k)) < 1e-10

    @given(integer_sets(min_size=1))
    @settings(max_examples=40, deadline=None)
    def test_parseval(self, A):
        # sum over all frequencies of |value|^2 equals |A|/N
        values = dft_char(A, range(A.horizon))
        total = sum(abs(s.value) ** 2 for s in values)
        assert total == pytest.approx(len(A) / A.horizon, abs=1e-10)

    @given(integer_sets(min_size=1))
    @settings(max_examples=40, deadline=None)
    def test_conjugate_symmetry(self, A):
        ks = range(1, A.horizon)
        values = {k: s.value for k, s in zip(ks, dft_char(A, ks))}
        for k in list(values)[:16]:
            assert values[A.horizon - k] == pytest.approx(values[k].conjugate(), abs=1e-12)

    @given(integer_sets(min_size=1))
    @settings(max_examples=40, deadline=None)
    def test_zero_frequency_is_density(self, A):
        assert dft_char(A, [0])[0].value == len(A) / A.horizon


class TestWeylSum:
    def test_antipodal_cancellation(self):
        assert abs(weyl_sum([Fraction(0), Fraction(1, 2)], 1)) < 1e-15

    def test_integral_phases(self):
        assert weyl_sum([Fraction(0), Fraction(1, 2)], 2) == 1.0

    def test_fourth_roots(self):
        pts = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
        assert abs(weyl_sum(pts, 1)) < 1e-15

    def test_m_zero_rejected(self):
        with pytest.raises(ValueError):
            weyl_sum([Fraction(0)], 0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            weyl_sum([], 1)

    @given(
        st.lists(st.fractions(min_value=0, max_value=1, max_denominator=64), min_size=1, max_size=20),
        st.integers(-30, 30).filter(lambda m: m != 0),
    )
    @settings(max_examples=100, deadline=None)
    def test_modulus_at_most_one(self, pts, m):
        assert abs(weyl_sum(pts, m)) <= 1 + 1e-12

    def test_unit_modulus_iff_single_phase_class(self):
        # all points congruent mod 1/m: modulus exactly 1
        pts = [Fraction(1, 6), Fraction(1, 6) + Fraction(1, 3), Fraction(1, 6) + Fraction(2, 3)]
        assert abs(weyl_sum(pts, 3)) == pytest.approx(1.0)
        # two distinct phase classes: modulus strictly below 1
        pts = [Fraction(0), Fraction(1, 6)]
        assert abs(weyl_sum(pts, 3)) < 1 - 1e-6


class TestDecayExponentFit:
    def test_synthetic_power_law(self):
        samples = [(m, m**-0.5) for m in range(2, 1025)]
        assert decay_exponent_fit(samples) == pytest.approx(1.0, abs=1e-12)

    def test_constant_magnitudes(self):
        samples = [(m, 1.0) for m in (2, 4, 8, 16)]
        assert decay_exponent_fit(samples) == 0.0

    def test_all_below_floor_returns_cap(self):
        samples = [(m, 1e-15) for m in (2, 4, 8, 16)]
        assert decay_exponent_fit(samples, cap=0.7) == 0.7

    def test_small_m_rejected(self):
        with pytest.raises(ValueError):
            decay_exponent_fit([(1, 0.5), (2, 0.5), (4, 0.5), (8, 0.5)])

    def test_too_few_samples_rejected(self):
        with pytest.raises(ValueError):
            decay_exponent_fit([(2, 0.5), (4, 0.5), (8, 0.5)])

    @given(
        st.lists(
            st.tuples(st.integers(2, 10**6), st.floats(0, 1, exclude_min=False)),
            min_size=4,
            max_size=30,
        ),
        st.lists(st.floats(0, 1), min_size=30, max_size=30),
    )
    @settings(max_examples=100, deadline=None)
    def test_monotone_in_magnitudes(self, samples, shrink):
        smaller = [(m, mag * s) for (m, mag), s in zip(samples, shrink)]
        assert decay_exponent_fit(smaller) >= decay_exponent_fit(samples) - 1e-12


class TestGeometricGrid:
    def test_integer_grid_covers_low_range(self):
        grid = geometric_grid(2, 100, 16, integers=True)
        assert grid[:8] == [2, 3, 4, 5, 6, 7, 8, 9]
        assert all(2 <= m <= 100 for m in grid)

    def test_endpoint_not_forced(self):
        grid = geometric_grid(2, 10**5 - 1, 8, integers=True)
        assert grid[-1] <= 10**5 - 1
        assert grid == sorted(set(grid))
